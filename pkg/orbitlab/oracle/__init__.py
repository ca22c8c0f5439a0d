# Oracle module
