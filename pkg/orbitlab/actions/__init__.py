# Actions module
