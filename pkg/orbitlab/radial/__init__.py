# Radial module
