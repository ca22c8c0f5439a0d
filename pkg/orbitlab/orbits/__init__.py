# Orbits module
