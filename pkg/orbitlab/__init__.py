# OrbitLab Package
