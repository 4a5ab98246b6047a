# Torus skein algebra product engine
