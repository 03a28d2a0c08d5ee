# Entanglement measures and their registry
