# Entanglement measures and axiom audits for bipartite quantum states
__version__ = "0.1.0"
