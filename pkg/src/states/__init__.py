# Bipartite pure states, density operators and separable states
