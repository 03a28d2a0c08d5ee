# Schmidt decomposition and Schmidt subspaces
