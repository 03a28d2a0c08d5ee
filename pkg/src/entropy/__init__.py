# Shannon and von Neumann reduced entropies
