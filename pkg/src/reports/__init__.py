# Audit report models
