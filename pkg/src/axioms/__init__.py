# Axiom audits, separability checks and demonstrations
