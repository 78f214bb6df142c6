# Exact lattice polytope engine
