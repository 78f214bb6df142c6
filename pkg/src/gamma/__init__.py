# Polytopes of posets
