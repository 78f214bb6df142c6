# Poset Polytopes Toolkit
