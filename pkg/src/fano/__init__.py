# Smoothness criteria and split decompositions
