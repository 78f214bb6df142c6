# Finite posets, their ideals and antichains
