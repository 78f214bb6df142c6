# Toric ideals and their Groebner bases
