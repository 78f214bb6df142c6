# Utilities Package 