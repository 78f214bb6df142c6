# Pair reports and verification sweeps
