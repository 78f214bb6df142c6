# Data Package 