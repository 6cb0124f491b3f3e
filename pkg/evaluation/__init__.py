"""Evaluation package - Mann-Whitney U test and descriptive statistics for run tables."""
