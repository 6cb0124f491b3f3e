"""Configuration package - engine settings and named method presets."""
