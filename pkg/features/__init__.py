"""Features package - feature extraction, preference hypercube, density archive and coverage metrics."""
