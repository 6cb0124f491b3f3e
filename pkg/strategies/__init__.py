"""Search strategies - random resampling, Latin Hypercube, nested Monte-Carlo and hill climbing."""
