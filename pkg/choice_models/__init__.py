"""Choice models package - parameterized stochastic decisions and parameter-space samplers."""
