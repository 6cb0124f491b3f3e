"""Engine package - derivation engine, choice points and decision policies."""
