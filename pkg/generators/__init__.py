"""Generator programs - grammars expressed as code, plus their validators."""
