"""Orchestrator package - command-line entry points."""
