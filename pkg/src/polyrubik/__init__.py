"""Rubik's groups of abstract regular polytopes."""
