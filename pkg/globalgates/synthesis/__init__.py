"""Ansatz construction, objective and seeded multi-start search."""
