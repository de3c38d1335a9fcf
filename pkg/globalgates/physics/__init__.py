"""Trapped-ion realizations of the global entangling gate."""
