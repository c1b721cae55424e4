"""Finite polyadic groups."""
