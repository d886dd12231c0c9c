"""Spherical geometry engine."""
