"""Bounds and decision conditions for probabilities of causation."""
