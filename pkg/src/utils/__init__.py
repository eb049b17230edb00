"""Bitmask and boolean-relation helpers."""
