"""Bit masks, exact rank and JSON helpers."""
