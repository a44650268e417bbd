"""Packaged braid-monodromy fixtures (JSON files loaded by name)."""
