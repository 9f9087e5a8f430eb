"""Shipped constraint spec files, addressable by bare name."""
