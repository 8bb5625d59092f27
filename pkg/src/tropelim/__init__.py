"""Tropical implicitization and elimination with exact polyhedral arithmetic."""

__version__ = "0.1.0"
