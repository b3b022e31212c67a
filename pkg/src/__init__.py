"""Dominion toolkit: finite groups, wreath products and dominion bounds."""

__version__ = "0.1.0"
