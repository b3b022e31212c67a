"""Utility modules for the dominion toolkit."""
