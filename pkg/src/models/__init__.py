"""Domain models and file schemas for the dominion toolkit."""
