"""Service layer: group algorithms, constructions, search and dominion bounds."""
