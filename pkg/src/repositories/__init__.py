"""Repositories for group, variety and catalog files."""
