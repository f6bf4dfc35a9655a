"""Shared utilities: settings, logging and value models."""
