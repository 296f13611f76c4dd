"""Run parameter management."""
