"""Numerical channel models: special functions, BER, capacities, simulation."""
