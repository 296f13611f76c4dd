"""ImpulseBSC - error rates and capacities of Poisson-impulse binary and Gaussian channels."""

__version__ = "1.0.0"
