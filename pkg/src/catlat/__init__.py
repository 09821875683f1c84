"""catlat: fusion-category lattice models and their conformal data.

Builds critical two-dimensional lattice models (Ising, Yang-Lee, three-state
Potts) from fusion-category data, realizes their topological defects as matrix
product operators, projects transfer-matrix spectra with tube- and
ladder-algebra idempotents, and extracts conformal spectra, single Virasoro
characters and Klein bottle entropies by exact diagonalization.
"""

__version__ = "0.1.0"

from . import categories, cft, engine, lattice, pentagon, spectra, tubes

__all__ = ["categories", "cft", "engine", "lattice", "pentagon", "spectra", "tubes"]
