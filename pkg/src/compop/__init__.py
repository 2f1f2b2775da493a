"""Numerical lab for composition operators on the Hardy space of Dirichlet series."""

VERSION = "0.1.0"
