"""Traces of Hecke operators on level 1 cusp forms by point counts, class
numbers and finite field hypergeometric functions."""

__version__ = "0.1.0"
