"""Exciton energies of electron-hole pairs confined to a cylindrical surface."""

__version__ = "0.1.0"
