"""Exciton energies on a cylinder: analytic, variational and finite-difference solvers."""
