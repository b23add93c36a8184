"""Simulation, diagonalization and analysis services."""
