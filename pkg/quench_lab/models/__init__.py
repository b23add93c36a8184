"""Pydantic models for ensembles, systems, spectra and fits."""
