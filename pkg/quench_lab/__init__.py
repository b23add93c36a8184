"""quench-lab - time-averaged distributions after a quench."""

__version__ = "0.1.0"
