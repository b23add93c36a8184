"""Core modules for quench-lab."""
