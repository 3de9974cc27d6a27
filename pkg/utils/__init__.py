"""
Utility functions for parity-psi: formatting, rendering, export and the worker pool.
"""
