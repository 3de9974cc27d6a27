"""
Controllers package for parity-psi.
Each controller owns one verification concern and returns plain results.
"""
