"""Exact linear algebra behind the homology computations."""
