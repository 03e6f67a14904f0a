"""Exact partition functions of plane partitions with boundary conditions."""
