"""Exact-arithmetic toolkit for facet enumeration of local polytopes under
linear constraints, with the relabeling machinery needed to classify
multipartite Bell inequalities."""

__version__ = "0.1.0"
