"""Graded parking-space modules from slim subgraphs of complete multigraphs."""

__version__ = "0.1.0"
