"""linlay: queue/stack linear layouts of (bipartite) planar graphs."""

__version__ = "0.1.0"
