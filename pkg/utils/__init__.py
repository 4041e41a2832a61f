"""
Spline engine: rings, graphs, constraint paths, flow-up classes and the search oracle.
"""
