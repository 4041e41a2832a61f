"""
Management commands for the spline engine.
"""
