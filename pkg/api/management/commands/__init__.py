"""
The splines command.
"""
