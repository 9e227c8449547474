"""
Numerical core of fracfront.
"""
