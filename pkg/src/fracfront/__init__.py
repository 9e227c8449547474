"""
fracfront - a numerical laboratory for time-fractional Fisher-KPP fronts
"""

__version__ = "0.3.0"
