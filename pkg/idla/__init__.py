"""
idla - Internal DLA v jedné dimenzi: přesné rozdělení, doba hry a Monte Carlo.
"""

__version__ = "1.0.0"
