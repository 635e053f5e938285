"""
Schema modely pro idla.
"""
