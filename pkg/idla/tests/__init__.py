"""
Testy pro idla library.
"""
