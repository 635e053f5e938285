"""
Testy pro cli.
"""
