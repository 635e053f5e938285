"""
Pydantic modely pro validaci.
"""
