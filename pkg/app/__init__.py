"""
Cornered Floer Server
Exact F2 algebra of planar grid diagrams, served over FastAPI and a click command line
"""

__version__ = "0.1.0"
