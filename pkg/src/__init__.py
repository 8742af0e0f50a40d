"""
Krylov and spread complexity of operator growth in the open SYK model
"""

__version__ = "1.0.0"
