"""
Exact information leakage of simultaneous message passing protocols, protocol
transformations with verified contracts, and finite-size lower bounds.
"""
__version__ = '0.1'
