"""
Core computer algebra for quiver Hecke algebras of Borcherds-Cartan data.
"""
