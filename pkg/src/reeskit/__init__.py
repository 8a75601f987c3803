"""Rees algebra equations, relation type and related ideal computations over F_p."""

__version__ = "0.1.0"
