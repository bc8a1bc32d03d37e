"""Grid diagrams of knots: moves, simplification, censuses, move-count bounds."""

__version__ = "0.1.0"
