"""Tiling workbench: Wang tiles, Turing machine compilation, Robinson tiles,
substitution tilings, imbalance bookkeeping and decorated polyforms."""

__version__ = "0.1.0"
