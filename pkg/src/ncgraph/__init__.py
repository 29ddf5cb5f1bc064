"""Non-commuting graphs of finite groups and their Laplacian spectra."""

__version__ = "0.1.0"
