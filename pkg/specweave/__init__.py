"""specweave - distributed shaping of Laplacian spectra on weighted graphs."""

__version__ = "0.1.0"
