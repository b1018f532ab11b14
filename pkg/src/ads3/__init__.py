"""Orbit classification for cohomogeneity-one isometric actions on adS3 = SL(2,R)."""

__version__ = "0.1.0"
