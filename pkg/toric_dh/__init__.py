"""toric-dh — exact reflexive Delzant polytopes, Duistermaat-Heckman functions and toric extensions."""

__version__ = "0.1.0"
