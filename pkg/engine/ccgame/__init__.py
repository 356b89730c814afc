"""ccgame - communication games over interlaced matrices: construction, exact solving and lemma checks."""
__version__ = "0.1.0"
