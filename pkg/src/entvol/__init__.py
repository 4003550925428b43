"""Entropy versus volume for pseudo-Anosov maps of the once-punctured torus."""
from .errors import (DegenerateGeometry, EmptyPolytope, InternalGluingError, NotPrimitive,
                     NotPseudoAnosov, ParseError, SolverNoConvergence)
from .hypvol import V3, V8, SolverConfig, bloch_wigner, lobachevsky, volume
from .torus import dilatation, entropy, word_matrix
from .words import CyclicWord, canonicalize, enumerate_words, parse

__all__ = [
    "CyclicWord", "parse", "canonicalize", "enumerate_words",
    "word_matrix", "dilatation", "entropy",
    "lobachevsky", "bloch_wigner", "volume", "SolverConfig", "V3", "V8",
    "ParseError", "NotPseudoAnosov", "NotPrimitive", "InternalGluingError",
    "EmptyPolytope", "SolverNoConvergence", "DegenerateGeometry",
]
