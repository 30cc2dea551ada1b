"""Exact Tutte polynomials of Sierpinski graphs and Hanoi Towers Schreier graphs.

The level-``n`` polynomial is computed from a three-component corner
recursion in time polynomial in the output size, and every named
specialization (spanning trees, forests, orientations, chromatic,
reliability, Ising) is derived from it.
"""
from .errors import (
    DisconnectedInput,
    DomainError,
    InvalidAlphabet,
    InvariantViolation,
    LevelOutOfRange,
    NotDivisible,
    NotLaurent,
    ResourceCap,
    TooLarge,
    TooManyEdges,
    TutteError,
)
from .exactmath import BiPoly, RationalFn, UniPoly
from .graphs import CornerTriple, Multigraph, build_contracted, build_hanoi, build_sierpinski
from .recursion import (
    PointTriple,
    ReducedTriple,
    TutteTriple,
    contracted_tutte,
    eval_triple_at_point,
    hanoi_reduced,
    hanoi_triple,
    join_identity_residual,
    sierpinski_reduced,
    sierpinski_triple,
    tutte_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "CornerTriple",
    "DisconnectedInput",
    "DomainError",
    "InvalidAlphabet",
    "InvariantViolation",
    "LevelOutOfRange",
    "Multigraph",
    "NotDivisible",
    "NotLaurent",
    "PointTriple",
    "RationalFn",
    "ReducedTriple",
    "ResourceCap",
    "TooLarge",
    "TooManyEdges",
    "TutteError",
    "TutteTriple",
    "UniPoly",
    "build_contracted",
    "build_hanoi",
    "build_sierpinski",
    "contracted_tutte",
    "eval_triple_at_point",
    "hanoi_reduced",
    "hanoi_triple",
    "join_identity_residual",
    "sierpinski_reduced",
    "sierpinski_triple",
    "tutte_polynomial",
]
