"""Commutator algebras of nilpotent Jordan matrices and Lefschetz properties.

Exact linear algebra over Q and GF(p), Young-diagram combinatorics, Groebner
bases for graded Artinian quotients, the block structure of the algebra of
matrices commuting with a nilpotent Jordan matrix, and weak/strong Lefschetz
analyses built on top of it.
"""

from .algebra import ArtinianAlgebra, LinearForm
from .errors import (
    InternalInconsistency,
    NilcommError,
    NotArtinian,
    ParseError,
    PreconditionViolated,
)
from .linalg import GF, QQ, Field, Matrix
from .partitions import Partition

__version__ = "0.1.0"

__all__ = [
    "ArtinianAlgebra",
    "Field",
    "GF",
    "InternalInconsistency",
    "LinearForm",
    "Matrix",
    "NilcommError",
    "NotArtinian",
    "ParseError",
    "Partition",
    "PreconditionViolated",
    "QQ",
]
