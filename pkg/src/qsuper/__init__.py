"""Exact computations for quantum general linear supergroups: normal forms,
Hopf structures, the pairing between the two sides, and cocycle twists."""

from .coeffring import ExpForm, Laurent, q, qphi
from .supercore import (
    Element,
    ParityDatum,
    PhiMatrix,
    TensorElement,
    format_element,
    parse_element,
    parse_word,
    tensor_multiply,
)
from .falg import FAlgebra
from .ualg import UAlgebra
from .pairing import PairingEngine, Report
from .deform import Deformation

__all__ = [
    "ExpForm", "Laurent", "q", "qphi", "Element", "ParityDatum", "PhiMatrix", "TensorElement",
    "format_element", "parse_element", "parse_word", "tensor_multiply", "FAlgebra", "UAlgebra",
    "PairingEngine", "Report", "Deformation",
]
