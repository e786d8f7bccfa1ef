"""Determinant and trace tests for entanglement of bipartite qubit and qutrit pure states."""

from . import algebra, linalg, qubit, qutrit, teleport
from .errors import EntangleKitError
from .qubit import Classification, QubitPairState, BellCoefficients
from .qutrit import QutritPairState

__all__ = [
    "algebra",
    "linalg",
    "qubit",
    "qutrit",
    "teleport",
    "Classification",
    "EntangleKitError",
    "QubitPairState",
    "BellCoefficients",
    "QutritPairState",
]

__version__ = "0.1.0"
