"""Domain types: games, selections, protocol trees and JSON documents."""
from .matrix import GameMatrix, PhiDims, new_matrix, phi_base, phi_dimensions, transpose
from .protocol import ProtocolLeaf, ProtocolNode, ProtocolTree, protocol_depth, protocol_verify
from .selection import DigitTuple, Selection, base_digits, digits_value

__all__ = [
    "GameMatrix",
    "PhiDims",
    "new_matrix",
    "phi_base",
    "phi_dimensions",
    "transpose",
    "ProtocolLeaf",
    "ProtocolNode",
    "ProtocolTree",
    "protocol_depth",
    "protocol_verify",
    "DigitTuple",
    "Selection",
    "base_digits",
    "digits_value",
]
