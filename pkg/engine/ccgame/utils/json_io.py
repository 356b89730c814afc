# Canonical JSON text and conversions between domain objects and documents
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError

from ccgame.exceptions import DomainError, ProtocolStructureError, ShapeError
from ccgame.models.documents import (
    LemmaReport,
    MatrixDocument,
    SelectionDocument,
    WitnessDocument,
    protocol_adapter,
)
from ccgame.models.matrix import GameMatrix, new_matrix
from ccgame.models.protocol import ProtocolLeaf, ProtocolNode, ProtocolTree
from ccgame.models.selection import Selection
from ccgame.services.subgame import SubgameWitness

logger = logging.getLogger(__name__)


def canonical_json(payload: Any) -> str:
    # Compact separators, document key order, one trailing newline
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(payload, separators=(",", ":")) + "\n"


def write_text(path: Path | str, text: str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.debug(f"Wrote {target}")
    return target


def _load_json(path: Path | str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ShapeError(f"{path} is not valid JSON: {e}") from e


def matrix_to_document(matrix: GameMatrix) -> MatrixDocument:
    return MatrixDocument(m=matrix.rows, n=matrix.cols, alphabet=matrix.alphabet_size, rows=matrix.to_lists())


def matrix_from_document(data: Any) -> GameMatrix:
    try:
        doc = MatrixDocument.model_validate(data)
    except ValidationError as e:
        raise ShapeError(f"Invalid matrix document: {e.errors()[0]['msg']}") from e
    return new_matrix(doc.rows, alphabet_size=doc.alphabet)


def read_matrix(path: Path | str) -> GameMatrix:
    return matrix_from_document(_load_json(path))


def selection_to_document(selection: Selection) -> SelectionDocument:
    return SelectionDocument(
        R=list(selection.rows), C=list(selection.cols), m=selection.m, n=selection.n, p=selection.p
    )


def selection_from_document(data: Any) -> Selection:
    try:
        doc = SelectionDocument.model_validate(data)
    except ValidationError as e:
        raise DomainError(f"Invalid selection document: {e.errors()[0]['msg']}") from e
    return Selection(rows=tuple(doc.R), cols=tuple(doc.C), m=doc.m, n=doc.n, p=doc.p)


def witness_to_document(witness: SubgameWitness) -> WitnessDocument:
    return WitnessDocument(rows=list(witness.row_map), cols=list(witness.col_map))


def protocol_to_document(tree: ProtocolTree) -> dict[str, Any]:
    if isinstance(tree, ProtocolLeaf):
        return {"node": "leaf", "value": tree.value}
    return {
        "node": "internal",
        "player": tree.player,
        "left": list(tree.left),
        "children": [protocol_to_document(tree.children[0]), protocol_to_document(tree.children[1])],
    }


def protocol_from_document(data: Any) -> ProtocolTree:
    try:
        doc = protocol_adapter.validate_python(data)
    except ValidationError as e:
        raise ProtocolStructureError(f"Invalid protocol document: {e.errors()[0]['msg']}") from e
    return _tree_of(doc)


def _tree_of(doc) -> ProtocolTree:
    if doc.node == "leaf":
        return ProtocolLeaf(value=doc.value)
    return ProtocolNode(
        player=doc.player,
        left=tuple(doc.left),
        children=(_tree_of(doc.children[0]), _tree_of(doc.children[1])),
    )


def read_report(path: Path | str) -> LemmaReport:
    try:
        return LemmaReport.model_validate(_load_json(path))
    except ValidationError as e:
        raise ShapeError(f"Invalid report {path}: {e.errors()[0]['msg']}") from e
