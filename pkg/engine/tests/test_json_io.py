from __future__ import annotations

import pytest

from ccgame.exceptions import DomainError, ProtocolStructureError, ShapeError
from ccgame.models.protocol import ProtocolLeaf, ProtocolNode, protocol_verify
from ccgame.models.selection import Selection
from ccgame.services.solver import solve_exact
from ccgame.services.subgame import SubgameWitness
from ccgame.utils.json_io import (
    canonical_json,
    matrix_from_document,
    protocol_from_document,
    protocol_to_document,
    read_matrix,
    read_report,
    selection_from_document,
    selection_to_document,
    witness_to_document,
)


def test_canonical_text_is_compact_with_trailing_newline():
    assert canonical_json({"b": 1, "a": [1, 2]}) == '{"b":1,"a":[1,2]}\n'


def test_matrix_documents(tmp_path):
    path = tmp_path / "game.json"
    path.write_text('{"m":1,"n":2,"alphabet":2,"rows":[[1,0]]}\n', encoding="utf-8")
    assert read_matrix(path).to_lists() == [[1, 0]]
    with pytest.raises(ShapeError):
        matrix_from_document({"m": 1, "n": 3, "alphabet": 2, "rows": [[1, 0]]})
    with pytest.raises(ShapeError):
        matrix_from_document({"m": 1, "n": 2, "alphabet": 2, "rows": [[1, 0]], "extra": 1})
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ShapeError):
        read_matrix(path)


def test_selection_document_keys():
    selection = Selection.of([0, 2], [1, 3], m=2, n=2, p=2)
    assert canonical_json(selection_to_document(selection)) == '{"R":[0,2],"C":[1,3],"m":2,"n":2,"p":2}\n'
    assert selection_from_document({"R": [0, 2], "C": [1, 3], "m": 2, "n": 2, "p": 2}) == selection


def test_selection_document_errors():
    with pytest.raises(DomainError):
        selection_from_document({"R": [0], "C": [0], "m": 0, "n": 2, "p": 1})
    with pytest.raises(DomainError):
        selection_from_document({"R": [5], "C": [0], "m": 1, "n": 2, "p": 1})


def test_protocol_documents(identity):
    tree = solve_exact(identity).tree
    document = protocol_to_document(tree)
    assert document["node"] == "internal"
    rebuilt = protocol_from_document(document)
    assert rebuilt == tree
    assert protocol_verify(rebuilt, identity).valid


def test_protocol_document_shape():
    tree = ProtocolNode(player="col", left=(0,), children=(ProtocolLeaf(1), ProtocolLeaf(0)))
    assert canonical_json(protocol_to_document(tree)) == (
        '{"node":"internal","player":"col","left":[0],'
        '"children":[{"node":"leaf","value":1},{"node":"leaf","value":0}]}\n'
    )


@pytest.mark.parametrize(
    "document",
    [
        {"node": "branch"},
        {"node": "internal", "player": "row", "left": [0], "children": [{"node": "leaf", "value": 1}]},
        {"node": "internal", "player": "both", "left": [0], "children": [{"node": "leaf", "value": 1}] * 2},
    ],
)
def test_malformed_protocol_documents(document):
    with pytest.raises(ProtocolStructureError):
        protocol_from_document(document)


def test_witness_document():
    assert witness_to_document(SubgameWitness(row_map=(1,), col_map=(0, 2))).model_dump() == {
        "rows": [1],
        "cols": [0, 2],
    }


def test_read_report_validates(tmp_path):
    path = tmp_path / "report.json"
    path.write_text('{"lemma":"x","grid":{},"instances":1,"violations":[],"status":"fail"}', encoding="utf-8")
    with pytest.raises(ShapeError):
        read_report(path)
