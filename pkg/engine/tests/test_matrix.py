from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from ccgame.exceptions import DomainError, ShapeError, SizeGuardError
from ccgame.models.matrix import (
    PhiDims,
    family_generation,
    new_matrix,
    pad_to_family,
    phi_dimensions,
    transpose,
)
from ccgame.services.interlace import alternating_game, padded_family
from ccgame.services.solver import solve_exact
from ccgame.services.subgame import is_subgame
from ccgame.utils.json_io import canonical_json, matrix_to_document


def test_new_matrix_keeps_values_and_shape():
    game = new_matrix([[1, 0, 1], [0, 0, 1]])
    assert game.shape == (2, 3)
    assert game.to_lists() == [[1, 0, 1], [0, 0, 1]]
    assert game.value(1, 2) == 1
    assert game.is_boolean


def test_cells_are_read_only():
    game = new_matrix([[1, 0]])
    with pytest.raises(ValueError):
        game.cells[0, 0] = 0


@pytest.mark.parametrize("cells", [[], [[]], [[1, 0], [1]]])
def test_empty_or_ragged_grids_are_shape_errors(cells):
    with pytest.raises(ShapeError):
        new_matrix(cells)


def test_values_outside_alphabet_are_domain_errors():
    with pytest.raises(DomainError):
        new_matrix([[0, 2]])
    with pytest.raises(DomainError):
        new_matrix([[-1, 0]])
    with pytest.raises(DomainError):
        new_matrix([[0.5, 1]])


def test_bool_arrays_are_accepted():
    game = new_matrix(np.array([[True, False]]))
    assert game.to_lists() == [[1, 0]]


def test_larger_alphabets():
    game = new_matrix([[0, 3], [2, 1]], alphabet_size=4)
    assert not game.is_boolean
    assert game.alphabet_size == 4


def test_equal_games_hash_alike():
    a = new_matrix([[1, 0], [0, 1]])
    b = new_matrix(np.eye(2, dtype=np.int64))
    assert a == b
    assert len({a, b}) == 1
    assert a != new_matrix([[1, 0], [0, 1]], alphabet_size=3)


def test_transpose_swaps_players():
    game = new_matrix([[1, 0, 1], [0, 0, 1]])
    assert transpose(game).to_lists() == [[1, 0], [0, 0], [1, 1]]
    assert transpose(transpose(game)) == game


def test_submatrix_keeps_given_order():
    game = new_matrix([[1, 0, 1], [0, 0, 1]])
    assert game.submatrix([1, 0], [2, 0]).to_lists() == [[1, 0], [1, 1]]
    with pytest.raises(DomainError):
        game.submatrix([2], [0])
    with pytest.raises(DomainError):
        game.submatrix([], [0])


def test_packed_rows():
    game = new_matrix([[1, 0, 1], [0, 1, 1]])
    assert game.packed_rows == (0b101, 0b110)
    with pytest.raises(DomainError):
        new_matrix([[2]], alphabet_size=3).packed_rows


@pytest.mark.parametrize(
    "B,generation,shape",
    [(2, 0, (1, 2)), (2, 1, (4, 2)), (2, 2, (4, 8)), (2, 3, (64, 8)), (3, 1, (8, 3)), (3, 2, (27, 24))],
)
def test_phi_dimensions_match_the_recurrence(B, generation, shape):
    dims = phi_dimensions(B, generation)
    assert (dims.rows, dims.cols) == shape
    assert alternating_game(B, generation).shape == shape


def test_phi1_matches_golden(golden):
    phi1 = alternating_game(2, 1)
    assert canonical_json(matrix_to_document(phi1)) == golden("phi1_B2.json")


def test_phi_dimensions_rejects_narrow_width():
    with pytest.raises(DomainError):
        phi_dimensions(1, 0)
    with pytest.raises(DomainError):
        phi_dimensions(2, -1)


def test_alternating_game_guard_reports_dimensions():
    with pytest.raises(SizeGuardError) as info:
        alternating_game(2, 5, max_cells=1000)
    assert isinstance(info.value.details, PhiDims)
    assert info.value.details == phi_dimensions(2, 5)


def test_pad_to_family(phi0):
    padded = pad_to_family(phi0, 1)
    assert padded.to_lists() == [[1, 0], [0, 0]]
    with pytest.raises(DomainError):
        pad_to_family(phi0, 0)
    with pytest.raises(DomainError):
        pad_to_family(new_matrix([[2]], alphabet_size=3), 2)


def test_padding_can_raise_the_cost():
    game = new_matrix([[0, 0, 0], [0, 0, 0], [1, 1, 1]])
    padded = pad_to_family(game, 2)
    assert padded.to_lists()[3] == [0, 0, 0, 0]
    assert solve_exact(game).depth == 1
    assert solve_exact(padded).depth == 2


@pytest.mark.slow
def test_padded_game_is_never_easier():
    raised = 0
    for bits in product((0, 1), repeat=9):
        game = new_matrix(np.array(bits).reshape(3, 3))
        padded = pad_to_family(game, 2)
        assert is_subgame(game, padded) is not None, bits
        before, after = solve_exact(game).depth, solve_exact(padded).depth
        assert before <= after, bits
        if 0 < sum(bits) < 9 and before < after:
            raised += 1
    assert raised == 210


@pytest.mark.parametrize("n,generation", [(1, 0), (2, 1), (3, 2)])
def test_family_generation(n, generation):
    assert family_generation(2, n) == generation


def test_family_generation_without_fit():
    with pytest.raises(DomainError):
        family_generation(2, 0)


def test_padded_family_embeds_phi1():
    member = padded_family(2, 2)
    assert member.shape == (4, 4)
    assert [row[:2] for row in member.to_lists()] == [[1, 1], [0, 1], [1, 0], [0, 0]]
    assert all(row[2:] == [0, 0] for row in member.to_lists())
