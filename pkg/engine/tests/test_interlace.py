from __future__ import annotations

import pytest

from ccgame.exceptions import DomainError, SizeGuardError
from ccgame.models.matrix import new_matrix
from ccgame.services.interlace import (
    display_order,
    interlace_binary,
    interlace_power,
    interlace_rank_bound,
)
from ccgame.utils.json_io import canonical_json, matrix_to_document


def test_interlace_power_digit_zero_least_significant(phi0):
    assert interlace_power(phi0, 2).to_lists() == [[1, 0, 1, 0], [1, 1, 0, 0]]


def test_first_power_is_the_game(identity):
    assert interlace_power(identity, 1) == identity


@pytest.mark.parametrize("p,name", [(2, "interlace_A2.json"), (3, "interlace_A3.json"), (4, "interlace_A4.json")])
def test_display_order_reproduces_printed_interlacings(phi0, golden, p, name):
    shown = display_order(interlace_power(phi0, p), phi0.cols, p)
    assert canonical_json(matrix_to_document(shown)) == golden(name)


def test_display_order_of_identity(identity, golden):
    shown = display_order(interlace_power(identity, 2), 2, 2)
    assert canonical_json(matrix_to_document(shown)) == golden("interlace_I2.json")


def test_display_order_is_an_involution(identity):
    game = interlace_power(identity, 3)
    assert display_order(display_order(game, 2, 3), 2, 3) == game


def test_display_order_checks_width(phi0):
    with pytest.raises(DomainError):
        display_order(interlace_power(phi0, 2), 2, 3)


def test_binary_interlacing_is_the_displayed_square(phi0, identity):
    for game in (phi0, identity):
        assert interlace_binary(game, game) == display_order(interlace_power(game, 2), game.cols, 2)


def test_binary_interlacing_of_different_games(phi0, identity):
    mixed = interlace_binary(phi0, identity)
    assert mixed.shape == (3, 4)
    assert mixed.to_lists() == [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1]]


def test_alphabet_mismatch(phi0):
    with pytest.raises(DomainError):
        interlace_binary(phi0, new_matrix([[2, 0]], alphabet_size=3))


def test_power_must_be_positive(phi0):
    with pytest.raises(DomainError):
        interlace_power(phi0, 0)


def test_guard_refuses_large_powers(phi0):
    with pytest.raises(SizeGuardError) as info:
        interlace_power(phi0, 20, max_cells=1000)
    assert info.value.requested == 20 * 2**20
    assert info.value.limit == 1000


def test_rank_never_exceeds_components_times_rank(phi0, identity):
    assert interlace_rank_bound(phi0, 3) == (3, 3)
    rank, cap = interlace_rank_bound(identity, 2)
    assert (rank, cap) == (3, 4)
