from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from ccgame.config import SolverPolicy
from ccgame.exceptions import DomainError, ProtocolStructureError, SizeGuardError
from ccgame.models.matrix import new_matrix, phi_base, transpose
from ccgame.models.protocol import ProtocolLeaf, ProtocolNode, count_leaves, protocol_verify
from ccgame.services.interlace import interlace_power
from ccgame.services.solver import (
    greedy_upper,
    lower_bound_leafcount,
    lower_bound_log_rank,
    solve_exact,
    solve_reference,
)
from ccgame.utils.bitmasks import canonical_blocks, indices_of, mask_of
from ccgame.utils.rank import ceil_log2, integer_rank


@pytest.mark.parametrize(
    "cells,depth",
    [
        ([[1, 0]], 1),
        ([[1, 0], [0, 1]], 2),
        ([[1, 0], [1, 1]], 2),
        ([[0, 0], [0, 0]], 0),
        ([[1, 1, 0, 0], [1, 0, 1, 0]], 2),
    ],
)
def test_known_complexities(cells, depth):
    game = new_matrix(cells)
    result = solve_exact(game)
    assert result.depth == depth
    assert result.method == "exact"
    assert protocol_verify(result.tree, game).valid


def test_exact_agrees_with_reference_on_every_3x3():
    for bits in product((0, 1), repeat=9):
        game = new_matrix(np.array(bits).reshape(3, 3))
        result = solve_exact(game)
        assert result.depth == solve_reference(game), bits
        check = protocol_verify(result.tree, game)
        assert check.valid
        assert check.cost == result.depth


@pytest.mark.slow
def test_exact_agrees_with_reference_on_random_games():
    rng = np.random.default_rng(11)
    for _ in range(200):
        rows, cols = (int(v) for v in rng.integers(1, 5, size=2))
        alphabet = int(rng.integers(2, 4))
        game = new_matrix(rng.integers(0, alphabet, size=(rows, cols)), alphabet_size=alphabet)
        assert solve_exact(game).depth == solve_reference(game)


def test_larger_alphabet():
    game = new_matrix([[0, 1, 2]], alphabet_size=3)
    assert solve_exact(game).depth == 2
    assert solve_reference(game) == 2


def test_transposition_keeps_complexity_on_every_3x3():
    for bits in product((0, 1), repeat=9):
        game = new_matrix(np.array(bits).reshape(3, 3))
        assert solve_exact(game).depth == solve_exact(transpose(game)).depth, bits


def test_depth_budget_stops_the_search(identity):
    result = solve_exact(identity, depth_budget=1)
    assert result.depth is None
    assert result.exceeded_budget
    assert solve_exact(identity, depth_budget=2).depth == 2


def test_policy_refuses_large_games():
    with pytest.raises(SizeGuardError):
        solve_exact(new_matrix(np.zeros((5, 17), dtype=np.int64)))
    with pytest.raises(SizeGuardError):
        solve_exact(new_matrix(np.eye(3, dtype=np.int64)), policy=SolverPolicy(min_side=2, max_side=2))


def test_reference_is_capped():
    with pytest.raises(SizeGuardError):
        solve_reference(new_matrix(np.eye(5, dtype=np.int64)))


def test_stats_are_reported(identity):
    stats = solve_exact(identity).stats
    assert stats.budgets_tried >= 1
    assert stats.seconds >= 0


def test_greedy_is_a_valid_upper_bound():
    rng = np.random.default_rng(5)
    for _ in range(30):
        game = new_matrix(rng.integers(0, 2, size=(4, 6)))
        greedy = greedy_upper(game)
        assert greedy.method == "greedy"
        assert protocol_verify(greedy.tree, game).valid
        assert greedy.depth >= solve_exact(game).depth


def test_greedy_never_beats_exact_on_every_3x3():
    for bits in product((0, 1), repeat=9):
        game = new_matrix(np.array(bits).reshape(3, 3))
        greedy = greedy_upper(game)
        assert protocol_verify(greedy.tree, game).valid, bits
        assert greedy.depth >= solve_exact(game).depth, bits


def test_greedy_on_interlaced_phi0():
    game = interlace_power(phi_base(), 4)
    assert game.shape == (4, 16)
    greedy = greedy_upper(game)
    assert protocol_verify(greedy.tree, game).valid
    assert solve_exact(game).depth <= greedy.depth <= 4


def test_greedy_handles_wide_games():
    rng = np.random.default_rng(9)
    game = new_matrix(rng.integers(0, 2, size=(12, 40)))
    greedy = greedy_upper(game)
    assert protocol_verify(greedy.tree, game).valid
    assert greedy.depth >= lower_bound_leafcount(game)
    assert count_leaves(greedy.tree) <= 2**greedy.depth


def test_lower_bounds(identity):
    assert lower_bound_leafcount(identity) == 2
    assert lower_bound_log_rank(identity) == 1
    with pytest.raises(DomainError):
        lower_bound_log_rank(new_matrix([[0, 2]], alphabet_size=3))


@pytest.mark.parametrize(
    "rows,rank",
    [
        ([[1, 2], [2, 4]], 1),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
        ([[1, 1, 0], [0, 1, 1], [1, 0, 1]], 3),
        ([[0, 0]], 0),
        ([[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1]], 3),
    ],
)
def test_integer_rank(rows, rank):
    assert integer_rank(rows) == rank


@pytest.mark.parametrize("value,log", [(0, 0), (1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (1024, 10)])
def test_ceil_log2(value, log):
    assert ceil_log2(value) == log


def test_canonical_blocks_skip_mirrors():
    assert list(canonical_blocks([0b1, 0b10, 0b100])) == [0b1, 0b11, 0b101]
    assert list(canonical_blocks([0b11])) == []
    assert indices_of(mask_of([4, 0, 2])) == [0, 2, 4]


def test_protocol_verify_reports_wrong_answers(identity):
    check = protocol_verify(ProtocolLeaf(1), identity)
    assert not check.valid
    assert check.counterexample == (0, 1)


@pytest.mark.parametrize("left", [(), (0, 1), (2,)])
def test_malformed_protocols(identity, left):
    tree = ProtocolNode(player="row", left=left, children=(ProtocolLeaf(1), ProtocolLeaf(0)))
    with pytest.raises(ProtocolStructureError):
        protocol_verify(tree, identity)
