from __future__ import annotations

import pytest

from ccgame.exceptions import DomainError, PreconditionError, SizeGuardError
from ccgame.models.matrix import new_matrix
from ccgame.models.protocol import ProtocolLeaf, protocol_verify
from ccgame.services.directsum import (
    DirectSumSpec,
    announcement_bits,
    direct_sum_power,
    lift_maps,
    lift_protocol,
    lifted_game,
    one_round_upper_instance,
    transpose_ds_instance,
    verify_lift_maps,
    verify_one_round_upper,
    verify_transpose_ds,
)
from ccgame.services.interlace import interlace_power
from ccgame.services.solver import solve_exact


def test_direct_sum_encodes_value_tuples(phi0):
    game = direct_sum_power(phi0, 2)
    assert game.to_lists() == [[3, 2, 1, 0]]
    assert game.alphabet_size == 4


def test_single_copy_is_the_game(identity):
    assert direct_sum_power(identity, 1) == identity


def test_direct_sum_shape(identity):
    spec = DirectSumSpec(identity, 3)
    assert spec.shape == (8, 8)
    assert spec.build().shape == (8, 8)
    with pytest.raises(DomainError):
        DirectSumSpec(identity, 0)


def test_direct_sum_guards(identity):
    with pytest.raises(DomainError):
        direct_sum_power(identity, 0)
    with pytest.raises(SizeGuardError):
        direct_sum_power(identity, 20, max_cells=1000)
    with pytest.raises(DomainError):
        direct_sum_power(identity, 64)


@pytest.mark.parametrize("kappa,copies,bits", [(1, 3, 0), (2, 1, 1), (3, 1, 2), (2, 2, 2), (3, 2, 4), (4, 1, 2)])
def test_announcement_bits(kappa, copies, bits):
    assert announcement_bits(kappa, copies) == bits


def test_lift_maps_of_a_single_copy(phi0):
    maps = lift_maps(phi0, 2, 1, 1)
    assert maps.rows == (1,)
    assert maps.sigma == (0,)
    assert maps.tau == (0, 0, 1, 1)
    with pytest.raises(DomainError):
        lift_maps(phi0, 2, 1, 2)


@pytest.mark.parametrize("kappa,copies", [(2, 1), (3, 1), (2, 2)])
def test_lift_maps_reproduce_the_lifted_game(phi0, identity, kappa, copies):
    assert verify_lift_maps(phi0, kappa, copies)
    assert verify_lift_maps(identity, kappa, 1)


def test_lifted_game_is_the_direct_sum_of_interlacings(phi0):
    assert lifted_game(phi0, 2, 1) == interlace_power(phi0, 2)
    assert lifted_game(phi0, 2, 2).shape == (4, 16)


@pytest.mark.parametrize("kappa,copies", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_lifted_protocol_is_valid_and_costs_the_bound(phi0, kappa, copies):
    solved = solve_exact(direct_sum_power(phi0, copies))
    lifted = lift_protocol(solved.tree, phi0, kappa, copies)
    check = protocol_verify(lifted, lifted_game(phi0, kappa, copies))
    assert check.valid
    assert check.cost == solved.depth + announcement_bits(kappa, copies)


def test_lift_needs_a_correct_protocol(phi0):
    with pytest.raises(PreconditionError):
        lift_protocol(ProtocolLeaf(0), phi0, 2, 1)
    with pytest.raises(DomainError):
        lift_protocol(ProtocolLeaf(0), new_matrix([[0, 0]]), 0, 1)


def test_one_round_upper_small_cases(phi0):
    outcome = one_round_upper_instance(phi0, 2, 1)
    assert outcome.holds
    assert (outcome.base_depth, outcome.bits, outcome.lifted_cost) == (1, 1, 2)
    assert outcome.exact_lifted == 2

    outcome = one_round_upper_instance(phi0, 3, 1)
    assert outcome.holds
    assert outcome.lifted_cost == 3
    assert outcome.exact_lifted == 3


def test_one_round_upper_skips_exact_side_outside_policy(phi0):
    outcome = one_round_upper_instance(phi0, 3, 2)
    assert outcome.holds
    assert outcome.exact_lifted is None
    assert "9x64" in outcome.note
    assert outcome.lhs == outcome.lifted_cost == 6


def test_one_round_upper_report(phi0):
    report = verify_one_round_upper(phi0, 2, 2)
    assert report.status == "pass"
    assert report.lemma == "one-round-upper"
    assert report.values["base_depth"] == 2
    assert report.values["announcement_bits"] == 2
    assert report.values["lifted_cost"] == 4
    assert report.values["exact_lifted"] <= 4
    assert report.instances == 4


def test_transpose_direct_sum(phi0):
    assert transpose_ds_instance(phi0, 2) == (2, 2)
    report = verify_transpose_ds(new_matrix([[1, 0], [1, 1]]), 2)
    assert report.status == "pass"
    assert report.values["direct"] == report.values["transposed"]
