from __future__ import annotations

from itertools import permutations, product

import numpy as np

from ccgame.models.matrix import new_matrix
from ccgame.services.interlace import display_order, interlace_power
from ccgame.services.subgame import SubgameWitness, is_subgame, set_is_subgame, verify_witness


def _brute_force(small, large) -> bool:
    for rows in permutations(range(large.rows), small.rows):
        for cols in permutations(range(large.cols), small.cols):
            if verify_witness(small, large, SubgameWitness(row_map=rows, col_map=cols)):
                return True
    return False


def test_game_is_a_subgame_of_itself(identity):
    witness = is_subgame(identity, identity)
    assert witness is not None
    assert verify_witness(identity, identity, witness)


def test_identity_inside_its_interlaced_square(identity):
    large = display_order(interlace_power(identity, 2), 2, 2)
    witness = is_subgame(identity, large)
    assert witness is not None
    assert verify_witness(identity, large, witness)


def test_larger_game_is_never_a_subgame(identity, phi0):
    assert is_subgame(identity, phi0) is None
    assert is_subgame(new_matrix([[1, 0, 1]]), identity) is None


def test_missing_pattern():
    constant = new_matrix([[0, 0], [0, 0]])
    assert is_subgame(new_matrix([[1]]), constant) is None
    assert is_subgame(new_matrix([[0, 0]]), constant) is not None


def test_column_maps_must_be_injective():
    # both small columns would like the single 1 column
    small = new_matrix([[1, 1]])
    large = new_matrix([[1, 0, 0]])
    assert is_subgame(small, large) is None


def test_verify_witness_rejects_bad_maps(identity):
    assert not verify_witness(identity, identity, SubgameWitness(row_map=(0, 0), col_map=(0, 1)))
    assert not verify_witness(identity, identity, SubgameWitness(row_map=(0, 1), col_map=(1, 0)))
    assert not verify_witness(identity, identity, SubgameWitness(row_map=(0, 2), col_map=(0, 1)))
    assert not verify_witness(identity, identity, SubgameWitness(row_map=(0,), col_map=(0, 1)))
    assert verify_witness(identity, identity, SubgameWitness(row_map=(1, 0), col_map=(1, 0)))


def test_search_agrees_with_brute_force():
    rng = np.random.default_rng(7)
    smalls = [new_matrix(np.array(cells).reshape(2, 2)) for cells in product((0, 1), repeat=4)]
    for _ in range(12):
        large = new_matrix(rng.integers(0, 2, size=(3, 4)))
        for small in smalls:
            found = is_subgame(small, large)
            assert (found is not None) == _brute_force(small, large)
            if found is not None:
                assert verify_witness(small, large, found)


def test_larger_alphabet():
    large = new_matrix([[0, 1, 2], [2, 0, 1]], alphabet_size=3)
    assert is_subgame(new_matrix([[2, 1]], alphabet_size=3), large) is not None
    assert is_subgame(new_matrix([[2, 2]], alphabet_size=3), large) is None


def test_set_subgame(identity, phi0):
    # every game of the large set must contain one of the small set
    assert set_is_subgame([phi0], [identity, new_matrix([[1, 0, 0]])])
    assert not set_is_subgame([identity], [identity, phi0])
    assert set_is_subgame([identity, phi0], [identity, phi0])
