from hypothesis import given, strategies as st

import pytest

from flagchow.perm import (
    FlagType,
    Permutation,
    all_permutations,
    code_and_dominance,
    enumerate_index_sets,
    length,
    longest_element,
    monk_indices,
    r_permutations,
)

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(
    lambda w: Permutation(tuple(w))
)


def test_length_examples():
    assert length(Permutation(())) == 0
    assert length(Permutation((3, 2, 1))) == 3
    assert length(Permutation((3, 1, 2))) == 2


def test_longest_element():
    assert longest_element(1).is_identity()
    assert longest_element(3) == Permutation((3, 2, 1))
    w = longest_element(4)
    assert w.window == (4, 3, 2, 1) and w.length() == 6


def test_trimmed_window_is_canonical():
    assert Permutation((2, 1, 3, 4)).window == (2, 1)
    assert Permutation((1, 2, 3)) == Permutation(())
    with pytest.raises(ValueError):
        Permutation((1, 1))


def test_index_sets_examples():
    sets = enumerate_index_sets(2, 2)
    assert set(sets.s_n) == {Permutation(()), Permutation((2, 1))}
    assert Permutation((3, 1, 2)) in sets.t_n
    r = FlagType((1, 3))
    assert set(enumerate_index_sets(3, 2, r).s_n) == {
        Permutation(()),
        Permutation((2, 1, 3)),
        Permutation((3, 1, 2)),
    }
    one = enumerate_index_sets(1, 0)
    assert one.s_n == (Permutation(()),) and one.t_n == ()


def test_index_sets_reject_mismatched_flag():
    with pytest.raises(ValueError):
        enumerate_index_sets(3, 2, FlagType((1, 4)))


def test_monk_indices_examples():
    assert monk_indices(Permutation((2, 1)), 1, 2) == ([], [(1, 3)])
    cls, bnd = monk_indices(Permutation((2, 1, 3)), 1, 3)
    assert cls == [(1, 3)] and bnd == []
    assert Permutation((2, 1)).swap_positions(1, 3) == Permutation((3, 1, 2))
    assert monk_indices(Permutation(()), 1, 3) == ([(1, 2)], [])
    with pytest.raises(ValueError):
        monk_indices(Permutation(()), 3, 3)


def test_code_and_dominance_examples():
    assert code_and_dominance(Permutation((3, 2, 1))) == ((2, 1, 0), True)
    assert code_and_dominance(Permutation((2, 1, 3))) == ((1, 0), True)
    assert code_and_dominance(Permutation((1, 3, 2))) == ((0, 1, 0), False)


def test_flag_type_data():
    r = FlagType((1, 3))
    assert r.dim == 2 and r.blocks() == [(1,), (2, 3)]
    assert FlagType.complete(4).dim == 6
    assert r_permutations(3, r)[-1] == r.longest_permutation()
    with pytest.raises(ValueError):
        FlagType((2, 2))


@given(perms)
def test_length_equals_inverse_length(w):
    assert w.length() == w.inverse().length()
    assert (w * w.inverse()).is_identity()


@given(perms)
def test_code_round_trip(w):
    assert sum(w.code()) == w.length()
    assert Permutation.from_code(w.code()) == w


@given(perms)
def test_reduced_word_rebuilds(w):
    word = w.reduced_word()
    assert len(word) == w.length()
    u = Permutation(())
    for i in word:
        u = u * Permutation.simple(i)
    assert u == w


def test_enumeration_partitions_exhaustively():
    for n in range(1, 5):
        sets = enumerate_index_sets(n, 4)
        upper = sets.s_upper
        assert len(set(upper)) == len(upper)
        assert all(max(w.descents(), default=0) <= n for w in upper)
        assert set(sets.t_n) == {w for w in upper if not w.fits_in(n)}
        assert {w for w in upper if w.fits_in(n)} == {w for w in all_permutations(n) if w.length() <= 4}


def test_monk_classical_raise_length_exhaustive():
    for n in range(2, 6):
        for w in all_permutations(n):
            for k in range(1, n):
                cls, bnd = monk_indices(w, k, n)
                assert all(w.swap_positions(i, j).length() == w.length() + 1 for i, j in cls)
                assert all(w.swap_positions(i, j).length() == w.length() + 1 for i, j in bnd)
