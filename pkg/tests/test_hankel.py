from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_tp_k
from tpkit.condensation import condense
from tpkit.errors import DomainError, HypothesisError, ShapeError
from tpkit.exact import ExactMatrix
from tpkit.hankel import (
    hankel_from_moments,
    hankel_from_sequence,
    hankel_sequence,
    is_hankel,
    is_positive_definite,
    is_tp_hankel,
    moment_sequence,
    shifted_hankel,
    verify_theorem_c,
)
from tpkit.report import PASS


def test_construction():
    A = hankel_from_sequence([1, 2, 3, 4, 5])
    assert A == ExactMatrix([[1, 2, 3], [2, 3, 4], [3, 4, 5]])
    assert hankel_sequence(A) == [1, 2, 3, 4, 5]
    assert shifted_hankel(A) == ExactMatrix([[2, 3], [3, 4]])


def test_even_length_rejected():
    with pytest.raises(ShapeError):
        hankel_from_sequence([1, 2])


def test_non_hankel_rejected():
    A = ExactMatrix([[1, 2], [3, 4]])
    assert not is_hankel(A)
    with pytest.raises(DomainError):
        is_tp_hankel(A)
    with pytest.raises(DomainError):
        is_positive_definite(A)


def test_small_not_tp_example():
    v = is_tp_hankel(hankel_from_sequence([1, 1, 2, 1, 1]))
    assert not v.holds
    assert v.witness.rows.indices == (1, 2, 3) and v.witness.value == -4


def test_shifted_block_witness_uses_original_columns():
    # A = I is positive definite; its shifted block is [0].
    A = hankel_from_sequence([1, 0, 1])
    v = is_tp_hankel(A)
    assert not v.holds
    assert v.witness.rows.indices == (1,) and v.witness.cols.indices == (2,)
    assert v.witness.value == 0


def test_order_one():
    assert is_tp_hankel(hankel_from_sequence([3])).holds
    assert not is_tp_hankel(hankel_from_sequence([0])).holds


def test_hilbert_is_tp_hankel():
    assert is_tp_hankel(hankel_from_sequence([Fraction(1, k + 1) for k in range(9)])).holds


@st.composite
def hankel_inputs(draw):
    order = draw(st.integers(1, 4))
    kind = draw(st.sampled_from(["moments", "perturbed", "random"]))
    if kind == "random":
        seq = [draw(st.integers(-2, 6)) for _ in range(2 * order - 1)]
    else:
        seq = moment_sequence(order, draw(st.integers(0, 2**32)), 5)
        if kind == "perturbed":
            t = draw(st.integers(0, len(seq) - 1))
            seq[t] += draw(st.sampled_from([Fraction(-1), Fraction(-1, 10), Fraction(1, 2)]))
    return hankel_from_sequence(seq)


@settings(max_examples=200, deadline=None)
@given(hankel_inputs())
def test_criterion_agrees_with_brute_force(A):
    assert is_tp_hankel(A).holds == brute_tp_k(A.data, A.nrows)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32))
def test_moment_hankels_are_tp(order, seed):
    A = hankel_from_moments(order, seed)
    assert is_tp_hankel(A).holds


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32))
def test_condensations_of_tp_hankel(order, seed):
    A = hankel_from_moments(order, seed)
    assert verify_theorem_c(A).status == PASS
    n = A.nrows - 1
    for k in range(1, n):
        D = condense(A, k)
        assert is_hankel(D) and is_tp_hankel(D).holds
        assert shifted_hankel(D) == condense(shifted_hankel(A), k)


def test_hankel_condensation_needs_tp_input():
    with pytest.raises(HypothesisError):
        verify_theorem_c([1, 1, 2, 1, 1])
