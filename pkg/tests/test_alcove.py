import pytest
from hypothesis import given, strategies as st

from asymdouble.alcove import (
    AlcoveError,
    Field,
    conjugate,
    enumerate_fields,
    fixed_point,
    from_young,
    grading,
    sigma_act,
)


@pytest.mark.parametrize("k", range(1, 9))
def test_field_counts(k):
    assert len(enumerate_fields(2, k)) == k + 1
    assert len(enumerate_fields(3, k)) == (k + 1) * (k + 2) // 2


def test_vacuum_first_and_sorted():
    t = enumerate_fields(3, 4)
    assert t[0].is_vacuum
    assert [f.labels for f in t] == sorted(f.labels for f in t)


@pytest.mark.parametrize("labels,k", [((-1,), 3), ((4,), 3), ((2, 2), 3), ((1,), 3)])
def test_out_of_alcove_rejected(labels, k):
    with pytest.raises(AlcoveError):
        Field(labels, 3 if len(labels) == 1 else 3, k)


def test_unsupported_rank():
    with pytest.raises(AlcoveError):
        enumerate_fields(4, 2)


def test_su3_grade_counts_at_level_multiple_of_three():
    for kk in (1, 2, 3):
        t = enumerate_fields(3, 3 * kk)
        assert len(t.grade_indices(0)) == 3 * kk * (kk + 1) // 2 + 1
        assert len(t.grade_indices(1)) == len(t.grade_indices(2)) == 3 * kk * (kk + 1) // 2


def test_sigma_examples():
    assert sigma_act(Field((1,), 2, 4)).labels == (3,)
    assert sigma_act(Field((1, 0), 3, 3)).labels == (2, 1)
    assert sigma_act(Field((0, 0), 3, 3)).labels == (3, 0)


def test_fixed_point():
    assert fixed_point(3, 6).labels == (2, 2)
    assert fixed_point(2, 4).labels == (2,)
    with pytest.raises(AlcoveError):
        fixed_point(3, 4)


def test_young_labels():
    assert from_young("42", 6).labels == (2, 2)
    assert from_young("(0)", 6).is_vacuum
    assert Field((2, 2), 3, 6).young_label() == "(42)"
    assert Field((0, 0), 3, 6).young_label() == "(0)"
    with pytest.raises(AlcoveError):
        from_young((1, 2), 6)


su3_fields = st.integers(1, 9).flatmap(
    lambda k: st.tuples(st.integers(0, k), st.integers(0, k)).filter(lambda p: sum(p) <= k).map(
        lambda p: Field(p, 3, k)
    )
)


@given(su3_fields)
def test_sigma_has_order_n_and_shifts_grade(x):
    assert sigma_act(x, 3) == x
    assert sigma_act(sigma_act(x), 2) == x
    assert grading(sigma_act(x)) == (grading(x) + x.level) % 3


@given(su3_fields)
def test_conjugation_is_an_involution_negating_grade(x):
    assert conjugate(conjugate(x)) == x
    assert (grading(x) + grading(conjugate(x))) % 3 == 0


@given(st.integers(1, 20).flatmap(lambda k: st.integers(0, k).map(lambda j: Field((j,), 2, k))))
def test_su2_sigma_reflects(x):
    assert sigma_act(x).labels == (x.level - x.labels[0],)


def test_table_index_forms():
    t = enumerate_fields(2, 4)
    assert t.index(3) == t.index((3,)) == t.index(Field((3,), 2, 4)) == 3
    with pytest.raises(AlcoveError):
        t.index(9)
    assert t.sigma() == (4, 3, 2, 1, 0)
