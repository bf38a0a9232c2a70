import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from opchains.symgroup import (
    GroupAlgebraElement,
    Permutation,
    check_bimodule_identity,
    enumerate_sn,
    left_regular_matrix,
    lie_bracket_element,
    operadic_substitute,
    shuffle_element,
    substitute_permutation,
    symmetrizer,
)
from opchains.linalg import Matrix, eigenspace_basis


def perm(*images):
    return Permutation(images)


def elem(*pairs):
    n = pairs[0][0].n
    terms = {}
    for p, c in pairs:
        terms[p] = terms.get(p, 0) + c
    return GroupAlgebraElement(n, terms)


# ---------------------------------------------------------------------------
# word-evaluation oracle, independent of the implementation's splicing
# ---------------------------------------------------------------------------

def word_of(p):
    """Evaluate p on the formal word (1, 2, ..., n)."""
    # position k of the product carries letter p(k)
    return tuple(p(k) for k in range(1, p.n + 1))


def oracle_substitute(p, i, q):
    """Substitute by splicing the evaluated words, then re-read the result."""
    outer = word_of(p)
    inner = word_of(q)
    m = q.n
    spliced = []
    for letter in outer:
        if letter == i:
            spliced.extend(t + i - 1 for t in inner)
        elif letter > i:
            spliced.append(letter + m - 1)
        else:
            spliced.append(letter)
    # spliced[pos-1] is the letter at position pos, which is sigma(pos)
    return Permutation(spliced)


def test_permutation_basics():
    p = perm(2, 3, 1)
    assert p(1) == 2 and p(3) == 1
    assert p.inverse() * p == Permutation.identity(3)
    assert word_of(p) == p.word()


def test_shuffle_n3_matches_worked_example():
    sh3 = shuffle_element(3)
    expected = elem(
        (perm(1, 2, 3), 4),
        (perm(2, 1, 3), 1),
        (perm(2, 3, 1), 1),
        (perm(3, 1, 2), 1),
        (perm(1, 3, 2), 1),
    )
    assert sh3 == expected


def test_shuffle_n1_and_n2():
    assert shuffle_element(1) == elem((perm(1), 2))
    assert shuffle_element(2) == elem((perm(1, 2), 3), (perm(2, 1), 1))


def test_shuffle_rejects_zero():
    with pytest.raises(ValueError):
        shuffle_element(0)


@pytest.mark.parametrize("n", range(1, 11))
def test_shuffle_coefficient_sum(n):
    assert shuffle_element(n).coefficient_sum() == 2 ** n


def test_symmetrizer_small():
    assert symmetrizer(1) == elem((perm(1), 1))
    s2 = symmetrizer(2)
    assert s2.coefficient(perm(1, 2)) == Fraction(1, 2)
    assert s2.coefficient(perm(2, 1)) == Fraction(1, 2)
    assert s2 * s2 == s2


@pytest.mark.parametrize("n", range(1, 8))
def test_shuffle_times_symmetrizer(n):
    sh = shuffle_element(n)
    s = symmetrizer(n)
    assert sh * s == s.scale(2 ** n)


def test_substitute_identities():
    e2 = GroupAlgebraElement.identity(2)
    assert operadic_substitute(e2, 1, e2) == GroupAlgebraElement.identity(3)


def test_substitute_m2_bracket():
    # m_2 o_1 l = [123] - [213]
    l = lie_bracket_element()
    m2 = GroupAlgebraElement.identity(2)
    got = operadic_substitute(m2, 1, l)
    expected = elem((perm(1, 2, 3), 1), (perm(2, 1, 3), -1))
    assert got == expected


def test_substitute_against_word_oracle():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        i = rng.randint(1, n)
        p = Permutation(rng.sample(range(1, n + 1), n))
        q = Permutation(rng.sample(range(1, m + 1), m))
        assert substitute_permutation(p, i, q) == oracle_substitute(p, i, q)


def test_substitute_21_o2_21():
    got = substitute_permutation(perm(2, 1), 2, perm(2, 1))
    # (a,b) -> ba composed in slot 2 with (c,d) -> dc gives a1a2a3 -> a3a2a1
    assert got == oracle_substitute(perm(2, 1), 2, perm(2, 1))
    assert got.word() == (3, 2, 1)


@given(st.integers(1, 3), st.integers(1, 3), st.data())
@settings(max_examples=40, deadline=None)
def test_substitute_bilinear(n, m, data):
    i = data.draw(st.integers(1, n))
    perms_n = enumerate_sn(n)
    perms_m = enumerate_sn(m)
    a = GroupAlgebraElement(n, {data.draw(st.sampled_from(perms_n)):
                                data.draw(st.integers(-3, 3))})
    b = GroupAlgebraElement(n, {data.draw(st.sampled_from(perms_n)):
                                data.draw(st.integers(-3, 3))})
    c = GroupAlgebraElement(m, {data.draw(st.sampled_from(perms_m)):
                                data.draw(st.integers(-3, 3))})
    left = operadic_substitute(a + b, i, c)
    right = operadic_substitute(a, i, c) + operadic_substitute(b, i, c)
    assert left == right


def test_left_regular_identity():
    for n in (1, 2, 3):
        e = GroupAlgebraElement.identity(n)
        size = len(enumerate_sn(n))
        assert left_regular_matrix(e) == Matrix.identity(size)


def test_left_regular_sh1():
    m = left_regular_matrix(shuffle_element(1))
    assert m == Matrix.from_rows([[2]])


def test_left_regular_sh2_eigenvalues():
    m = left_regular_matrix(shuffle_element(2))
    assert eigenspace_basis(m, 2).cols == 1
    assert eigenspace_basis(m, 4).cols == 1
    assert eigenspace_basis(m, 3).cols == 0


@pytest.mark.parametrize("n", range(1, 5))
def test_shuffle_regular_matrix_diagonalizable(n):
    m = left_regular_matrix(shuffle_element(n))
    total = sum(eigenspace_basis(m, 2 ** i).cols for i in range(1, n + 1))
    assert total == m.rows


def test_bimodule_identity_explicit_cases():
    assert check_bimodule_identity(1, 1)
    assert check_bimodule_identity(2, 1)
    assert check_bimodule_identity(4, 3)


def test_bimodule_identity_all_small():
    for n in range(1, 5):
        for i in range(1, n + 1):
            assert check_bimodule_identity(n, i)


def test_substitute_position_out_of_range():
    l = lie_bracket_element()
    with pytest.raises(ValueError):
        operadic_substitute(GroupAlgebraElement.identity(2), 3, l)
