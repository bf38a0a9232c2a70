"""Permutations, the rational symmetric group algebra, and shuffle elements.

Conventions
-----------
Permutations are stored in one-line notation, 1-based: ``sigma(k) =
images[k-1]``.  A permutation names the n-ary multiplication

    (a_1, ..., a_n)  ->  a_{sigma(1)} a_{sigma(2)} ... a_{sigma(n)}

in the free associative algebra, so ``sigma.word() == sigma.images``.  The
group product is written in diagrammatic order: ``(p * q)(k) = q(p(k))``,
i.e. apply p first.  Operadic substitution is defined on words (splice the
inner word into the chosen letter and renumber), which makes word evaluation
commute with substitution by construction.  This combination of conventions
is forced: it is the one under which the shuffle/bracket compatibility
``(sh_n m_n) o_i l = sh_{n+1} (m_n o_i l)`` checked by
``check_bimodule_identity`` holds as stated (naming operations through
``sigma^{-1}`` instead breaks it for n >= 3 under either product order).

The shuffle element ``shuffle_element(n)`` is the sum over all ``2^n``
subsets A of {1..n} of the permutation sending ``1..|A|`` to A in increasing
order and the remaining positions to the complement in increasing order.
Distinct subsets yielding the same permutation accumulate coefficients.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import Matrix, Scalar, _norm, as_fraction


class Permutation:
    """Immutable permutation of {1..n} in one-line notation."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("Permutation is immutable")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Diagrammatic product: (p * q)(k) = q(p(k))."""
        if self.n != other.n:
            raise ValueError("arity mismatch")
        return Permutation(tuple(other.images[self.images[k] - 1]
                                 for k in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, v in enumerate(self.images):
            inv[v - 1] = k + 1
        return Permutation(inv)

    def word(self) -> tuple[int, ...]:
        """Letter indices of the associative word this permutation names."""
        return self.images

    @classmethod
    def from_word(cls, word: Sequence[int]) -> "Permutation":
        return cls(word)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, i: int) -> "Permutation":
        """t_i, exchanging i and i+1."""
        if not 1 <= i < n:
            raise ValueError("transposition index out of range")
        im = list(range(1, n + 1))
        im[i - 1], im[i] = im[i], im[i - 1]
        return cls(im)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return "[" + " ".join(map(str, self.images)) + "]"


def enumerate_sn(n: int) -> list[Permutation]:
    """All of S_n in lexicographic one-line order (the fixed basis order)."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


class GroupAlgebraElement:
    """Finite Q-linear combination of permutations of a common arity."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Permutation, Scalar] | None = None):
        self.n = n
        t: dict[Permutation, Scalar] = {}
        for p, c in (terms or {}).items():
            if p.n != n:
                raise ValueError("mixed arities in group algebra element")
            c = _norm(c)
            if c:
                t[p] = c
        self.terms = t

    @classmethod
    def basis(cls, p: Permutation, coeff: Scalar = 1) -> "GroupAlgebraElement":
        return cls(p.n, {p: coeff})

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls.basis(Permutation.identity(n))

    def coefficient(self, p: Permutation) -> Fraction:
        return as_fraction(self.terms.get(p, 0))

    def coefficient_sum(self) -> Fraction:
        return as_fraction(sum(self.terms.values(), 0))

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        t = dict(self.terms)
        for p, c in other.terms.items():
            acc = _norm(t.get(p, 0) + c)
            if acc:
                t[p] = acc
            else:
                t.pop(p, None)
        return GroupAlgebraElement(self.n, t)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "GroupAlgebraElement":
        return GroupAlgebraElement(
            self.n, {p: _norm(v * c) for p, v in self.terms.items()})

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        """Group algebra product (bilinear extension of composition)."""
        self._check(other)
        t: dict[Permutation, Scalar] = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                r = p * q
                acc = _norm(t.get(r, 0) + c * d)
                if acc:
                    t[r] = acc
                else:
                    t.pop(r, None)
        return GroupAlgebraElement(self.n, t)

    def _check(self, other: "GroupAlgebraElement") -> None:
        if self.n != other.n:
            raise ValueError("arity mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.n == other.n and \
            all(as_fraction(c) == other.coefficient(p) for p, c in self.terms.items()) and \
            all(as_fraction(c) == self.coefficient(p) for p, c in other.terms.items())

    def __hash__(self):
        raise TypeError("GroupAlgebraElement is not hashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for p in sorted(self.terms):
            c = self.terms[p]
            bits.append(f"{c}*{p}")
        return " + ".join(bits)


def shuffle_element(n: int) -> GroupAlgebraElement:
    """sum over all subsets A of {1..n} of the (|A|, n-|A|)-shuffle."""
    if n < 1:
        raise ValueError("shuffle_element requires n >= 1")
    terms: dict[Permutation, Scalar] = {}
    base = list(range(1, n + 1))
    for bits in range(2 ** n):
        inside = [k for k in base if bits >> (k - 1) & 1]
        outside = [k for k in base if not bits >> (k - 1) & 1]
        p = Permutation(inside + outside)
        terms[p] = terms.get(p, 0) + 1
    return GroupAlgebraElement(n, terms)


def symmetrizer(n: int) -> GroupAlgebraElement:
    """(1/n!) times the sum of all permutations; idempotent."""
    if n < 1:
        raise ValueError("symmetrizer requires n >= 1")
    c = Fraction(1, _factorial(n))
    return GroupAlgebraElement(n, {p: c for p in enumerate_sn(n)})


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def substitute_permutation(sigma: Permutation, i: int,
                           tau: Permutation) -> Permutation:
    """Operadic substitution sigma o_i tau inside the associative operad.

    Computed on words: the letter i of sigma's word is replaced by tau's word
    shifted to letters i..i+m-1, and letters above i are shifted up by m-1.
    """
    n, m = sigma.n, tau.n
    if not 1 <= i <= n:
        raise ValueError(f"position {i} out of range 1..{n}")
    out: list[int] = []
    for letter in sigma.word():
        if letter == i:
            out.extend(t + i - 1 for t in tau.word())
        elif letter > i:
            out.append(letter + m - 1)
        else:
            out.append(letter)
    return Permutation.from_word(out)


def operadic_substitute(sigma: GroupAlgebraElement, i: int,
                        tau: GroupAlgebraElement) -> GroupAlgebraElement:
    """Bilinear extension of substitution; lands in arity n + m - 1."""
    if not 1 <= i <= sigma.n:
        raise ValueError(f"position {i} out of range 1..{sigma.n}")
    out = GroupAlgebraElement(sigma.n + tau.n - 1)
    terms: dict[Permutation, Scalar] = {}
    for p, c in sigma.terms.items():
        for q, d in tau.terms.items():
            r = substitute_permutation(p, i, q)
            acc = _norm(terms.get(r, 0) + c * d)
            if acc:
                terms[r] = acc
            else:
                terms.pop(r, None)
    return GroupAlgebraElement(sigma.n + tau.n - 1, terms)


def lie_bracket_element() -> GroupAlgebraElement:
    """The commutator element [12] - [21] of QS_2."""
    e = Permutation.identity(2)
    t = Permutation((2, 1))
    return GroupAlgebraElement(2, {e: 1, t: -1})


def left_regular_matrix(g: GroupAlgebraElement) -> Matrix:
    """Matrix of left multiplication by g on QS_n, basis in lexicographic
    one-line order."""
    sn = enumerate_sn(g.n)
    index = {p: t for t, p in enumerate(sn)}
    entries: dict[tuple[int, int], Scalar] = {}
    for j, q in enumerate(sn):
        for p, c in g.terms.items():
            i = index[p * q]
            acc = _norm(entries.get((i, j), 0) + c)
            if acc:
                entries[(i, j)] = acc
            else:
                entries.pop((i, j), None)
    size = len(sn)
    return Matrix(size, size, entries, _unsafe=True)


def check_bimodule_identity(n: int, i: int) -> bool:
    """Exact check of (sh_n m_n) o_i l == sh_{n+1} (m_n o_i l) in QS_{n+1}."""
    if not 1 <= i <= n:
        raise ValueError(f"position {i} out of range 1..{n}")
    sh_n = shuffle_element(n)
    ell = lie_bracket_element()
    lhs = operadic_substitute(sh_n, i, ell)
    m_n = GroupAlgebraElement.identity(n)
    rhs = shuffle_element(n + 1) * operadic_substitute(m_n, i, ell)
    return lhs == rhs


def shuffle_eigenvalue_multiplicities(n: int) -> dict[int, int]:
    """Eigenspace dimensions of the left-regular action of sh_n on QS_n,
    keyed by exponent i for eigenvalue 2^i."""
    from .linalg import eigenspace_basis

    m = left_regular_matrix(shuffle_element(n))
    out: dict[int, int] = {}
    for i in range(1, n + 1):
        out[i] = eigenspace_basis(m, 2 ** i).cols
    return out
