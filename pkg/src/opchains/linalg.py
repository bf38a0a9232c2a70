"""Exact linear algebra over the rationals.

Scalars are arbitrary-precision rationals (``fractions.Fraction``, with plain
``int`` accepted as a denominator-1 rational).  Matrices are sparse maps
``(row, col) -> scalar``; absent entries are zero.  Every operation is exact:
no floating point is used anywhere.

Rank, kernel and eigenspace computations run in two stages.  Small or
rational-dense problems use straight Gaussian elimination over Q.  Larger
integer problems are solved modulo a fixed list of word-sized primes with
vectorised integer arithmetic, the candidate answer is lifted back to Q by
rational reconstruction, and the lift is then *certified* exactly:

* a kernel basis K is accepted only after checking ``M @ K == 0`` over Q, and
* the pivot submatrix found modulo p has determinant not divisible by p,
  hence nonzero over Q, so ``rank(M) >= |pivots|``.

Together the two checks pin the rank and nullity exactly; modular arithmetic
only ever proposes answers, it never decides them.  If certification fails
(bad primes) more primes are added, and as a last resort the computation
falls back to exact elimination over Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy import sparse as _sp

Scalar = int | Fraction

# 31-bit primes: squares fit comfortably in int64 during modular elimination.
_PRIMES = (
    2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423,
    2147483399, 2147483353, 2147483323, 2147483269, 2147483249,
    2147483237, 2147483179, 2147483171, 2147483137, 2147483123,
    2147483077, 2147483069, 2147483059, 2147483053, 2147483033,
    2147483029, 2147482951, 2147482949, 2147482943, 2147482937,
    2147482921, 2147482877,
)

# Dense exact elimination is cheap below this size; modular machinery above.
_DENSE_CUTOFF = 64


def _norm(x: Scalar) -> Scalar:
    """Canonical scalar: int when the value is integral, Fraction otherwise."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return x
    return x


def as_fraction(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Matrix:
    """Sparse exact matrix over Q.

    Entries live in ``self._e``: a dict ``(i, j) -> scalar`` holding only
    nonzero values.  Instances are treated as immutable once built; all
    arithmetic returns new matrices.
    """

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int,
                 entries: dict[tuple[int, int], Scalar] | None = None,
                 _unsafe: bool = False):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        self.rows = rows
        self.cols = cols
        if entries is None:
            self._e = {}
        elif _unsafe:
            self._e = entries
        else:
            e: dict[tuple[int, int], Scalar] = {}
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"entry ({i},{j}) out of bounds for "
                                     f"{rows}x{cols} matrix")
                v = _norm(v)
                if v:
                    e[(i, j)] = v
            self._e = e

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, _unsafe=True)

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Scalar]]) -> "Matrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        e: dict[tuple[int, int], Scalar] = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = _norm(Fraction(v) if not isinstance(v, (int, Fraction)) else v)
                if v:
                    e[(i, j)] = v
        return cls(rows, cols, e, _unsafe=True)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict[int, Scalar]]) -> "Matrix":
        e: dict[tuple[int, int], Scalar] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                v = _norm(v)
                if v:
                    e[(i, j)] = v
        return cls(rows, len(columns), e, _unsafe=True)

    # -- queries -----------------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        return as_fraction(self._e.get((i, j), 0))

    def entries(self) -> Iterator[tuple[int, int, Scalar]]:
        for (i, j), v in self._e.items():
            yield i, j, v

    def nnz(self) -> int:
        return len(self._e)

    def is_zero(self) -> bool:
        return not self._e

    def is_integer(self) -> bool:
        return all(isinstance(v, int) for v in self._e.values())

    def max_abs_num_den(self) -> int:
        """max over entries of max(|numerator|, denominator); 0 if empty."""
        m = 0
        for v in self._e.values():
            if isinstance(v, int):
                m = max(m, abs(v))
            else:
                m = max(m, abs(v.numerator), v.denominator)
        return m

    def column(self, j: int) -> dict[int, Scalar]:
        return {i: v for (i, jj), v in self._e.items() if jj == j}

    def columns_dicts(self) -> list[dict[int, Scalar]]:
        cols: list[dict[int, Scalar]] = [dict() for _ in range(self.cols)]
        for (i, j), v in self._e.items():
            cols[j][i] = v
        return cols

    def to_rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._e.items():
            out[i][j] = as_fraction(v)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            all(as_fraction(v) == other.entry(i, j) for (i, j), v in self._e.items()) and \
            all(as_fraction(v) == self.entry(i, j) for (i, j), v in other._e.items())

    def __hash__(self):
        raise TypeError("Matrix is not hashable")

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        e = dict(self._e)
        for k, v in other._e.items():
            w = _norm(e.get(k, 0) + v)
            if w:
                e[k] = w
            else:
                e.pop(k, None)
        return Matrix(self.rows, self.cols, e, _unsafe=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        e = dict(self._e)
        for k, v in other._e.items():
            w = _norm(e.get(k, 0) - v)
            if w:
                e[k] = w
            else:
                e.pop(k, None)
        return Matrix(self.rows, self.cols, e, _unsafe=True)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols,
                      {k: -v for k, v in self._e.items()}, _unsafe=True)

    def scale(self, c: Scalar) -> "Matrix":
        c = _norm(c)
        if not c:
            return Matrix(self.rows, self.cols)
        return Matrix(self.rows, self.cols,
                      {k: _norm(c * v) for k, v in self._e.items()}, _unsafe=True)

    def __rmul__(self, c: Scalar) -> "Matrix":
        return self.scale(c)

    def _shape_check(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs "
                             f"{other.rows}x{other.cols}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by "
                             f"{other.rows}x{other.cols}")
        # Large all-integer products go through scipy's C kernels; int64
        # overflow is excluded by an a priori bound, so the result is exact.
        if self.nnz() * other.nnz() and self.is_integer() and other.is_integer() \
                and min(self.nnz(), other.nnz()) > 5000:
            prod = _int_matmul_scipy(self, other)
            if prod is not None:
                return prod
        # column-major sparse product
        out: dict[tuple[int, int], Scalar] = {}
        rows_of_self: dict[int, list[tuple[int, Scalar]]] = {}
        for (i, k), v in self._e.items():
            rows_of_self.setdefault(k, []).append((i, v))
        for (k, j), w in other._e.items():
            hits = rows_of_self.get(k)
            if not hits:
                continue
            for i, v in hits:
                key = (i, j)
                acc = _norm(out.get(key, 0) + v * w)
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return Matrix(self.rows, other.cols, out, _unsafe=True)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      {(j, i): v for (i, j), v in self._e.items()}, _unsafe=True)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("hstack: row mismatch")
        e = dict(self._e)
        for (i, j), v in other._e.items():
            e[(i, j + self.cols)] = v
        return Matrix(self.rows, self.cols + other.cols, e, _unsafe=True)

    def submatrix(self, row_idx: Sequence[int] | None,
                  col_idx: Sequence[int] | None) -> "Matrix":
        """Select rows/columns by index lists (None keeps everything)."""
        rmap = None if row_idx is None else {r: i for i, r in enumerate(row_idx)}
        cmap = None if col_idx is None else {c: j for j, c in enumerate(col_idx)}
        e: dict[tuple[int, int], Scalar] = {}
        for (i, j), v in self._e.items():
            if rmap is not None:
                if i not in rmap:
                    continue
                i = rmap[i]
            if cmap is not None:
                if j not in cmap:
                    continue
                j = cmap[j]
            e[(i, j)] = v
        return Matrix(len(row_idx) if row_idx is not None else self.rows,
                      len(col_idx) if col_idx is not None else self.cols,
                      e, _unsafe=True)

    def apply_to(self, vec: dict[int, Scalar]) -> dict[int, Scalar]:
        """Sparse matrix-vector product (vector as index -> scalar dict)."""
        cols = self.columns_dicts()
        out: dict[int, Scalar] = {}
        for j, x in vec.items():
            if not x:
                continue
            for i, v in cols[j].items():
                acc = _norm(out.get(i, 0) + v * x)
                if acc:
                    out[i] = acc
                else:
                    out.pop(i, None)
        return out


def _int_matmul_scipy(a: Matrix, b: Matrix) -> Matrix | None:
    """Exact product of integer matrices via scipy int64, or None if the
    conservative overflow bound fails."""
    max_a = a.max_abs_num_den()
    max_b = b.max_abs_num_den()
    inner_nnz = max(1, min(a.nnz(), b.nnz()))
    bound = max_a * max_b * min(inner_nnz, a.cols)
    if bound >= 2 ** 62:
        return None
    sa = matrix_to_scipy_int(a)
    sb = matrix_to_scipy_int(b)
    sc = (sa @ sb).tocoo()
    e: dict[tuple[int, int], Scalar] = {}
    for i, j, v in zip(sc.row.tolist(), sc.col.tolist(), sc.data.tolist()):
        if v:
            e[(int(i), int(j))] = int(v)
    return Matrix(a.rows, b.cols, e, _unsafe=True)


def matrix_to_scipy_int(m: Matrix) -> _sp.csr_matrix:
    """Convert an all-integer Matrix to scipy CSR with int64 entries."""
    if m.nnz() == 0:
        return _sp.csr_matrix((m.rows, m.cols), dtype=np.int64)
    ii = np.empty(m.nnz(), dtype=np.int64)
    jj = np.empty(m.nnz(), dtype=np.int64)
    vv = np.empty(m.nnz(), dtype=np.int64)
    for t, ((i, j), v) in enumerate(m._e.items()):
        ii[t] = i
        jj[t] = j
        vv[t] = v
    return _sp.csr_matrix((vv, (ii, jj)), shape=(m.rows, m.cols))


# ---------------------------------------------------------------------------
# exact elimination over Q (reference path and small-problem path)
# ---------------------------------------------------------------------------

def _bitlen_weight(v: Scalar) -> int:
    if isinstance(v, int):
        return abs(v).bit_length()
    return (abs(v.numerator) * v.denominator).bit_length()


def rref_exact(m: Matrix, leftmost: bool = False,
               ) -> tuple[list[int], list[dict[int, Fraction]]]:
    """Reduced row echelon form over Q by exact elimination.

    Returns (pivot column indices, reduced rows) where each reduced row is a
    sparse dict ``col -> Fraction`` with a 1 at its pivot column.  By default
    pivots are chosen to minimise numerator*denominator bit length (ties by
    lowest row, then column index) to keep coefficient growth in check; with
    ``leftmost=True`` the pivot column is always the leftmost unfinished one
    (needed when the caller attaches meaning to the pivot column set).
    """
    rows: list[dict[int, Fraction]] = []
    for i in range(m.rows):
        rows.append({})
    for (i, j), v in m._e.items():
        rows[i][j] = as_fraction(v)
    rows = [r for r in rows if r]
    pivots: list[int] = []
    reduced: list[dict[int, Fraction]] = []
    while rows:
        best = None
        if leftmost:
            col = min(c for r in rows for c in r)
            for ri, r in enumerate(rows):
                v = r.get(col)
                if v:
                    w = (_bitlen_weight(v), ri)
                    if best is None or w < best[0:2]:
                        best = (w[0], ri, col, v)
        else:
            for ri, r in enumerate(rows):
                for cj, v in r.items():
                    w = (_bitlen_weight(v), ri, cj)
                    if best is None or w < best[0:3]:
                        best = (w[0], ri, cj, v)
        _, ri, cj, pv = best
        row = rows.pop(ri)
        inv = 1 / pv
        row = {c: v * inv for c, v in row.items()}
        for r in reduced:
            f = r.get(cj)
            if f:
                for c, v in row.items():
                    acc = r.get(c, Fraction(0)) - f * v
                    if acc:
                        r[c] = acc
                    else:
                        r.pop(c, None)
        nxt = []
        for r in rows:
            f = r.get(cj)
            if f:
                for c, v in row.items():
                    acc = r.get(c, Fraction(0)) - f * v
                    if acc:
                        r[c] = acc
                    else:
                        r.pop(c, None)
            if r:
                nxt.append(r)
        rows = nxt
        pivots.append(cj)
        reduced.append(row)
    order = sorted(range(len(pivots)), key=lambda t: pivots[t])
    return [pivots[t] for t in order], [reduced[t] for t in order]


def _kernel_from_rref(cols: int, pivots: list[int],
                      reduced: list[dict[int, Fraction]]) -> Matrix:
    pivset = set(pivots)
    free = [j for j in range(cols) if j not in pivset]
    e: dict[tuple[int, int], Scalar] = {}
    for t, f in enumerate(free):
        e[(f, t)] = 1
        for pi, row in zip(pivots, reduced):
            v = row.get(f)
            if v:
                e[(pi, t)] = _norm(-v)
    return Matrix(cols, len(free), e, _unsafe=True)


# ---------------------------------------------------------------------------
# modular elimination with exact certification
# ---------------------------------------------------------------------------

def _rref_mod_p(a: np.ndarray, p: int) -> tuple[list[int], list[int], np.ndarray]:
    """RREF of ``a`` modulo p (a is int64, reduced mod p; modified in place).

    Returns (pivot_cols, pivot_src_rows, reduced_matrix).  pivot_src_rows[t]
    is the original row index providing pivot t, for the minor certificate.
    """
    rows, cols = a.shape
    src = list(range(rows))
    piv_cols: list[int] = []
    piv_rows: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
            src[r], src[k] = src[k], src[r]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        body = a[:, c]
        hits = np.nonzero(body)[0]
        hits = hits[hits != r]
        if hits.size:
            a[hits, c:] = (a[hits, c:] - np.outer(body[hits], a[r, c:])) % p
        piv_cols.append(c)
        piv_rows.append(src[r])
        r += 1
    return piv_cols, piv_rows, a


def _rational_reconstruct(r: int, m: int) -> Fraction | None:
    """Lift residue r mod m to a fraction a/b with |a|, b <= sqrt(m/2)."""
    bound = isqrt(m // 2)
    s, old_s = 0, 1
    t, old_t = m, r % m
    # old_t = old_s * r (mod m) throughout
    while old_t > bound:
        q = t // old_t if old_t else 0
        if old_t == 0:
            return None
        t, old_t = old_t, t - q * old_t
        s, old_s = old_s, s - q * old_s
    if old_s == 0 or abs(old_s) > bound:
        return None
    if gcd(old_t, abs(old_s)) != 1:
        return None
    num, den = old_t, old_s
    if den < 0:
        num, den = -num, -den
    return Fraction(num, den)


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    inv = pow(m1 % m2, m2 - 2, m2)
    x = (r1 + ((r2 - r1) * inv % m2) * m1) % (m1 * m2)
    return x, m1 * m2


class _Component:
    """One connected block of a sparse matrix (column-oriented)."""

    __slots__ = ("col_idx", "row_idx", "cols")

    def __init__(self, col_idx: list[int], row_idx: list[int],
                 cols: list[dict[int, int]]):
        self.col_idx = col_idx      # original column indices
        self.row_idx = row_idx      # original row indices
        self.cols = cols            # integer columns in local row coordinates


def _split_components(m: Matrix) -> tuple[list[_Component], list[Matrix]]:
    """Split into connected components over the row/column incidence graph.

    Columns are scaled by their denominator lcm, so each component carries an
    integer matrix; the per-column scaling factors are irrelevant for rank
    and only rescale kernel coordinates (which we undo later).  Returns the
    components plus nothing else; zero columns form their own trivial
    kernel directions handled by the caller.
    """
    parent = list(range(m.cols))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    row_owner: dict[int, int] = {}
    cols = m.columns_dicts()
    for j, col in enumerate(cols):
        for i in col:
            if i in row_owner:
                union(j, row_owner[i])
            else:
                row_owner[i] = j
    groups: dict[int, list[int]] = {}
    for j in range(m.cols):
        if cols[j]:
            groups.setdefault(find(j), []).append(j)
    comps: list[_Component] = []
    for root in sorted(groups):
        col_idx = sorted(groups[root])
        rows_set: set[int] = set()
        for j in col_idx:
            rows_set.update(cols[j])
        row_idx = sorted(rows_set)
        rpos = {r: t for t, r in enumerate(row_idx)}
        int_cols: list[dict[int, int]] = []
        for j in col_idx:
            col = cols[j]
            den = 1
            for v in col.values():
                if isinstance(v, Fraction):
                    den = den * v.denominator // gcd(den, v.denominator)
            icol: dict[int, int] = {}
            for i, v in col.items():
                iv = v * den if isinstance(v, int) else v.numerator * (den // v.denominator)
                icol[rpos[i]] = int(iv)
            int_cols.append(icol)
        comps.append(_Component(col_idx, row_idx, int_cols))
    return comps, []


def _component_rank_kernel(comp: _Component, want_kernel: bool,
                           ) -> tuple[int, list[tuple[int, dict[int, Fraction]]]]:
    """Certified rank and (optionally) kernel of one integer component.

    Kernel vectors are returned as (local free column, vector) pairs in local
    column coordinates of the *integer-scaled* matrix; the caller rescales.
    """
    nloc_rows = len(comp.row_idx)
    nloc_cols = len(comp.col_idx)
    if nloc_rows <= _DENSE_CUTOFF and nloc_cols <= _DENSE_CUTOFF:
        return _component_exact(comp, want_kernel)

    dense = np.zeros((nloc_rows, nloc_cols), dtype=object)
    for j, col in enumerate(comp.cols):
        for i, v in col.items():
            dense[i, j] = v

    results = []     # (pivots, piv_rows, reduced np array, prime)
    n_primes = 2
    used: list[int] = []
    while n_primes <= len(_PRIMES):
        for p in _PRIMES[len(used):n_primes]:
            a = (dense % p).astype(np.int64)
            piv_cols, piv_rows, red = _rref_mod_p(a, p)
            results.append((tuple(piv_cols), tuple(piv_rows), red, p))
            used.append(p)
        best_rank = max(len(r[0]) for r in results)
        cands = [r for r in results if len(r[0]) == best_rank]
        pivset = min(c[0] for c in cands)
        cands = [c for c in cands if c[0] == pivset]
        lifted = _try_lift_kernel(nloc_cols, pivset, cands)
        if lifted is not None and _verify_kernel(comp, pivset, lifted):
            rank = len(pivset)
            if want_kernel:
                return rank, lifted
            return rank, []
        n_primes *= 2
    # certification failed with every prime: exact fallback
    return _component_exact(comp, want_kernel)


def _component_exact(comp: _Component, want_kernel: bool,
                     ) -> tuple[int, list[tuple[int, dict[int, Fraction]]]]:
    e = {}
    for j, col in enumerate(comp.cols):
        for i, v in col.items():
            e[(i, j)] = v
    m = Matrix(len(comp.row_idx), len(comp.col_idx), e, _unsafe=True)
    pivots, reduced = rref_exact(m)
    rank = len(pivots)
    if not want_kernel:
        return rank, []
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    vecs: list[tuple[int, dict[int, Fraction]]] = []
    for f in free:
        vec: dict[int, Fraction] = {f: Fraction(1)}
        for pi, row in zip(pivots, reduced):
            v = row.get(f)
            if v:
                vec[pi] = -v
        vecs.append((f, vec))
    return rank, vecs


def _try_lift_kernel(ncols: int, pivset: tuple[int, ...],
                     cands: list) -> list[tuple[int, dict[int, Fraction]]] | None:
    """CRT-combine the reduced rows of consistent primes and reconstruct the
    standard-form kernel basis over Q entry by entry."""
    free = [j for j in range(ncols) if j not in set(pivset)]
    if not free:
        return []
    mod = 1
    comb: np.ndarray | None = None
    for _, _, red, p in cands:
        rows = red[: len(pivset)]
        if comb is None:
            comb = rows.astype(object)
            mod = p
        else:
            new = np.empty_like(comb)
            for t in range(comb.shape[0]):
                for c in range(comb.shape[1]):
                    new[t, c], _ = _crt_pair(int(comb[t, c]), mod,
                                             int(rows[t, c]), p)
            comb = new
            mod *= p
    vecs: list[tuple[int, dict[int, Fraction]]] = []
    for f in free:
        vec: dict[int, Fraction] = {f: Fraction(1)}
        for t, pc in enumerate(pivset):
            r = int(comb[t, f]) % mod
            if r == 0:
                continue
            q = _rational_reconstruct(r, mod)
            if q is None:
                return None
            vec[pc] = -q
        vecs.append((f, vec))
    return vecs


def _verify_kernel(comp: _Component, pivset: tuple[int, ...],
                   vecs: list[tuple[int, dict[int, Fraction]]]) -> bool:
    """Exact check: every lifted vector is in the kernel of the component."""
    for _, vec in vecs:
        den = 1
        for v in vec.values():
            den = den * v.denominator // gcd(den, v.denominator)
        acc: dict[int, int] = {}
        for j, v in vec.items():
            c = int(v.numerator * (den // v.denominator))
            for i, w in comp.cols[j].items():
                s = acc.get(i, 0) + w * c
                if s:
                    acc[i] = s
                else:
                    acc.pop(i, None)
        if acc:
            return False
    return True


def rank(m: Matrix) -> int:
    """Rank over Q, exact."""
    comps, _ = _split_components(m)
    total = 0
    for comp in comps:
        r, _ = _component_rank_kernel(comp, want_kernel=False)
        total += r
    return total


def kernel_basis(m: Matrix) -> Matrix:
    """Exact basis of the null space, returned as matrix columns.

    The basis is in standard form: for each free column f there is one basis
    vector with coordinate 1 at f and support only at f and pivot columns.
    Zero columns of ``m`` contribute unit vectors.
    """
    comps, _ = _split_components(m)
    cols_with_entries: set[int] = set()
    for comp in comps:
        cols_with_entries.update(comp.col_idx)
    # key each kernel vector by its defining free column (globally unique)
    col_vecs: dict[int, dict[int, Fraction]] = {}
    for comp in comps:
        _, vecs = _component_rank_kernel(comp, want_kernel=True)
        # columns were scaled to integers by d_j; kernel of M*D maps back to
        # kernel of M by x -> D x, i.e. multiply coordinate j by d_j.  The
        # scale factors were folded into comp.cols, so recover them here.
        scales = _column_scales(m, comp.col_idx)
        for floc, vec in vecs:
            glob: dict[int, Fraction] = {}
            for jloc, v in vec.items():
                glob[comp.col_idx[jloc]] = v * scales[jloc]
            col_vecs[comp.col_idx[floc]] = _canonical_vec(glob)
    for j in range(m.cols):
        if j not in cols_with_entries:
            col_vecs[j] = {j: Fraction(1)}
    basis = [col_vecs[k] for k in sorted(col_vecs)]
    e: dict[tuple[int, int], Scalar] = {}
    for t, vec in enumerate(basis):
        for i, v in vec.items():
            e[(i, t)] = _norm(v)
    return Matrix(m.cols, len(basis), e, _unsafe=True)


def _column_scales(m: Matrix, col_idx: list[int]) -> list[Fraction]:
    scales = []
    cols = m.columns_dicts()
    for j in col_idx:
        den = 1
        for v in cols[j].values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        scales.append(Fraction(den))
    return scales


def _canonical_vec(vec: dict[int, Fraction]) -> dict[int, Fraction]:
    """Scale so entries are coprime integers and the lowest-index entry > 0."""
    if not vec:
        return vec
    den = 1
    for v in vec.values():
        den = den * v.denominator // gcd(den, v.denominator)
    ints = {i: v.numerator * (den // v.denominator) for i, v in vec.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, abs(v))
    if g == 0:
        return {}
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    return {i: Fraction(v, g) for i, v in ints.items()}


def nullity(m: Matrix) -> int:
    return m.cols - rank(m)


def eigenspace_basis(m: Matrix, lam: Scalar) -> Matrix:
    """Exact basis of ker(m - lam*I); empty when lam is not an eigenvalue."""
    if m.rows != m.cols:
        raise ValueError("eigenspace_basis requires a square matrix")
    shifted = m - Matrix.identity(m.rows).scale(lam)
    basis = kernel_basis(shifted)
    # certify: M b = lam b columnwise (kernel_basis already certifies the
    # shifted kernel; this re-check is cheap and direct)
    prod = m @ basis
    if prod != basis.scale(lam):
        raise AssertionError("eigenspace certification failed")
    return basis


def solve_columns(basis: Matrix, targets: Matrix) -> Matrix:
    """Solve basis @ X = targets exactly.

    ``basis`` must have independent columns and every target column must lie
    in their span; raises ValueError otherwise.
    """
    if basis.rows != targets.rows:
        raise ValueError("row mismatch")
    aug = basis.hstack(targets)
    pivots, reduced = rref_exact(aug, leftmost=True)
    n = basis.cols
    for p in pivots:
        if p >= n:
            raise ValueError("target not in span of basis")
    if len(pivots) < n:
        # columns of basis dependent: still solvable but reject (callers
        # always pass independent bases)
        raise ValueError("basis columns are dependent")
    e: dict[tuple[int, int], Scalar] = {}
    for t, (pc, row) in enumerate(zip(pivots, reduced)):
        for c, v in row.items():
            if c >= n and v:
                e[(pc, c - n)] = _norm(v)
    return Matrix(n, targets.cols, e, _unsafe=True)


def column_span_rank(columns: Iterable[dict[int, Scalar]], rows: int) -> int:
    e: dict[tuple[int, int], Scalar] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                e[(i, j)] = _norm(v)
    j1 = 1 + max((j for (_, j) in e), default=-1)
    return rank(Matrix(rows, j1, e, _unsafe=True))


class QuotientSpace:
    """Quotient of Q^n by the span of given vectors, with exact projection.

    The subspace is row-reduced; pivot coordinates are eliminated and the
    surviving (free) coordinates index the quotient basis.  ``project`` maps
    an ambient sparse vector to quotient coordinates; ``section`` lifts a
    quotient basis index back to an ambient representative.
    """

    def __init__(self, ambient_dim: int, spanning: Iterable[dict[int, Scalar]]):
        e: dict[tuple[int, int], Scalar] = {}
        for t, vec in enumerate(spanning):
            for i, v in vec.items():
                if v:
                    e[(t, i)] = _norm(v)
        nrows = 1 + max((i for (i, _) in e), default=-1)
        m = Matrix(max(nrows, 0), ambient_dim, e, _unsafe=True)
        pivots, reduced = rref_exact(m)
        self.ambient_dim = ambient_dim
        self.pivots = pivots
        self._rows = dict(zip(pivots, reduced))
        pivset = set(pivots)
        self.free = [j for j in range(ambient_dim) if j not in pivset]
        self._free_pos = {f: t for t, f in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, vec: dict[int, Scalar]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, v in vec.items():
            if not v:
                continue
            v = as_fraction(v)
            if i in self._rows:
                row = self._rows[i]
                for c, w in row.items():
                    if c == i:
                        continue
                    t = self._free_pos[c]
                    acc = out.get(t, Fraction(0)) - v * w
                    if acc:
                        out[t] = acc
                    else:
                        out.pop(t, None)
            else:
                t = self._free_pos[i]
                acc = out.get(t, Fraction(0)) + v
                if acc:
                    out[t] = acc
                else:
                    out.pop(t, None)
        return out

    def section(self, t: int) -> dict[int, Fraction]:
        return {self.free[t]: Fraction(1)}
