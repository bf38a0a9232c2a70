"""Chain complexes over Q with exact differentials.

A complex stores, per degree, a list of basis labels and the differential
leaving that degree (toward degree-1 for homological complexes, degree+1 for
cohomological ones).  ``d o d = 0`` is checked exactly at construction; a
complex that fails the check cannot be built.  Optional per-degree weight
vectors record an internal grading that the differential must preserve,
which downstream code uses to refine homology counts.

Also here: filtered complexes with the spectral sequence of the filtration
computed from explicit subquotient bases, eigenspace splitting along an
operator commuting with the differential, direct sums, duals and tensor
products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import (
    Matrix,
    Scalar,
    eigenspace_basis,
    kernel_basis,
    rank,
    solve_columns,
)


class ComplexError(ValueError):
    """Raised when chain complex data is inconsistent (shapes, d^2 != 0,
    filtration violated, ...)."""


@dataclass(frozen=True)
class ChainComplex:
    direction: str                       # "homological" | "cohomological"
    spaces: Mapping[int, tuple[str, ...]]
    differentials: Mapping[int, Matrix]  # keyed by source degree
    weights: Mapping[int, tuple[int, ...]] | None = None

    def degrees(self) -> list[int]:
        return sorted(self.spaces)

    def dim(self, n: int) -> int:
        return len(self.spaces.get(n, ()))

    def dims(self) -> dict[int, int]:
        return {n: len(labels) for n, labels in sorted(self.spaces.items())}

    def target_degree(self, n: int) -> int:
        return n - 1 if self.direction == "homological" else n + 1

    def source_degree(self, n: int) -> int:
        return n + 1 if self.direction == "homological" else n - 1

    def differential(self, n: int) -> Matrix:
        """The differential leaving degree n (zero matrix if absent)."""
        d = self.differentials.get(n)
        if d is not None:
            return d
        return Matrix.zero(self.dim(self.target_degree(n)), self.dim(n))

    def weight_vector(self, n: int) -> tuple[int, ...] | None:
        if self.weights is None:
            return None
        return self.weights.get(n)


def chain_complex(direction: str,
                  spaces: Mapping[int, Sequence[str]],
                  differentials: Mapping[int, Matrix],
                  weights: Mapping[int, Sequence[int]] | None = None,
                  ) -> ChainComplex:
    """Validate and freeze a chain complex; raises ComplexError on bad data."""
    if direction not in ("homological", "cohomological"):
        raise ComplexError(f"unknown direction {direction!r}")
    step = -1 if direction == "homological" else 1
    spaces_f = {int(n): tuple(labels) for n, labels in spaces.items()}
    dims = {n: len(v) for n, v in spaces_f.items()}
    for n, d in differentials.items():
        if d.cols != dims.get(n, 0):
            raise ComplexError(
                f"differential from degree {n} has {d.cols} columns, "
                f"expected {dims.get(n, 0)}")
        if d.rows != dims.get(n + step, 0):
            raise ComplexError(
                f"differential from degree {n} has {d.rows} rows, "
                f"expected {dims.get(n + step, 0)}")
    for n, d in differentials.items():
        nxt = differentials.get(n + step)
        if nxt is not None and not (nxt @ d).is_zero():
            raise ComplexError(f"d o d != 0 from degree {n}")
    weights_f = None
    if weights is not None:
        weights_f = {int(n): tuple(w) for n, w in weights.items()}
        for n, w in weights_f.items():
            if len(w) != dims.get(n, 0):
                raise ComplexError(f"weight vector length mismatch in "
                                   f"degree {n}")
        for n, d in differentials.items():
            wsrc = weights_f.get(n)
            wdst = weights_f.get(n + step)
            if wsrc is None or wdst is None:
                continue
            for i, j, v in d.entries():
                if v and wdst[i] != wsrc[j]:
                    raise ComplexError(
                        f"differential from degree {n} does not preserve "
                        f"internal weight at entry ({i},{j})")
    return ChainComplex(direction, spaces_f,
                        dict(differentials), weights_f)


def homology_dims(c: ChainComplex) -> dict[int, int]:
    """dim H_n = dim ker(d out of n) - rank(d into n), exactly.

    At the boundary of a truncated complex the missing differential counts
    as zero, so the top (cochain) or bottom (chain) reported group is
    relative to the truncation.
    """
    ranks = {n: rank(d) for n, d in c.differentials.items() if d.nnz()}
    out: dict[int, int] = {}
    for n in c.degrees():
        r_out = ranks.get(n, 0)
        r_in = ranks.get(c.source_degree(n), 0)
        out[n] = c.dim(n) - r_out - r_in
    return out


def homology_dims_by_weight(c: ChainComplex) -> dict[int, dict[int, int]]:
    """Homology dimensions refined by the internal weight grading."""
    if c.weights is None:
        raise ComplexError("complex carries no weight grading")
    ranks: dict[tuple[int, int], int] = {}

    def rank_in_weight(n: int, w: int) -> int:
        key = (n, w)
        if key in ranks:
            return ranks[key]
        d = c.differentials.get(n)
        if d is None or not d.nnz():
            ranks[key] = 0
            return 0
        wsrc = c.weight_vector(n)
        wdst = c.weight_vector(c.target_degree(n))
        cols = [j for j, ww in enumerate(wsrc) if ww == w]
        rows = [i for i, ww in enumerate(wdst or ())
                if ww == w]
        sub = d.submatrix(rows, cols)
        ranks[key] = rank(sub)
        return ranks[key]

    out: dict[int, dict[int, int]] = {}
    for n in c.degrees():
        wvec = c.weight_vector(n)
        per: dict[int, int] = {}
        for w in sorted(set(wvec or ())):
            dim_w = sum(1 for ww in wvec if ww == w)
            h = dim_w - rank_in_weight(n, w) \
                - rank_in_weight(c.source_degree(n), w)
            if h:
                per[w] = h
        out[n] = per
    return out


def euler_characteristic(dims: Mapping[int, int]) -> Fraction:
    return sum(((-1) ** n) * d for n, d in dims.items())


def dualize(c: ChainComplex) -> ChainComplex:
    """Hom-dual complex: same degrees, transposed differentials, direction
    flipped."""
    new_dir = ("cohomological" if c.direction == "homological"
               else "homological")
    diffs: dict[int, Matrix] = {}
    for n, d in c.differentials.items():
        # d: C_n -> C_{target}; dual maps C^{target} -> C^n
        diffs[c.target_degree(n)] = d.transpose()
    return chain_complex(new_dir, dict(c.spaces), diffs,
                         dict(c.weights) if c.weights else None)


def direct_sum(parts: Sequence[ChainComplex],
               tags: Sequence[str] | None = None) -> ChainComplex:
    if not parts:
        raise ComplexError("empty direct sum")
    direction = parts[0].direction
    if any(p.direction != direction for p in parts):
        raise ComplexError("direct sum of mixed directions")
    tags = tags or [f"s{t}" for t in range(len(parts))]
    degrees = sorted({n for p in parts for n in p.spaces})
    spaces: dict[int, list[str]] = {n: [] for n in degrees}
    weights: dict[int, list[int]] = {n: [] for n in degrees}
    have_weights = all(p.weights is not None for p in parts)
    offsets: list[dict[int, int]] = []
    for tag, p in zip(tags, parts):
        off: dict[int, int] = {}
        for n in degrees:
            off[n] = len(spaces[n])
            labels = p.spaces.get(n, ())
            spaces[n].extend(f"{tag}:{lb}" for lb in labels)
            if have_weights:
                weights[n].extend(p.weight_vector(n) or ())
        offsets.append(off)
    diffs: dict[int, Matrix] = {}
    for n in degrees:
        t = parts[0].target_degree(n)
        entries: dict[tuple[int, int], Scalar] = {}
        for off, p in zip(offsets, parts):
            d = p.differentials.get(n)
            if d is None:
                continue
            for i, j, v in d.entries():
                entries[(i + off[t], j + off[n])] = v
        if entries or (spaces.get(n) and spaces.get(t)):
            diffs[n] = Matrix(len(spaces.get(t, ())), len(spaces[n]),
                              entries, _unsafe=True)
    return chain_complex(direction, spaces, diffs,
                         weights if have_weights else None)


def tensor_product(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """Tensor product of homological complexes with the Koszul sign
    D(a (x) b) = d a (x) b + (-1)^{|a|} a (x) d b."""
    if x.direction != "homological" or y.direction != "homological":
        raise ComplexError("tensor_product expects homological complexes")
    pairs: dict[int, list[tuple[int, int, int, int]]] = {}
    for i in x.degrees():
        for j in y.degrees():
            n = i + j
            block = pairs.setdefault(n, [])
            for a in range(x.dim(i)):
                for b in range(y.dim(j)):
                    block.append((i, a, j, b))
    index: dict[int, dict[tuple[int, int, int, int], int]] = {
        n: {key: t for t, key in enumerate(block)}
        for n, block in pairs.items()}
    spaces = {n: tuple(f"{x.spaces[i][a]}(x){y.spaces[j][b]}"
                       for (i, a, j, b) in block)
              for n, block in pairs.items()}
    have_weights = x.weights is not None and y.weights is not None
    weights = None
    if have_weights:
        weights = {n: tuple((x.weight_vector(i) or ())[a]
                            + (y.weight_vector(j) or ())[b]
                            for (i, a, j, b) in block)
                   for n, block in pairs.items()}
    diffs: dict[int, Matrix] = {}
    for n, block in pairs.items():
        tgt = index.get(n - 1)
        if tgt is None:
            continue
        entries: dict[tuple[int, int], Scalar] = {}
        for col, (i, a, j, b) in enumerate(block):
            dx = x.differentials.get(i)
            if dx is not None:
                for r, cc, v in dx.entries():
                    if cc == a:
                        entries_key = (tgt[(i - 1, r, j, b)], col)
                        entries[entries_key] = entries.get(entries_key, 0) + v
            dy = y.differentials.get(j)
            if dy is not None:
                sign = -1 if i % 2 else 1
                for r, cc, v in dy.entries():
                    if cc == b:
                        entries_key = (tgt[(i, a, j - 1, r)], col)
                        entries[entries_key] = entries.get(entries_key, 0) \
                            + sign * v
        entries = {k: v for k, v in entries.items() if v}
        diffs[n] = Matrix(len(pairs[n - 1]), len(block), entries,
                          _unsafe=True)
    return chain_complex("homological", spaces, diffs, weights)


# ---------------------------------------------------------------------------
# eigenspace splitting
# ---------------------------------------------------------------------------

def split_by_operator(c: ChainComplex, ops: Mapping[int, Matrix],
                      eigenvalues: Sequence[Scalar],
                      ) -> list[tuple[Scalar, ChainComplex]]:
    """Split a complex along a degreewise operator commuting with d.

    Checks exactly that the operator commutes with the differential and that
    the listed eigenvalues' eigenspaces span every degree, then returns one
    subcomplex per eigenvalue with the induced differential (in eigenbasis
    coordinates).
    """
    step_target = c.target_degree
    for n in c.degrees():
        op = ops.get(n)
        if op is None:
            raise ComplexError(f"operator missing in degree {n}")
        if op.rows != c.dim(n) or op.cols != c.dim(n):
            raise ComplexError(f"operator has wrong shape in degree {n}")
    for n, d in c.differentials.items():
        t = step_target(n)
        if t not in c.spaces:
            continue
        if not (d @ ops[n] == ops[t] @ d):
            raise ComplexError(
                f"operator does not commute with the differential out of "
                f"degree {n}")
    bases: dict[tuple[int, int], Matrix] = {}
    for n in c.degrees():
        total = 0
        for t, lam in enumerate(eigenvalues):
            b = eigenspace_basis(ops[n], lam)
            bases[(n, t)] = b
            total += b.cols
        if total != c.dim(n):
            raise ComplexError(
                f"eigenspaces for the given eigenvalues do not span "
                f"degree {n} ({total} of {c.dim(n)})")
    out: list[tuple[Scalar, ChainComplex]] = []
    for t, lam in enumerate(eigenvalues):
        spaces: dict[int, tuple[str, ...]] = {}
        weights: dict[int, tuple[int, ...]] = {}
        have_weights = c.weights is not None
        for n in c.degrees():
            b = bases[(n, t)]
            spaces[n] = tuple(f"eig({lam})[{n}:{k}]" for k in range(b.cols))
            if have_weights:
                wvec = c.weight_vector(n) or ()
                per = []
                for k in range(b.cols):
                    support = sorted(b.column(k))
                    ws = {wvec[i] for i in support}
                    if len(ws) != 1:
                        have_weights = False
                        break
                    per.append(ws.pop())
                if have_weights:
                    weights[n] = tuple(per)
        diffs: dict[int, Matrix] = {}
        for n, d in c.differentials.items():
            tn = step_target(n)
            if tn not in c.spaces:
                continue
            src = bases[(n, t)]
            dst = bases[(tn, t)]
            if src.cols == 0:
                diffs[n] = Matrix.zero(dst.cols, 0)
                continue
            image = d @ src
            if dst.cols == 0:
                if not image.is_zero():
                    raise ComplexError("eigenspace image escapes the split")
                diffs[n] = Matrix.zero(0, src.cols)
                continue
            diffs[n] = solve_columns(dst, image)
        out.append((lam, chain_complex(c.direction, spaces, diffs,
                                       weights if have_weights else None)))
    return out


# ---------------------------------------------------------------------------
# filtered complexes and their spectral sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FilteredComplex:
    complex: ChainComplex
    levels: Mapping[int, tuple[int, ...]]   # per degree, per basis vector

    def level_range(self) -> tuple[int, int]:
        all_levels = [lv for vec in self.levels.values() for lv in vec]
        if not all_levels:
            return (0, 0)
        return min(all_levels), max(all_levels)


def filtered_complex(c: ChainComplex,
                     levels: Mapping[int, Sequence[int]]) -> FilteredComplex:
    levels_f = {int(n): tuple(v) for n, v in levels.items()}
    for n in c.degrees():
        if len(levels_f.get(n, ())) != c.dim(n):
            raise ComplexError(f"levels missing or wrong length in degree {n}")
    for n, d in c.differentials.items():
        t = c.target_degree(n)
        lv_src = levels_f.get(n)
        lv_dst = levels_f.get(t)
        if lv_dst is None:
            continue
        for i, j, v in d.entries():
            if v and lv_dst[i] > lv_src[j]:
                raise ComplexError(
                    f"differential raises filtration level at entry "
                    f"({i},{j}) out of degree {n}")
    return FilteredComplex(c, levels_f)


@dataclass(frozen=True)
class SpectralPage:
    r: int
    dims: Mapping[tuple[int, int], int]   # (filtration p, complement q)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dims_by_total_degree(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (p, q), d in self.dims.items():
            out[p + q] = out.get(p + q, 0) + d
        return out


def _cycle_space(f: FilteredComplex, n: int, p: int, r: int) -> Matrix:
    """Basis of Z^r_{p,*} in degree n: x in F_p C_n with d x in F_{p-r}."""
    c = f.complex
    lv = f.levels.get(n, ())
    cols = [j for j, l in enumerate(lv) if l <= p]
    if not cols:
        return Matrix.zero(c.dim(n), 0)
    d = c.differentials.get(n)
    t = c.target_degree(n)
    lv_t = f.levels.get(t, ())
    if d is None or not d.nnz():
        rows: list[int] = []
    else:
        rows = [i for i, l in enumerate(lv_t) if l > p - r]
    if d is None or not rows:
        k = Matrix.identity(len(cols))
    else:
        sub = d.submatrix(rows, cols)
        k = kernel_basis(sub)
    # embed local column coordinates back into C_n
    entries: dict[tuple[int, int], Scalar] = {}
    for i, j, v in k.entries():
        entries[(cols[i], j)] = v
    return Matrix(c.dim(n), k.cols, entries, _unsafe=True)


def spectral_pages(f: FilteredComplex, r_max: int) -> list[SpectralPage]:
    """Pages E^0..E^{r_max} of the spectral sequence of the filtration.

    Everything is computed from explicit cycle bases
    Z^r_p = {x in F_p : d x in F_{p-r}} and
    E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1}) with exact ranks.
    """
    c = f.complex
    lo, hi = f.level_range()
    pages: list[SpectralPage] = []
    # page 0: associated graded dimensions
    dims0: dict[tuple[int, int], int] = {}
    for n in c.degrees():
        for l in f.levels.get(n, ()):
            key = (l, n - l)
            dims0[key] = dims0.get(key, 0) + 1
    pages.append(SpectralPage(0, dims0))
    for r in range(1, r_max + 1):
        dims_r: dict[tuple[int, int], int] = {}
        for n in c.degrees():
            src_deg = c.source_degree(n)
            for p in range(lo, hi + 1):
                z = _cycle_space(f, n, p, r)
                if z.cols == 0:
                    continue
                prev_z = _cycle_space(f, n, p - 1, r - 1)
                boundaries_src = _cycle_space(f, src_deg, p + r - 1, r - 1)
                d_in = c.differentials.get(src_deg)
                pieces = [prev_z]
                if d_in is not None and boundaries_src.cols:
                    pieces.append(d_in @ boundaries_src)
                denom = pieces[0]
                for extra in pieces[1:]:
                    denom = denom.hstack(extra)
                dim_e = z.cols - rank(denom)
                if dim_e:
                    dims_r[(p, n - p)] = dim_e
        pages.append(SpectralPage(r, dims_r))
    return pages


def stable_page(f: FilteredComplex) -> SpectralPage:
    """The limiting page: differentials vanish once r exceeds the level
    span, so the page at span+1 is E-infinity for a bounded complex."""
    lo, hi = f.level_range()
    span = hi - lo + 1
    return spectral_pages(f, span + 1)[-1]


def infinity_matches_homology(f: FilteredComplex) -> bool:
    einf = stable_page(f).dims_by_total_degree()
    h = {n: d for n, d in homology_dims(f.complex).items() if d}
    return {n: d for n, d in einf.items() if d} == h


def collapses_at(f: FilteredComplex, r: int) -> bool:
    """True when page r already equals the stable page."""
    pages = spectral_pages(f, r)
    target = {k: v for k, v in pages[r].dims.items() if v}
    stable = {k: v for k, v in stable_page(f).dims.items() if v}
    return target == stable
