"""Finite-dimensional algebras given by structure constants, and their
coefficient modules.

An :class:`AlgebraPresentation` carries one or two named multiplication
tables over the tags ``assoc``, ``comm``, ``lie``, ``postlie``; the axioms of
the tag are checked exactly on every basis triple at validation time.  All
algebras are non-unital (an augmentation ideal); unit bookkeeping only
appears inside the enveloping-algebra formulas used by the complex builders.

Vectors are sparse dicts ``basis index -> scalar``.  Structure constants are
stored 0-based as ``products[op][(i, j)] = {k: c}`` meaning
``x_i . x_j = sum_k c x_k``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import Scalar, _norm, as_fraction

OPERAD_TAGS = ("assoc", "comm", "lie", "postlie")

Vector = dict[int, Scalar]
StructureConstants = dict[tuple[int, int], Vector]


class DocumentError(ValueError):
    """Malformed algebra or module document."""


class AxiomViolation(ValueError):
    """An algebra or module axiom fails on a concrete basis triple."""

    def __init__(self, operation: str, triple: tuple, defect: Vector,
                 message: str):
        self.operation = operation
        self.triple = triple
        self.defect = defect
        super().__init__(message)


def vec_add(a: Vector, b: Vector, coeff: Scalar = 1) -> Vector:
    out = dict(a)
    for k, v in b.items():
        acc = _norm(out.get(k, 0) + coeff * v)
        if acc:
            out[k] = acc
        else:
            out.pop(k, None)
    return out


def vec_scale(a: Vector, c: Scalar) -> Vector:
    c = _norm(c)
    if not c:
        return {}
    return {k: _norm(c * v) for k, v in a.items()}


def _required_ops(tag: str) -> tuple[str, ...]:
    if tag in ("assoc", "comm"):
        return ("mul",)
    if tag == "lie":
        return ("bracket",)
    if tag == "postlie":
        return ("bracket", "circle")
    raise DocumentError(f"unknown operad tag {tag!r}")


@dataclass(frozen=True)
class AlgebraPresentation:
    name: str
    operad_tag: str
    basis: tuple[str, ...]
    products: Mapping[str, StructureConstants]
    weights: tuple[int, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def product(self, op: str, i: int, j: int) -> Vector:
        return dict(self.products[op].get((i, j), {}))

    def multiply(self, op: str, a: Vector, b: Vector) -> Vector:
        out: Vector = {}
        table = self.products[op]
        for i, x in a.items():
            for j, y in b.items():
                cell = table.get((i, j))
                if not cell:
                    continue
                c = x * y
                for k, v in cell.items():
                    acc = _norm(out.get(k, 0) + c * v)
                    if acc:
                        out[k] = acc
                    else:
                        out.pop(k, None)
        return out

    # default operation name for the tag (mul or bracket)
    def main_op(self) -> str:
        return _required_ops(self.operad_tag)[0]

    def validate(self) -> "AlgebraPresentation":
        for op in _required_ops(self.operad_tag):
            if op not in self.products:
                raise DocumentError(
                    f"{self.operad_tag} algebra needs operation {op!r}")
        n = self.dim
        for op, table in self.products.items():
            for (i, j), cell in table.items():
                if not (0 <= i < n and 0 <= j < n):
                    raise DocumentError(f"structure constant index ({i},{j}) "
                                        f"out of range")
                for k in cell:
                    if not 0 <= k < n:
                        raise DocumentError(f"structure constant target {k} "
                                            f"out of range")
        if self.weights is not None:
            if len(self.weights) != n or any(w < 1 for w in self.weights):
                raise DocumentError("weights must assign a positive integer "
                                    "to every basis vector")
            for op, table in self.products.items():
                for (i, j), cell in table.items():
                    for k, c in cell.items():
                        if c and self.weights[k] != self.weights[i] + self.weights[j]:
                            raise AxiomViolation(
                                op, (i, j), {k: c},
                                f"product {op} not weight-additive on "
                                f"({self.basis[i]}, {self.basis[j]})")
        checker = {"assoc": self._check_assoc, "comm": self._check_comm,
                   "lie": self._check_lie, "postlie": self._check_postlie}
        checker[self.operad_tag]()
        return self

    # -- axiom checks, all brute force over basis triples ------------------

    def _assoc_defect(self, op: str, i: int, j: int, k: int) -> Vector:
        left = self.multiply(op, self.product(op, i, j), {k: 1})
        right = self.multiply(op, {i: 1}, self.product(op, j, k))
        return vec_add(left, right, -1)

    def _check_assoc(self, op: str = "mul") -> None:
        n = self.dim
        for i, j, k in itertools.product(range(n), repeat=3):
            defect = self._assoc_defect(op, i, j, k)
            if defect:
                raise AxiomViolation(
                    op, (i, j, k), defect,
                    f"associativity fails on ({self.basis[i]}, "
                    f"{self.basis[j]}, {self.basis[k]})")

    def _check_comm(self) -> None:
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                defect = vec_add(self.product("mul", i, j),
                                 self.product("mul", j, i), -1)
                if defect:
                    raise AxiomViolation(
                        "mul", (i, j), defect,
                        f"commutativity fails on ({self.basis[i]}, "
                        f"{self.basis[j]})")
        self._check_assoc()

    def _check_lie(self, op: str = "bracket") -> None:
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                defect = vec_add(self.product(op, i, j),
                                 self.product(op, j, i))
                if defect:
                    raise AxiomViolation(
                        op, (i, j), defect,
                        f"antisymmetry fails on ({self.basis[i]}, "
                        f"{self.basis[j]})")
        for i, j, k in itertools.product(range(n), repeat=3):
            defect = self.multiply(op, self.product(op, i, j), {k: 1})
            defect = vec_add(defect,
                             self.multiply(op, self.product(op, j, k), {i: 1}))
            defect = vec_add(defect,
                             self.multiply(op, self.product(op, k, i), {j: 1}))
            if defect:
                raise AxiomViolation(
                    op, (i, j, k), defect,
                    f"Jacobi fails on ({self.basis[i]}, {self.basis[j]}, "
                    f"{self.basis[k]})")

    def _check_postlie(self) -> None:
        self._check_lie("bracket")
        n = self.dim
        mul = lambda a, b: self.multiply("circle", a, b)
        brk = lambda a, b: self.multiply("bracket", a, b)
        for i, j, k in itertools.product(range(n), repeat=3):
            a, b, c = {i: 1}, {j: 1}, {k: 1}
            # a o [b, c] = (a o b) o c - a o (b o c) - (a o c) o b + a o (c o b)
            lhs = mul(a, brk(b, c))
            rhs = mul(mul(a, b), c)
            rhs = vec_add(rhs, mul(a, mul(b, c)), -1)
            rhs = vec_add(rhs, mul(mul(a, c), b), -1)
            rhs = vec_add(rhs, mul(a, mul(c, b)))
            defect = vec_add(lhs, rhs, -1)
            if defect:
                raise AxiomViolation(
                    "circle", (i, j, k), defect,
                    f"post-Lie identity (circle with bracket argument) fails "
                    f"on triple ({i},{j},{k})")
            # [a, b] o c = [a, b o c] + [a o c, b]
            lhs = mul(brk(a, b), c)
            rhs = vec_add(brk(a, mul(b, c)), brk(mul(a, c), b))
            defect = vec_add(lhs, rhs, -1)
            if defect:
                raise AxiomViolation(
                    "circle", (i, j, k), defect,
                    f"post-Lie identity (bracket circle c) fails on triple "
                    f"({i},{j},{k})")

    def as_assoc(self) -> "AlgebraPresentation":
        """A commutative algebra reread as an associative presentation."""
        if self.operad_tag == "assoc":
            return self
        if self.operad_tag != "comm":
            raise ValueError("only commutative algebras embed into assoc here")
        return AlgebraPresentation(self.name, "assoc", self.basis,
                                   self.products, self.weights)


@dataclass(frozen=True)
class ModulePresentation:
    """Coefficient module over an algebra presentation.

    ``actions[name][(i, j)] = {k: c}`` encodes x_i acting on m_j.  Required
    names: ``left``/``right`` for assoc bimodules (side "bi"), ``action`` for
    comm and lie modules.  A symmetric module over a commutative algebra may
    give only ``action``; both sides then agree with it.
    """

    algebra: AlgebraPresentation
    basis: tuple[str, ...]
    actions: Mapping[str, StructureConstants]
    side: str = "bi"
    symmetric: bool = False
    name: str = "module"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def action_table(self, action: str) -> StructureConstants:
        if action in self.actions:
            return self.actions[action]
        if self.symmetric and action in ("left", "right") \
                and "action" in self.actions:
            return self.actions["action"]
        if self.symmetric and action == "right" and "left" in self.actions:
            return self.actions["left"]
        if action == "action" and "left" in self.actions and self.symmetric:
            return self.actions["left"]
        raise KeyError(f"module has no action {action!r}")

    def act_named(self, action: str, a: Vector, m: Vector) -> Vector:
        table = self.action_table(action)
        out: Vector = {}
        for i, x in a.items():
            for j, y in m.items():
                cell = table.get((i, j))
                if not cell:
                    continue
                c = x * y
                for k, v in cell.items():
                    acc = _norm(out.get(k, 0) + c * v)
                    if acc:
                        out[k] = acc
                    else:
                        out.pop(k, None)
        return out

    def validate(self) -> "ModulePresentation":
        tag = self.algebra.operad_tag
        n, d = self.algebra.dim, self.dim
        for name, table in self.actions.items():
            for (i, j), cell in table.items():
                if not (0 <= i < n and 0 <= j < d):
                    raise DocumentError("action index out of range")
                for k in cell:
                    if not 0 <= k < d:
                        raise DocumentError("action target out of range")
        unit = lambda i: {i: 1}
        munit = lambda j: {j: 1}
        if tag in ("assoc", "comm"):
            op = "mul"
            left = lambda a, m: self.act_named("left", a, m)
            right = lambda m, a: self.act_named("right", a, m)
            for i, j in itertools.product(range(n), repeat=2):
                for t in range(d):
                    ab = self.algebra.product(op, i, j)
                    defect = vec_add(left(ab, munit(t)),
                                     left(unit(i), left(unit(j), munit(t))), -1)
                    if defect:
                        raise AxiomViolation(
                            "left", (i, j, t), defect,
                            "left module axiom fails")
                    defect = vec_add(right(munit(t), ab),
                                     right(right(munit(t), unit(i)), unit(j)), -1)
                    if defect:
                        raise AxiomViolation(
                            "right", (i, j, t), defect,
                            "right module axiom fails")
                    defect = vec_add(right(left(unit(i), munit(t)), unit(j)),
                                     left(unit(i), right(munit(t), unit(j))), -1)
                    if defect:
                        raise AxiomViolation(
                            "bimodule", (i, j, t), defect,
                            "bimodule compatibility fails")
            if self.symmetric:
                for i in range(n):
                    for t in range(d):
                        defect = vec_add(left(unit(i), munit(t)),
                                         right(munit(t), unit(i)), -1)
                        if defect:
                            raise AxiomViolation(
                                "symmetric", (i, t), defect,
                                "module is declared symmetric but the two "
                                "actions differ")
        elif tag in ("lie", "postlie"):
            act = lambda a, m: self.act_named("action", a, m)
            for i, j in itertools.product(range(n), repeat=2):
                for t in range(d):
                    br = self.algebra.product("bracket", i, j)
                    defect = vec_add(act(br, munit(t)),
                                     vec_add(act(unit(i), act(unit(j), munit(t))),
                                             act(unit(j), act(unit(i), munit(t))),
                                             -1), -1)
                    if defect:
                        raise AxiomViolation(
                            "action", (i, j, t), defect,
                            "Lie module axiom fails")
        return self


def regular_module(algebra: AlgebraPresentation,
                   name: str | None = None) -> ModulePresentation:
    """The algebra acting on itself (bimodule for assoc tags, adjoint for
    lie)."""
    op = algebra.main_op()
    table = algebra.products[op]
    left: StructureConstants = {k: dict(v) for k, v in table.items()}
    actions: dict[str, StructureConstants]
    if algebra.operad_tag == "assoc":
        right: StructureConstants = {}
        for (i, j), cell in table.items():
            # right action of x_j on m_i is m_i . x_j
            right[(j, i)] = dict(cell)
        actions = {"left": left, "right": right}
        sym = False
        side = "bi"
    elif algebra.operad_tag == "comm":
        actions = {"action": left, "left": left,
                   "right": {(j, i): dict(c) for (i, j), c in table.items()}}
        sym = True
        side = "bi"
    else:
        actions = {"action": left}
        sym = False
        side = "left"
    return ModulePresentation(algebra, algebra.basis, actions, side=side,
                              symmetric=sym,
                              name=name or f"{algebra.name}-regular")


def trivial_module(algebra: AlgebraPresentation, dim: int = 1,
                   name: str = "trivial") -> ModulePresentation:
    labels = tuple(f"m{t}" for t in range(dim))
    actions: dict[str, StructureConstants]
    if algebra.operad_tag in ("assoc", "comm"):
        actions = {"left": {}, "right": {}}
    else:
        actions = {"action": {}}
    # both actions vanish, so the module is symmetric whatever the tag
    return ModulePresentation(algebra, labels, actions, side="bi",
                              symmetric=True, name=name)


# ---------------------------------------------------------------------------
# document parsing
# ---------------------------------------------------------------------------

def _parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            f = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"bad rational literal {s!r}: {exc}") from exc
        return f
    raise DocumentError(f"rational must be an int or 'p/q' string, got {s!r}")


def _parse_table(raw, what: str) -> StructureConstants:
    table: StructureConstants = {}
    if not isinstance(raw, list):
        raise DocumentError(f"{what} must be a list of [i, j, targets] rows")
    for row in raw:
        if not (isinstance(row, list) and len(row) == 3):
            raise DocumentError(f"{what} rows must be [i, j, targets]")
        i, j, targets = row
        cell: Vector = {}
        for pair in targets:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise DocumentError(f"{what} targets must be [k, rational]")
            k, c = pair
            val = _norm(_parse_rational(c))
            if val:
                cell[int(k) - 1] = val
        if cell:
            table[(int(i) - 1, int(j) - 1)] = cell
    return table


def algebra_from_dict(doc: dict) -> AlgebraPresentation:
    for key in ("name", "operad", "basis", "products"):
        if key not in doc:
            raise DocumentError(f"algebra document missing field {key!r}")
    tag = doc["operad"]
    if tag not in OPERAD_TAGS:
        raise DocumentError(f"operad must be one of {OPERAD_TAGS}, "
                            f"got {tag!r}")
    basis = tuple(str(b) for b in doc["basis"])
    products = {op: _parse_table(raw, f"products[{op}]")
                for op, raw in doc["products"].items()}
    weights = None
    if doc.get("weights") is not None:
        weights = tuple(int(w) for w in doc["weights"])
    return AlgebraPresentation(str(doc["name"]), tag, basis, products,
                               weights)


def module_from_dict(doc: dict, algebra: AlgebraPresentation,
                     ) -> ModulePresentation:
    for key in ("algebra", "basis", "actions"):
        if key not in doc:
            raise DocumentError(f"module document missing field {key!r}")
    if doc["algebra"] != algebra.name:
        raise DocumentError(
            f"module document references algebra {doc['algebra']!r} but "
            f"{algebra.name!r} was supplied")
    basis = tuple(str(b) for b in doc["basis"])
    actions = {nm: _parse_table(raw, f"actions[{nm}]")
               for nm, raw in doc["actions"].items()}
    return ModulePresentation(
        algebra, basis, actions,
        side=doc.get("side", "bi"),
        symmetric=bool(doc.get("symmetric", False)),
        name=str(doc.get("name", "module")))


def parse_and_validate(text: str) -> AlgebraPresentation:
    """Parse an algebra document (JSON text) and check all axioms."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return algebra_from_dict(doc).validate()


def parse_and_validate_module(text: str, algebra: AlgebraPresentation,
                              ) -> ModulePresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return module_from_dict(doc, algebra).validate()


# ---------------------------------------------------------------------------
# free algebra truncations
# ---------------------------------------------------------------------------

def free_algebra_truncation(tag: str, generators: int,
                            weight_cutoff: int) -> AlgebraPresentation:
    """Weight-graded nilpotent truncation of a free algebra.

    Products landing above the cutoff are zero, which yields a genuine
    finite-dimensional algebra agreeing with the free one in all weights up
    to the cutoff.
    """
    if generators < 1 or weight_cutoff < 1:
        raise ValueError("need generators >= 1 and weight_cutoff >= 1")
    if tag == "assoc":
        return _free_assoc(generators, weight_cutoff)
    if tag == "comm":
        return _free_comm(generators, weight_cutoff)
    if tag == "lie":
        return _free_lie(generators, weight_cutoff)
    raise ValueError(f"free truncation not supported for tag {tag!r}")


def _letters(g: int) -> list[str]:
    return [f"x{t}" for t in range(g)] if g > 2 else ["x", "y"][:g]


def _free_assoc(g: int, cutoff: int) -> AlgebraPresentation:
    words: list[tuple[int, ...]] = []
    for length in range(1, cutoff + 1):
        words.extend(itertools.product(range(g), repeat=length))
    index = {w: t for t, w in enumerate(words)}
    letters = _letters(g)
    basis = tuple("".join(letters[c] for c in w) for w in words)
    weights = tuple(len(w) for w in words)
    table: StructureConstants = {}
    for (i, u), (j, v) in itertools.product(enumerate(words), repeat=2):
        w = u + v
        if len(w) <= cutoff:
            table[(i, j)] = {index[w]: 1}
    return AlgebraPresentation(f"free-assoc-{g}-w{cutoff}", "assoc", basis,
                               {"mul": table}, weights).validate()


def _free_comm(g: int, cutoff: int) -> AlgebraPresentation:
    monos: list[tuple[int, ...]] = []
    for total in range(1, cutoff + 1):
        for expo in _exponents(g, total):
            monos.append(expo)
    index = {m: t for t, m in enumerate(monos)}
    letters = _letters(g)
    basis = tuple(
        "*".join(f"{letters[c]}^{e}" if e > 1 else letters[c]
                 for c, e in enumerate(m) if e) for m in monos)
    weights = tuple(sum(m) for m in monos)
    table: StructureConstants = {}
    for (i, u), (j, v) in itertools.product(enumerate(monos), repeat=2):
        w = tuple(a + b for a, b in zip(u, v))
        if sum(w) <= cutoff:
            table[(i, j)] = {index[w]: 1}
    return AlgebraPresentation(f"free-comm-{g}-w{cutoff}", "comm", basis,
                               {"mul": table}, weights).validate()


def _exponents(g: int, total: int) -> Iterable[tuple[int, ...]]:
    if g == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _exponents(g - 1, total - head):
            yield (head,) + rest


# -- free Lie algebras on the Lyndon basis ----------------------------------

def lyndon_words(g: int, max_len: int) -> list[tuple[int, ...]]:
    """All Lyndon words on {0..g-1} of length <= max_len (Duval's method),
    ordered by (length, lexicographic)."""
    out: list[tuple[int, ...]] = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m <= max_len:
            out.append(tuple(w))
        while len(w) < max_len:
            w.append(w[-m])
        while w and w[-1] == g - 1:
            w.pop()
    return sorted(out, key=lambda t: (len(t), t))


def _standard_factorization(w: tuple[int, ...]) -> tuple[tuple[int, ...],
                                                         tuple[int, ...]]:
    """w = u v with v the lexicographically smallest proper suffix (standard
    right factor); both factors are Lyndon."""
    n = len(w)
    best = 1
    for s in range(1, n):
        if w[s:] < w[best:]:
            best = s
    return w[:best], w[best:]


def _expand_bracketing(w: tuple[int, ...],
                       cache: dict) -> dict[tuple[int, ...], int]:
    """Standard Lyndon bracketing of w expanded in the tensor algebra."""
    if w in cache:
        return cache[w]
    if len(w) == 1:
        cache[w] = {w: 1}
        return cache[w]
    u, v = _standard_factorization(w)
    pu = _expand_bracketing(u, cache)
    pv = _expand_bracketing(v, cache)
    out: dict[tuple[int, ...], int] = {}
    for a, ca in pu.items():
        for b, cb in pv.items():
            out[a + b] = out.get(a + b, 0) + ca * cb
            out[b + a] = out.get(b + a, 0) - ca * cb
    cache[w] = {k: v for k, v in out.items() if v}
    return cache[w]


def _rewrite_to_lyndon(poly: dict[tuple[int, ...], Scalar],
                       cache: dict) -> dict[tuple[int, ...], Scalar]:
    """Write a Lie element (given in the tensor algebra) in the Lyndon basis.

    Uses triangularity: the lexicographically least word of the expansion of
    a Lyndon bracketing b(w) is w itself, with coefficient 1.
    """
    remaining = {k: v for k, v in poly.items() if v}
    out: dict[tuple[int, ...], Scalar] = {}
    while remaining:
        w = min(remaining)
        c = remaining[w]
        expansion = _expand_bracketing(w, cache)
        if expansion.get(w) != 1:
            raise AssertionError("leading term of Lyndon bracketing != 1")
        for word, coeff in expansion.items():
            acc = _norm(remaining.get(word, 0) - c * coeff)
            if acc:
                remaining[word] = acc
            else:
                remaining.pop(word, None)
        out[w] = c
    return out


def _free_lie(g: int, cutoff: int) -> AlgebraPresentation:
    words = lyndon_words(g, cutoff)
    index = {w: t for t, w in enumerate(words)}
    letters = _letters(g)
    basis = tuple("[" + "".join(letters[c] for c in w) + "]" if len(w) > 1
                  else letters[w[0]] for w in words)
    weights = tuple(len(w) for w in words)
    cache: dict = {}
    table: StructureConstants = {}
    for (i, u), (j, v) in itertools.product(enumerate(words), repeat=2):
        if len(u) + len(v) > cutoff:
            continue
        pu = _expand_bracketing(u, cache)
        pv = _expand_bracketing(v, cache)
        commutator: dict[tuple[int, ...], Scalar] = {}
        for a, ca in pu.items():
            for b, cb in pv.items():
                for word, sgn in ((a + b, 1), (b + a, -1)):
                    acc = commutator.get(word, 0) + sgn * ca * cb
                    if acc:
                        commutator[word] = acc
                    else:
                        commutator.pop(word, None)
        if not commutator:
            continue
        cell: Vector = {}
        for w, c in _rewrite_to_lyndon(commutator, cache).items():
            if c:
                cell[index[w]] = c
        if cell:
            table[(i, j)] = cell
    return AlgebraPresentation(f"free-lie-{g}-w{cutoff}", "lie", basis,
                               {"bracket": table}, weights).validate()
