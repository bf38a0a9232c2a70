import itertools
import json
from fractions import Fraction

import pytest

from opchains.presentations import (
    AlgebraPresentation,
    AxiomViolation,
    DocumentError,
    ModulePresentation,
    algebra_from_dict,
    free_algebra_truncation,
    lyndon_words,
    parse_and_validate,
    parse_and_validate_module,
    regular_module,
    trivial_module,
)

DUAL_NUMBERS_DOC = {
    "name": "dual-numbers",
    "operad": "comm",
    "basis": ["x"],
    "products": {"mul": []},
}

TWO_DIM_LIE_DOC = {
    "name": "ef",
    "operad": "lie",
    "basis": ["e", "f"],
    "products": {"bracket": [[1, 2, [[2, "1"]]], [2, 1, [[2, "-1"]]]]},
}


def two_dim_lie():
    return algebra_from_dict(TWO_DIM_LIE_DOC).validate()


def test_dual_numbers_accepted():
    alg = parse_and_validate(json.dumps(DUAL_NUMBERS_DOC))
    assert alg.dim == 1
    assert alg.product("mul", 0, 0) == {}


def test_broken_assoc_rejected_with_defect():
    doc = {
        "name": "broken",
        "operad": "assoc",
        "basis": ["x", "y"],
        # x*x = y, x*y = x: then (xx)x = yx = 0 but x(xx) = xy = x
        "products": {"mul": [[1, 1, [[2, "1"]]], [1, 2, [[1, "1"]]]]},
    }
    with pytest.raises(AxiomViolation) as err:
        parse_and_validate(json.dumps(doc))
    assert err.value.operation == "mul"
    assert err.value.defect  # nonzero defect vector reported


def test_two_dim_lie_accepted():
    alg = two_dim_lie()
    assert alg.product("bracket", 0, 1) == {1: 1}
    assert alg.product("bracket", 1, 0) == {1: -1}
    # revalidation is idempotent
    alg.validate().validate()


def test_jacobi_violation_rejected():
    doc = {
        "name": "bad-lie",
        "operad": "lie",
        "basis": ["a", "b", "c"],
        "products": {"bracket": [
            [1, 2, [[3, "1"]]], [2, 1, [[3, "-1"]]],
            [2, 3, [[1, "1"]]], [3, 2, [[1, "-1"]]],
            [3, 1, [[1, "1"]]], [1, 3, [[1, "-1"]]],
        ]},
    }
    with pytest.raises(AxiomViolation):
        parse_and_validate(json.dumps(doc))


def test_malformed_document():
    with pytest.raises(DocumentError):
        parse_and_validate("{not json")
    with pytest.raises(DocumentError):
        parse_and_validate(json.dumps({"name": "x", "operad": "assoc"}))
    with pytest.raises(DocumentError):
        parse_and_validate(json.dumps({
            "name": "x", "operad": "nope", "basis": ["x"],
            "products": {"mul": []}}))


def test_postlie_zero_circle_from_lie():
    doc = {
        "name": "ef-postlie",
        "operad": "postlie",
        "basis": ["e", "f"],
        "products": {
            "bracket": [[1, 2, [[2, "1"]]], [2, 1, [[2, "-1"]]]],
            "circle": [],
        },
    }
    parse_and_validate(json.dumps(doc))


def test_postlie_prelie_example():
    # abelian bracket, e o e = e: right-symmetric product is post-Lie
    doc = {
        "name": "idempotent-prelie",
        "operad": "postlie",
        "basis": ["e"],
        "products": {"bracket": [], "circle": [[1, 1, [[1, "1"]]]]},
    }
    parse_and_validate(json.dumps(doc))


def test_postlie_violation():
    # abelian bracket with a non-right-symmetric circle product fails
    doc = {
        "name": "bad-postlie",
        "operad": "postlie",
        "basis": ["a", "b"],
        "products": {"bracket": [], "circle": [[1, 1, [[2, "1"]]],
                                               [2, 1, [[1, "1"]]]]},
    }
    with pytest.raises(AxiomViolation):
        parse_and_validate(json.dumps(doc))


def test_weights_checked():
    doc = {
        "name": "graded",
        "operad": "comm",
        "basis": ["x", "x2"],
        "products": {"mul": [[1, 1, [[2, "1"]]]]},
        "weights": [1, 2],
    }
    parse_and_validate(json.dumps(doc))
    doc["weights"] = [1, 3]
    with pytest.raises(AxiomViolation):
        parse_and_validate(json.dumps(doc))


# ---------------------------------------------------------------------------
# free truncations
# ---------------------------------------------------------------------------

def dims_by_weight(alg):
    out = {}
    for w in alg.weights:
        out[w] = out.get(w, 0) + 1
    return [out.get(w, 0) for w in range(1, max(out) + 1)]


def test_free_comm_dims():
    alg = free_algebra_truncation("comm", 1, 3)
    assert dims_by_weight(alg) == [1, 1, 1]


def test_free_assoc_dims():
    alg = free_algebra_truncation("assoc", 2, 3)
    assert dims_by_weight(alg) == [2, 4, 8]


def mobius(n):
    out, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def witt(g, w):
    total = 0
    for d in range(1, w + 1):
        if w % d == 0:
            total += mobius(d) * g ** (w // d)
    return total // w


def test_free_lie_dims_match_witt():
    alg = free_algebra_truncation("lie", 2, 4)
    assert dims_by_weight(alg) == [witt(2, w) for w in range(1, 5)]
    assert dims_by_weight(alg) == [2, 1, 2, 3]
    alg3 = free_algebra_truncation("lie", 3, 3)
    assert dims_by_weight(alg3) == [witt(3, w) for w in range(1, 4)]


def test_lyndon_words_count():
    words = lyndon_words(2, 5)
    per_len = {}
    for w in words:
        per_len[len(w)] = per_len.get(len(w), 0) + 1
    assert per_len == {1: 2, 2: 1, 3: 2, 4: 3, 5: 6}


def test_free_truncations_validate_and_are_weight_additive():
    for tag, g, w in (("assoc", 2, 3), ("comm", 2, 4), ("lie", 2, 4)):
        alg = free_algebra_truncation(tag, g, w)
        op = alg.main_op()
        for (i, j), cell in alg.products[op].items():
            for k, c in cell.items():
                assert alg.weights[k] == alg.weights[i] + alg.weights[j]


def test_free_lie_bracket_agrees_with_tensor_commutator():
    # spot check: [x, [x, y]] has weight 3 and is a basis element
    alg = free_algebra_truncation("lie", 2, 3)
    names = list(alg.basis)
    ix = names.index("x")
    ixy = names.index("[xy]")
    got = alg.product("bracket", ix, ixy)
    assert got == {names.index("[xxy]"): 1}
    # antisymmetry of the table was validated; Jacobi too


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

def test_regular_module_assoc():
    alg = free_algebra_truncation("assoc", 1, 3)
    mod = regular_module(alg).validate()
    assert mod.dim == alg.dim


def test_regular_module_comm_symmetric():
    alg = free_algebra_truncation("comm", 1, 3)
    mod = regular_module(alg).validate()
    assert mod.symmetric


def test_regular_module_lie():
    mod = regular_module(two_dim_lie()).validate()
    assert mod.dim == 2


def test_trivial_module():
    mod = trivial_module(two_dim_lie()).validate()
    assert mod.dim == 1
    assert mod.act_named("action", {0: 1}, {0: 1}) == {}


def test_module_axiom_violation():
    alg = two_dim_lie()
    doc = {
        "algebra": "ef",
        "basis": ["m"],
        "actions": {"action": [[1, 1, [[1, "1"]]], [2, 1, [[1, "1"]]]]},
    }
    # [e,f].m = f.m = m, but e.(f.m) - f.(e.m) = m - m = 0: violation
    with pytest.raises(AxiomViolation):
        parse_and_validate_module(json.dumps(doc), alg)


def test_module_wrong_algebra_name():
    alg = two_dim_lie()
    doc = {"algebra": "other", "basis": ["m"], "actions": {"action": []}}
    with pytest.raises(DocumentError):
        parse_and_validate_module(json.dumps(doc), alg)
