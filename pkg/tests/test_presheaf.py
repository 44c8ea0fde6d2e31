"""Truncated cubical sets: validation, limits, adjunctions, JSON."""

from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubeprop.cube import all_morphisms, compose, enum_homs, parse_mor, points
from cubeprop.errors import (FunctorialityError, NaturalityError, ParseError,
                             PreconditionError)
from cubeprop.generate import random_base, random_subobject
from cubeprop.presheaf import (check_pullback_universal, closure, coproduct,
                               copair, delta_const, delta_transpose, find_iso,
                               gamma, image, is_iso, is_mono, morphism, nabla,
                               nabla_data, nabla_transpose, nabla_untranspose,
                               natural_maps, product, pullback, quotient,
                               subobject, terminal, to_terminal, truncate,
                               validate, yoneda)
from cubeprop.presheaf.io import (load_file, mor_from_dict, mor_to_dict,
                                  tcset_from_dict, tcset_to_dict)


def naive_functorial(X):
    # direct triple loop, independent of composable_pairs
    D = X.trunc
    for a in range(D + 1):
        for b in range(D + 1):
            for c in range(D + 1):
                for s in enum_homs(a, b):
                    for t in enum_homs(b, c):
                        for x in X.levels[c]:
                            if X.act(compose(t, s), x) != X.act(s, X.act(t, x)):
                                return False
    return True


def interval_doc():
    return {"trunc": 1, "levels": {"0": ["a", "b"], "1": ["p", "da", "db"]},
            "action": {"0->1:[c0]": {"p": "a", "da": "a", "db": "b"},
                       "0->1:[c1]": {"p": "b", "da": "a", "db": "b"},
                       "1->0:[]": {"a": "da", "b": "db"},
                       "1->1:[c0]": {"p": "da", "da": "da", "db": "db"},
                       "1->1:[c1]": {"p": "db", "da": "da", "db": "db"}}}


def test_yoneda_sizes():
    assert yoneda(1, 2).sizes == (2, 3, 4)
    assert yoneda(0, 2).sizes == (1, 1, 1)
    assert yoneda(2, 2).sizes == (4, 9, 16)


@pytest.mark.parametrize("n,D", [(0, 1), (1, 1), (1, 2), (2, 2)])
def test_yoneda_functorial_by_oracle(n, D):
    assert naive_functorial(yoneda(n, D))


def test_interval_from_json():
    X = tcset_from_dict(interval_doc())
    assert X.sizes == (2, 3)
    assert find_iso(X, yoneda(1, 1)) is not None
    assert X.act(parse_mor("0->1:[c1]"), "p") == "b"
    assert naive_functorial(X)


def test_bad_action_names_equation():
    doc = interval_doc()
    doc["action"]["1->1:[c0]"]["p"] = "p"
    with pytest.raises(ParseError) as err:
        tcset_from_dict(doc)
    assert "s = " in str(err.value) and "t = " in str(err.value)


def test_validate_witness():
    lv = [["a"], ["p", "q"]]
    act = {parse_mor("0->1:[c0]"): {"p": "a", "q": "a"},
           parse_mor("0->1:[c1]"): {"p": "a", "q": "a"},
           parse_mor("1->0:[]"): {"a": "q"},
           parse_mor("1->1:[c0]"): {"p": "p", "q": "p"},
           parse_mor("1->1:[c1]"): {"p": "p", "q": "p"}}
    with pytest.raises(FunctorialityError) as err:
        validate(1, lv, act)
    assert err.value.witness is not None


def test_missing_action_rejected():
    with pytest.raises(FunctorialityError, match="missing action"):
        validate(1, [["a"], ["p"]], {})


def test_json_errors_name_location(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"trunc": 1, "levels": {"0": ["a"], "1": [3]}}')
    with pytest.raises(ParseError, match=r"levels\.1"):
        load_file(bad)
    bad.write_text("{not json")
    with pytest.raises(ParseError, match="bad.json:1"):
        load_file(bad)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2))
def test_json_roundtrip(seed, D):
    _, Y = random_base(random.Random(seed), D, 6)
    back = tcset_from_dict(json.loads(json.dumps(tcset_to_dict(Y))))
    assert back.same_as(Y)
    f = to_terminal(Y)
    assert mor_from_dict(json.loads(json.dumps(mor_to_dict(f)))).same_as(f)


def test_nonnatural_rejected():
    Y = yoneda(1, 1)
    T = terminal(1)
    D2 = delta_const(["0", "1"], 1)
    # sending the two endpoints of the interval to different constants
    with pytest.raises(NaturalityError):
        morphism(Y, D2, [{"[c0]": "0", "[c1]": "1"},
                         {"[c0]": "0", "[c1]": "1", "[v0]": "0"}])
    assert to_terminal(Y).target.same_as(T)


def test_product_of_intervals_is_square():
    y1 = yoneda(1, 2)
    P = product(y1, y1)
    assert P.obj.sizes == (4, 9, 16)
    iso = find_iso(P.obj, yoneda(2, 2))
    assert iso is not None and is_iso(iso)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_product_sizes_and_pullback_universal(seed):
    rng = random.Random(seed)
    _, X = random_base(rng, 2, 4)
    _, Y = random_base(rng, 2, 4)
    P = product(X, Y)
    assert P.obj.sizes == tuple(a * b for a, b in zip(X.sizes, Y.sizes))
    tx, ty = to_terminal(X), to_terminal(Y)
    pb = pullback(tx, ty)
    assert pb.obj.sizes == P.obj.sizes
    assert check_pullback_universal(tx, ty, pb)


def test_pullback_of_mono_is_intersection():
    y1 = yoneda(1, 2)
    A = closure(y1, [(0, "[c0]")]).inclusion()
    B = closure(y1, [(0, "[c1]")]).inclusion()
    pb = pullback(A, B)
    assert pb.obj.is_empty()
    pb2 = pullback(A, A)
    assert pb2.obj.sizes == (1, 1, 1)


def test_coproduct_and_copair():
    X, Y = yoneda(1, 1), delta_const(["z"], 1)
    cp = coproduct(X, Y)
    assert cp.obj.sizes == (3, 4)
    f = copair(to_terminal(X), to_terminal(Y), cp)
    assert f.same_as(to_terminal(cp.obj))


def test_gamma_and_delta():
    assert set(gamma(yoneda(1, 2))) == {"[c0]", "[c1]"}
    D = delta_const(["a", "b"], 2)
    assert D.sizes == (2, 2, 2)
    assert naive_functorial(D)


def test_nabla_level_sizes():
    assert nabla(["0", "1"], 1).sizes == (2, 4)
    assert nabla(["0", "1"], 2).sizes == (2, 4, 16)
    assert nabla(["x"], 2).sizes == (1, 1, 1)
    assert naive_functorial(nabla(["0", "1"], 2))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_adjunction_bijections(seed, k):
    rng = random.Random(seed)
    _, X = random_base(rng, 2, 4)
    Z = [f"z{i}" for i in range(k)]
    DZ = delta_const(Z, 2)
    # Delta -| Gamma: maps Delta Z -> X correspond to functions Z -> X_0
    maps = list(natural_maps(DZ, X))
    assert len(maps) == len(X.levels[0]) ** k
    for h in maps[:5]:
        back = {z: h.components[0][z] for z in Z}
        assert delta_transpose(back, Z, X).same_as(h)
    # Gamma -| Nabla: maps X -> Nabla Z correspond to functions X_0 -> Z
    data = nabla_data(Z, 2)
    count = 0
    for phi in natural_maps(X, data.obj):
        count += 1
        if count <= 5:
            h = nabla_untranspose(phi, data)
            assert nabla_transpose(h, X, Z).same_as(phi)
    assert count == k ** len(X.levels[0])


def test_subobject_checks():
    y1 = yoneda(1, 1)
    with pytest.raises(PreconditionError, match="not closed"):
        subobject(y1, [set(), {"[v0]"}])
    A = subobject(y1, [{"[c0]"}, {"[c0]"}])
    assert A.sizes() == (1, 1)
    assert is_mono(A.inclusion())
    assert image(A.inclusion()).same_as(A)


def test_closure_of_interval_element():
    y1 = yoneda(1, 2)
    A = closure(y1, [(1, "[v0]")])
    assert A.is_full()


def test_quotient_of_interval_endpoints():
    y1 = yoneda(1, 2)
    Q = quotient(y1, [(0, "[c0]", "[c1]")])
    assert Q.obj.sizes == (1, 2, 3)
    assert naive_functorial(Q.obj)


def test_truncate():
    y1 = yoneda(1, 2)
    T = truncate(y1, 1)
    assert T.sizes == (2, 3)
    assert T.same_as(yoneda(1, 1))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_random_subobjects_are_closed(seed):
    _, A = random_subobject(seed, 2, 6)
    Y = A.ambient
    for s in all_morphisms(2):
        for y in A.members[s.cod]:
            assert Y.act(s, y) in A.members[s.dom]
    for n, lv in enumerate(Y.levels):
        for y in lv:
            pts = {Y.act(p, y) for p in points(n)}
            assert pts


def test_points_restrict_into_level0():
    for n in range(3):
        for p in points(n):
            assert p.dom == 0 and p.cod == n
