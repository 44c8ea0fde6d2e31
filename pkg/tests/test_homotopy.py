"""Path objects, h-propositions, point lifts, naturality squares."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubeprop.cube import all_morphisms, parse_mor, points
from cubeprop.errors import InstanceTooLarge, TruncationError
from cubeprop.generate import fibred_nablas, mono_with_lifts, random_subobject
from cubeprop.presheaf import (check_nat_pullback, closure, compose_mor,
                               constant_paths, delta_const, delta_map,
                               endpoint, find_point_lifts, find_section,
                               gamma_section_transfer, identity_mor,
                               interval_exponential, is_hprop, is_iso,
                               mono_has_point_lifts, nabla, nabla_rel,
                               path_object, product, terminal, to_terminal,
                               yoneda)


def point_graph_components(Y):
    # oracle: level-0 elements joined when some higher element has both
    # as points; a mono has point lifts iff its level-0 image is a union
    # of these components and it contains every element over them
    parent = {y: y for y in Y.levels[0]}

    def find(u):
        while parent[u] != u:
            u = parent[u]
        return u

    for n in range(1, Y.trunc + 1):
        for y in Y.levels[n]:
            pts = [Y.act(p, y) for p in points(n)]
            for q in pts[1:]:
                parent[find(q)] = find(pts[0])
    comps = {}
    for y in Y.levels[0]:
        comps.setdefault(find(y), set()).add(y)
    return list(comps.values())


def lifts_oracle(A):
    Y = A.ambient
    a0 = A.members[0]
    for comp in point_graph_components(Y):
        if comp & a0 and not comp <= a0:
            return False
    for n in range(Y.trunc + 1):
        for y in Y.levels[n]:
            if Y.act(points(n)[0], y) in a0 and y not in A.members[n]:
                return False
    return True


def test_interval_exponential_levels():
    y1 = yoneda(1, 2)
    XI = interval_exponential(y1)
    assert XI.trunc == 1
    assert XI.sizes == (3, 4)
    with pytest.raises(TruncationError):
        interval_exponential(yoneda(1, 0))


def test_constant_paths_and_endpoints():
    y1 = yoneda(1, 2)
    c = constant_paths(y1)
    for e in (0, 1):
        assert is_iso(compose_mor(endpoint(y1, e), c))


def test_path_object_of_discrete_has_only_constant_paths():
    D = delta_const(["a", "b"], 2)
    po = path_object(to_terminal(D))
    assert po.obj.sizes == (2, 2)
    assert po.fiber_product.obj.sizes == (4, 4)
    comp0 = po.boundary.components[0]
    assert sorted(comp0.values()) == ["(a,a)", "(b,b)"]


def test_path_object_of_identity_is_diagonal():
    y1 = yoneda(1, 2)
    po = path_object(identity_mor(y1))
    assert po.obj.sizes == (2, 3)
    assert is_iso(po.boundary)


@pytest.mark.parametrize("name,obj,expected", [
    ("terminal", terminal(2), True),
    ("two points", delta_const(["a", "b"], 2), False),
    ("interval", yoneda(1, 2), False),
    ("codiscrete pair", nabla(["0", "1"], 2), True),
])
def test_is_hprop_examples(name, obj, expected):
    assert (is_hprop(to_terminal(obj)) is not None) is expected


def test_is_hprop_of_mono_always():
    y1 = yoneda(1, 2)
    A = closure(y1, [(0, "[c0]")])
    assert is_hprop(A.inclusion()) is not None


def test_is_hprop_cap():
    big = product(nabla(["0", "1"], 2), nabla(["0", "1", "2"], 2)).obj
    with pytest.raises(InstanceTooLarge):
        is_hprop(to_terminal(big), limit=64)


def test_point_lifts_examples():
    T = terminal(2)
    D = delta_const(["a", "b"], 2)
    f = delta_map({"a": "*", "b": "*"}, D, T)
    lifts = find_point_lifts(f)
    assert lifts is not None and lifts.verify()
    assert find_point_lifts(identity_mor(yoneda(1, 2))).verify()
    A = closure(yoneda(1, 2), [(0, "[c0]")])
    assert find_point_lifts(A.inclusion()) is None


def test_nat_pullback_control_fails():
    A = closure(yoneda(1, 2), [(0, "[c0]")])
    rep = check_nat_pullback(A.inclusion(), parse_mor("0->1:[c0]"))
    assert not rep.ok
    assert "not a pullback" in rep.describe()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_point_lifts_match_component_oracle(seed):
    _, A = random_subobject(seed, 2, 6)
    assert mono_has_point_lifts(A.inclusion()) == lifts_oracle(A)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_nat_pullback_for_monos_with_lifts(seed):
    _, f = mono_with_lifts(seed, 2, 6)
    lifts = find_point_lifts(f)
    assert lifts is not None and lifts.verify()
    for s in all_morphisms(2):
        assert check_nat_pullback(f, s).ok


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_detruncation_transfer(seed):
    _, Z, f = fibred_nablas(seed, 2, allow_empty=True)
    rel = nabla_rel(Z, f)
    sec = find_section(rel.proj)
    inhabited = all(any(f.components[0][w] == z for w in f.source.levels[0])
                    for z in Z)
    assert (sec is not None) == inhabited
    if sec is not None:
        h = gamma_section_transfer(Z, f, rel, sec)
        assert all(f.components[0][h[z]] == z for z in Z)


def test_nabla_rel_of_constant_is_iso():
    D = delta_const(["a", "b"], 2)
    rel = nabla_rel(["a", "b"], identity_mor(D))
    assert is_iso(rel.proj)


def test_nabla_rel_empty_fibre():
    W = delta_const(["a"], 2)
    DZ = delta_const(["a", "b"], 2)
    f = delta_map({"a": "a"}, W, DZ)
    rel = nabla_rel(["a", "b"], f)
    over_b = [e for e in rel.obj.levels[0] if rel.proj.components[0][e] == "b"]
    assert over_b == []
    assert find_section(rel.proj) is None


def test_nabla_rel_of_interval_over_point():
    y1 = yoneda(1, 2)
    rel = nabla_rel(["*"], to_terminal(y1))
    # functions from points(n) into the two endpoints
    assert rel.obj.sizes == (2, 4, 16)
