import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from k3cone.cones import (
    ChamberComplex,
    RationalCone,
    act,
    double_description,
    dual_cone,
    faces,
    fixed_subspace,
    intersect_with_subspace,
    orbit_faces,
    validate_chamber_complex,
)
from k3cone.lattice import make_standard
from k3cone.roots import Root, reflection_matrix
import oracles
from oracles import extreme_rays_pointed, facets_of_full_cone, prim

Q1 = RationalCone.from_rays([(1, 0), (0, 1)])


def random_rays(rng, dim, count, bound=3):
    out = []
    while len(out) < count:
        v = tuple(rng.randint(-bound, bound) for _ in range(dim))
        if any(v):
            out.append(v)
    return out


def test_quadrant_self_dual():
    assert dual_cone([(1, 0), (0, 1)]).rays == ((0, 1), (1, 0))


def test_dual_example():
    assert set(dual_cone([(1, 0), (1, 1)]).rays) == {(0, 1), (1, -1)}


def test_lineality_and_equations():
    half = RationalCone.from_inequalities([(1, 0)])
    assert half.lineality == ((0, 1),) and half.rays == ((1, 0),)
    assert not half.is_pointed and half.is_full_dimensional
    line = RationalCone.from_rays([(1, 1), (-1, -1)])
    assert line.dim == 1 and line.equations == ((1, -1),)
    assert line.rays == () and line.lineality == ((1, 1),)
    whole = RationalCone.from_inequalities([], dim=3)
    assert whole.dim == 3 and len(whole.lineality) == 3
    zero = RationalCone.from_rays([], dim=2)
    assert zero.dim == 0


def test_faces_examples():
    assert sorted(f.rays()[0] for f in faces(Q1, 1)) == [(0, 1), (1, 0)]
    simplicial = RationalCone.from_rays([(1, 0, 0), (1, 1, 0), (1, 1, 1)])
    assert len(faces(simplicial, 1)) == 3
    assert len(faces(simplicial, 2)) == 3
    assert len(faces(simplicial, 3)) == 1
    with pytest.raises(ValueError):
        faces(simplicial, 4)


def test_square_cone_faces():
    sq = RationalCone.from_rays([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)])
    fs = faces(sq, 1)
    assert len(fs) == 4 and all(len(f.rays()) == 2 for f in fs)
    assert len(faces(sq, 2)) == 4


def test_fixed_subspace_examples():
    assert fixed_subspace([[[0, 1], [1, 0]]]) == ((1, 1),)
    assert fixed_subspace([[[1, 0, 0], [0, 1, 0], [0, 0, 1]]]) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert fixed_subspace([[[-1, 0, 0], [0, -1, 0], [0, 0, -1]]]) == ()
    with pytest.raises(ValueError):
        fixed_subspace([[[1, 0], [0, 1]], [[1]]])


def test_intersect_examples():
    assert intersect_with_subspace(Q1, [(1, 1)]).rays == ((1,),)
    assert intersect_with_subspace(Q1, [(1, 0), (0, 1)]) == Q1
    with pytest.raises(ValueError):
        intersect_with_subspace(Q1, [(1, 1), (2, 2)])


def test_act_examples():
    I = [[1, 0], [0, 1]]
    assert act(I, Q1) == Q1
    assert act([[-1, 0], [0, -1]], Q1).rays == ((-1, 0), (0, -1))
    U = make_standard("U")
    R = reflection_matrix(Root(U, (1, -1))).matrix
    C = RationalCone.from_rays([(1, 0), (2, 1)])
    assert act(R, act(R, C)) == C
    with pytest.raises(ValueError):
        act([[1, 1], [1, 1]], C)


def test_orbit_examples():
    items = [RationalCone.from_rays([r]) for r in [(1, 0), (-1, 0), (0, 1)]]
    part = orbit_faces(items, [[[-1, 0], [0, -1]]], word_budget=4)
    assert part.classes == [[0, 1], [2]]
    assert all(part.complete)
    part = orbit_faces(items, [], word_budget=4)
    assert part.classes == [[0], [1], [2]]


def test_orbit_square_facets():
    sq = RationalCone.from_rays([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)])
    rot = [[0, -1, 0], [1, 0, 0], [0, 0, 1]]
    part = orbit_faces(faces(sq, 1), [rot], word_budget=8)
    assert part.classes == [[0, 1, 2, 3]]
    group = oracles.group_closure([tuple(map(tuple, rot))])
    assert len(group) == 4
    sets = [frozenset(f.rays()) for f in faces(sq, 1)]
    assert oracles.brute_orbits(sets, group) == part.classes


def test_infinite_group_is_flagged_incomplete():
    shear = [[1, 1], [0, 1]]
    items = [RationalCone.from_rays([(0, 1)]), RationalCone.from_rays([(3, 1)])]
    part = orbit_faces(items, [shear], word_budget=2)
    assert part.classes == [[0], [1]]
    assert part.complete == [False, False]
    part = orbit_faces(items, [shear], word_budget=3)
    assert part.classes == [[0, 1]]


def test_chamber_complex_examples():
    A = RationalCone.from_inequalities([(1, 0), (0, 1)])
    B = RationalCone.from_inequalities([(0, -1), (1, 1)])
    X = ChamberComplex((1, 0), (A, B), ((0, 1),))
    assert validate_chamber_complex(X).passed
    dup = ChamberComplex((1, 0), (A, A), ())
    rep = validate_chamber_complex(dup)
    assert not rep.disjoint_interiors.passed
    pt = rep.disjoint_interiors.witnesses[0]["point"]
    assert A.contains(pt) and all(sum(f[i] * pt[i] for i in range(2)) > 0 for f in A.facets)
    C = RationalCone.from_inequalities([(-1, 0), (0, 1)])
    rep = validate_chamber_complex(ChamberComplex((1, 0), (A, C), ()))
    assert rep.shared_ray.witnesses == [{"chamber": 1}]
    # adjacency claimed for chambers meeting only at the ray (1, 0) in 3d
    D = RationalCone.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    E = RationalCone.from_rays([(1, 0, 0), (0, -1, 0), (0, 0, -1)])
    rep = validate_chamber_complex(ChamberComplex((1, 0, 0), (D, E), ((0, 1),)))
    assert rep.disjoint_interiors.passed and not rep.adjacency.passed
    assert ChamberComplex.from_json(X.to_json()) == X


def test_json_roundtrip_and_mismatch():
    C = RationalCone.from_rays([(1, 0, 0), (1, 1, 0), (1, 1, 1)])
    assert RationalCone.from_json(C.to_json()) == C
    doc = C.to_json()
    doc["facets"] = [[1, 0, 0]]
    with pytest.raises(ValueError):
        RationalCone.from_json(doc)


def test_dimension_guard(monkeypatch):
    with pytest.raises(ValueError, match="guard"):
        RationalCone.from_rays([tuple(int(i == j) for j in range(13)) for i in range(13)])
    monkeypatch.setenv("K3CONE_DIM_GUARD", "13")
    C = RationalCone.from_rays([tuple(int(i == j) for j in range(13)) for i in range(13)])
    assert len(C.facets) == 13
    monkeypatch.setenv("K3CONE_DIM_GUARD", "2")
    with pytest.raises(ValueError):
        RationalCone.from_rays([(1, 0, 0)])


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 5), st.integers(1, 8), st.integers(0, 2**32))
def test_dd_against_brute_force(dim, count, seed):
    rng = random.Random(seed)
    rays = random_rays(rng, dim, count)
    C = RationalCone.from_rays(rays)
    assert all(C.contains(r) for r in rays)
    assert RationalCone.from_rays(C.generators(), dim=dim) == C
    assert RationalCone.from_inequalities(C.inequalities(), dim=dim) == C
    if C.is_full_dimensional:
        assert list(C.facets) == facets_of_full_cone(rays, dim)
        if C.is_pointed:
            assert list(C.rays) == extreme_rays_pointed(list(C.facets), dim)
            assert sorted(set(C.rays)) == sorted({prim(r) for r in C.rays})


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 5), st.integers(1, 8), st.integers(0, 2**32))
def test_dual_involution(dim, count, seed):
    rng = random.Random(seed)
    C = RationalCone.from_rays(random_rays(rng, dim, count))
    D = dual_cone(C.generators(), dim=dim) if C.generators() else RationalCone.from_inequalities([], dim=dim)
    back = dual_cone(D.generators(), dim=dim) if D.generators() else RationalCone.from_inequalities([], dim=dim)
    assert back == C
    assert len(D.lineality) == len(C.equations)
    assert len(D.equations) == len(C.lineality)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32))
def test_faces_against_brute_force(dim, seed):
    rng = random.Random(seed)
    C = RationalCone.from_rays(random_rays(rng, dim, dim + 2))
    if not (C.is_pointed and C.is_full_dimensional):
        return
    for codim in range(1, dim):
        got = sorted(tuple(sorted(f.rays())) for f in faces(C, codim))
        want = set()
        for sub in itertools.combinations(range(len(C.facets)), codim):
            rs = [r for r in C.rays if all(sum(a * b for a, b in zip(C.facets[i], r)) == 0 for i in sub)]
            if rs and oracles.rank(rs) == dim - codim:
                want.add(tuple(sorted(rs)))
        assert got == sorted(want)


def test_dd_raw_kernel_lineality():
    rays, lin = double_description([(1, 0, 0)], 3)
    assert rays == [(1, 0, 0)] and len(lin) == 2


def _random_invariant_cone(rng, group, dim):
    base = random_rays(rng, dim, rng.randint(1, 3), bound=2)
    orbit = sorted({oracles.mat_vec(g, r) for g in group for r in base})
    return orbit


def test_reynolds_invariant_cones():
    rng = random.Random(7)
    done = 0
    while done < 15:
        gens, group = oracles.random_finite_group(rng, rng.randint(2, 4), max_order=8)
        dim = len(gens[0])
        gens_rays = _random_invariant_cone(rng, group, dim)
        C = RationalCone.from_rays(gens_rays)
        basis = fixed_subspace(gens)
        if not basis:
            continue
        got = intersect_with_subspace(C, basis)
        sums = [tuple(sum(oracles.mat_vec(g, r)[i] for g in group) for i in range(dim)) for r in gens_rays]
        coords = [oracles.solve_coords(basis, s) for s in sums if any(s)]
        want = RationalCone.from_rays(coords, dim=len(basis))
        assert got == want
        done += 1
