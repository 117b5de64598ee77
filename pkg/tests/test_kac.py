import itertools
from fractions import Fraction as Q

import pytest

from kacgal import lattice, linalg
from kacgal.groupspec import (
    ComponentSpec,
    GroupSpec,
    ValidationError,
    act_on_labeling,
    restricted_data,
)
from kacgal.kac import (
    cocycle,
    congruent,
    enumerate_kac,
    flatten,
    h1,
    inner_forms,
    nu_of,
)
from kacgal.rootdata import PairKind, SimpleType

INNER, OUTER, SWAP = PairKind.INNER, PairKind.OUTER, PairKind.SWAP


def mk(series, rank, kind, fgens, q, tau=None):
    return GroupSpec(
        components=(ComponentSpec(SimpleType(series, rank), kind, tau),),
        f_generators=tuple(linalg.vec(g) for g in fgens),
        q=(tuple(q),),
    )


E7_Q = {
    1: (2, 0, 0, 0, 0, 0, 0, 0),
    2: (0, 2, 0, 0, 0, 0, 0, 0),
    3: (1, 1, 0, 0, 0, 0, 0, 0),
    4: (0, 0, 0, 0, 0, 0, 1, 0),
    5: (0, 0, 1, 0, 0, 0, 0, 0),
    6: (0, 0, 0, 0, 0, 0, 0, 1),
}


def e7_spec(fgens, qi):
    return mk("E", 7, INNER, fgens, E7_Q[qi])


def test_enumerate_e7():
    rd = restricted_data(e7_spec([], 1))
    labelings = enumerate_kac(rd.comps)
    assert len(labelings) == 6
    assert {p[0] for p in labelings} == set(E7_Q.values())


def test_enumerate_a1():
    rd = restricted_data(mk("A", 1, INNER, [], (2, 0)))
    assert [p[0] for p in enumerate_kac(rd.comps)] == [(0, 2), (1, 1), (2, 0)]


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_enumerate_twisted_a_odd(m):
    rd = restricted_data(mk("A", 2 * m - 1, OUTER, [], tuple([1] + [0] * m)))
    labelings = enumerate_kac(rd.comps)
    assert len(labelings) == 3
    comp = rd.comps[0]
    for p in labelings:
        (v,) = [i for i, x in enumerate(p[0]) if x]
        assert p[0][v] == 1 and comp.marks[v] == 2


def test_congruent_is_e7_parity():
    spec = e7_spec([], 1)
    rd = restricted_data(spec)
    labelings = [p for p in enumerate_kac(rd.comps)]
    for p, q in itertools.product(labelings, repeat=2):
        parity = (p[0][1] + p[0][7] - q[0][1] - q[0][7]) % 2 == 0
        assert congruent(p, q, rd) is parity
    for p in labelings:
        assert congruent(p, p, rd)


def test_congruent_adjoint_accepts_all():
    spec = e7_spec([[0, 0, 0, 0, 0, 0, 1]], 1)
    rd = restricted_data(spec)
    labelings = enumerate_kac(rd.comps)
    assert all(congruent(p, q, rd) for p in labelings for q in labelings)


def test_h1_e7_simply_connected():
    res = h1(e7_spec([], 1))
    assert res.count == 4 and res.n_filtered == 4 and res.n_labelings == 6
    assert {c.representative[0] for c in res.classes} == {E7_Q[i] for i in (1, 2, 4, 5)}
    assert all(len(c.orbit) == 1 for c in res.classes)
    assert h1(e7_spec([], 5)).count == 4
    assert h1(e7_spec([], 6)).count == 2
    assert h1(e7_spec([], 3)).count == 2


def test_h1_e7_adjoint_partition():
    res = h1(e7_spec([[0, 0, 0, 0, 0, 0, 1]], 1))
    partition = {frozenset(p[0] for p in c.orbit) for c in res.classes}
    assert partition == {
        frozenset({E7_Q[1], E7_Q[2]}),
        frozenset({E7_Q[3]}),
        frozenset({E7_Q[4], E7_Q[5]}),
        frozenset({E7_Q[6]}),
    }
    assert res.classes[0].is_neutral and E7_Q[1] in {p[0] for p in res.classes[0].orbit}


def test_h1_sl2r():
    res = h1(mk("A", 1, INNER, [], (1, 1)))
    assert res.count == 1 and res.classes[0].is_neutral


def test_h1_neutral_first_then_lex():
    res = h1(e7_spec([[0, 0, 0, 0, 0, 0, 1]], 6))
    assert res.classes[0].is_neutral
    reps = [flatten(c.representative) for c in res.classes[1:]]
    assert reps == sorted(reps)


def test_cocycle_values():
    spec = e7_spec([], 1)
    rd = restricted_data(spec)
    nu, coords, signs = cocycle(spec.q, spec.q, rd)
    assert all(x == 0 for x in nu) and all(c == 0 for c in coords)
    # p = labeling with 2 at vertex 1: nu = 2 omega_1^vee, inside Q^vee.
    nu, coords, signs = cocycle((E7_Q[2],), spec.q, rd)
    assert nu == linalg.vec([2, 0, 0, 0, 0, 0, 0])
    assert lattice.contains(rd.X0v, nu)
    with pytest.raises(ValidationError):
        cocycle((E7_Q[6],), spec.q, rd)  # odd labeling against even base


def test_cocycle_a1():
    spec = mk("A", 1, INNER, [], (2, 0))
    rd = restricted_data(spec)
    nu, coords, signs = cocycle(((0, 2),), spec.q, rd)
    # nu = 2 omega_1^vee = alpha_1^vee, nontrivial mod 2 X^vee = 2 Q^vee.
    assert nu == linalg.vec([2])
    assert coords != (0,) * len(coords)
    assert signs == (-1,)


def test_inner_forms_examples():
    assert len(inner_forms(e7_spec([], 1))) == 4
    orbits = inner_forms(mk("A", 1, INNER, [], (2, 0)))
    assert [{p[0] for p in orbit} for orbit in orbits] == [
        {(0, 2), (2, 0)},
        {(1, 1)},
    ]


@pytest.mark.parametrize("l", [4, 6, 8])
def test_inner_forms_d_even_against_stated_actions(l):
    """Orbit count of all labelings under the center group, cross-checked
    with the classically stated generator permutations of the extended
    D diagram: 0<->1,(l-1)<->l and 0<->(l-1),1<->l."""
    spec = mk("D", l, INNER, [], tuple([2] + [0] * l))
    rd = restricted_data(spec)
    ours = inner_forms(spec, rd)

    def perm_apply(perm, p):
        out = [0] * len(p)
        for i, x in enumerate(p):
            out[perm[i]] = x
        return tuple(out)

    g1 = list(range(l + 1))
    g1[0], g1[1] = 1, 0
    g1[l - 1], g1[l] = l, l - 1
    g2 = list(range(l + 1))
    g2[0], g2[l - 1] = l - 1, 0
    g2[1], g2[l] = l, 1
    # the second generator also reverses the middle chain
    for v in range(2, l - 1):
        g2[v] = l - v
    labelings = [p[0] for p in enumerate_kac(rd.comps)]
    seen = set()
    orbits = 0
    for p in labelings:
        if p in seen:
            continue
        orbits += 1
        stack = [p]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend([perm_apply(g1, x), perm_apply(g2, x)])
    assert len(ours) == orbits


def test_f0_preserves_filtered_set_and_nu_integral():
    specs = [
        e7_spec([[0, 0, 0, 0, 0, 0, 1]], 1),
        mk("D", 6, INNER, [[0, 0, 0, 0, 1, 0]], (2, 0, 0, 0, 0, 0, 0)),
        mk("A", 5, OUTER, [[1, 0, 0, 0, 0]], (1, 0, 0, 0)),
    ]
    for spec in specs:
        rd = restricted_data(spec)
        filtered = [p for p in enumerate_kac(rd.comps) if congruent(p, spec.q, rd)]
        fset = set(filtered)
        for p in filtered:
            for g in rd.f0_perms:
                assert act_on_labeling(g, p) in fset
            assert lattice.contains(rd.X0v, nu_of(p, spec.q, rd))


def test_simply_connected_classes_are_singletons():
    for spec in (e7_spec([], 1), mk("D", 5, INNER, [], (2, 0, 0, 0, 0, 0)),
                 mk("A", 4, OUTER, [], (1, 0, 0))):
        res = h1(spec)
        assert all(len(c.orbit) == 1 for c in res.classes)


def test_adjoint_filter_accepts_all():
    spec = mk("D", 5, INNER, [[0, 0, 0, 1, 0]], (2, 0, 0, 0, 0, 0))
    rd = restricted_data(spec)
    assert rd.C0.order == rd.F0.order  # F = C
    res = h1(spec, rd)
    assert res.n_filtered == res.n_labelings


def test_base_point_independence():
    # Any congruent base labeling yields the same orbit partition.
    spec = e7_spec([], 1)
    rd = restricted_data(spec)
    base = h1(spec, rd)
    partition = {frozenset(c.orbit) for c in base.classes}
    for i in (2, 4, 5):
        other = e7_spec([], i)
        res = h1(other)
        assert {frozenset(c.orbit) for c in res.classes} == partition


def test_isogeny_monotonicity():
    # Enlarging F shrinks X0 and can only grow the filtered set.
    small = mk("D", 4, INNER, [], (2, 0, 0, 0, 0))
    big = mk("D", 4, INNER, [[1, 0, 0, 0]], (2, 0, 0, 0, 0))
    rd_s, rd_b = restricted_data(small), restricted_data(big)
    filt_s = {p for p in enumerate_kac(rd_s.comps) if congruent(p, small.q, rd_s)}
    filt_b = {p for p in enumerate_kac(rd_b.comps) if congruent(p, big.q, rd_b)}
    assert filt_s <= filt_b


def test_classes_partition_filtered_set():
    for spec in (
        e7_spec([[0, 0, 0, 0, 0, 0, 1]], 1),
        mk("D", 6, INNER, [[0, 0, 0, 0, 1, 0]], (2, 0, 0, 0, 0, 0, 0)),
        mk("A", 5, OUTER, [[1, 0, 0, 0, 0]], (1, 0, 0, 0)),
    ):
        rd = restricted_data(spec)
        res = h1(spec, rd)
        union = [p for c in res.classes for p in c.orbit]
        filtered = [p for p in enumerate_kac(rd.comps) if congruent(p, spec.q, rd)]
        assert sorted(union, key=flatten) == sorted(filtered, key=flatten)
        assert len(union) == len(set(union))
        assert sum(1 for c in res.classes if c.is_neutral) == 1
