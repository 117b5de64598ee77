"""Kac labelings and the first Galois cohomology of a semisimple real group.

A Kac labeling assigns nonnegative integers to the vertices of the
affine diagram so that the mark-weighted sum is 2 on every component.
``h1`` enumerates all labelings, keeps those lying in the congruence
class of the base labeling q (an integrality test against the
representatives of X0/Q0), groups them into orbits of the finite group
F0 acting by diagram automorphisms, and attaches to every orbit the
cocharacter nu whose value at -1 is an explicit 2-torsion cocycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q

from . import groupspec, lattice, linalg
from .groupspec import (
    GlobalPerm,
    GroupSpec,
    Labeling,
    RestrictedData,
    ValidationError,
    act_on_labeling,
    restricted_data,
)
from .linalg import Vec
from .rootdata import AffineComponent


def flatten(p: Labeling) -> tuple[int, ...]:
    return tuple(itertools.chain.from_iterable(p))


def _component_labelings(comp: AffineComponent) -> list[tuple[int, ...]]:
    """All solutions of the mark equation on one component, lexicographically."""
    marks = comp.marks
    out: list[tuple[int, ...]] = []

    def fill(pos: int, remaining: int, acc: list[int]) -> None:
        if pos == len(marks):
            if remaining == 0:
                out.append(tuple(acc))
            return
        for v in range(remaining // marks[pos] + 1):
            acc.append(v)
            fill(pos + 1, remaining - v * marks[pos], acc)
            acc.pop()

    fill(0, 2, [])
    return out


def enumerate_kac(comps: tuple[AffineComponent, ...]) -> list[Labeling]:
    """All Kac labelings of the affine diagram, in lexicographic order."""
    per_comp = [_component_labelings(c) for c in comps]
    return [tuple(combo) for combo in itertools.product(*per_comp)]


def congruent(p: Labeling, q: Labeling, rd: RestrictedData) -> bool:
    """True iff <lam, p> = <lam, q> mod Z for every class lam of X0/Q0.

    The pairing sums the character's restricted simple-root coefficients
    against the finite labels; the affine vertices do not enter.
    """
    diff = linalg.vec_sub(rd.finite_labels(p), rd.finite_labels(q))
    for lam in rd.x0_mod_q0.generator_lifts:
        if linalg.dot(lam, diff).denominator != 1:
            return False
    return True


def nu_of(p: Labeling, q: Labeling, rd: RestrictedData) -> Vec:
    """Cocharacter nu_{p,q} in restricted fundamental-coweight coordinates."""
    return linalg.vec_sub(rd.finite_labels(p), rd.finite_labels(q))


@dataclass(frozen=True)
class CohClass:
    """One cohomology class: an F0-orbit of labelings plus its cocycle data."""

    representative: Labeling
    orbit: tuple[Labeling, ...]
    nu: Vec
    nu_mod_2: tuple[int, ...]  # class of nu in X0^vee / 2 X0^vee, Smith coords
    signs: tuple[int, ...]  # (-1)^<lam, nu> over the X0/Q0 generators
    is_neutral: bool


@dataclass(frozen=True)
class H1Result:
    spec: GroupSpec
    classes: tuple[CohClass, ...]
    n_labelings: int
    n_filtered: int

    @property
    def count(self) -> int:
        return len(self.classes)


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _orbits(labelings: list[Labeling], perms: tuple[GlobalPerm, ...]) -> list[tuple[Labeling, ...]]:
    index = {p: i for i, p in enumerate(labelings)}
    dsu = _DSU(len(labelings))
    for i, p in enumerate(labelings):
        for g in perms:
            img = act_on_labeling(g, p)
            j = index.get(img)
            if j is None:
                raise AssertionError("diagram action does not preserve the labeling set")
            dsu.union(i, j)
    groups: dict[int, list[Labeling]] = {}
    for i, p in enumerate(labelings):
        groups.setdefault(dsu.find(i), []).append(p)
    return [tuple(sorted(g, key=flatten)) for g in groups.values()]


def _cocycle_data(nu: Vec, rd: RestrictedData) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not lattice.contains(rd.X0v, nu):
        raise AssertionError("cocharacter nu is not in the fixed cocharacter lattice")
    coords = rd.x0v_mod_2.coords(nu)
    signs = []
    for lam in rd.x0_mod_q0.generator_lifts:
        e = linalg.dot(lam, nu)
        if e.denominator != 1:
            raise AssertionError("nu pairs non-integrally with a character")
        signs.append(-1 if int(e) % 2 else 1)
    return coords, tuple(signs)


def h1(spec: GroupSpec, rd: RestrictedData | None = None) -> H1Result:
    """First Galois cohomology as F0-orbits of congruent Kac labelings.

    The neutral class (the orbit of the base labeling) is listed first,
    the rest in lexicographic order of their minimal representatives.
    """
    if rd is None:
        rd = restricted_data(spec)
    all_labelings = enumerate_kac(rd.comps)
    q = spec.q
    filtered = [p for p in all_labelings if congruent(p, q, rd)]
    classes = []
    for orbit in _orbits(filtered, rd.f0_perms):
        rep = orbit[0]
        nu = nu_of(rep, q, rd)
        coords, signs = _cocycle_data(nu, rd)
        classes.append(
            CohClass(
                representative=rep,
                orbit=orbit,
                nu=nu,
                nu_mod_2=coords,
                signs=signs,
                is_neutral=q in orbit,
            )
        )
    neutral = [c for c in classes if c.is_neutral]
    if len(neutral) != 1:
        raise AssertionError("expected exactly one neutral class")
    rest = sorted(
        (c for c in classes if not c.is_neutral), key=lambda c: flatten(c.representative)
    )
    return H1Result(
        spec=spec,
        classes=tuple(neutral + rest),
        n_labelings=len(all_labelings),
        n_filtered=len(filtered),
    )


def cocycle(p: Labeling, q: Labeling, rd: RestrictedData) -> tuple[Vec, tuple[int, ...], tuple[int, ...]]:
    """nu_{p,q} plus the descriptor of the 2-torsion element nu(-1).

    Returns (nu, Smith coordinates of nu mod 2 X0^vee, sign vector of
    nu(-1) on the stored character representatives).  Raises if p is not
    congruent to q, in which case nu would not be a cocharacter.
    """
    if not congruent(p, q, rd):
        raise ValidationError("labeling is not congruent to the base labeling")
    nu = nu_of(p, q, rd)
    coords, signs = _cocycle_data(nu, rd)
    return nu, coords, signs


def inner_forms(spec: GroupSpec, rd: RestrictedData | None = None) -> list[tuple[Labeling, ...]]:
    """All Kac labelings grouped into C0-orbits; each orbit is one inner form.

    Orbits are sorted by their lexicographically minimal representative.
    """
    if rd is None:
        rd = restricted_data(spec)
    orbits = _orbits(enumerate_kac(rd.comps), rd.c0_perms)
    return sorted(orbits, key=lambda o: flatten(o[0]))
