"""Brute-force cross-check of the cohomology count, bypassing the diagram.

The cocycle classes are in bijection with the orbits of the restricted
Weyl group on the finite set (zeta/2 + X0^vee/2) / Xt0^vee, where zeta
is the coweight read off the base labeling.  This path uses only the
lattice data and the simple reflections: no marks, no alcove, no diagram
automorphisms, so a bug in the combinatorial route cannot cancel here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from . import lattice, linalg
from .groupspec import GroupSpec, RestrictedData, ValidationError, restricted_data
from .kac import H1Result, nu_of
from .linalg import Vec

DEFAULT_RANK_BOUND = 8


@dataclass(frozen=True)
class OracleResult:
    """W0-orbit decomposition of the half-coweight point set."""

    points: tuple[Vec, ...]  # canonical representatives mod Xt0v
    orbit_of: dict  # point -> orbit index
    orbits: tuple[tuple[Vec, ...], ...]

    @property
    def count(self) -> int:
        return len(self.orbits)


def brute_h1(
    spec: GroupSpec,
    rd: RestrictedData | None = None,
    rank_bound: int = DEFAULT_RANK_BOUND,
) -> OracleResult:
    """Orbit count of W0 on (zeta/2 + X0^vee/2) / Xt0^vee by closure search."""
    if rd is None:
        rd = restricted_data(spec)
    if rd.res_dim > rank_bound:
        raise ValidationError("oracle rank bound exceeded")

    zeta = rd.finite_labels(spec.q)
    half_zeta = linalg.vec_scale(zeta, Q(1, 2))
    half_X0v = lattice.scale(rd.X0v, Q(1, 2))
    if not lattice.is_sublattice(rd.Xt0v, half_X0v):
        raise AssertionError("projected lattice is not inside the half lattice")

    # The base point must be W0-stable modulo X0^vee, else the set below
    # would not carry a W0-action; this catches wiring errors early.
    for refl in rd.reflections:
        moved = linalg.vec_sub(linalg.mat_vec(refl, zeta), zeta)
        if not lattice.contains(rd.X0v, moved):
            raise AssertionError("base point is not Weyl-stable mod X0^vee")

    cosets = lattice.quotient(half_X0v, rd.Xt0v)
    points = set()
    for _, lift in cosets.elements():
        pt = lattice.reduce_mod(rd.Xt0v, linalg.vec_add(half_zeta, lift))
        points.add(pt)
    if len(points) != cosets.order:
        raise AssertionError("point set size does not match the lattice index")

    orbit_of: dict[Vec, int] = {}
    orbits: list[tuple[Vec, ...]] = []
    for start in sorted(points):
        if start in orbit_of:
            continue
        idx = len(orbits)
        frontier = [start]
        members = {start}
        orbit_of[start] = idx
        while frontier:
            x = frontier.pop()
            for refl in rd.reflections:
                y = lattice.reduce_mod(rd.Xt0v, linalg.mat_vec(refl, x))
                if y not in members:
                    if y not in points:
                        raise AssertionError("reflection left the point set")
                    members.add(y)
                    orbit_of[y] = idx
                    frontier.append(y)
        orbits.append(tuple(sorted(members)))
    return OracleResult(
        points=tuple(sorted(points)), orbit_of=orbit_of, orbits=tuple(orbits)
    )


def class_point(p, spec: GroupSpec, rd: RestrictedData) -> Vec:
    """The oracle point carrying the cohomology class of the labeling p."""
    zeta = rd.finite_labels(spec.q)
    x = linalg.vec_add(
        linalg.vec_scale(zeta, Q(1, 2)),
        linalg.vec_scale(nu_of(p, spec.q, rd), Q(1, 2)),
    )
    return lattice.reduce_mod(rd.Xt0v, x)


def match_classes(
    kac_result: H1Result, oracle_result: OracleResult, rd: RestrictedData
) -> tuple[bool, list[str]]:
    """Check the canonical bijection between diagram classes and Weyl orbits.

    Every labeling of every class must land in one orbit, distinct
    classes in distinct orbits, and every orbit must be hit.  Returns
    (ok, report lines describing any mismatch).
    """
    report: list[str] = []
    spec = kac_result.spec
    used: dict[int, int] = {}
    for ci, cls in enumerate(kac_result.classes):
        targets = set()
        for p in cls.orbit:
            pt = class_point(p, spec, rd)
            if pt not in oracle_result.orbit_of:
                report.append(f"class {ci}: point not in the oracle set")
                return False, report
            targets.add(oracle_result.orbit_of[pt])
        if len(targets) != 1:
            report.append(f"class {ci}: labelings map to several Weyl orbits {sorted(targets)}")
            return False, report
        target = targets.pop()
        if target in used:
            report.append(
                f"classes {used[target]} and {ci} map to the same Weyl orbit {target}"
            )
            return False, report
        used[target] = ci
    if len(used) != oracle_result.count:
        missing = sorted(set(range(oracle_result.count)) - set(used))
        report.append(f"Weyl orbits {missing} are not hit by any class")
        return False, report
    return True, report
