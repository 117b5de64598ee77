"""Twisting bijections and isogeny push-forwards between cohomology sets.

Changing the base labeling q to a congruent q' twists the group by an
explicit 2-torsion cocycle; the classes are the same orbits, only the
neutral point and the cocharacters move.  Enlarging F along an isogeny
maps every class to the orbit of the bigger group containing it.  Both
maps are materialized as representative-to-representative tables.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import lattice
from .groupspec import GroupSpec, Labeling, ValidationError, restricted_data
from .kac import H1Result, congruent, h1


@dataclass(frozen=True)
class TwistMap:
    source: H1Result  # base labeling q'
    target: H1Result  # base labeling q
    pairs: tuple[tuple[Labeling, Labeling], ...]  # (source rep, target rep)


def twist(spec: GroupSpec, q_prime: Labeling) -> TwistMap:
    """Bijection H1(group at base q') -> H1(group at base q).

    q' must itself be a congruent labeling, i.e. represent a class of
    the target cohomology; otherwise the groups are not inner twists of
    each other through a cocycle of this torus and we refuse.
    """
    rd = restricted_data(spec)
    source_spec = replace(spec, q=q_prime)
    rd_src = restricted_data(source_spec)  # validates the mark equation for q'
    if not congruent(q_prime, spec.q, rd):
        raise ValidationError("base labelings are not congruent; not an inner twist")
    source = h1(source_spec, rd_src)
    target = h1(spec, rd)
    target_by_orbit = {cls.orbit: cls for cls in target.classes}
    pairs = []
    for cls in source.classes:
        tgt = target_by_orbit.get(cls.orbit)
        if tgt is None:
            raise AssertionError("twist did not preserve the orbit partition")
        pairs.append((cls.representative, tgt.representative))
    if len({t for _, t in pairs}) != len(target.classes):
        raise AssertionError("twist correspondence is not bijective")
    return TwistMap(source=source, target=target, pairs=tuple(pairs))


@dataclass(frozen=True)
class PushforwardMap:
    source: H1Result
    target: H1Result
    pairs: tuple[tuple[Labeling, Labeling], ...]
    fibers: tuple[tuple[Labeling, tuple[Labeling, ...]], ...]  # target rep -> source reps


def pushforward(spec: GroupSpec, f_prime_generators) -> PushforwardMap:
    """Map on cohomology induced by the isogeny enlarging F to F'.

    Requires F to be contained in F' (same diagram, involution and base
    labeling); every source class representative already satisfies the
    weaker congruence, and is sent to its orbit under the bigger group.
    """
    target_spec = replace(spec, f_generators=tuple(f_prime_generators))
    rd_src = restricted_data(spec)
    rd_tgt = restricted_data(target_spec)
    if not lattice.is_sublattice(rd_src.X_v, rd_tgt.X_v):
        raise ValidationError("F is not contained in F'")
    source = h1(spec, rd_src)
    target = h1(target_spec, rd_tgt)
    member_to_class = {}
    for cls in target.classes:
        for p in cls.orbit:
            member_to_class[p] = cls
    pairs = []
    fibers: dict[Labeling, list[Labeling]] = {}
    for cls in source.classes:
        tgt = member_to_class.get(cls.representative)
        if tgt is None:
            raise AssertionError("source representative missing from target filter set")
        pairs.append((cls.representative, tgt.representative))
        fibers.setdefault(tgt.representative, []).append(cls.representative)
    fiber_items = tuple(
        (rep, tuple(sorted(srcs))) for rep, srcs in sorted(fibers.items())
    )
    return PushforwardMap(
        source=source, target=target, pairs=tuple(pairs), fibers=fiber_items
    )
