"""The defining data of a semisimple real group and its restricted lattices.

A group is given by indecomposable components (simple type + pair kind,
with an explicit diagram involution where the kind is outer), a set of
fundamental-group generators F inside the coweight quotient P^vee/Q^vee,
and a base Kac labeling q.  Swap pairs enter as a single component; the
doubled lattice is synthesized internally, with coweight coordinates
1..l for the first factor and l+1..2l for the second.

``restricted_data`` builds everything downstream of the involution: the
fixed and projected coweight lattices, the restricted weight lattices,
the finite groups F0 and C0 with their realizations as affine-diagram
permutations, and the reflection matrices of the restricted Weyl group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction as Q

from . import lattice, linalg, rootdata
from .lattice import FinAbQuotient, Lattice
from .linalg import Mat, Vec
from .rootdata import AffineComponent, PairKind, SimpleType


class ValidationError(ValueError):
    """A structurally well-formed spec that violates a domain invariant."""


Labeling = tuple[tuple[int, ...], ...]
GlobalPerm = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ComponentSpec:
    base: SimpleType
    kind: PairKind
    tau_perm: tuple[int, ...] | None = None  # outer only; 0-indexed images

    @property
    def full_rank(self) -> int:
        return self.base.rank * (2 if self.kind is PairKind.SWAP else 1)

    def __str__(self) -> str:
        return f"{self.base} {self.kind}"


@dataclass(frozen=True)
class GroupSpec:
    """Quadruple (diagram, fundamental group F, involution, base labeling)."""

    components: tuple[ComponentSpec, ...]
    f_generators: tuple[Vec, ...]  # global fundamental-coweight coordinates
    q: Labeling

    @property
    def full_dim(self) -> int:
        return sum(c.full_rank for c in self.components)


def act_on_labeling(perm: GlobalPerm, p: Labeling) -> Labeling:
    out = []
    for pk, comp_labels in zip(perm, p):
        new = [0] * len(comp_labels)
        for pos, label in enumerate(comp_labels):
            new[pk[pos]] = label
        out.append(tuple(new))
    return tuple(out)


def compose_perms(a: GlobalPerm, b: GlobalPerm) -> GlobalPerm:
    """Permutation doing b first, then a."""
    return tuple(
        tuple(ak[bk[i]] for i in range(len(bk))) for ak, bk in zip(a, b)
    )


def identity_perm(comps: tuple[AffineComponent, ...]) -> GlobalPerm:
    return tuple(tuple(range(c.n_vertices)) for c in comps)


def _component_tau_blocks(spec: GroupSpec) -> list[tuple[int, ...]]:
    """Per-component permutation of full coweight coordinates induced by tau."""
    blocks = []
    for cs in spec.components:
        n = cs.base.rank
        if cs.kind is PairKind.INNER:
            blocks.append(tuple(range(n)))
        elif cs.kind is PairKind.OUTER:
            perm = cs.tau_perm
            if perm is None:
                if cs.base.series == "D" and cs.base.rank == 4:
                    raise ValidationError("outer D4 needs an explicit tau permutation")
                perm = rootdata.default_involution(cs.base)
            blocks.append(perm)
        else:
            blocks.append(tuple(list(range(n, 2 * n)) + list(range(n))))
    return blocks


def global_tau_matrix(spec: GroupSpec) -> Mat:
    """tau as a permutation matrix on global fundamental-coweight coordinates."""
    n = spec.full_dim
    images = []
    offset = 0
    for cs, block in zip(spec.components, _component_tau_blocks(spec)):
        for i in range(cs.full_rank):
            images.append(offset + block[i])
        offset += cs.full_rank
    M = [[Q(0)] * n for _ in range(n)]
    for i, img in enumerate(images):
        M[img][i] = Q(1)
    return tuple(tuple(row) for row in M)


def build_components(spec: GroupSpec) -> tuple[AffineComponent, ...]:
    out = []
    for cs in spec.components:
        try:
            out.append(rootdata.build_affine(cs.kind, cs.base, cs.tau_perm))
        except rootdata.RootDataError as e:
            raise ValidationError(str(e)) from None
    return tuple(out)


def _full_cartan(spec: GroupSpec) -> Mat:
    """Block-diagonal Cartan matrix on the full (doubled for swap) diagram."""
    blocks = []
    for cs in spec.components:
        A = rootdata.cartan_matrix(cs.base)
        blocks.append(A)
        if cs.kind is PairKind.SWAP:
            blocks.append(A)
    n = sum(len(b) for b in blocks)
    M = [[Q(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                M[off + i][off + j] = b[i][j]
        off += len(b)
    return tuple(tuple(row) for row in M)


def validate(spec: GroupSpec) -> GroupSpec:
    """Check the defining invariants; returns the spec unchanged on success."""
    if not spec.components:
        raise ValidationError("empty component list")
    comps = build_components(spec)
    n = spec.full_dim
    for i, gen in enumerate(spec.f_generators):
        if len(gen) != n:
            raise ValidationError(f"F generator {i} has wrong length")
        if any(x.denominator != 1 for x in gen):
            raise ValidationError(f"F generator {i} is not in the coweight lattice")
    for k, (comp, labels) in enumerate(zip(comps, spec.q)):
        if len(labels) != comp.n_vertices:
            raise ValidationError(f"labeling length mismatch on component {k}")
        if any(x < 0 for x in labels):
            raise ValidationError(f"negative label on component {k}")
        if sum(m * x for m, x in zip(comp.marks, labels)) != 2:
            raise ValidationError(f"mark equation violated on component {k}")
    if len(spec.q) != len(comps):
        raise ValidationError("labeling component count mismatch")
    tau = global_tau_matrix(spec)
    if linalg.mat_mul(tau, tau) != linalg.identity(n):
        raise ValidationError("tau is not an involution")
    xvee = _coweight_lattice(spec)
    tau_t = linalg.transpose(tau)
    image = lattice.lattice_span(
        [linalg.vec_mat(row, tau_t) for row in xvee.basis], n
    )
    if image != xvee:
        raise ValidationError("tau does not preserve the cocharacter lattice")
    return spec


def _coweight_lattice(spec: GroupSpec) -> Lattice:
    """X^vee = span(Q^vee, F generators) in global coweight coordinates."""
    A = _full_cartan(spec)
    rows = list(linalg.transpose(A))  # coroots: columns of the Cartan matrix
    rows.extend(spec.f_generators)
    return lattice.lattice_span(rows, spec.full_dim)


@dataclass(frozen=True)
class RestrictedData:
    """All lattice and diagram data derived from a validated spec."""

    spec: GroupSpec
    comps: tuple[AffineComponent, ...]
    full_dim: int
    res_dim: int
    res_slices: tuple[tuple[int, int], ...]  # per-component restricted ranges
    X_v: Lattice  # cocharacters, full coordinates
    X0v: Lattice  # tau-fixed cocharacters, restricted coordinates
    Xt0v: Lattice  # projected cocharacters
    Qt0v: Lattice  # projected coroots
    Pt0v: Lattice  # projected coweights
    X0: Lattice  # restricted characters, simple-root coordinates
    Q0: Lattice
    P0: Lattice
    F0: FinAbQuotient  # Xt0v / Qt0v
    C0: FinAbQuotient  # Pt0v / Qt0v
    x0_mod_q0: FinAbQuotient
    x0v_mod_2: FinAbQuotient
    f0_perms: tuple[GlobalPerm, ...]
    c0_perms: tuple[GlobalPerm, ...]
    reflections: tuple[Mat, ...]  # restricted simple reflections, coweight coords

    def finite_labels(self, p: Labeling) -> Vec:
        """Concatenated finite labels of a labeling, as a restricted coweight."""
        out = []
        for labels in p:
            out.extend(Q(x) for x in labels[1:])
        return tuple(out)


def _projection_data(spec: GroupSpec, comps):
    """Restriction maps between full and restricted coordinates.

    Returns the per-component restricted ranges, the restricted
    fundamental coweights as rows in full coordinates (the basis of the
    tau-fixed subspace used everywhere downstream), and the weight-side
    restriction matrix: a full simple-root coordinate at index i
    contributes to the restricted simple-root coordinate of i's orbit.
    """
    blocks = _component_tau_blocks(spec)
    full_dim = spec.full_dim
    res_slices = []
    fixed_basis_rows = []
    weight_rows = [None] * full_dim
    off_full = 0
    off_res = 0
    for cs, comp, block in zip(spec.components, comps, blocks):
        nf = comp.n_finite
        if cs.kind is PairKind.SWAP:
            reps = list(range(cs.base.rank))
        else:
            reps = list(comp.reps)
        rep_pos = {r: i for i, r in enumerate(reps)}
        for r in reps:
            row = [Q(0)] * full_dim
            row[off_full + r] = Q(1)
            if cs.kind is PairKind.SWAP:
                row[off_full + cs.base.rank + r] = Q(1)
            elif block[r] != r:
                row[off_full + block[r]] = Q(1)
            fixed_basis_rows.append(tuple(row))
        for i in range(cs.full_rank):
            base_i = i % cs.base.rank if cs.kind is PairKind.SWAP else i
            rep = base_i if cs.kind is PairKind.SWAP else min(base_i, block[base_i])
            weight_rows[off_full + i] = (off_res + rep_pos[rep])
        res_slices.append((off_res, off_res + nf))
        off_full += cs.full_rank
        off_res += nf
    res_dim = off_res
    restrict = tuple(
        tuple(Q(1) if j == tgt else Q(0) for j in range(res_dim))
        for tgt in weight_rows
    )
    return tuple(res_slices), tuple(fixed_basis_rows), restrict


def restricted_data(spec: GroupSpec) -> RestrictedData:
    validate(spec)
    comps = build_components(spec)
    n = spec.full_dim
    res_slices, fixed_basis, weight_restrict = _projection_data(spec, comps)
    res_dim = res_slices[-1][1] if res_slices else 0
    tau = global_tau_matrix(spec)

    X_v = _coweight_lattice(spec)
    Q_v = lattice.lattice_span(linalg.transpose(_full_cartan(spec)), n)
    P_v = lattice.standard_lattice(n)
    try:
        X0v, Xt0v = lattice.project_tau(X_v, tau, fixed_basis)
        _, Qt0v = lattice.project_tau(Q_v, tau, fixed_basis)
        _, Pt0v = lattice.project_tau(P_v, tau, fixed_basis)
    except lattice.LatticeError as e:
        raise ValidationError(str(e)) from None

    # Weight side: X = dual of X^vee under the literal dot pairing.
    X_w = lattice.dual_lattice(X_v)
    P_w = lattice.dual_lattice(Q_v)

    def restrict_weights(L: Lattice) -> Lattice:
        rows = [linalg.vec_mat(row, weight_restrict) for row in L.basis]
        return lattice.lattice_span(rows, res_dim)

    X0 = restrict_weights(X_w)
    Q0 = lattice.standard_lattice(res_dim)
    P0 = restrict_weights(P_w)

    F0 = lattice.quotient(Xt0v, Qt0v)
    C0 = lattice.quotient(Pt0v, Qt0v)
    x0_mod_q0 = lattice.quotient(X0, Q0)
    x0v_mod_2 = lattice.quotient(X0v, lattice.scale(X0v, 2))

    f0_perms = tuple(_perm_of_lift(comps, res_slices, g) for g in F0.generator_lifts)
    c0_perms = tuple(_perm_of_lift(comps, res_slices, g) for g in C0.generator_lifts)

    reflections = []
    for k, comp in enumerate(comps):
        lo, hi = res_slices[k]
        for pos in range(comp.n_finite):
            refl = comp.reflection(pos)
            M = [
                [Q(1) if a == b else Q(0) for b in range(res_dim)]
                for a in range(res_dim)
            ]
            for a in range(comp.n_finite):
                for b in range(comp.n_finite):
                    M[lo + a][lo + b] = refl[a][b]
            reflections.append(tuple(tuple(row) for row in M))

    n_dist = 1
    for comp in comps:
        n_dist *= len(rootdata.distinguished_reps(comp)) + 1
    if n_dist != C0.order:
        raise AssertionError("alcove coset representatives do not match C0")

    return RestrictedData(
        spec=spec,
        comps=comps,
        full_dim=n,
        res_dim=res_dim,
        res_slices=res_slices,
        X_v=X_v,
        X0v=X0v,
        Xt0v=Xt0v,
        Qt0v=Qt0v,
        Pt0v=Pt0v,
        X0=X0,
        Q0=Q0,
        P0=P0,
        F0=F0,
        C0=C0,
        x0_mod_q0=x0_mod_q0,
        x0v_mod_2=x0v_mod_2,
        f0_perms=f0_perms,
        c0_perms=c0_perms,
        reflections=tuple(reflections),
    )


def _perm_of_lift(comps, res_slices, lift: Vec) -> GlobalPerm:
    """Diagram permutation of a projected-coweight coset, componentwise."""
    perms = []
    for comp, (lo, hi) in zip(comps, res_slices):
        block = tuple(lift[lo:hi])
        vertex = rootdata.alcove_reduce(comp, block)
        if vertex == 0:
            perms.append(tuple(range(comp.n_vertices)))
        else:
            nu = rootdata.distinguished_reps(comp)[vertex]
            perms.append(rootdata.coset_action(comp, nu))
    return tuple(perms)


def f0_action(rd: RestrictedData) -> dict[tuple[int, ...], GlobalPerm]:
    """Map each F0 generator (by its coefficient tuple) to its diagram permutation."""
    out = {}
    for i, _ in enumerate(rd.F0.generator_lifts):
        key = tuple(1 if j == i else 0 for j in range(len(rd.F0.generator_lifts)))
        out[key] = rd.f0_perms[i]
    return out


def perm_of_group_element(rd: RestrictedData, quo: str, coeffs) -> GlobalPerm:
    """Permutation of an arbitrary element of F0 or C0 given by coefficients."""
    gens = rd.f0_perms if quo == "F0" else rd.c0_perms
    factors = (rd.F0 if quo == "F0" else rd.C0).invariant_factors
    perm = identity_perm(rd.comps)
    for c, d, g in zip(coeffs, factors, gens):
        for _ in range(c % d):
            perm = compose_perms(g, perm)
    return perm
