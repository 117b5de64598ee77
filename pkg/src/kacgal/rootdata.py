"""Structural constants of simple root systems and their affine diagrams.

Simple roots are realized as exact rational vectors in a Euclidean
epsilon-coordinate model (the classical realizations; exceptional types
through the standard E8 model).  Vertex numbering follows the
Onishchik-Vinberg tables: for the classical series and F4/G2 it agrees
with Bourbaki, for E6/E7/E8 the long chain is numbered first and the
branch vertex last (the mapping to Bourbaki is spelled out in
``_E_OV_TO_BOURBAKI``).

An :class:`AffineComponent` packages one indecomposable factor of a real
group together with its (possibly twisted) affine diagram: restricted
simple roots, the extra affine root, marks, edges, and the exact data
needed for alcove geometry.  Marks are never hardcoded; they are the
primitive positive kernel of the affine root dependency, rescaled so the
affine mark is 1 for inner components and 2 for outer and swap ones.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction as Q

from . import linalg
from .linalg import Mat, Vec


class RootDataError(ValueError):
    """Raised for inadmissible type/kind combinations and bad coset data."""


_RANK_BOUNDS = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True, order=True)
class SimpleType:
    """One simple series letter plus rank, with the usual rank bounds."""

    series: str
    rank: int

    def __post_init__(self):
        if self.series not in "ABCDEFG":
            raise RootDataError(f"unknown series {self.series!r}")
        if self.series in _RANK_BOUNDS:
            if self.rank < _RANK_BOUNDS[self.series]:
                raise RootDataError(f"rank {self.rank} too small for series {self.series}")
        elif self.series == "E":
            if self.rank not in (6, 7, 8):
                raise RootDataError("series E has ranks 6, 7, 8")
        elif self.series == "F":
            if self.rank != 4:
                raise RootDataError("series F has rank 4")
        elif self.series == "G":
            if self.rank != 2:
                raise RootDataError("series G has rank 2")

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


class PairKind(Enum):
    INNER = "inner"
    OUTER = "outer"
    SWAP = "swap"

    def __str__(self) -> str:
        return self.value


# Onishchik-Vinberg index i -> Bourbaki index, per E rank.
_E_OV_TO_BOURBAKI = {
    6: (1, 3, 4, 5, 6, 2),
    7: (7, 6, 5, 4, 3, 1, 2),
    8: (8, 7, 6, 5, 4, 3, 1, 2),
}

_E8_BOURBAKI_ROWS = (
    (Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(1, 2)),
    (1, 1, 0, 0, 0, 0, 0, 0),
    (-1, 1, 0, 0, 0, 0, 0, 0),
    (0, -1, 1, 0, 0, 0, 0, 0),
    (0, 0, -1, 1, 0, 0, 0, 0),
    (0, 0, 0, -1, 1, 0, 0, 0),
    (0, 0, 0, 0, -1, 1, 0, 0),
    (0, 0, 0, 0, 0, -1, 1, 0),
)


def simple_roots(t: SimpleType) -> Mat:
    """Rows: the simple roots of t in epsilon coordinates, in OV numbering."""
    s, n = t.series, t.rank
    rows: list[list] = []
    if s == "A":
        for i in range(n):
            r = [0] * (n + 1)
            r[i], r[i + 1] = 1, -1
            rows.append(r)
    elif s in "BCD":
        for i in range(n - 1):
            r = [0] * n
            r[i], r[i + 1] = 1, -1
            rows.append(r)
        last = [0] * n
        if s == "B":
            last[n - 1] = 1
        elif s == "C":
            last[n - 1] = 2
        else:
            last[n - 2] = last[n - 1] = 1
        rows.append(last)
    elif s == "G":
        rows = [[1, -1, 0], [-2, 1, 1]]
    elif s == "F":
        rows = [
            [0, 1, -1, 0],
            [0, 0, 1, -1],
            [0, 0, 0, 1],
            [Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)],
        ]
    else:  # E
        rows = [list(_E8_BOURBAKI_ROWS[b - 1]) for b in _E_OV_TO_BOURBAKI[n]]
    return linalg.mat(rows)


def _pairing(lam: Vec, root: Vec) -> Q:
    """Cartan pairing <lam, root^vee> = 2(lam, root)/(root, root)."""
    return 2 * linalg.dot(lam, root) / linalg.dot(root, root)


def cartan_matrix(t: SimpleType) -> Mat:
    """A[i][j] = <alpha_i, alpha_j^vee> in the fixed vertex numbering."""
    roots = simple_roots(t)
    n = t.rank
    return tuple(
        tuple(_pairing(roots[i], roots[j]) for j in range(n)) for i in range(n)
    )


def fundamental_coweights(t: SimpleType) -> Mat:
    """Columns express omega_i^vee in the simple-coroot basis (= inverse Cartan)."""
    return linalg.inverse(cartan_matrix(t))


def root_closure(cartan: Mat) -> list[tuple[int, ...]]:
    """All roots in simple-root coordinates, by reflection closure."""
    n = len(cartan)
    A = [[int(cartan[i][j]) for j in range(n)] for i in range(n)]
    seed = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    seen = set(seed)
    frontier = list(seed)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pair = sum(beta[j] * A[j][i] for j in range(n))
                if pair == 0:
                    continue
                img = tuple(
                    beta[j] - (pair if j == i else 0) for j in range(n)
                )
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(seen)


@functools.lru_cache(maxsize=None)
def highest_root(t: SimpleType) -> Vec:
    """Highest root of t in simple-root coordinates."""
    cartan = cartan_matrix(t)
    theta = max(root_closure(cartan), key=lambda r: (sum(r), r))
    n = len(cartan)
    for i in range(n):
        if sum(theta[j] * int(cartan[j][i]) for j in range(n)) < 0:
            raise RootDataError("highest root is not dominant")  # pragma: no cover
    return tuple(Q(x) for x in theta)


def default_involution(t: SimpleType) -> tuple[int, ...]:
    """The standard nontrivial diagram involution, as 0-indexed images.

    For D4 the choice among the three involutions is a genuine input, so
    callers must pass one explicitly; this helper returns the one
    swapping the last two vertices, which is the default elsewhere.
    """
    n = t.rank
    perm = list(range(n))
    if t.series == "A" and n >= 2:
        perm = [n - 1 - i for i in range(n)]
    elif t.series == "D":
        perm[n - 2], perm[n - 1] = perm[n - 1], perm[n - 2]
    elif t.series == "E" and n == 6:
        perm = [4, 3, 2, 1, 0, 5]  # 1<->5, 2<->4 in 1-based labels
    else:
        raise RootDataError(f"{t} has no nontrivial diagram involution")
    return tuple(perm)


def is_diagram_involution(t: SimpleType, perm: tuple[int, ...]) -> bool:
    n = t.rank
    if sorted(perm) != list(range(n)):
        return False
    if any(perm[perm[i]] != i for i in range(n)):
        return False
    A = cartan_matrix(t)
    return all(
        A[perm[i]][perm[j]] == A[i][j] for i in range(n) for j in range(n)
    )


def _twisted_affine_coeffs(base: SimpleType, orbits: list[list[int]]) -> Vec:
    """Coefficients of the twisted affine root on the restricted simple roots.

    These encode the lowest restricted weight of the odd part of the
    involution (-2*eps_1 for the even A flip, -eps_1 - eps_2 for the odd
    A flip, -eps_1 for the D flip, minus the highest weight of the
    26-dimensional F4 representation for E6); they are per-type
    constants, validated by tests against those vectors.
    """
    s = base.series
    coeffs = []
    if s == "A":
        if base.rank % 2 == 0:
            coeffs = [Q(-2)] * len(orbits)
        else:
            for pos, orbit in enumerate(orbits):
                end = pos == 0 or len(orbit) == 1
                coeffs.append(Q(-1) if end else Q(-2))
    elif s == "D":
        coeffs = [Q(-1)] * len(orbits)
    elif s == "E" and base.rank == 6:
        by_rep = {1: Q(-2), 2: Q(-3), 3: Q(-2), 6: Q(-1)}
        coeffs = [by_rep[min(o) + 1] for o in orbits]
    else:
        raise RootDataError(f"no twisted affine diagram for base {base}")
    return tuple(coeffs)


@dataclass(frozen=True)
class AffineComponent:
    """One indecomposable factor with its affine (possibly twisted) diagram.

    Finite vertices are the tau-orbit representatives of the base
    diagram, listed by increasing base index; position 0 is the affine
    vertex.  ``restricted_simple_roots`` holds the restricted simple
    roots as epsilon-coordinate rows, ``affine_root`` the extra root,
    and ``affine_coeffs`` its expansion in the restricted simple roots.
    """

    kind: PairKind
    base: SimpleType
    tau: tuple[int, ...]
    reps: tuple[int, ...]  # 0-indexed base vertices
    vertex_labels: tuple[int, ...]  # 0, then 1-based rep labels
    marks: tuple[int, ...]
    affine_coeffs: Vec
    restricted_simple_roots: Mat
    affine_root: Vec
    cartan: Mat  # <alpha_bar_i, alpha_bar_j^vee> on the coroot basis vectors
    edges: tuple[tuple[int, int, int, int], ...]  # (i, j, bond, direction)
    affine_coroot_coords: Vec  # true coroot of the affine root, coweight coords

    @property
    def n_finite(self) -> int:
        return len(self.reps)

    @property
    def n_vertices(self) -> int:
        return len(self.reps) + 1

    def orbit_of_rep(self, pos: int) -> tuple[int, ...]:
        r = self.reps[pos]
        return tuple(sorted({r, self.tau[r]}))

    def reflection(self, pos: int) -> Mat:
        """Simple reflection at finite position ``pos`` on coweight coordinates."""
        n = self.n_finite
        c = Q(2) / self.cartan[pos][pos]
        return tuple(
            tuple(
                (Q(1) if a == b else Q(0)) - (c * self.cartan[a][pos] if b == pos else Q(0))
                for b in range(n)
            )
            for a in range(n)
        )


def _component_edges(vectors: Mat) -> tuple[tuple[int, int, int, int], ...]:
    edges = []
    n = len(vectors)
    for i in range(n):
        for j in range(i + 1, n):
            nij = _pairing(vectors[i], vectors[j])
            nji = _pairing(vectors[j], vectors[i])
            if nij == 0:
                continue
            bond = nij * nji
            if bond.denominator != 1:
                raise RootDataError("non-integral bond")  # pragma: no cover
            li = linalg.dot(vectors[i], vectors[i])
            lj = linalg.dot(vectors[j], vectors[j])
            direction = 0 if li == lj else (1 if li > lj else -1)
            edges.append((i, j, int(bond), direction))
    return tuple(edges)


@functools.lru_cache(maxsize=None)
def build_affine(
    kind: PairKind, base: SimpleType, tau_perm: tuple[int, ...] | None = None
) -> AffineComponent:
    """Affine diagram of an indecomposable pair, with computed marks.

    ``tau_perm`` gives the base-diagram involution for outer kind
    (0-indexed images); it defaults to the standard one and is required
    for D4, which has three.
    """
    n = base.rank
    roots = simple_roots(base)

    if kind is PairKind.OUTER:
        if tau_perm is None:
            if base.series == "D" and base.rank == 4:
                raise RootDataError("outer D4 needs an explicit tau permutation")
            tau_perm = default_involution(base)
        if not is_diagram_involution(base, tau_perm) or tau_perm == tuple(range(n)):
            raise RootDataError("tau is not a nontrivial diagram involution")
        tau = tau_perm
    else:
        if tau_perm is not None and tau_perm != tuple(range(n)):
            raise RootDataError(f"{kind} component does not take a tau permutation")
        tau = tuple(range(n))

    if kind is PairKind.INNER or kind is PairKind.SWAP:
        reps = tuple(range(n))
        res_roots = roots
        theta = highest_root(base)
        coeffs = tuple(-c for c in theta)
        affine_root = tuple(
            -sum((theta[i] * roots[i][k] for i in range(n)), Q(0))
            for k in range(len(roots[0]))
        )
    else:
        orbits_seen: list[list[int]] = []
        used = set()
        for i in range(n):
            if i in used:
                continue
            orb = sorted({i, tau[i]})
            used.update(orb)
            orbits_seen.append(orb)
        reps = tuple(o[0] for o in orbits_seen)
        res_roots = tuple(
            linalg.vec_scale(linalg.vec_add(roots[r], roots[tau[r]]), Q(1, 2))
            if tau[r] != r
            else roots[r]
            for r in reps
        )
        coeffs = _twisted_affine_coeffs(base, orbits_seen)
        affine_root = linalg.zero_vec(len(roots[0]))
        for c, v in zip(coeffs, res_roots):
            affine_root = linalg.vec_add(affine_root, linalg.vec_scale(v, c))

    # Marks: primitive positive kernel of the affine dependency
    # m_0 * affine_coeffs + m_finite = 0, rescaled per kind.
    nf = len(reps)
    dep = tuple(
        tuple(coeffs[i] if j == 0 else (Q(1) if j == i + 1 else Q(0)) for j in range(nf + 1))
        for i in range(nf)
    )
    kernel = linalg.integer_kernel(dep)
    if len(kernel) != 1:
        raise RootDataError("affine dependency kernel is not one-dimensional")  # pragma: no cover
    marks_vec = kernel[0]
    if marks_vec[0] < 0:
        marks_vec = linalg.vec_scale(marks_vec, -1)
    if any(m <= 0 for m in marks_vec):
        raise RootDataError("marks are not strictly positive")  # pragma: no cover
    marks = [int(m) for m in marks_vec]
    if kind is PairKind.INNER:
        if marks[0] != 1:
            raise RootDataError("inner affine mark must be 1")  # pragma: no cover
    else:
        if marks[0] == 1:
            marks = [2 * m for m in marks]
        if marks[0] != 2 or any(m % 2 for m in marks):
            raise RootDataError("twisted marks must be even with affine mark 2")

    # Restricted Cartan pairings on the coroot-basis vectors of Lemma-type
    # alpha_bar_j^vee = alpha_j^vee (+ tau image if moved).
    coroot_vecs = []
    for pos, r in enumerate(reps):
        v = linalg.vec_scale(roots[r], Q(2) / linalg.dot(roots[r], roots[r]))
        if kind is PairKind.OUTER and tau[r] != r:
            w = linalg.vec_scale(
                roots[tau[r]], Q(2) / linalg.dot(roots[tau[r]], roots[tau[r]])
            )
            v = linalg.vec_add(v, w)
        coroot_vecs.append(v)
    cartan = tuple(
        tuple(linalg.dot(res_roots[i], coroot_vecs[j]) for j in range(nf))
        for i in range(nf)
    )

    vectors = (affine_root,) + tuple(res_roots)
    edges = _component_edges(vectors)
    aff_norm = linalg.dot(affine_root, affine_root)
    affine_coroot_coords = tuple(
        2 * linalg.dot(res_roots[i], affine_root) / aff_norm for i in range(nf)
    )

    labels = (0,) + tuple(r + 1 for r in reps)
    return AffineComponent(
        kind=kind,
        base=base,
        tau=tau,
        reps=reps,
        vertex_labels=labels,
        marks=tuple(marks),
        affine_coeffs=coeffs,
        restricted_simple_roots=tuple(res_roots),
        affine_root=affine_root,
        cartan=cartan,
        edges=edges,
        affine_coroot_coords=affine_coroot_coords,
    )


# ---------------------------------------------------------------------------
# Diagram automorphisms.


@functools.lru_cache(maxsize=None)
def diagram_automorphisms(comp: AffineComponent) -> tuple[tuple[int, ...], ...]:
    """Full automorphism group of the marked affine diagram, by backtracking.

    Permutations are on vertex positions (0 = affine vertex); marks,
    bond multiplicities and arrow directions must all be preserved.
    """
    n = comp.n_vertices
    emap: dict[tuple[int, int], tuple[int, int]] = {}
    for i, j, bond, direction in comp.edges:
        emap[(i, j)] = (bond, direction)
        emap[(j, i)] = (bond, -direction)

    def signature(v: int):
        inc = sorted(
            (bond, direction, comp.marks[w])
            for (u, w), (bond, direction) in emap.items()
            if u == v
        )
        return (comp.marks[v], tuple(inc))

    sigs = [signature(v) for v in range(n)]
    perms: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> None:
        if v == n:
            perms.append(tuple(image))
            return
        for w in range(n):
            if used[w] or sigs[v] != sigs[w]:
                continue
            ok = True
            for u in range(v):
                if emap.get((u, v)) != emap.get((image[u], w)):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
                image[v] = -1

    extend(0)
    return tuple(sorted(perms))


# ---------------------------------------------------------------------------
# Alcove geometry: coset representatives and their diagram action.
#
# Points of the (real) Cartan subspace are stored in fundamental-coweight
# coordinates, so the barycentric coordinate at finite vertex i is just
# coordinate i, and at the affine vertex (1 - sum m_i x_i) / m_0.


def _apply_reflection(comp: AffineComponent, j: int, v: Vec) -> Vec:
    """s_j(v) = v - (2 v_j / A_jj) * (column j of the restricted pairing)."""
    c = 2 * v[j] / comp.cartan[j][j]
    if c == 0:
        return v
    return tuple(v[a] - c * comp.cartan[a][j] for a in range(comp.n_finite))


@functools.lru_cache(maxsize=None)
def longest_element(comp: AffineComponent, exclude: int | None = None) -> Mat:
    """Longest Weyl element (of the parabolic omitting ``exclude``) as a matrix.

    Computed by greedy descent of a strictly dominant vector to the
    antidominant chamber; no reduced words are hardcoded.  The word
    found by the descent is then applied to the basis vectors.
    """
    n = comp.n_finite
    active = [p for p in range(n) if p != exclude]
    v = tuple(Q(1) if p in active else Q(0) for p in range(n))
    word: list[int] = []
    # Descent length is bounded by the number of positive roots.
    for _ in range(16 * (n + 1) * (n + 1) + 16):
        j = next((p for p in active if v[p] > 0), None)
        if j is None:
            cols = []
            for i in range(n):
                e = tuple(Q(1 if p == i else 0) for p in range(n))
                for s in word:
                    e = _apply_reflection(comp, s, e)
                cols.append(e)
            return tuple(tuple(cols[b][a] for b in range(n)) for a in range(n))
        v = _apply_reflection(comp, j, v)
        word.append(j)
    raise RootDataError("Weyl descent failed to terminate")  # pragma: no cover


def distinguished_reps(comp: AffineComponent) -> dict[int, Vec]:
    """Nonzero coset representatives lying at alcove vertices, by position.

    These are the fundamental-coweight vectors omega_bar_i / m_i that
    belong to the projected coweight lattice: mark-1 vertices for inner
    components, mark-2 vertices at moved orbits for outer ones, mark-2
    vertices for swap pairs.
    """
    out = {}
    for pos in range(comp.n_finite):
        m = comp.marks[pos + 1]
        if comp.kind is PairKind.INNER:
            ok = m == 1
        elif comp.kind is PairKind.OUTER:
            ok = m == 2 and len(comp.orbit_of_rep(pos)) == 2
        else:
            ok = m == 2
        if ok:
            out[pos + 1] = tuple(
                Q(1, m) if p == pos else Q(0) for p in range(comp.n_finite)
            )
    return out


def _barycentric0(comp: AffineComponent, x: Vec) -> Q:
    s = sum((comp.marks[p + 1] * x[p] for p in range(comp.n_finite)), Q(0))
    return (1 - s) / comp.marks[0]


def _match_vertex(comp: AffineComponent, x: Vec) -> int | None:
    """Vertex position whose alcove vertex equals x, or None."""
    if linalg.is_zero(x):
        return 0
    hits = [p for p in range(comp.n_finite) if x[p] != 0]
    if len(hits) == 1:
        p = hits[0]
        if x[p] == Q(1, comp.marks[p + 1]) and _barycentric0(comp, x) == 0:
            return p + 1
    return None


@functools.lru_cache(maxsize=None)
def coset_action(comp: AffineComponent, nu: Vec) -> tuple[int, ...]:
    """Vertex permutation induced by the alcove isometry x -> w_i w_0 x + nu.

    ``nu`` must be a distinguished alcove representative of a nonzero
    coset (see :func:`distinguished_reps`).  The isometry maps alcove
    vertices to alcove vertices; matching images yields the permutation,
    which is checked to be a diagram automorphism.
    """
    reps = distinguished_reps(comp)
    vertex = next((v for v, rep in reps.items() if rep == nu), None)
    if vertex is None:
        raise RootDataError("nu is not an alcove representative of a nonzero coset")
    w0 = longest_element(comp)
    wi = longest_element(comp, exclude=vertex - 1)
    lin = linalg.mat_mul(wi, w0)
    perm = [-1] * comp.n_vertices
    for pos in range(comp.n_vertices):
        if pos == 0:
            src: Vec = linalg.zero_vec(comp.n_finite)
        else:
            m = comp.marks[pos]
            src = tuple(
                Q(1, m) if p == pos - 1 else Q(0) for p in range(comp.n_finite)
            )
        img = linalg.vec_add(linalg.mat_vec(lin, src), nu)
        tgt = _match_vertex(comp, img)
        if tgt is None:
            raise RootDataError("alcove isometry does not permute the vertices")
        perm[pos] = tgt
    if sorted(perm) != list(range(comp.n_vertices)):
        raise RootDataError("alcove isometry image is not a permutation")
    if tuple(perm) not in set(diagram_automorphisms(comp)):
        raise RootDataError("coset action is not a diagram automorphism")
    return tuple(perm)


def alcove_reduce(comp: AffineComponent, nu: Vec) -> int:
    """Reduce a projected-coweight vector to its distinguished coset vertex.

    Sweeps the alcove walls in a fixed order (affine wall first, then
    finite vertices in index order), reflecting at the first violated
    wall; the alcove is a fundamental domain, so this terminates.
    Returns 0 for the trivial coset, else the vertex position.
    """
    x = nu
    for _ in range(100000):
        if _barycentric0(comp, x) < 0:
            excess = -linalg.dot(comp.affine_coeffs, x) - Q(1, comp.marks[0])
            # Reflection in the wall {affine barycentric coordinate = 0}.
            x = linalg.vec_sub(
                x, linalg.vec_scale(comp.affine_coroot_coords, -excess)
            )
            continue
        j = next((p for p in range(comp.n_finite) if x[p] < 0), None)
        if j is None:
            break
        x = linalg.mat_vec(comp.reflection(j), x)
    else:
        raise RootDataError("alcove reduction failed to terminate")  # pragma: no cover
    vertex = _match_vertex(comp, x)
    if vertex is None:
        raise RootDataError("reduced point is not an alcove vertex; "
                            "vector is not in the projected coweight lattice")
    return vertex
