"""Integer lattices inside rational vector spaces.

A lattice is stored by a canonical basis: the row Hermite normal form of
any generating set, taken over a common denominator.  Two lattices are
equal iff their stored bases are equal, so structural equality is the
mathematical one.  Finite quotients are computed through the Smith
normal form and carry generator lifts, so cosets can be enumerated and
arbitrary lattice vectors can be located inside the quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Iterator, Sequence

from . import linalg
from .linalg import Mat, Vec


class LatticeError(ValueError):
    """Raised on inconsistent lattice operations (dimension mismatch etc.)."""


@dataclass(frozen=True)
class Lattice:
    """Z-span of finitely many rational vectors, in canonical HNF basis form."""

    ambient_dim: int
    basis: Mat

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[Q]) -> bool:
        return contains(self, v)


def lattice_span(vectors: Iterable[Sequence], ambient_dim: int) -> Lattice:
    """Canonical lattice generated by the given rational vectors."""
    vecs = [linalg.vec(v) for v in vectors]
    for v in vecs:
        if len(v) != ambient_dim:
            raise LatticeError("vector length does not match ambient dimension")
    if not vecs:
        return Lattice(ambient_dim, ())
    den = 1
    for v in vecs:
        for x in v:
            den = den * x.denominator // linalg._gcd(den, x.denominator)
    int_rows = [[int(x * den) for x in v] for v in vecs]
    red = linalg.hnf(int_rows)
    basis = tuple(tuple(Q(x, den) for x in row) for row in red)
    return Lattice(ambient_dim, basis)


def standard_lattice(n: int) -> Lattice:
    return Lattice(n, linalg.identity(n))


def coords_in_basis(L: Lattice, v: Sequence[Q]) -> Vec | None:
    """Rational coordinates of v in L's basis, or None if v is outside the span."""
    if len(v) != L.ambient_dim:
        raise LatticeError("dimension mismatch")
    return linalg.solve_in_rows(L.basis, linalg.vec(v))


def contains(L: Lattice, v: Sequence[Q]) -> bool:
    """True iff v lies in the Z-span of the basis."""
    x = coords_in_basis(L, v)
    return x is not None and all(c.denominator == 1 for c in x)


def is_sublattice(small: Lattice, big: Lattice) -> bool:
    return all(contains(big, row) for row in small.basis)


def scale(L: Lattice, c) -> Lattice:
    return lattice_span([linalg.vec_scale(row, c) for row in L.basis], L.ambient_dim)


def sum_lattices(A: Lattice, B: Lattice) -> Lattice:
    if A.ambient_dim != B.ambient_dim:
        raise LatticeError("dimension mismatch")
    return lattice_span(list(A.basis) + list(B.basis), A.ambient_dim)


def reduce_mod(L: Lattice, v: Sequence[Q]) -> Vec:
    """Canonical representative of v modulo L (for v in the rational span of L).

    Works down the HNF basis, clearing each pivot coordinate into
    [0, pivot); representatives are unique per coset.
    """
    w = list(linalg.vec(v))
    for row in L.basis:
        j = next(k for k, x in enumerate(row) if x != 0)
        c = w[j] / row[j]
        n = c.numerator // c.denominator  # floor
        if n:
            for k in range(len(w)):
                w[k] -= n * row[k]
    return tuple(w)


@dataclass(frozen=True)
class FinAbQuotient:
    """Finite abelian quotient big/small with Smith-form generator lifts.

    ``invariant_factors`` lists the d_i > 1 with d1 | d2 | ...; the lift
    at the same index has order exactly d_i in the quotient.
    """

    big: Lattice
    small: Lattice
    invariant_factors: tuple[int, ...]
    generator_lifts: tuple[Vec, ...]
    _vmat: Mat  # column transform of the Smith form, for coords()
    _diag: tuple[int, ...]  # full diagonal including 1s

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def coords(self, v: Sequence[Q]) -> tuple[int, ...]:
        """Coordinates of [v] on the generators, for v in the big lattice."""
        x = coords_in_basis(self.big, v)
        if x is None or any(c.denominator != 1 for c in x):
            raise LatticeError("vector is not in the big lattice")
        z = linalg.vec_mat(x, self._vmat)
        out = []
        for i, d in enumerate(self._diag):
            if d != 1:
                out.append(int(z[i]) % d)
        return tuple(out)

    def element(self, coeffs: Sequence[int]) -> Vec:
        v = linalg.zero_vec(self.big.ambient_dim)
        for c, g in zip(coeffs, self.generator_lifts):
            v = linalg.vec_add(v, linalg.vec_scale(g, c))
        return v

    def elements(self) -> Iterator[tuple[tuple[int, ...], Vec]]:
        """All cosets as (coefficient tuple, lift vector), in lexicographic order."""
        ranges = [range(d) for d in self.invariant_factors]
        for coeffs in itertools.product(*ranges):
            yield coeffs, self.element(coeffs)


def quotient(big: Lattice, small: Lattice) -> FinAbQuotient:
    """Finite quotient big/small; raises unless small is a finite-index sublattice."""
    if big.ambient_dim != small.ambient_dim:
        raise LatticeError("dimension mismatch")
    if small.rank != big.rank:
        raise LatticeError("infinite quotient: ranks differ")
    rel = []
    for row in small.basis:
        x = coords_in_basis(big, row)
        if x is None or any(c.denominator != 1 for c in x):
            raise LatticeError("not a sublattice")
        rel.append([int(c) for c in x])
    k = big.rank
    if k == 0:
        return FinAbQuotient(big, small, (), (), (), ())
    D, _U, V = linalg.snf(rel)
    vmat = linalg.mat(V)
    vinv = linalg.inverse(vmat)
    diag = tuple(int(D[i][i]) for i in range(k))
    factors = []
    lifts = []
    for i, d in enumerate(diag):
        if d == 0:
            raise LatticeError("infinite quotient")
        if d != 1:
            factors.append(d)
            # Canonical lift: reduce the Smith generator modulo the sublattice.
            lifts.append(reduce_mod(small, linalg.vec_mat(vinv[i], big.basis)))
    return FinAbQuotient(big, small, tuple(factors), tuple(lifts), vmat, diag)


def dual_lattice(L: Lattice, pairing: Mat | None = None) -> Lattice:
    """Vectors pairing integrally with all of L; needs L of full rank.

    The pairing defaults to the standard dot product.
    """
    n = L.ambient_dim
    if L.rank != n:
        raise LatticeError("dual lattice needs a full-rank lattice")
    if pairing is None:
        pairing = linalg.identity(n)
    try:
        M = linalg.inverse(linalg.mat_mul(pairing, linalg.transpose(L.basis)))
    except ValueError:
        raise LatticeError("degenerate pairing") from None
    return lattice_span(M, n)


def project_tau(
    L: Lattice, tau: Mat, fixed_basis: Mat | None = None
) -> tuple[Lattice, Lattice]:
    """Fixed sublattice and averaged projection of L under an involution tau.

    tau acts on column vectors; it must be an involution preserving L.
    When ``fixed_basis`` rows are given (a basis of the tau-fixed
    subspace), both outputs are re-expressed in those coordinates.
    """
    n = L.ambient_dim
    if linalg.mat_mul(tau, tau) != linalg.identity(n):
        raise LatticeError("tau is not an involution")
    tau_t = linalg.transpose(tau)
    image = lattice_span([linalg.vec_mat(row, tau_t) for row in L.basis], n)
    if image != L:
        raise LatticeError("tau does not preserve the lattice")
    # Fixed part: integer kernel of (tau - 1) restricted to L-coordinates.
    delta = tuple(
        tuple(tau[i][j] - (1 if i == j else 0) for j in range(n)) for i in range(n)
    )
    A = linalg.mat_mul(delta, linalg.transpose(L.basis))
    fixed_rows = [linalg.vec_mat(x, L.basis) for x in linalg.integer_kernel(A)]
    proj_rows = [
        linalg.vec_scale(linalg.vec_add(row, linalg.vec_mat(row, tau_t)), Q(1, 2))
        for row in L.basis
    ]
    if fixed_basis is not None:
        def convert(rows):
            out = []
            for r in rows:
                y = linalg.solve_in_rows(fixed_basis, r)
                if y is None:
                    raise LatticeError("vector outside the fixed subspace")
                out.append(y)
            return out

        fixed_rows = convert(fixed_rows)
        proj_rows = convert(proj_rows)
        dim = len(fixed_basis)
    else:
        dim = n
    return lattice_span(fixed_rows, dim), lattice_span(proj_rows, dim)
