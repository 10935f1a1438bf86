"""Linear-algebraic invariants of a Lie algebra law.

Everything here is computed by exact rank/kernel computations over the
Gaussian rationals: the lower central and derived series dimensions,
the center, the derivation algebra (whose nullity gives the orbit
dimension n^2 - dim Der), and Chevalley-Eilenberg cohomology with
trivial or adjoint coefficients.

These quantities move monotonically along degenerations, which is what
makes the profile a practical obstruction battery: along a non-trivial
degeneration the orbit dimension strictly drops, dim Der strictly
grows, central ascent series and cohomology dimensions never shrink,
and the two descending series never grow.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import linalg
from .core import GAUSS, StructureTensor
from .errors import LieDegError

_Z = GAUSS.zero
_O = GAUSS.one


def _span(vectors, n):
    """Canonical RREF basis of a span; returns (rows, pivots)."""
    return linalg.row_basis(vectors, n, _Z)


def _basis_vectors(n):
    return [tuple(_O if i == j else _Z for j in range(n)) for i in range(n)]


def _bracket_space(t, left, right):
    """Span of mu(a, b) for a in left, b in right (lists of vectors)."""
    vecs = [t.bracket(a, b) for a in left for b in right]
    return _span(vecs, t.n)[0]


def series_dims(t):
    """Lower central and derived series dimensions, until they stabilize.

    Lists start at dim(g) and stop before the first repeated value, so
    the stable tail is the last entry.
    """
    n = t.n
    full = _basis_vectors(n)

    lower = [n]
    cur = full
    while True:
        nxt = _bracket_space(t, full, cur)
        d = len(nxt)
        if d == lower[-1]:
            break
        lower.append(d)
        cur = nxt

    derived = [n]
    cur = full
    while True:
        nxt = _bracket_space(t, cur, cur)
        d = len(nxt)
        if d == derived[-1]:
            break
        derived.append(d)
        cur = nxt

    return tuple(lower), tuple(derived)


def center_dim(t):
    """dim of the center: the joint kernel of all adjoint maps."""
    n = t.n
    rows = []
    for j in range(n):
        for r in range(n):
            rows.append([t.c[i][j][r] for i in range(n)])
    if not rows:
        return n
    return n - linalg.bareiss_rank(rows, _Z, _O)


def _derivation_system(t):
    """Rows of the linear system cutting out derivations D (n^2 unknowns).

    Unknown order: D[a][b] -> column a*n + b, where D e_b = sum_a D[a][b] e_a.
    """
    n = t.n
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for r in range(n):
                row = [_Z] * (n * n)
                # D applied to mu(e_i, e_j)
                for s in range(n):
                    if t.c[i][j][s]:
                        row[r * n + s] = row[r * n + s] + t.c[i][j][s]
                # -mu(D e_i, e_j)
                for p in range(n):
                    if t.c[p][j][r]:
                        row[p * n + i] = row[p * n + i] - t.c[p][j][r]
                # -mu(e_i, D e_j)
                for q in range(n):
                    if t.c[i][q][r]:
                        row[q * n + j] = row[q * n + j] - t.c[i][q][r]
                rows.append(row)
    return rows


def der_dim(t):
    """Dimension of the derivation algebra Der(g)."""
    n = t.n
    rows = _derivation_system(t)
    if not rows:
        return n * n
    return n * n - linalg.bareiss_rank(rows, _Z, _O)


def derivations(t):
    """A basis of Der(g) as a list of n x n matrices (columns = images)."""
    n = t.n
    rows = _derivation_system(t)
    if not rows:
        vecs = [tuple(_O if k == m else _Z for m in range(n * n)) for k in range(n * n)]
    else:
        vecs = linalg.nullspace(rows, n * n, _Z, _O)
    return [[[v[a * n + b] for b in range(n)] for a in range(n)] for v in vecs]


def orbit_dim(t):
    """dim O(g) = n^2 - dim Der(g)."""
    return t.n * t.n - der_dim(t)


def cochain_differential(t, p, coefficients):
    """Matrix of the Chevalley-Eilenberg differential d^p : C^p -> C^{p+1}.

    C^p is the space of alternating p-linear maps into k (trivial) or g
    (adjoint).  Convention:

        (df)(x_0..x_p) = sum_{a<b} (-1)^{a+b} f([x_a,x_b], ..^a..^b..)
                       + sum_a (-1)^a rho(x_a) f(..^a..)

    with rho = 0 for trivial and rho = ad for adjoint coefficients.
    Basis order: column (S, u) -> index(S)*m + u for p-subsets S in
    lexicographic order and target coordinate u; rows likewise over
    (p+1)-subsets.  Returns a list of rows; empty when p >= n.
    """
    if coefficients not in ("trivial", "adjoint"):
        raise LieDegError(f"unknown coefficients {coefficients!r}")
    n = t.n
    m = 1 if coefficients == "trivial" else n
    if p < 0 or p >= n:
        return []
    subs_p = list(combinations(range(n), p))
    subs_p1 = list(combinations(range(n), p + 1))
    index_p = {s: k for k, s in enumerate(subs_p)}
    ncols = len(subs_p) * m
    rows = [[_Z] * ncols for _ in range(len(subs_p1) * m)]
    adjoint = coefficients == "adjoint"
    for ti, T in enumerate(subs_p1):
        for a in range(p + 1):
            for b in range(a + 1, p + 1):
                x, y = T[a], T[b]
                rest = T[:a] + T[a + 1 : b] + T[b + 1 :]
                sign_ab = -1 if (a + b) % 2 else 1
                cxy = t.c[x][y]
                for r in range(n):
                    coeff = cxy[r]
                    if not coeff or r in rest:
                        continue
                    pos = sum(1 for e in rest if e < r)
                    s_idx = index_p[tuple(sorted(rest + (r,)))]
                    val = coeff if (sign_ab > 0) == (pos % 2 == 0) else -coeff
                    for u in range(m):
                        rows[ti * m + u][s_idx * m + u] += val
            if adjoint:
                x = T[a]
                rest = T[:a] + T[a + 1 :]
                s_idx = index_p[rest]
                sign_a = -1 if a % 2 else 1
                for u in range(n):
                    cxu = t.c[x][u]
                    for w in range(n):
                        if cxu[w]:
                            val = cxu[w] if sign_a > 0 else -cxu[w]
                            rows[ti * n + w][s_idx * n + u] += val
    return rows


def _binom(n, p):
    from math import comb

    return comb(n, p)


def cohomology_dims(t, coefficients):
    """dim H^p for p = 0..n with the chosen coefficients, all exact."""
    n = t.n
    m = 1 if coefficients == "trivial" else n
    ranks = []
    for p in range(n):
        d = cochain_differential(t, p, coefficients)
        ranks.append(linalg.bareiss_rank(d, _Z, _O) if d else 0)
    ranks.append(0)  # d^n maps into 0
    dims = []
    for p in range(n + 1):
        dim_cp = m * _binom(n, p)
        below = ranks[p - 1] if p > 0 else 0
        dims.append(dim_cp - ranks[p] - below)
    return tuple(dims)


@dataclass(frozen=True)
class InvariantProfile:
    """All implemented degeneration invariants of one law."""

    dim: int
    lower_central_dims: tuple
    derived_dims: tuple
    center_dim: int
    der_dim: int
    orbit_dim: int
    betti_trivial: tuple
    betti_adjoint: tuple
    nilpotent: bool
    solvable: bool
    abelian: bool

    def to_dict(self):
        return {
            "dim": self.dim,
            "lower_central_dims": list(self.lower_central_dims),
            "derived_dims": list(self.derived_dims),
            "center_dim": self.center_dim,
            "der_dim": self.der_dim,
            "orbit_dim": self.orbit_dim,
            "betti_trivial": list(self.betti_trivial),
            "betti_adjoint": list(self.betti_adjoint),
            "nilpotent": self.nilpotent,
            "solvable": self.solvable,
            "abelian": self.abelian,
        }


@lru_cache(maxsize=None)
def profile(t):
    """Compute (and cache) the full invariant profile of a law."""
    if t.ring.name != "gauss":
        raise LieDegError("profiles are computed for Gaussian-rational laws")
    lower, derived = series_dims(t)
    c = center_dim(t)
    d = der_dim(t)
    return InvariantProfile(
        dim=t.n,
        lower_central_dims=lower,
        derived_dims=derived,
        center_dim=c,
        der_dim=d,
        orbit_dim=t.n * t.n - d,
        betti_trivial=cohomology_dims(t, "trivial"),
        betti_adjoint=cohomology_dims(t, "adjoint"),
        nilpotent=lower[-1] == 0,
        solvable=derived[-1] == 0,
        abelian=t.is_zero,
    )
