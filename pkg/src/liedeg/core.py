"""Structure-constant representation of Lie algebra laws.

A law on an n-dimensional space is stored as the full n x n x n array
c[i][j][r] (0-based internally, 1-based in all reports) with the
antisymmetry relations enforced at construction time.  The Jacobi
identity is checked by :func:`validate`, so raw antisymmetric tensors
(e.g. deformation terms) can use the same type.

Tensors are immutable, hashable and carry a scalar ring tag: exact
Gaussian rationals for concrete algebras, rational functions in t for
transported laws along a curve of basis changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import LieDegError
from .scalars import (
    GR_ONE,
    GR_ZERO,
    RF_ONE,
    RF_ZERO,
    GaussRat,
    LaurentPoly,
    RatFunc,
    as_gauss,
    as_ratfunc,
    scalar_str,
)


class ScalarRing:
    """Adapter bundling the zero/one constants and coercion of a scalar type."""

    __slots__ = ("name", "zero", "one", "coerce")

    def __init__(self, name, zero, one, coerce):
        self.name = name
        self.zero = zero
        self.one = one
        self.coerce = coerce

    def __repr__(self):
        return f"ScalarRing({self.name})"


GAUSS = ScalarRing("gauss", GR_ZERO, GR_ONE, as_gauss)
RATFUNC = ScalarRing("ratfunc", RF_ZERO, RF_ONE, as_ratfunc)


def _default_labels(n):
    return tuple(f"e{k}" for k in range(1, n + 1))


class StructureTensor:
    """An antisymmetric bilinear law mu(x_i, x_j) = sum_r c[i][j][r] x_r."""

    __slots__ = ("n", "ring", "c", "labels", "_hash")

    def __init__(self, n, entries, ring=GAUSS, labels=None):
        self.n = n
        self.ring = ring
        coerce = ring.coerce
        c = tuple(
            tuple(tuple(coerce(entries[i][j][r]) for r in range(n)) for j in range(n))
            for i in range(n)
        )
        # antisymmetry is a constructor postcondition
        for i in range(n):
            for j in range(i, n):
                for r in range(n):
                    if c[i][j][r] != -c[j][i][r]:
                        raise LieDegError(
                            f"antisymmetry violated at c[{i + 1}][{j + 1}]^{r + 1}"
                        )
        self.c = c
        self.labels = tuple(labels) if labels is not None else _default_labels(n)
        if len(self.labels) != n:
            raise LieDegError("basis label count does not match the dimension")
        self._hash = None

    @classmethod
    def from_brackets(cls, n, brackets, ring=GAUSS, labels=None):
        """Build from a map {(i, j): {r: coeff}} with 1-based indices, i < j.

        The (j, i) entries are filled in by antisymmetry.
        """
        entries = [[[ring.zero] * n for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in brackets.items():
            if not (1 <= i < j <= n):
                raise LieDegError(f"bracket indices ({i}, {j}) must satisfy 1 <= i < j <= {n}")
            for r, v in coeffs.items():
                if not (1 <= r <= n):
                    raise LieDegError(f"bracket target index {r} out of range 1..{n}")
                v = ring.coerce(v)
                entries[i - 1][j - 1][r - 1] = v
                entries[j - 1][i - 1][r - 1] = -v
        return cls(n, entries, ring, labels)

    @classmethod
    def abelian(cls, n, ring=GAUSS, labels=None):
        return cls.from_brackets(n, {}, ring, labels)

    @property
    def is_zero(self):
        return all(not x for row in self.c for col in row for x in col)

    def entry(self, i, j, r):
        """0-based entry access."""
        return self.c[i][j][r]

    def basis_bracket(self, i, j):
        """mu(e_i, e_j) for 0-based i, j, as a coefficient tuple."""
        return self.c[i][j]

    def bracket(self, x, y):
        """Bilinear evaluation of the law on coefficient vectors x, y."""
        n = self.n
        if len(x) != n or len(y) != n:
            raise LieDegError(f"vectors must have length {n}")
        zero = self.ring.zero
        coerce = self.ring.coerce
        out = [zero] * n
        for i in range(n):
            xi = coerce(x[i])
            if not xi:
                continue
            ci = self.c[i]
            for j in range(n):
                yj = coerce(y[j])
                if not yj:
                    continue
                cij = ci[j]
                f = xi * yj
                for r in range(n):
                    if cij[r]:
                        out[r] = out[r] + f * cij[r]
        return tuple(out)

    def map_entries(self, fn, ring=None, labels=None):
        ring = ring or self.ring
        entries = [
            [[fn(self.c[i][j][r]) for r in range(self.n)] for j in range(self.n)]
            for i in range(self.n)
        ]
        return StructureTensor(self.n, entries, ring, labels or self.labels)

    def to_ratfunc(self):
        if self.ring is RATFUNC:
            return self
        return self.map_entries(as_ratfunc, RATFUNC)

    def nonzero_brackets(self):
        """Yield (i, j, {r: coeff}) with 1-based indices, i < j, nonzero only."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                coeffs = {
                    r + 1: self.c[i][j][r] for r in range(self.n) if self.c[i][j][r]
                }
                if coeffs:
                    yield i + 1, j + 1, coeffs

    def __eq__(self, other):
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.n == other.n and self.ring.name == other.ring.name and self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.ring.name, self.c))
        return self._hash

    def __repr__(self):
        parts = [
            f"[{self.labels[i - 1]},{self.labels[j - 1]}] = "
            + " + ".join(f"({scalar_str(v)}) {self.labels[r - 1]}" for r, v in sorted(coeffs.items()))
            for i, j, coeffs in self.nonzero_brackets()
        ]
        body = "; ".join(parts) if parts else "abelian"
        return f"<StructureTensor dim={self.n} {body}>"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking the defining polynomial conditions of a law."""

    ok: bool
    kind: str | None = None       # "antisymmetry" | "jacobi"
    indices: tuple | None = None  # 1-based (i, j, r) or (i, j, k, s)
    defect: object | None = None

    def __bool__(self):
        return self.ok

    def describe(self):
        if self.ok:
            return "ok"
        if self.kind == "antisymmetry":
            i, j, r = self.indices
            return f"antisymmetry fails at c[{i}][{j}]^{r} (defect {scalar_str(self.defect)})"
        i, j, k, s = self.indices
        return (
            f"Jacobi identity fails on (e{i}, e{j}, e{k}), component e{s} "
            f"(defect {scalar_str(self.defect)})"
        )


def validate(t):
    """Check antisymmetry and the Jacobi identity exactly.

    Reports the first violated condition with 1-based indices; Jacobi is
    checked on triples i < j < k, components s = 1..n.
    """
    n = t.n
    for i in range(n):
        for j in range(i, n):
            for r in range(n):
                d = t.c[i][j][r] + t.c[j][i][r]
                if d:
                    return ValidationReport(False, "antisymmetry", (i + 1, j + 1, r + 1), d)
    for i in range(n):
        for j in range(i + 1, n):
            bij = t.c[i][j]
            for k in range(j + 1, n):
                bjk = t.c[j][k]
                bki = t.c[k][i]
                # [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]
                s1 = _bracket_vec_basis(t, bij, k)
                s2 = _bracket_vec_basis(t, bjk, i)
                s3 = _bracket_vec_basis(t, bki, j)
                for s in range(n):
                    d = s1[s] + s2[s] + s3[s]
                    if d:
                        return ValidationReport(
                            False, "jacobi", (i + 1, j + 1, k + 1, s + 1), d
                        )
    return ValidationReport(True)


def _bracket_vec_basis(t, v, k):
    """mu(v, e_k) for a coefficient vector v and 0-based basis index k."""
    n = t.n
    out = [t.ring.zero] * n
    for p in range(n):
        vp = v[p]
        if not vp:
            continue
        cpk = t.c[p][k]
        for r in range(n):
            if cpk[r]:
                out[r] = out[r] + vp * cpk[r]
    return tuple(out)


def act(g_rows, t):
    """Transport of a law by an invertible basis change g.

    Convention: (g . mu)(x, y) = g(mu(g^{-1} x, g^{-1} y)).  The matrix g
    is given over the tensor's scalar ring (rows of coefficients).
    """
    n = t.n
    ring = t.ring
    g = [[ring.coerce(x) for x in row] for row in g_rows]
    if len(g) != n or any(len(row) != n for row in g):
        raise LieDegError(f"basis change must be a {n}x{n} matrix")
    ginv = linalg.inverse(g, ring.zero, ring.one)
    cols = [tuple(ginv[p][i] for p in range(n)) for i in range(n)]
    entries = [[[ring.zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = t.bracket(cols[i], cols[j])
            res = linalg.mat_vec(g, w, ring.zero)
            for r in range(n):
                entries[i][j][r] = res[r]
                entries[j][i][r] = -res[r]
    return StructureTensor(n, entries, ring, t.labels)


def direct_sum(a, b):
    """Block direct sum of two laws (cross brackets zero)."""
    if a.ring.name != b.ring.name:
        raise LieDegError("direct summands must share a scalar ring")
    n = a.n + b.n
    ring = a.ring
    entries = [[[ring.zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(a.n):
        for j in range(a.n):
            for r in range(a.n):
                entries[i][j][r] = a.c[i][j][r]
    for i in range(b.n):
        for j in range(b.n):
            for r in range(b.n):
                entries[a.n + i][a.n + j][a.n + r] = b.c[i][j][r]
    return StructureTensor(n, entries, ring)


def tensor_to_json(t):
    """Canonical JSON-ready dict: {"dim": n, "brackets": [...]}.

    Bracket entries are sorted by (i, j) and coefficient keys by target
    index, so serialization is deterministic.
    """
    brackets = []
    for i, j, coeffs in t.nonzero_brackets():
        brackets.append(
            {
                "i": i,
                "j": j,
                "coeffs": {str(r): scalar_str(v) for r, v in sorted(coeffs.items())},
            }
        )
    return {"dim": t.n, "brackets": brackets}


def tensor_from_json(data, ring=None, params=None):
    """Inverse of :func:`tensor_to_json`; scalar strings use the shared syntax.

    When ``ring`` is None the ring is inferred: Gaussian rationals unless
    some coefficient depends on t.
    """
    from .scalars import parse_scalar

    try:
        n = int(data["dim"])
        raw = data.get("brackets", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise LieDegError(f"malformed tensor JSON: {exc}") from None
    parsed = {}
    any_t = False
    for item in raw:
        try:
            i, j = int(item["i"]), int(item["j"])
            coeffs = item["coeffs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise LieDegError(f"malformed bracket entry: {exc}") from None
        cmap = {}
        for r, s in coeffs.items():
            v = parse_scalar(str(s), params)
            if not v.is_constant:
                any_t = True
            cmap[int(r)] = v
        parsed[(i, j)] = cmap
    if ring is None:
        ring = RATFUNC if any_t else GAUSS
    return StructureTensor.from_brackets(n, parsed, ring)
