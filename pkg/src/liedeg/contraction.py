"""Contractions: transporting a law along a curve of basis changes.

A :class:`Witness` is an invertible matrix over the rational function
field k(t).  Acting on a law and letting t -> 0 (when every transported
structure constant has nonnegative t-adic valuation) produces the limit
algebra.  Two conventions are supported and kept explicit:

- "action":    g acts by (g.mu)(x,y) = g(mu(g^{-1}x, g^{-1}y));
- "new-basis": h lists the new basis vectors as columns, equivalent to
               the action of g = h^{-1}.

The classical one-parameter contraction onto a subalgebra u (projection
P, witness g = P + t^{-1}(I - P)) and the endomorphism-style check
(phi with polynomial entries, phi_0 = phi mod t, short exact sequence
0 -> ker(phi_0) -> limit -> im(phi_0) -> 0) are both provided, as is
the expansion of a contraction into a truncated deformation of its
limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .core import GAUSS, RATFUNC, StructureTensor, act, validate
from .errors import LieDegError, NoLimitError, SingularMatrixError
from .scalars import (
    GR_ONE,
    GR_ZERO,
    L_ONE,
    RF_ONE,
    RF_ZERO,
    RatFunc,
    as_gauss,
    as_ratfunc,
    parse_scalar,
    scalar_str,
)

_CONVENTIONS = ("action", "new-basis")


class Witness:
    """An invertible basis-change curve over k(t) driving a contraction."""

    __slots__ = ("action", "inverse", "convention", "given")

    def __init__(self, action_rows, convention="action", given=None):
        rows = [[as_ratfunc(x) for x in row] for row in action_rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise LieDegError("witness matrix must be square")
        self.action = tuple(tuple(r) for r in rows)
        # computing the inverse doubles as the invertibility check
        self.inverse = tuple(
            tuple(r) for r in linalg.inverse(rows, RF_ZERO, RF_ONE)
        )
        self.convention = convention
        self.given = given if given is not None else self.action

    @classmethod
    def from_action(cls, rows):
        return cls(rows, "action")

    @classmethod
    def from_new_basis(cls, rows):
        """Build from the matrix whose columns are the new basis vectors."""
        rows = [[as_ratfunc(x) for x in row] for row in rows]
        g = linalg.inverse(rows, RF_ZERO, RF_ONE)
        return cls(g, "new-basis", given=tuple(tuple(r) for r in rows))

    @classmethod
    def from_json(cls, data, default_convention="action"):
        conv = data.get("convention", default_convention)
        if conv not in _CONVENTIONS:
            raise LieDegError(f"unknown witness convention {conv!r}")
        matrix = data.get("matrix")
        if not isinstance(matrix, list) or not matrix:
            raise LieDegError("witness JSON needs a non-empty 'matrix'")
        rows = [[parse_scalar(str(x)) for x in row] for row in matrix]
        if conv == "action":
            return cls.from_action(rows)
        return cls.from_new_basis(rows)

    def to_json(self):
        return {
            "convention": self.convention,
            "matrix": [[scalar_str(x) for x in row] for row in self.given],
        }

    @property
    def n(self):
        return len(self.action)

    @property
    def new_basis(self):
        """The new-basis matrix h = g^{-1} (columns: new basis vectors)."""
        return self.inverse

    def compose(self, other):
        """Witness acting as self after other (action matrices multiply)."""
        if self.n != other.n:
            raise LieDegError("witness dimensions differ")
        prod = linalg.mat_mul(
            [list(r) for r in self.action], [list(r) for r in other.action], RF_ZERO
        )
        return Witness(prod)

    def __repr__(self):
        rows = "; ".join(" ".join(scalar_str(x) for x in row) for row in self.given)
        return f"<Witness {self.convention} [{rows}]>"


def scaling_witness(n, exponent=-1):
    """The witness t^exponent * I_n in the action convention.

    With exponent -1 this is the universal contraction onto the abelian
    law: every transported constant picks up a factor t.
    """
    tk = RatFunc.t_power(exponent)
    return Witness.from_action(
        [[tk if i == j else RF_ZERO for j in range(n)] for i in range(n)]
    )


def transport(t, witness):
    """The transported law over k(t): act(g, mu) entrywise exactly."""
    if witness.n != t.n:
        raise LieDegError(f"witness is {witness.n}x{witness.n}, law has dimension {t.n}")
    return act(witness.action, t.to_ratfunc())


def limit_tensor(transported):
    """Entrywise limit at t = 0.

    Returns (tensor, None) when every entry has valuation >= 0, else
    (None, (i, j, r, valuation)) for the first offending entry
    (1-based indices).
    """
    n = transported.n
    entries = [[[GR_ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for r in range(n):
                v = transported.c[i][j][r]
                g = v.limit_at_zero()
                if g is None:
                    return None, (i + 1, j + 1, r + 1, v.valuation())
                entries[i][j][r] = g
    return StructureTensor(n, entries, GAUSS, transported.labels), None


@dataclass(frozen=True)
class ContractionResult:
    """Transported law, its limit (if any), and the minimal valuation."""

    transported: StructureTensor
    limit: StructureTensor | None
    min_valuation: object  # int, or +infinity for the zero tensor
    offending: tuple | None = None  # (i, j, r, valuation) when there is no limit


def contract(t, witness):
    """Transport a law and take the t -> 0 limit when it exists."""
    transported = transport(t, witness)
    vals = [
        v.valuation()
        for row in transported.c
        for col in row
        for v in col
        if not v.is_zero
    ]
    min_val = min(vals) if vals else math.inf
    limit, offending = limit_tensor(transported)
    return ContractionResult(transported, limit, min_val, offending)


def _gauss_rows(vectors, n):
    return [[as_gauss(x) for x in v] for v in vectors]


def iw_contract(t, subspace_basis):
    """One-parameter contraction onto a subalgebra.

    ``subspace_basis`` spans a subspace u which must be a subalgebra of
    the law (checked).  The witness is g = P + t^{-1}(I - P) where P
    projects onto u along the coordinate complement of the echelonized
    basis.  The limit always exists; in it, ker P is an abelian ideal
    and the bracket induced on u is the original one.
    """
    if t.ring.name != "gauss":
        raise LieDegError("contraction sources must be Gaussian-rational laws")
    n = t.n
    vecs = _gauss_rows(subspace_basis, n)
    if any(len(v) != n for v in vecs):
        raise LieDegError(f"subspace vectors must have length {n}")
    basis, pivots = linalg.row_basis(vecs, n, GR_ZERO)
    if len(basis) != len(vecs):
        raise LieDegError("subspace basis is not linearly independent")
    for a in basis:
        for b in basis:
            w = t.bracket(a, b)
            if not linalg.in_row_span(basis, pivots, w, GR_ZERO):
                raise LieDegError(
                    "span is not a subalgebra: a bracket of basis vectors leaves it"
                )
    k = len(basis)
    complement = [c for c in range(n) if c not in pivots]
    # columns of H: the subalgebra basis, then coordinate complement vectors
    cols = [list(v) for v in basis] + [
        [GR_ONE if r == c else GR_ZERO for r in range(n)] for c in complement
    ]
    H = [[cols[j][i] for j in range(n)] for i in range(n)]
    Hinv = linalg.inverse(H, GR_ZERO, GR_ONE)
    D = [[GR_ONE if (i == j and i < k) else GR_ZERO for j in range(n)] for i in range(n)]
    P = linalg.mat_mul(linalg.mat_mul(H, D, GR_ZERO), Hinv, GR_ZERO)
    tinv = RatFunc.t_power(-1)
    g = [
        [
            as_ratfunc(P[i][j]) + tinv * (as_ratfunc((GR_ONE if i == j else GR_ZERO) - P[i][j]))
            for j in range(n)
        ]
        for i in range(n)
    ]
    witness = Witness.from_action(g)
    result = contract(t, witness)
    if result.limit is None:
        raise LieDegError(
            "internal error: a subalgebra contraction produced no limit "
            f"(offending entry {result.offending})"
        )
    return witness, result


@dataclass(frozen=True)
class EndoContractionReport:
    """Outcome of the polynomial-endomorphism contraction check.

    ``in_valuation_ring`` says whether the transported law has all
    valuations >= 0.  When it does, the limit exists and the report
    certifies the short exact sequence 0 -> v -> limit -> u -> 0 with
    u = im(phi_0) a subalgebra of the source and v = ker(phi_0) an
    ideal of the limit (nilpotency of v is checked as well).
    """

    in_valuation_ring: bool
    offending: tuple | None
    limit: StructureTensor | None
    phi0: tuple | None
    image_basis: tuple
    kernel_basis: tuple
    image_is_subalgebra: bool
    kernel_is_ideal: bool
    induced_homomorphism_ok: bool
    kernel_nilpotent: bool

    @property
    def ok(self):
        return (
            self.in_valuation_ring
            and self.image_is_subalgebra
            and self.kernel_is_ideal
            and self.induced_homomorphism_ok
            and self.kernel_nilpotent
        )

    def sequence(self):
        """Dimensions (dim v, dim limit, dim u) of the exact sequence."""
        return len(self.kernel_basis), len(self.phi0 or ()), len(self.image_basis)


def check_endo_contraction(t, phi_rows):
    """Check a contraction given by phi with polynomial entries.

    ``phi`` must have entries in k[t] (no negative powers, no true
    denominators) and be invertible over k(t); it acts in the new-basis
    convention, i.e. the transported law is phi^{-1} mu(phi x, phi y).
    """
    if t.ring.name != "gauss":
        raise LieDegError("contraction sources must be Gaussian-rational laws")
    n = t.n
    rows = [[as_ratfunc(x) for x in row] for row in phi_rows]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise LieDegError(f"phi must be a {n}x{n} matrix")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v.den != L_ONE or (not v.is_zero and v.valuation() < 0):
                raise LieDegError(
                    f"phi[{i + 1}][{j + 1}] = {v} is not polynomial in t"
                )
    witness = Witness.from_new_basis(rows)  # raises SingularMatrixError if det = 0
    result = contract(t, witness)
    if result.limit is None:
        return EndoContractionReport(
            False, result.offending, None, None, (), (), False, False, False, False
        )
    limit = result.limit
    phi0 = [[as_gauss(v.limit_at_zero()) for v in row] for row in rows]
    image_vecs = [tuple(phi0[i][j] for i in range(n)) for j in range(n)]
    image, image_piv = linalg.row_basis(image_vecs, n, GR_ZERO)
    kernel = linalg.nullspace(phi0, n, GR_ZERO, GR_ONE)
    kernel_basis, kernel_piv = linalg.row_basis(kernel, n, GR_ZERO)

    image_is_subalgebra = all(
        linalg.in_row_span(image, image_piv, t.bracket(a, b), GR_ZERO)
        for a in image
        for b in image
    )

    basis_vecs = [tuple(GR_ONE if i == j else GR_ZERO for j in range(n)) for i in range(n)]
    kernel_is_ideal = all(
        linalg.in_row_span(kernel_basis, kernel_piv, limit.bracket(x, v), GR_ZERO)
        for x in basis_vecs
        for v in kernel_basis
    )

    # phi_0 is a homomorphism (limit, .) -> (source, .) onto its image
    hom_ok = True
    for i in range(n):
        for j in range(i + 1, n):
            lhs = linalg.mat_vec(phi0, limit.basis_bracket(i, j), GR_ZERO)
            rhs = t.bracket(image_vecs[i], image_vecs[j])
            if tuple(lhs) != tuple(rhs):
                hom_ok = False
                break
        if not hom_ok:
            break

    kernel_nilpotent = _is_nilpotent_subalgebra(limit, kernel_basis)

    return EndoContractionReport(
        True,
        None,
        limit,
        tuple(tuple(r) for r in phi0),
        tuple(image),
        tuple(kernel_basis),
        image_is_subalgebra,
        kernel_is_ideal,
        hom_ok,
        kernel_nilpotent,
    )


def _is_nilpotent_subalgebra(t, basis):
    """Lower central series of the subalgebra spanned by ``basis`` hits 0."""
    if not basis:
        return True
    cur = list(basis)
    prev_dim = len(cur)
    while True:
        vecs = [t.bracket(a, b) for a in basis for b in cur]
        cur, _ = linalg.row_basis(vecs, t.n, GR_ZERO)
        d = len(cur)
        if d == 0:
            return True
        if d == prev_dim:
            return False
        prev_dim = d


def induced_deformation(t, witness, order):
    """Expand a contraction into a truncated deformation of its limit.

    Returns the deformation with base law the limit and phi_k the t^k
    Taylor coefficients of the transported structure constants,
    k = 1..order.  Raises NoLimitError when some entry has negative
    valuation.
    """
    from .deformation import TruncatedDeformation

    if order < 0:
        raise LieDegError("deformation order must be >= 0")
    transported = transport(t, witness)
    n = transported.n
    coeff_tensors = []
    for k in range(order + 1):
        coeff_tensors.append([[[GR_ZERO] * n for _ in range(n)] for _ in range(n)])
    for i in range(n):
        for j in range(n):
            for r in range(n):
                v = transported.c[i][j][r]
                if v.is_zero:
                    continue
                if v.valuation() < 0:
                    raise NoLimitError((i + 1, j + 1, r + 1), v.valuation())
                for k, c in enumerate(v.taylor(order)):
                    coeff_tensors[k][i][j][r] = c
    base = StructureTensor(n, coeff_tensors[0], GAUSS, t.labels)
    phis = [StructureTensor(n, e, GAUSS, t.labels) for e in coeff_tensors[1:]]
    return TruncatedDeformation(base, phis)
