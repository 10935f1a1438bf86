"""Truncated formal deformations and cohomological rigidity certificates.

A deformation of a base law mu is the bracket

    [x, y]_t = mu(x, y) + sum_{k=1..N} phi_k(x, y) t^k

truncated at order N.  Being a Lie bracket modulo t^{N+1} is a finite
family of exact identities: the order-k Jacobi defect

    sum_{a+b=k} phi_a(phi_b(x, y), z) + cyclic   (phi_0 = mu)

must vanish for k = 1..N.  Vanishing at order 1 is exactly the
2-cocycle condition on phi_1 with adjoint coefficients.

Rigidity certificates: dim H^2(mu, mu) = 0 certifies that the law is
rigid; when H^2 is nonzero but dim H^3(mu, mu) = 0 every infinitesimal
deformation integrates (no obstructions); otherwise the toolkit reports
Unknown and draws no conclusion either way.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import GAUSS, StructureTensor, validate
from .errors import LieDegError
from .invariants import cohomology_dims
from .scalars import GR_ZERO

FORMALLY_RIGID_BY_H2 = "FormallyRigidByH2"
UNOBSTRUCTED_BY_H3 = "UnobstructedByH3"
UNKNOWN = "Unknown"


class TruncatedDeformation:
    """A base law plus antisymmetric perturbation tensors phi_1..phi_N."""

    __slots__ = ("base", "phis")

    def __init__(self, base, phis):
        if base.ring.name != "gauss":
            raise LieDegError("deformation base must be a Gaussian-rational law")
        report = validate(base)
        if not report:
            raise LieDegError(f"deformation base is not a Lie law: {report.describe()}")
        phis = tuple(phis)
        for k, phi in enumerate(phis, start=1):
            if not isinstance(phi, StructureTensor) or phi.n != base.n:
                raise LieDegError(f"phi_{k} must be an antisymmetric tensor of dimension {base.n}")
            if phi.ring.name != "gauss":
                raise LieDegError(f"phi_{k} must have Gaussian-rational entries")
        self.base = base
        self.phis = phis

    @property
    def order(self):
        return len(self.phis)

    def term(self, k):
        """phi_k with phi_0 = the base law; zero beyond the stored order."""
        if k == 0:
            return self.base
        if 1 <= k <= len(self.phis):
            return self.phis[k - 1]
        return None


@dataclass(frozen=True)
class CocycleReport:
    """Result of the 2-cocycle test, with a defect witness on failure."""

    ok: bool
    triple: tuple | None = None   # 1-based (i, j, k) where the identity fails
    defect: tuple | None = None   # the nonzero defect vector there

    def __bool__(self):
        return self.ok


def is_two_cocycle(base, phi):
    """Exact 2-cocycle test for phi with adjoint coefficients over ``base``.

    Evaluates, for every basis triple x < y < z,

        [x, phi(y,z)] - [y, phi(x,z)] + [z, phi(x,y)]
        - phi([x,y], z) + phi([x,z], y) - phi([y,z], x)

    and reports the first nonzero value.
    """
    if phi.n != base.n:
        raise LieDegError("cocycle candidate has the wrong dimension")
    n = base.n
    unit = _unit_vectors(n)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                d = _two_cocycle_defect(base, phi, unit, i, j, k)
                if any(d):
                    return CocycleReport(False, (i + 1, j + 1, k + 1), tuple(d))
    return CocycleReport(True)


def _unit_vectors(n):
    one = GAUSS.one
    return [tuple(one if p == q else GR_ZERO for q in range(n)) for p in range(n)]


def _two_cocycle_defect(base, phi, unit, i, j, k):
    x, y, z = unit[i], unit[j], unit[k]
    term = base.bracket(x, phi.basis_bracket(j, k))
    out = list(term)
    for s, v in enumerate(base.bracket(y, phi.basis_bracket(i, k))):
        out[s] = out[s] - v
    for s, v in enumerate(base.bracket(z, phi.basis_bracket(i, j))):
        out[s] = out[s] + v
    for s, v in enumerate(phi.bracket(base.basis_bracket(i, j), z)):
        out[s] = out[s] - v
    for s, v in enumerate(phi.bracket(base.basis_bracket(i, k), y)):
        out[s] = out[s] + v
    for s, v in enumerate(phi.bracket(base.basis_bracket(j, k), x)):
        out[s] = out[s] - v
    return out


def jacobi_defect(deformation, upto=None):
    """Per-order Jacobi defects of the truncated bracket.

    Returns a list indexed by order k = 1..upto (default: the stored
    order); each item maps a 1-based triple (i, j, l) to the nonzero
    defect vector there.  All maps empty <=> Jacobi holds mod t^{upto+1}.
    """
    n = deformation.base.n
    upto = deformation.order if upto is None else upto
    if upto < 1:
        return []
    terms = [deformation.term(k) for k in range(upto + 1)]
    defects = []
    for k in range(1, upto + 1):
        bad = {}
        for i in range(n):
            for j in range(i + 1, n):
                for l in range(j + 1, n):
                    total = [GR_ZERO] * n
                    for a in range(k + 1):
                        pa = terms[a]
                        pb = terms[k - a]
                        if pa is None or pb is None:
                            continue
                        for s, v in enumerate(pa.bracket(pb.basis_bracket(i, j), _unit(n, l))):
                            total[s] = total[s] + v
                        for s, v in enumerate(pa.bracket(pb.basis_bracket(j, l), _unit(n, i))):
                            total[s] = total[s] + v
                        for s, v in enumerate(pa.bracket(_neg(pb.basis_bracket(i, l)), _unit(n, j))):
                            total[s] = total[s] + v
                    if any(total):
                        bad[(i + 1, j + 1, l + 1)] = tuple(total)
        defects.append(bad)
    return defects


def _unit(n, p):
    return tuple(GAUSS.one if q == p else GR_ZERO for q in range(n))


def _neg(vec):
    return tuple(-v for v in vec)


def defects_vanish(defects):
    return all(not d for d in defects)


@dataclass(frozen=True)
class RigidityCertificate:
    """Cohomological rigidity verdict with the relevant dimensions."""

    verdict: str
    h2: int
    h3: int

    def to_dict(self):
        return {"verdict": self.verdict, "dim_H2_adjoint": self.h2, "dim_H3_adjoint": self.h3}


def rigidity(t):
    """Certify rigidity (H^2 = 0) or unobstructedness (H^3 = 0), else Unknown.

    A nonzero H^2 alone proves nothing: the vanishing criterion is
    sufficient, not necessary, so no non-rigidity is ever inferred.  The
    H^3 certificate is only issued in dimension >= 3, where the third
    cochain space is actually present; below that its vanishing is a
    dimension artifact and the verdict stays Unknown.
    """
    dims = cohomology_dims(t, "adjoint")
    h2 = dims[2] if t.n >= 2 else 0
    h3 = dims[3] if t.n >= 3 else 0
    if h2 == 0:
        return RigidityCertificate(FORMALLY_RIGID_BY_H2, h2, h3)
    if t.n >= 3 and h3 == 0:
        return RigidityCertificate(UNOBSTRUCTED_BY_H3, h2, h3)
    return RigidityCertificate(UNKNOWN, h2, h3)
