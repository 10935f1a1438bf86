"""Degeneration checks: obstruction battery, witness verification, Hasse diagrams.

Membership of a law mu in the orbit closure of lambda is decided only
positively (an explicit witness whose t -> 0 limit is mu) or negatively
(a violated invariant inequality).  Pairs that pass every implemented
inequality but have no stored witness stay "consistent": the toolkit
never claims closure membership it cannot certify.

The inequality battery along a non-trivial degeneration lambda -> mu:

    dim lambda^i   >= dim mu^i          (lower central series)
    dim lambda^(i) >= dim mu^(i)        (derived series)
    dim Z(lambda)  <= dim Z(mu)
    dim H^i(lambda)        <= dim H^i(mu)          (trivial coefficients)
    dim H^i(lambda,lambda) <= dim H^i(mu,mu)       (adjoint coefficients)
    dim O(lambda)  >  dim O(mu)         (strict)
    dim Der lambda <  dim Der mu        (strict)

The strict pair is skipped when the two profiles coincide: identical
profiles are compatible with a trivial degeneration (an isomorphism),
which the battery cannot and does not exclude.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import catalog
from .contraction import Witness, contract, scaling_witness
from .core import act, validate
from .errors import LieDegError, VerificationError
from .invariants import profile
from .scalars import as_gauss, parse_scalar, scalar_str

OBSTRUCTED = "obstructed"
CONSISTENT = "consistent"
VERIFIED = "verified"


@dataclass(frozen=True)
class DegenerationVerdict:
    """Outcome of a degeneration question for an ordered pair (lambda, mu)."""

    status: str
    inequality: str | None = None  # violated inequality name when obstructed
    lhs: object | None = None
    rhs: object | None = None
    note: str = ""
    witness: object | None = None
    post_change: object | None = None

    def __bool__(self):
        return self.status != OBSTRUCTED

    def describe(self):
        if self.status == OBSTRUCTED:
            return f"obstructed: {self.inequality} fails ({self.lhs} vs {self.rhs})"
        if self.status == VERIFIED:
            return "verified by witness"
        return f"consistent{f' ({self.note})' if self.note else ''}"

    def to_dict(self):
        out = {"status": self.status}
        if self.status == OBSTRUCTED:
            out["inequality"] = self.inequality
            out["lhs"] = self.lhs
            out["rhs"] = self.rhs
        if self.note:
            out["note"] = self.note
        return out


def _padded(seq, length):
    return list(seq) + [seq[-1]] * (length - len(seq))


def obstruct(lam, mu):
    """Run the invariant inequality battery on the ordered pair (lam, mu).

    Returns an obstructed verdict naming the first violated inequality,
    or a consistent one.  Profiles that coincide are reported consistent
    with a note, since a trivial degeneration is never excluded.
    """
    if lam.n != mu.n:
        raise LieDegError(f"dimension mismatch: {lam.n} vs {mu.n}")
    pl = profile(lam)
    pm = profile(mu)
    if pl == pm:
        return DegenerationVerdict(CONSISTENT, note="profiles identical")

    length = max(len(pl.lower_central_dims), len(pm.lower_central_dims))
    for i, (a, b) in enumerate(zip(_padded(pl.lower_central_dims, length), _padded(pm.lower_central_dims, length))):
        if a < b:
            return DegenerationVerdict(OBSTRUCTED, f"lower_central_dims[{i}]", a, b)
    length = max(len(pl.derived_dims), len(pm.derived_dims))
    for i, (a, b) in enumerate(zip(_padded(pl.derived_dims, length), _padded(pm.derived_dims, length))):
        if a < b:
            return DegenerationVerdict(OBSTRUCTED, f"derived_dims[{i}]", a, b)
    if pl.center_dim > pm.center_dim:
        return DegenerationVerdict(OBSTRUCTED, "center_dim", pl.center_dim, pm.center_dim)
    for i, (a, b) in enumerate(zip(pl.betti_trivial, pm.betti_trivial)):
        if a > b:
            return DegenerationVerdict(OBSTRUCTED, f"betti_trivial[{i}]", a, b)
    for i, (a, b) in enumerate(zip(pl.betti_adjoint, pm.betti_adjoint)):
        if a > b:
            return DegenerationVerdict(OBSTRUCTED, f"betti_adjoint[{i}]", a, b)
    if pl.orbit_dim <= pm.orbit_dim:
        return DegenerationVerdict(OBSTRUCTED, "orbit_dim", pl.orbit_dim, pm.orbit_dim)
    if pl.der_dim >= pm.der_dim:
        return DegenerationVerdict(OBSTRUCTED, "der_dim", pl.der_dim, pm.der_dim)
    return DegenerationVerdict(CONSISTENT)


def verify(lam, mu, witness, post_change=None):
    """Certify lam -> mu by an explicit witness, exactly.

    Transports lam by the witness, takes the t -> 0 limit, applies the
    optional constant basis change (action convention), and compares
    with mu entrywise.  Raises VerificationError when the limit does
    not exist or differs from mu.
    """
    if lam.n != mu.n:
        raise LieDegError(f"dimension mismatch: {lam.n} vs {mu.n}")
    result = contract(lam, witness)
    if result.limit is None:
        i, j, r, v = result.offending
        raise VerificationError(
            f"witness transport has no limit: entry c[{i}][{j}]^{r} has valuation {v}"
        )
    lim = result.limit
    if post_change is not None:
        lim = act(post_change, lim)
    if lim != mu:
        for i in range(mu.n):
            for j in range(i + 1, mu.n):
                for r in range(mu.n):
                    if lim.c[i][j][r] != mu.c[i][j][r]:
                        raise VerificationError(
                            f"limit differs from target at c[{i + 1}][{j + 1}]^{r + 1}: "
                            f"{scalar_str(lim.c[i][j][r])} vs {scalar_str(mu.c[i][j][r])}"
                        )
        raise VerificationError("limit differs from target")
    return DegenerationVerdict(VERIFIED, witness=witness, post_change=post_change)


@dataclass(frozen=True)
class HasseEdge:
    src: str
    dst: str
    witness: Witness
    post_change: tuple | None = None


@dataclass(frozen=True)
class HasseDiagram:
    """Verified essential degenerations plus their transitive closure."""

    names: tuple
    tensors: dict
    edges: tuple
    closure: dict          # name -> frozenset of reachable names (incl. itself)
    annotations: dict = field(default_factory=dict)

    def closure_of(self, name):
        return self.closure[name]


def build_hasse(nodes, witnessed_edges, annotations=None):
    """Verify every edge, close transitively, and certify the partial order.

    ``nodes``: iterable of (name, tensor); ``witnessed_edges``: iterable
    of (src, dst, witness, optional post_change).  Every edge must pass
    :func:`verify`; the orbit dimension must strictly drop along it
    (antisymmetry certificate); and no closure pair may be obstructed
    (a hard internal-consistency error).
    """
    names = []
    tensors = {}
    for name, tensor in nodes:
        if name in tensors:
            raise LieDegError(f"duplicate node name {name!r}")
        names.append(name)
        tensors[name] = tensor

    edges = []
    adjacency = {name: [] for name in names}
    for item in witnessed_edges:
        src, dst, witness = item[0], item[1], item[2]
        post_change = item[3] if len(item) > 3 else None
        if src not in tensors or dst not in tensors:
            raise LieDegError(f"edge {src} -> {dst} references an unknown node")
        verify(tensors[src], tensors[dst], witness, post_change)
        if profile(tensors[src]).orbit_dim <= profile(tensors[dst]).orbit_dim:
            raise LieDegError(
                f"antisymmetry certificate fails on {src} -> {dst}: orbit dimension does not drop"
            )
        edges.append(HasseEdge(src, dst, witness, post_change))
        adjacency[src].append(dst)

    closure = {}
    for name in names:
        seen = {name}
        stack = [name]
        while stack:
            cur = stack.pop()
            for nxt in adjacency[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        closure[name] = frozenset(seen)

    for src in names:
        for dst in closure[src]:
            if dst == src:
                continue
            verdict = obstruct(tensors[src], tensors[dst])
            if verdict.status == OBSTRUCTED:
                raise LieDegError(
                    f"internal inconsistency: closure edge {src} -> {dst} is obstructed "
                    f"({verdict.describe()})"
                )

    return HasseDiagram(
        tuple(names), tensors, tuple(edges), closure, dict(annotations or {})
    )


def to_dot(diagram):
    """Deterministic DOT rendering: nodes in order, essential edges solid.

    Closure-only edges are omitted.  Output is byte-stable across runs.
    """
    if not diagram.names:
        return "digraph { }\n"
    lines = ["digraph {"]
    for name in diagram.names:
        note = diagram.annotations.get(name)
        if note:
            lines.append(f'  "{name}" [label="{name}\\n{note}"];')
        else:
            lines.append(f'  "{name}";')
    for edge in diagram.edges:
        lines.append(f'  "{edge.src}" -> "{edge.dst}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Stored witnesses for the low-dimensional diagrams
# ---------------------------------------------------------------------------
#
# Matrices are in the new-basis convention: columns are the new basis
# vectors in old coordinates.  Limits were computed symbolically and are
# re-verified (exactly) every time the diagram is built.

_DIM2_NODES = ("r2", "C2")
_DIM2_EDGES = (
    ("r2", "C2", [["t", "0"], ["0", "t"]], None),
)

_DIM3_NODES = ("sl2", "r3a(2)", "r3_m1", "r3", "r2+C", "n3", "r3_1", "C3")
_DIM3_ANNOTATIONS = {"r3a(2)": "family r3a, sampled alpha=2"}

def family_witness_to_n3(alpha):
    """Witness for r3a(alpha) -> n3, valid for every alpha with alpha != 1.

    New basis (t e1, e2 + e3, t(e2 + alpha e3)): the first bracket
    becomes [E1,E2] = E3 on the nose, the others acquire a factor t.
    At alpha = 0 this is the r2+C -> n3 witness.
    """
    from .scalars import RF_ONE, RF_T, RF_ZERO, as_ratfunc

    a = as_ratfunc(as_gauss(alpha))
    rows = [
        [RF_T, RF_ZERO, RF_ZERO],
        [RF_ZERO, RF_ONE, RF_T],
        [RF_ZERO, RF_ONE, a * RF_T],
    ]
    return Witness.from_new_basis(rows)


_DIM3_EDGES = (
    # new basis (e3/2, t e1, t e2): [E1,E2]=E2, [E1,E3]=-E3, [E2,E3]=2t^2 E1 -> r3_m1
    ("sl2", "r3_m1", [["0", "t", "0"], ["0", "0", "t"], ["1/2", "0", "0"]], None),
    ("r3a(2)", "n3", "family:2", None),
    ("r3_m1", "n3", "family:-1", None),
    # new basis (t e1, e3, t(e2 + e3)): [E1,E2]=E3, rest -> 0
    ("r3", "n3", [["t", "0", "0"], ["0", "0", "t"], ["0", "1", "t"]], None),
    # rescaling e3 by t contracts the off-diagonal Jordan term
    ("r3", "r3_1", [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "t"]], None),
    ("r2+C", "n3", "family:0", None),
    ("r2+C", "C3", [["t", "0", "0"], ["0", "t", "0"], ["0", "0", "t"]], None),
    ("n3", "C3", [["t", "0", "0"], ["0", "t", "0"], ["0", "0", "t"]], None),
    ("r3_1", "C3", [["t", "0", "0"], ["0", "t", "0"], ["0", "0", "t"]], None),
)


def _node_tensor(name):
    from .catalog import resolve

    return resolve(name)[0]


def _build_edge(src, dst, rows, post):
    if isinstance(rows, str) and rows.startswith("family:"):
        witness = family_witness_to_n3(parse_scalar(rows.split(":", 1)[1]).as_gauss())
    else:
        witness = Witness.from_new_basis([[parse_scalar(x) for x in row] for row in rows])
    post_change = None
    if post is not None:
        post_change = [[parse_scalar(x).as_gauss() for x in row] for row in post]
    return (src, dst, witness, post_change)


def stored_edges(which):
    """The stored witnessed edge list for "dim2" or "dim3"."""
    table = {"dim2": _DIM2_EDGES, "dim3": _DIM3_EDGES}.get(which)
    if table is None:
        raise LieDegError(f"no stored diagram named {which!r} (use dim2 or dim3)")
    return [_build_edge(*item) for item in table]


def stored_nodes(which):
    table = {"dim2": _DIM2_NODES, "dim3": _DIM3_NODES}.get(which)
    if table is None:
        raise LieDegError(f"no stored diagram named {which!r} (use dim2 or dim3)")
    return [(name, _node_tensor(name)) for name in table]


def hasse_dim2():
    """The two-node diagram: the only degeneration is r2 -> C2."""
    return build_hasse(stored_nodes("dim2"), stored_edges("dim2"))


def hasse_dim3():
    """All essential degenerations between three-dimensional laws.

    The alpha-family is represented by the sampled member r3a(2); its
    witness works verbatim for every alpha with alpha^2 != 1.
    """
    return build_hasse(
        stored_nodes("dim3"), stored_edges("dim3"), annotations=_DIM3_ANNOTATIONS
    )
