"""Command-line front end.

Subcommands: catalog, validate, invariants, contract, obstruct, verify,
hasse, deform, rigidity.  Algebra arguments are catalog names (possibly
parametrized, e.g. ``g5(1/2)``) or paths to .lie files; witnesses are
JSON files with a scalar-string matrix and a convention flag.

Exit codes: 0 success, 1 domain failure (invalid law, obstruction with
--expect consistent, failed verification, missing limit), 2 usage or
parse error.  Output is deterministic: no timestamps, stable ordering.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import degeneration, deformation
from .catalog import list_catalog, resolve
from .contraction import Witness, contract, induced_deformation
from .core import StructureTensor, act, tensor_from_json, tensor_to_json, validate
from .deformation import TruncatedDeformation, is_two_cocycle, jacobi_defect, rigidity
from .degeneration import build_hasse, hasse_dim2, hasse_dim3, obstruct, to_dot, verify
from .dsl import parse_algebra, print_algebra
from .errors import CatalogError, LieDegError, ParseError, VerificationError
from .invariants import profile
from .scalars import parse_scalar, scalar_str

_USAGE_ERRORS = (ParseError, CatalogError, json.JSONDecodeError)


def _max_dim():
    raw = os.environ.get("LIEDEG_MAX_DIM", "8")
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"LIEDEG_MAX_DIM must be an integer, got {raw!r}") from None


def _load_algebra(ref):
    """Catalog name or .lie file path -> (tensor, display name)."""
    if ref.endswith(".lie") or os.path.sep in ref or os.path.exists(ref):
        try:
            with open(ref, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {ref!r}: {exc}") from None
        tensor = parse_algebra(text)
        name = os.path.basename(ref)
    else:
        tensor, name = resolve(ref)
    cap = _max_dim()
    if tensor.n > cap:
        raise ParseError(
            f"dimension {tensor.n} exceeds LIEDEG_MAX_DIM={cap}"
        )
    return tensor, name


def _load_witness(path, default_convention):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from None
    witness = Witness.from_json(data, default_convention)
    post = None
    if "post_change" in data:
        pc = data["post_change"]
        conv = pc.get("convention", "action")
        rows = [[parse_scalar(str(x)).as_gauss() for x in row] for row in pc["matrix"]]
        if conv == "new-basis":
            from . import linalg
            from .scalars import GR_ONE, GR_ZERO

            rows = linalg.inverse(rows, GR_ZERO, GR_ONE)
        elif conv != "action":
            raise ParseError(f"unknown post_change convention {conv!r}")
        post = rows
    return witness, post


def _emit(text):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _emit_json(obj):
    _emit(json.dumps(obj, indent=2))


def cmd_catalog(args):
    rows = list_catalog()
    if args.format == "json":
        _emit_json(
            [
                {"alias": a, "name": d, "dim": dim, "params": params, "note": note}
                for a, d, dim, params, note in rows
            ]
        )
        return 0
    widths = [max(len(str(r[k])) for r in rows + [("alias", "name", "dim", "params", "")]) for k in range(4)]
    _emit(
        f"{'alias'.ljust(widths[0])}  {'name'.ljust(widths[1])}  "
        f"{'dim'.ljust(widths[2])}  {'params'.ljust(widths[3])}  note"
    )
    for a, d, dim, params, note in rows:
        _emit(
            f"{a.ljust(widths[0])}  {d.ljust(widths[1])}  "
            f"{str(dim).ljust(widths[2])}  {params.ljust(widths[3])}  {note}"
        )
    return 0


def cmd_validate(args):
    tensor, name = _load_algebra(args.algebra)
    report = validate(tensor)
    if args.format == "json":
        out = {"algebra": name, "ok": report.ok}
        if not report.ok:
            out["violation"] = report.describe()
        _emit_json(out)
    else:
        _emit(f"{name}: {report.describe()}")
    return 0 if report.ok else 1


def cmd_invariants(args):
    tensor, name = _load_algebra(args.algebra)
    report = validate(tensor)
    if not report.ok:
        raise LieDegError(f"{name} is not a Lie algebra law: {report.describe()}")
    p = profile(tensor)
    if args.format == "json":
        _emit_json({"algebra": name, **p.to_dict()})
        return 0
    _emit(f"invariants of {name}")
    for key, value in p.to_dict().items():
        _emit(f"  {key}: {value}")
    return 0


def cmd_contract(args):
    tensor, name = _load_algebra(args.algebra)
    witness, _ = _load_witness(args.witness, args.convention)
    result = contract(tensor, witness)
    transported = tensor_to_json(result.transported)
    if result.limit is None:
        i, j, r, v = result.offending
        if args.format == "json":
            _emit_json(
                {
                    "algebra": name,
                    "transported": transported,
                    "limit": None,
                    "offending": {"i": i, "j": j, "r": r, "valuation": v},
                }
            )
        else:
            _emit(f"transported {name}: {json.dumps(transported)}")
            _emit(f"no limit: entry c[{i}][{j}]^{r} has valuation {v}")
        return 1
    out = {
        "algebra": name,
        "transported": transported,
        "min_valuation": result.min_valuation if result.min_valuation != float("inf") else "inf",
        "limit": tensor_to_json(result.limit),
    }
    if args.format == "json":
        _emit_json(out)
    else:
        _emit(f"transported {name}: {json.dumps(transported)}")
        _emit(f"limit: {json.dumps(out['limit'])}")
        _emit(print_algebra(result.limit, f"limit_of_{name}").rstrip("\n"))
    return 0


def _check_expect(verdict_status, expect):
    if expect is None:
        return 0
    return 0 if verdict_status == expect else 1


def cmd_obstruct(args):
    lam, lname = _load_algebra(args.source)
    mu, mname = _load_algebra(args.target)
    verdict = obstruct(lam, mu)
    if args.format == "json":
        _emit_json({"source": lname, "target": mname, **verdict.to_dict()})
    else:
        _emit(f"{lname} -> {mname}: {verdict.describe()}")
    return _check_expect(verdict.status, args.expect)


def cmd_verify(args):
    lam, lname = _load_algebra(args.source)
    mu, mname = _load_algebra(args.target)
    witness, post = _load_witness(args.witness, args.convention)
    verdict = verify(lam, mu, witness, post)
    if args.format == "json":
        _emit_json({"source": lname, "target": mname, **verdict.to_dict()})
    else:
        _emit(f"{lname} -> {mname}: {verdict.describe()}")
    return _check_expect(verdict.status, args.expect)


def cmd_hasse(args):
    if args.catalog == "dim2":
        diagram = hasse_dim2()
    elif args.catalog == "dim3":
        diagram = hasse_dim3()
    else:
        raise ParseError(f"unknown diagram {args.catalog!r} (use dim2 or dim3)")
    if args.format == "dot" or args.dot:
        text = to_dot(diagram)
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(text)
            _emit(f"wrote {args.dot}")
        else:
            sys.stdout.write(text)
        return 0
    if args.format == "json":
        _emit_json(
            {
                "nodes": list(diagram.names),
                "edges": [{"src": e.src, "dst": e.dst} for e in diagram.edges],
                "closure": {n: sorted(diagram.closure[n]) for n in diagram.names},
            }
        )
        return 0
    for name in diagram.names:
        _emit(f"closure({name}) = {{{', '.join(sorted(diagram.closure[name]))}}}")
    return 0


def cmd_deform_check(args):
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {args.file!r}: {exc}") from None
    try:
        base = tensor_from_json(data["base"])
        phi_items = data.get("phis", [])
    except KeyError as exc:
        raise ParseError(f"deformation JSON needs a {exc} entry") from None
    phis = []
    for item in phi_items:
        payload = dict(item)
        payload.setdefault("dim", base.n)
        phis.append(tensor_from_json(payload))
    deform = TruncatedDeformation(base, phis)
    order = args.order if args.order is not None else deform.order
    defects = jacobi_defect(deform, order)
    cocycle = is_two_cocycle(base, deform.phis[0]) if deform.phis else None
    clean = all(not d for d in defects)
    out = {
        "order_checked": order,
        "jacobi_defects": [
            {f"({i},{j},{k})": [scalar_str(x) for x in vec] for (i, j, k), vec in d.items()}
            for d in defects
        ],
        "holds": clean,
    }
    if cocycle is not None:
        out["phi1_is_two_cocycle"] = cocycle.ok
    if args.format == "json":
        _emit_json(out)
    else:
        _emit(f"Jacobi holds through order {order}: {clean}")
        if cocycle is not None:
            _emit(f"phi_1 is a 2-cocycle: {cocycle.ok}")
        for k, d in enumerate(defects, start=1):
            if d:
                trip, vec = next(iter(d.items()))
                _emit(f"  first defect at order {k}, triple {trip}: {[scalar_str(x) for x in vec]}")
    return 0 if clean else 1


def cmd_rigidity(args):
    tensor, name = _load_algebra(args.algebra)
    cert = rigidity(tensor)
    if args.format == "json":
        _emit_json({"algebra": name, **cert.to_dict()})
    else:
        _emit(f"{name}: {cert.verdict} (dim H^2 = {cert.h2}, dim H^3 = {cert.h3})")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="liedeg",
        description="Exact contractions, degenerations and rigidity of Lie algebra laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, choices=("table", "json")):
        p.add_argument("--format", choices=choices, default=choices[0])

    p = sub.add_parser("catalog", help="list the built-in algebras")
    add_format(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("validate", help="check antisymmetry and the Jacobi identity")
    p.add_argument("algebra")
    add_format(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="print the invariant profile")
    p.add_argument("algebra")
    add_format(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("contract", help="transport by a witness and take the t->0 limit")
    p.add_argument("--algebra", required=True)
    p.add_argument("--witness", required=True, metavar="FILE")
    p.add_argument("--convention", choices=("action", "new-basis"), default="action")
    add_format(p)
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("obstruct", help="run the invariant inequality battery")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--expect", choices=("consistent", "obstructed"))
    add_format(p)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("verify", help="certify a degeneration by a witness")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--witness", required=True, metavar="FILE")
    p.add_argument("--convention", choices=("action", "new-basis"), default="action")
    p.add_argument("--expect", choices=("verified",))
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hasse", help="build a stored degeneration diagram")
    p.add_argument("--catalog", required=True, choices=("dim2", "dim3"))
    p.add_argument("--dot", metavar="FILE", help="write DOT to a file")
    add_format(p, choices=("table", "json", "dot"))
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("deform", help="deformation checks")
    dsub = p.add_subparsers(dest="deform_command", required=True)
    pc = dsub.add_parser("check", help="order-by-order Jacobi defect of a truncated deformation")
    pc.add_argument("file")
    pc.add_argument("--order", type=int)
    add_format(pc)
    pc.set_defaults(func=cmd_deform_check)

    p = sub.add_parser("rigidity", help="cohomological rigidity certificate")
    p.add_argument("algebra")
    add_format(p)
    p.set_defaults(func=cmd_rigidity)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LieDegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
