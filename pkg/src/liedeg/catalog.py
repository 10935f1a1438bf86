"""Built-in catalog of low-dimensional complex Lie algebras.

Every entry follows the classical classification bases: the Heisenberg
algebra n3 with [e1,e2] = e3, the solvable families r2, r3, r_{3,a},
the simple algebra sl2 in the basis [e1,e2] = e3, [e1,e3] = -2e1,
[e2,e3] = 2e2, and the four-dimensional families g4(a,b) and g5(a)
spanning the solvable components, plus the direct sums sl2+C, r2+r2
and h3+C^k.

Names are ASCII aliases suitable for a command line ("r3_m1" for
r_{3,-1}, "r2+C" for r2 (+) C).  Parametrized entries take exact
Gaussian-rational parameters; families are sampled at concrete values,
never kept symbolic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GAUSS, StructureTensor, direct_sum, validate
from .errors import CatalogError, ParseError
from .scalars import GR_ONE, GaussRat, as_gauss, parse_scalar, scalar_str


@dataclass(frozen=True)
class CatalogEntry:
    """A named construction recipe for a catalog algebra."""

    name: str            # ASCII alias, e.g. "r3_m1"
    display: str         # mathematical name, e.g. "r_{3,-1}(C)"
    dim: int | None      # None when the dimension depends on parameters
    params: tuple = ()   # (param_name, kind) with kind "scalar" | "int"
    builder: object = None
    note: str = ""
    family: str | None = None  # set on sampled members of a parametric family

    def build(self, *args):
        if len(args) != len(self.params):
            names = ", ".join(p for p, _ in self.params) or "none"
            raise CatalogError(
                f"catalog entry {self.name!r} takes {len(self.params)} parameter(s) ({names}), "
                f"got {len(args)}"
            )
        coerced = []
        for (pname, kind), value in zip(self.params, args):
            if kind == "int":
                if isinstance(value, GaussRat):
                    if value.im or value.re.denominator != 1:
                        raise CatalogError(f"parameter {pname} of {self.name!r} must be an integer")
                    value = int(value.re)
                if not isinstance(value, int):
                    raise CatalogError(f"parameter {pname} of {self.name!r} must be an integer")
                coerced.append(value)
            else:
                try:
                    coerced.append(as_gauss(value))
                except Exception:
                    raise CatalogError(
                        f"parameter {pname} of {self.name!r} must be a Gaussian rational"
                    ) from None
        tensor = self.builder(*coerced)
        report = validate(tensor)
        if not report:
            raise CatalogError(f"catalog entry {self.name!r} built an invalid law: {report.describe()}")
        return tensor


def _bk(n, brackets):
    return StructureTensor.from_brackets(n, brackets, GAUSS)


def _abelian(n):
    if n < 1:
        raise CatalogError("abelian dimension must be >= 1")
    return StructureTensor.abelian(n)


def _r2():
    return _bk(2, {(1, 2): {2: 1}})


def _n3():
    return _bk(3, {(1, 2): {3: 1}})


def _r2_plus_C():
    return _bk(3, {(1, 2): {2: 1}})


def _r3():
    return _bk(3, {(1, 2): {2: 1}, (1, 3): {2: 1, 3: 1}})


def _r3_alpha(alpha):
    return _bk(3, {(1, 2): {2: 1}, (1, 3): {3: alpha}})


def _sl2():
    return _bk(3, {(1, 2): {3: 1}, (1, 3): {1: -2}, (2, 3): {2: 2}})


def _g4(alpha, beta):
    return _bk(4, {(1, 2): {2: 1}, (1, 3): {2: 1, 3: alpha}, (1, 4): {3: 1, 4: beta}})


def _g5(alpha):
    return _bk(
        4,
        {
            (1, 2): {2: 1},
            (1, 3): {2: 1, 3: alpha},
            (1, 4): {4: alpha + GR_ONE},
            (2, 3): {4: 1},
        },
    )


def _sl2_plus_C():
    return direct_sum(_sl2(), _abelian(1))


def _r2_plus_r2():
    return direct_sum(_r2(), _r2())


def _heis(n):
    if n < 3:
        raise CatalogError("heis(n) needs n >= 3")
    if n == 3:
        return _n3()
    return direct_sum(_n3(), _abelian(n - 3))


CATALOG = {}


def _register(entry):
    CATALOG[entry.name] = entry


_register(CatalogEntry("C2", "C^2", 2, (), lambda: _abelian(2), note="abelian plane"))
_register(CatalogEntry("C3", "C^3", 3, (), lambda: _abelian(3), note="abelian"))
_register(CatalogEntry("C4", "C^4", 4, (), lambda: _abelian(4), note="abelian"))
_register(
    CatalogEntry(
        "abelian", "C^n", None, (("n", "int"),), _abelian, note="abelian algebra of dimension n"
    )
)
_register(CatalogEntry("r2", "r_2(C)", 2, (), _r2, note="[e1,e2]=e2"))
_register(CatalogEntry("n3", "n_3(C)", 3, (), _n3, note="Heisenberg, [e1,e2]=e3"))
_register(CatalogEntry("h3", "h_3(C)", 3, (), _n3, note="alias of n3"))
_register(CatalogEntry("r2+C", "r_2(C)+C", 3, (), _r2_plus_C, note="[e1,e2]=e2"))
_register(
    CatalogEntry("r3", "r_3(C)", 3, (), _r3, note="[e1,e2]=e2, [e1,e3]=e2+e3")
)
_register(
    CatalogEntry(
        "r3a",
        "r_{3,a}(C)",
        3,
        (("alpha", "scalar"),),
        _r3_alpha,
        note="[e1,e2]=e2, [e1,e3]=a e3",
        family="r3a",
    )
)
_register(
    CatalogEntry("r3_1", "r_{3,1}(C)", 3, (), lambda: _r3_alpha(GR_ONE), note="a = 1")
)
_register(
    CatalogEntry("r3_m1", "r_{3,-1}(C)", 3, (), lambda: _r3_alpha(GaussRat(-1)), note="a = -1")
)
_register(
    CatalogEntry(
        "sl2", "sl_2(C)", 3, (), _sl2, note="[e1,e2]=e3, [e1,e3]=-2e1, [e2,e3]=2e2"
    )
)
_register(
    CatalogEntry(
        "g4",
        "g_4(a,b)(C)",
        4,
        (("alpha", "scalar"), ("beta", "scalar")),
        _g4,
        note="[e1,e2]=e2, [e1,e3]=e2+a e3, [e1,e4]=e3+b e4",
        family="g4",
    )
)
_register(
    CatalogEntry(
        "g5",
        "g_5(a)(C)",
        4,
        (("alpha", "scalar"),),
        _g5,
        note="[e1,e2]=e2, [e1,e3]=e2+a e3, [e1,e4]=(a+1)e4, [e2,e3]=e4",
        family="g5",
    )
)
_register(CatalogEntry("sl2+C", "sl_2(C)+C", 4, (), _sl2_plus_C, note="rigid in dim 4"))
_register(CatalogEntry("r2+r2", "r_2(C)+r_2(C)", 4, (), _r2_plus_r2, note="rigid in dim 4"))
_register(CatalogEntry("h3+C", "h_3(C)+C", 4, (), lambda: _heis(4), note="Heisenberg plus center"))
_register(
    CatalogEntry(
        "heis",
        "h_3(C)+C^(n-3)",
        None,
        (("n", "int"),),
        _heis,
        note="Heisenberg plus an abelian complement",
    )
)


def catalog(name, *args):
    """Build a validated catalog algebra by alias name and parameters."""
    entry = CATALOG.get(name)
    if entry is None:
        known = ", ".join(sorted(CATALOG))
        raise CatalogError(f"unknown catalog algebra {name!r} (known: {known})")
    return entry.build(*args)


def canonical_name(name, args=()):
    """ASCII node name for a (possibly parametrized) catalog algebra."""
    if not args:
        return name
    rendered = ",".join(scalar_str(a) for a in args)
    return f"{name}({rendered})"


def resolve(text):
    """Parse "name" or "name(arg, ...)" into (tensor, canonical name).

    Arguments use the scalar syntax; integer parameters must be bare
    integers.
    """
    text = text.strip()
    if "(" in text:
        if not text.endswith(")"):
            raise CatalogError(f"malformed catalog reference {text!r}")
        name, _, rest = text.partition("(")
        name = name.strip()
        arg_text = rest[:-1]
        raw_args = [a for a in arg_text.split(",")] if arg_text.strip() else []
        args = []
        for a in raw_args:
            try:
                args.append(parse_scalar(a).as_gauss())
            except ParseError as exc:
                raise CatalogError(f"bad parameter {a.strip()!r} in {text!r}: {exc}") from None
    else:
        name, args = text, []
    tensor = catalog(name, *args)
    return tensor, canonical_name(name, args)


def list_catalog():
    """Rows (alias, display, dim, parameter names, note) in registry order."""
    rows = []
    for entry in CATALOG.values():
        rows.append(
            (
                entry.name,
                entry.display,
                entry.dim if entry.dim is not None else "-",
                ",".join(p for p, _ in entry.params),
                entry.note,
            )
        )
    return rows
