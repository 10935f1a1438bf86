"""Textual format for Lie algebra laws (.lie files).

Grammar (one declaration per line, '#' comments allowed):

    file    := header line*
    header  := "algebra" NAME "dim" INT ("with" NAME "=" scalar ("," NAME "=" scalar)*)?
    line    := "[" BASIS "," BASIS "]" "=" sum
    sum     := ("+"|"-")? term (("+"|"-") term)*
    term    := scalar? BASIS

Basis names are e1..eN.  Only i < j brackets are accepted; the mirror
entries follow by antisymmetry, and a pair may appear at most once.
Scalars use the shared scalar syntax; parameters introduced by "with"
may appear in coefficients and are substituted during parsing, so a
source is fully bound by the time it elaborates.

Example:

    algebra g5 dim 4 with alpha = 1/2
    [e1,e2] = e2
    [e1,e3] = e2 + 1/2 e3
    [e1,e4] = 3/2 e4
    [e2,e3] = e4
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import GAUSS, StructureTensor, validate
from .errors import JacobiError, LieDegError, ParseError
from .scalars import (
    GR_ONE,
    GaussRat,
    RatFunc,
    ScalarParser,
    as_gauss,
    scalar_str,
    tokenize,
)


@dataclass(frozen=True)
class AlgebraSource:
    """A parsed algebra file: name, dimension, brackets, bound parameters."""

    name: str
    dim: int
    basis: tuple
    brackets: tuple  # ((i, j, ((coeff RatFunc, basis_index 1-based), ...)), ...)
    bindings: dict


def _err(message, tok):
    if tok is None:
        raise ParseError(message)
    raise ParseError(message, tok.line, tok.col)


def _expect(toks, pos, kind, text=None, what=None):
    if pos >= len(toks):
        raise ParseError(f"expected {what or text or kind}, found end of line")
    tok = toks[pos]
    if tok.kind != kind or (text is not None and tok.text != text):
        _err(f"expected {what or text or kind}, found {tok.text!r}", tok)
    return tok, pos + 1


def parse(text):
    """Parse an algebra source; raises ParseError with line/column info."""
    lines = text.split("\n")
    header = None
    brackets = []
    seen_pairs = {}
    bindings = {}
    dim = 0
    basis = ()
    basis_index = {}
    name = None
    for lineno, raw in enumerate(lines, start=1):
        toks = tokenize(raw, first_line=lineno)
        if not toks:
            continue
        if header is None:
            name, dim, bindings = _parse_header(toks)
            basis = tuple(f"e{k}" for k in range(1, dim + 1))
            basis_index = {b: k + 1 for k, b in enumerate(basis)}
            header = True
            continue
        i, j, terms = _parse_bracket_line(toks, basis_index, bindings)
        if (i, j) in seen_pairs:
            _err(f"duplicate bracket for pair (e{i}, e{j})", toks[0])
        seen_pairs[(i, j)] = True
        brackets.append((i, j, terms))
    if header is None:
        raise ParseError("empty source: expected an 'algebra' header")
    return AlgebraSource(name, dim, basis, tuple(brackets), bindings)


def _parse_header(toks):
    tok, pos = _expect(toks, 0, "ident", what="'algebra'")
    if tok.text != "algebra":
        _err(f"expected 'algebra', found {tok.text!r}", tok)
    name_tok, pos = _expect(toks, pos, "ident", what="an algebra name")
    dim_kw, pos = _expect(toks, pos, "ident", what="'dim'")
    if dim_kw.text != "dim":
        _err(f"expected 'dim', found {dim_kw.text!r}", dim_kw)
    dim_tok, pos = _expect(toks, pos, "int", what="the dimension")
    dim = int(dim_tok.text)
    if dim < 1:
        _err("dimension must be at least 1", dim_tok)
    bindings = {}
    if pos < len(toks):
        with_tok, pos = _expect(toks, pos, "ident", what="'with'")
        if with_tok.text != "with":
            _err(f"expected 'with', found {with_tok.text!r}", with_tok)
        while True:
            pname_tok, pos = _expect(toks, pos, "ident", what="a parameter name")
            if pname_tok.text in ("i", "t"):
                _err(f"parameter name {pname_tok.text!r} is reserved", pname_tok)
            _, pos = _expect(toks, pos, "sym", "=", what="'='")
            start = pos
            depth = 0
            while pos < len(toks):
                tk = toks[pos]
                if tk.kind == "sym" and tk.text == "(":
                    depth += 1
                elif tk.kind == "sym" and tk.text == ")":
                    depth -= 1
                elif tk.kind == "sym" and tk.text == "," and depth == 0:
                    break
                pos += 1
            value = _parse_scalar_tokens(toks[start:pos], bindings, toks[start - 1])
            bindings[pname_tok.text] = value
            if pos >= len(toks):
                break
            _, pos = _expect(toks, pos, "sym", ",", what="','")
    return name_tok.text, dim, bindings


def _parse_scalar_tokens(toks, params, anchor):
    if not toks:
        _err("expected a scalar expression", anchor)
    parser = ScalarParser(list(toks), params)
    value = parser.parse_expr()
    parser.expect_end()
    return value


def _parse_bracket_line(toks, basis_index, bindings):
    _, pos = _expect(toks, 0, "sym", "[", what="'['")
    a_tok, pos = _expect(toks, pos, "ident", what="a basis name")
    _, pos = _expect(toks, pos, "sym", ",", what="','")
    b_tok, pos = _expect(toks, pos, "ident", what="a basis name")
    _, pos = _expect(toks, pos, "sym", "]", what="']'")
    _, pos = _expect(toks, pos, "sym", "=", what="'='")
    i = basis_index.get(a_tok.text)
    if i is None:
        _err(f"unknown basis symbol {a_tok.text!r}", a_tok)
    j = basis_index.get(b_tok.text)
    if j is None:
        _err(f"unknown basis symbol {b_tok.text!r}", b_tok)
    if i >= j:
        _err(
            f"brackets must use increasing basis indices; write [e{min(i,j)},e{max(i,j)}]",
            a_tok,
        )
    rhs = toks[pos:]
    if not rhs:
        _err("expected a bracket value", toks[-1])
    terms = []
    for sign, chunk in _split_terms(rhs):
        if not chunk:
            _err("empty term in bracket value", rhs[0])
        last = chunk[-1]
        if last.kind != "ident" or last.text not in basis_index:
            _err(f"expected a basis name at the end of a term, found {last.text!r}", last)
        target = basis_index[last.text]
        coeff_toks = list(chunk[:-1])
        if coeff_toks and coeff_toks[-1].kind == "sym" and coeff_toks[-1].text == "*":
            coeff_toks = coeff_toks[:-1]
        if coeff_toks:
            coeff = _parse_scalar_tokens(coeff_toks, bindings, chunk[0])
        else:
            coeff = RatFunc.from_gauss(GR_ONE)
        if sign < 0:
            coeff = -coeff
        terms.append((coeff, target))
    return i, j, tuple(terms)


def _split_terms(toks):
    """Split a token run at top-level +/- into (sign, tokens) chunks."""
    chunks = []
    sign = 1
    cur = []
    depth = 0
    start = 0
    if toks and toks[0].kind == "sym" and toks[0].text in "+-":
        sign = -1 if toks[0].text == "-" else 1
        start = 1
    for tok in toks[start:]:
        if tok.kind == "sym" and tok.text == "(":
            depth += 1
        elif tok.kind == "sym" and tok.text == ")":
            depth -= 1
        if depth == 0 and tok.kind == "sym" and tok.text in "+-" and cur:
            chunks.append((sign, cur))
            sign = -1 if tok.text == "-" else 1
            cur = []
        else:
            cur.append(tok)
    chunks.append((sign, cur))
    return chunks


def elaborate(source):
    """Turn a parsed source into a validated Gaussian-rational law.

    Coefficients must be t-free; the antisymmetric completion is filled
    in and the Jacobi identity checked, raising JacobiError naming the
    first violated component.
    """
    bracket_map = {}
    for i, j, terms in source.brackets:
        coeffs = {}
        for coeff, target in terms:
            if not coeff.is_constant:
                raise LieDegError(
                    f"coefficient {coeff} in [e{i},e{j}] depends on t; "
                    "algebra files take constant coefficients"
                )
            g = coeff.as_gauss()
            acc = coeffs.get(target, None)
            coeffs[target] = g if acc is None else acc + g
        bracket_map[(i, j)] = {r: v for r, v in coeffs.items() if v}
    tensor = StructureTensor.from_brackets(source.dim, bracket_map, GAUSS, source.basis)
    report = validate(tensor)
    if not report:
        raise JacobiError(report.indices, report.defect)
    return tensor


def parse_algebra(text):
    """Parse and elaborate in one step."""
    return elaborate(parse(text))


def _coeff_prefix(c):
    """Render a coefficient as a term prefix: "", "- ", "3/2 ", "(1+i) "..."""
    cs = scalar_str(c)
    compound = "+" in cs[1:] or "-" in cs[1:]
    if compound:
        return 1, f"({cs}) "
    if cs == "1":
        return 1, ""
    if cs == "-1":
        return -1, ""
    if cs.startswith("-"):
        return -1, f"{cs[1:]} "
    return 1, f"{cs} "


def print_algebra(tensor, name=None):
    """Canonical text for a law; elaborate(parse(.)) round-trips exactly."""
    if tensor.ring.name != "gauss":
        raise LieDegError("only Gaussian-rational laws can be printed as algebra files")
    if name is None:
        name = "g"
    safe = "".join(ch if (ch.isalnum() or ch == "_") else "_" for ch in name)
    if not safe or safe[0].isdigit():
        safe = "g_" + safe
    lines = [f"algebra {safe} dim {tensor.n}"]
    for i, j, coeffs in tensor.nonzero_brackets():
        parts = []
        for r, v in sorted(coeffs.items()):
            sign, prefix = _coeff_prefix(v)
            piece = f"{prefix}e{r}"
            if not parts:
                parts.append(("-" if sign < 0 else "") + piece)
            else:
                parts.append(f" {'-' if sign < 0 else '+'} {piece}")
        lines.append(f"[e{i},e{j}] = " + "".join(parts))
    return "\n".join(lines) + "\n"
