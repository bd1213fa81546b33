"""Text formats for algebras, products and matrices, plus small expression parsers.

Three JSON document kinds share a header ``{name, dim, basis}``:

* LAJ (Lie algebra): ``brackets`` lists ``{left, right, value}`` with the
  left label strictly before the right one in the basis; antisymmetry is
  implied and omitted pairs are zero.
* LAJ-P (bilinear product): ``products`` lists ``{left, right, value}`` with
  no symmetry convention.
* LAJ-M (matrix): ``matrix`` is a row-major grid; column j is the image of
  basis vector j.

Every scalar is a rational string ``"p"`` or ``"p/q"``.  The kind of a
document is recognised by which of the three payload keys it carries.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .errors import (
    DocumentShapeError,
    DuplicateEntryError,
    ParseError,
    UnknownLabelError,
)
from .exactla import ZERO, Matrix, Vector, format_rational, parse_rational
from .liealg import LieAlgebra, Subspace
from .structures import BilinearProduct

KIND_KEYS = {"brackets": "LAJ", "products": "LAJ-P", "matrix": "LAJ-M"}


# -- header and values ---------------------------------------------------------


def _header(doc: Mapping) -> tuple[str, list[str]]:
    if not isinstance(doc, Mapping):
        raise DocumentShapeError("document must be a JSON object")
    basis = doc.get("basis")
    dim = doc.get("dim")
    if basis is None and isinstance(dim, int):
        basis = [f"e{k + 1}" for k in range(dim)]
    if not isinstance(basis, list) or not all(isinstance(b, str) and b for b in basis):
        raise DocumentShapeError("basis must be a list of non-empty strings")
    if len(set(basis)) != len(basis):
        raise DocumentShapeError("basis labels must be distinct")
    if dim is not None and (not isinstance(dim, int) or isinstance(dim, bool) or dim != len(basis)):
        raise DocumentShapeError(f"dim {dim!r} does not match {len(basis)} basis labels")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentShapeError("name must be a string")
    return name, basis


def _index(basis: Sequence[str], label) -> int:
    try:
        return basis.index(label)
    except ValueError:
        raise UnknownLabelError(f"unknown basis label {label!r}") from None


def _parse_value(basis: Sequence[str], value) -> Vector:
    if not isinstance(value, Mapping):
        raise DocumentShapeError(f"value must map basis labels to rationals, got {value!r}")
    out = [ZERO] * len(basis)
    for label, coeff in value.items():
        out[_index(basis, label)] = parse_rational(coeff)
    return tuple(out)


def _emit_value(basis: Sequence[str], v: Sequence) -> dict:
    return {basis[k]: format_rational(a) for k, a in enumerate(v) if a}


def _pairs(doc: Mapping, key: str, basis: Sequence[str]) -> list[tuple[int, int, Vector]]:
    entries = doc.get(key)
    if not isinstance(entries, list):
        raise DocumentShapeError(f"{key} must be a list")
    out = []
    seen = set()
    for e in entries:
        if not isinstance(e, Mapping) or set(e) - {"left", "right", "value"} or "value" not in e:
            raise DocumentShapeError(f"malformed {key} entry {e!r}")
        i, j = _index(basis, e.get("left")), _index(basis, e.get("right"))
        if (i, j) in seen:
            raise DuplicateEntryError(f"duplicate entry for ({basis[i]}, {basis[j]})")
        seen.add((i, j))
        out.append((i, j, _parse_value(basis, e["value"])))
    return out


# -- documents -----------------------------------------------------------------


def kind_of(doc: Mapping) -> str:
    kinds = [k for key, k in KIND_KEYS.items() if isinstance(doc, Mapping) and key in doc]
    if len(kinds) != 1:
        raise DocumentShapeError("document must carry exactly one of brackets, products, matrix")
    return kinds[0]


def parse_algebra(doc: Mapping) -> LieAlgebra:
    name, basis = _header(doc)
    brackets = {}
    for i, j, v in _pairs(doc, "brackets", basis):
        if i == j:
            raise DocumentShapeError(f"bracket of {basis[i]} with itself")
        if i > j:
            if (j, i) in brackets:
                raise DuplicateEntryError(f"duplicate entry for ({basis[j]}, {basis[i]})")
            raise DocumentShapeError(
                f"bracket ({basis[i]}, {basis[j]}) must be stored with the earlier label on the left")
        brackets[(i, j)] = v
    return LieAlgebra.from_brackets(name, basis, brackets)


def emit_algebra(g: LieAlgebra) -> dict:
    brackets = [{"left": g.basis[i], "right": g.basis[j], "value": _emit_value(g.basis, g.c[i][j])}
                for i in range(g.dim) for j in range(i + 1, g.dim) if any(g.c[i][j])]
    return {"name": g.name, "dim": g.dim, "basis": list(g.basis), "brackets": brackets}


def parse_product(doc: Mapping, basis: Sequence[str] | None = None) -> tuple[str, list[str], BilinearProduct]:
    name, labels = _header(doc)
    if basis is not None and list(basis) != labels:
        raise DocumentShapeError(f"product basis {labels} does not match algebra basis {list(basis)}")
    entries = {(i, j): v for i, j, v in _pairs(doc, "products", labels)}
    return name, labels, BilinearProduct.from_entries(len(labels), entries)


def emit_product(prod: BilinearProduct, basis: Sequence[str], name: str = "") -> dict:
    if len(basis) != prod.dim:
        raise DocumentShapeError(f"{len(basis)} labels for a {prod.dim}-dim product")
    products = [{"left": basis[i], "right": basis[j], "value": _emit_value(basis, v)}
                for (i, j), v in sorted(prod.entries().items())]
    return {"name": name, "dim": prod.dim, "basis": list(basis), "products": products}


def parse_matrix(doc: Mapping, basis: Sequence[str] | None = None) -> tuple[str, list[str], Matrix]:
    name, labels = _header(doc)
    if basis is not None and list(basis) != labels:
        raise DocumentShapeError(f"matrix basis {labels} does not match algebra basis {list(basis)}")
    grid = doc.get("matrix")
    d = len(labels)
    if not isinstance(grid, list) or len(grid) != d or any(not isinstance(r, list) or len(r) != d for r in grid):
        raise DocumentShapeError(f"matrix must be a {d}x{d} grid")
    return name, labels, Matrix([[parse_rational(a) for a in row] for row in grid], d)


def emit_matrix(m: Matrix, basis: Sequence[str], name: str = "") -> dict:
    if not (m.rows == m.cols == len(basis)):
        raise DocumentShapeError(f"{m.rows}x{m.cols} matrix for {len(basis)} labels")
    return {"name": name, "dim": m.rows, "basis": list(basis),
            "matrix": [[format_rational(a) for a in row] for row in m.entries]}


def normalize(doc: Mapping) -> dict:
    """Canonical form of a document: parse then emit."""
    kind = kind_of(doc)
    if kind == "LAJ":
        return emit_algebra(parse_algebra(doc))
    if kind == "LAJ-P":
        name, basis, prod = parse_product(doc)
        return emit_product(prod, basis, name)
    name, basis, m = parse_matrix(doc)
    return emit_matrix(m, basis, name)


# -- files -----------------------------------------------------------------------


def read_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _reject_float(text: str):
    return parse_rational(text)  # always raises: floats and NaN are not rationals


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_document(doc: Mapping, path: str | Path) -> None:
    Path(path).write_text(dumps(doc))


def load_algebra(path: str | Path) -> LieAlgebra:
    return parse_algebra(read_document(path))


# -- expressions -----------------------------------------------------------------

_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_][\w.]*)$")


def parse_combination(text: str, basis: Sequence[str]) -> Vector:
    """Parse a linear combination such as ``"e3+e5"`` or ``"2*e1 - 1/2 e4"``.

    A bare comma-separated coordinate list (``"1,0,0"``) of full length is
    also accepted.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty linear combination")
    if "," in s:
        parts = [p.strip() for p in s.strip("()").split(",")]
        if len(parts) != len(basis):
            raise DocumentShapeError(f"{len(parts)} coordinates for a {len(basis)}-dim basis")
        return tuple(parse_rational(p) for p in parts)
    out = [ZERO] * len(basis)
    # split into signed terms, keeping the sign with each term
    pieces = re.findall(r"[+-]?[^+-]+", s.replace(" ", ""))
    if "".join(pieces) != s.replace(" ", ""):
        raise ParseError(f"malformed linear combination {text!r}")
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece.lstrip("+-")
        m = _TERM_RE.match(body)
        if m is None:
            raise ParseError(f"malformed term {piece!r} in {text!r}")
        coeff = parse_rational(m.group(1)) if m.group(1) else Fraction(1)
        out[_index(basis, m.group(2))] += sign * coeff
    return tuple(out)


def parse_span(text: str, basis: Sequence[str]) -> Subspace:
    """Parse ``"e2, e3+e5"`` (optionally wrapped in angle brackets) into a subspace."""
    s = text.strip().strip("<>⟨⟩").strip()
    if not s:
        return Subspace.zero(len(basis))
    vectors = [parse_combination(part, basis) for part in s.split(",")]
    return Subspace(len(basis), vectors)


def format_combination(v: Sequence, basis: Sequence[str]) -> str:
    terms = []
    for label, a in zip(basis, v):
        if not a:
            continue
        mag = abs(a)
        coeff = "" if mag == 1 else f"{format_rational(mag)}*"
        terms.append(("-" if a < 0 else "+") + coeff + label)
    if not terms:
        return "0"
    out = " ".join(terms)
    return out[1:] if out.startswith("+") else out


# -- support masks ---------------------------------------------------------------


def parse_support(doc: Mapping, basis: Sequence[str], target: str) -> frozenset[int]:
    """Flat indices allowed to be nonzero in a search.

    ``target`` is ``"product"`` or ``"operator"``.  A mask document is
    ``{"support": [[left, right, component], ...]}`` for products or
    ``{"support": [[row, col], ...]}`` for operators (labels name basis
    vectors).  An LAJ-P or LAJ-M document may be given instead, in which case
    its nonzero pattern is the mask.
    """
    n = len(basis)
    if "support" in doc:
        entries = doc["support"]
        if not isinstance(entries, list):
            raise DocumentShapeError("support must be a list")
        width = 3 if target == "product" else 2
        out = set()
        for e in entries:
            if not isinstance(e, list) or len(e) != width:
                raise DocumentShapeError(f"support entries for a {target} have {width} labels, got {e!r}")
            idx = [_index(basis, label) for label in e]
            if target == "product":
                i, j, k = idx
                out.add((i * n + j) * n + k)
            else:
                out.add(idx[0] * n + idx[1])
        return frozenset(out)
    kind = kind_of(doc)
    if target == "product" and kind == "LAJ-P":
        _, _, prod = parse_product(doc, basis)
        return frozenset(i for i, a in enumerate(prod.flatten()) if a)
    if target == "operator" and kind == "LAJ-M":
        _, _, m = parse_matrix(doc, basis)
        return frozenset(i for i, a in enumerate(m.flatten()) if a)
    raise DocumentShapeError(f"{kind} document cannot serve as a {target} support mask")
