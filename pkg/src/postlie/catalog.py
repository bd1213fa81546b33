"""Named algebras and fixtures, each with machine-checkable expected outcomes.

Explicit tables live in JSON files under ``data/`` so they can be diffed
against their printed source; this module only assembles them.  Every fixture
carries a short location string (``provenance``) that the command line prints
next to each result.

Algebra names understood by :func:`algebra`:

* families ``glN``, ``slN``, ``affN``, ``abelianN`` (or ``abelian(N)``),
  ``slN|xV`` for sl_N acting on its natural module;
* the small algebras ``n3``, ``n4``, ``r2``, ``r3``, ``r31``;
* the table algebras ``sl3-table``, ``aff2-plus-aff1``, ``sl2-plus-sl2``;
* direct sums written with ``+``, e.g. ``n3+abelian1`` or ``r2+r2``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable

from . import exactla as la
from . import families as F
from . import laj
from .errors import PostLieError, UnknownFixtureError
from .exactla import Matrix
from .liealg import (
    LieAlgebra,
    Subspace,
    check_isomorphism,
    check_jacobi,
    classify,
    derivation_algebra,
    derivation_basis,
    direct_sum,
    exp_ad,
    is_derivation,
    is_ideal,
    is_subalgebra,
    killing_form,
    nilradical,
    radical,
    subalgebra,
    subspace_ops,
)
from .structures import (
    BilinearProduct,
    LiePair,
    abelian_like,
    check_postlie,
    check_prelie,
    check_rota_baxter,
    direct_sum_products,
    embedding_into_semidirect,
    gl_line_structure,
    induced_g,
    inner_product_from_map,
    matrix_product_prelie,
    postlie_to_prelie,
    rb_from_subalgebra_pair,
)

# -- data files ------------------------------------------------------------------


def _data_path(name: str):
    return resources.files("postlie").joinpath("data", name)


@lru_cache(maxsize=None)
def _data_doc(name: str) -> dict:
    return json.loads(_data_path(name).read_text())


@lru_cache(maxsize=None)
def _metadata() -> dict:
    return _data_doc("fixtures.json")


def _file_algebra(name: str) -> LieAlgebra:
    return laj.parse_algebra(_data_doc(name))


def _file_product(name: str, basis) -> BilinearProduct:
    return laj.parse_product(_data_doc(name), basis)[2]


def _file_matrix(name: str, basis) -> Matrix:
    return laj.parse_matrix(_data_doc(name), basis)[2]


def _product_from_text(table: dict, basis) -> BilinearProduct:
    """``{"e1,e3": "-e2"}`` style tables from the metadata file."""
    entries = {}
    for key, value in table.items():
        left, right = (s.strip() for s in key.split(","))
        entries[(basis.index(left), basis.index(right))] = laj.parse_combination(value, basis)
    return BilinearProduct.from_entries(len(basis), entries)


# -- algebra names ---------------------------------------------------------------

_SMALL = {"n3": F.heisenberg, "n4": F.filiform4, "r2": F.r2, "r3": F.r3, "r31": F.r31}

_FAMILY_RE = re.compile(r"^(gl|sl|aff|abelian)\(?(\d+)\)?(\|xV)?$")


def _table_file(name: str) -> str | None:
    """Data file of a table algebra fixture (aliases resolved), if ``name`` is one."""
    files = _metadata().get(_aliases().get(name, name), {}).get("files", {})
    return files.get("algebra")


def _single_algebra(name: str) -> LieAlgebra:
    table = _table_file(name)
    if table is not None:
        return _file_algebra(table)
    if name in _SMALL:
        return _SMALL[name]()
    m = _FAMILY_RE.match(name)
    if m is not None:
        family, k, natural = m.group(1), int(m.group(2)), m.group(3)
        if natural:
            if family != "sl" or k < 2:
                raise UnknownFixtureError(name)
            return F.sl_ltimes_natural(k)
        if family == "abelian":
            return F.abelian(k)
        if k < 1 or (family == "sl" and k < 2):
            raise UnknownFixtureError(name)
        return {"gl": F.gl, "sl": F.sl, "aff": F.aff}[family](k)
    raise UnknownFixtureError(name)


@lru_cache(maxsize=256)
def algebra(name: str) -> LieAlgebra:
    """Resolve an algebra name (see module docstring)."""
    name = name.strip()
    parts = [p.strip() for p in name.split("+")] if "+" in name else [name]
    if not all(parts):
        raise UnknownFixtureError(name)
    out = _single_algebra(parts[0])
    for p in parts[1:]:
        out = direct_sum(out, _single_algebra(p))
    if len(parts) > 1:
        out = LieAlgebra(name, out.basis, out.c)
    return out


ALGEBRA_EXAMPLES = ("gl2", "gl3", "sl2", "sl3", "aff1", "aff2", "abelian3", "n3", "n4", "r2", "r3",
                    "r31", "sl2|xV", "sl3-table", "aff2-plus-aff1", "sl2-plus-sl2", "r2+r2",
                    "n3+abelian1")


# -- fixtures --------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    fixture: str
    provenance: str
    check: str
    passed: bool
    detail: str = ""


@dataclass
class FixtureEntry:
    """A named construction with the outcomes it is expected to satisfy.

    ``payload`` maps component names to algebras, pairs, products, matrices
    or subspaces.  ``expected`` lists check names in the order they run.
    """

    name: str
    payload: dict
    provenance: str
    checks: dict[str, Callable[[], bool]] = field(repr=False, default_factory=dict)
    notes: dict = field(default_factory=dict)
    check_provenance: dict[str, str] = field(default_factory=dict)

    @property
    def expected(self) -> list[str]:
        return list(self.checks)

    def run(self, check: str) -> CheckResult:
        prov = self.check_provenance.get(check, self.provenance)
        try:
            outcome = self.checks[check]()
        except PostLieError as exc:
            return CheckResult(self.name, prov, check, False, f"{type(exc).__name__}: {exc}")
        detail = ""
        if isinstance(outcome, tuple):
            outcome, detail = outcome
        return CheckResult(self.name, prov, check, bool(outcome), detail)

    def verify(self) -> list[CheckResult]:
        return [self.run(c) for c in self.checks]


def _operator_tests(pair: LiePair, prod: BilinearProduct) -> tuple[bool, bool]:
    """(every L(e_i) is a derivation of n, x -> L(x) respects the bracket of g)."""
    L = prod.left_basis
    derivations = all(is_derivation(pair.n, m) for m in L)
    d = pair.dim
    rep = all(prod.left(pair.g.c[i][j]) == L[i] @ L[j] - L[j] @ L[i]
              for i in range(d) for j in range(i + 1, d))
    return derivations, rep


def operator_forms_agree(pair: LiePair, prod: BilinearProduct) -> bool:
    """The derivation and representation identities agree with their operator restatements."""
    report = check_postlie(pair, prod)
    der, rep = _operator_tests(pair, prod)
    return report.eq3_ok == der and report.eq2_ok == rep


def _pair_checks(pair: LiePair, prod: BilinearProduct, *, embedding: bool = True) -> dict:
    checks = {
        "postlie-pass": lambda: _report(check_postlie(pair, prod)),
        "operator-forms-agree": lambda: operator_forms_agree(pair, prod),
    }
    if embedding:
        checks["embeds-into-semidirect"] = lambda: embedding_into_semidirect(pair, prod).ok
    return checks


def _report(report) -> tuple[bool, str]:
    if report.ok:
        return True, ""
    return False, f"failing identities: {report.witnesses}"


def _same_brackets(a: LieAlgebra, b: LieAlgebra) -> tuple[bool, str]:
    if a.basis != b.basis:
        return False, f"bases differ: {a.basis} vs {b.basis}"
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            if a.c[i][j] != b.c[i][j]:
                return False, (f"[{a.basis[i]},{a.basis[j]}]: "
                               f"{laj.format_combination(a.c[i][j], a.basis)} vs "
                               f"{laj.format_combination(b.c[i][j], b.basis)}")
    return True, ""


def _same_product(a: BilinearProduct, b: BilinearProduct, basis) -> tuple[bool, str]:
    for i in range(a.dim):
        for j in range(a.dim):
            if a.p[i][j] != b.p[i][j]:
                return False, (f"{basis[i]}.{basis[j]}: {laj.format_combination(a.p[i][j], basis)} vs "
                               f"{laj.format_combination(b.p[i][j], basis)}")
    return True, ""


def _semisimple(g: LieAlgebra) -> bool:
    fp = classify(g)
    return fp.is_semisimple and fp.dim_radical == 0 and la.det(killing_form(g)) != 0


def _meta(name: str) -> dict:
    return _metadata()[name]


# individual builders; each returns a FixtureEntry


def _algebra_entry(name: str) -> FixtureEntry:
    g = algebra(name)
    checks = {"jacobi-pass": lambda: check_jacobi(g).ok}
    prov = "standard construction"
    notes = {}
    if name == "sl3-table":
        prov = _meta("sl3-table")["anchor"]
        checks["matches-matrix-sl3"] = lambda: _same_brackets(LieAlgebra("sl3", g.basis, g.c),
                                                              LieAlgebra("sl3", g.basis, F.sl(3).c))
        checks["semisimple"] = lambda: _semisimple(g)
        checks["complete"] = lambda: classify(g).is_complete
    elif name == "aff2-plus-aff1":
        prov = _meta(name)["anchor"]
        checks["isomorphic-to-aff2+aff1"] = lambda: check_isomorphism(_aff_map(), g, _aff_sum())
        checks["complete"] = lambda: classify(g).is_complete
        checks["aff2-complete"] = lambda: classify(F.aff(2)).is_complete
    elif name == "sl2-plus-sl2":
        prov = _meta(name)["anchor"]
        checks["matches-matrix-sl2+sl2"] = lambda: g.same_brackets(direct_sum(F.sl(2), F.sl(2)))
        checks["semisimple"] = lambda: _semisimple(g)
    return FixtureEntry(name, {"algebra": g}, prov, checks, notes)


def _aff_sum() -> LieAlgebra:
    return direct_sum(F.aff(2), F.aff(1))


def _aff_map() -> Matrix:
    # f1..f6 are aff2's basis in order; f7 = E12 and f8 = -E11 of aff1
    cols = [la.unit_vector(8, k) for k in range(6)]
    cols.append(la.unit_vector(8, 7))
    cols.append(la.scale_vector(-1, la.unit_vector(8, 6)))
    return Matrix.from_columns(cols, 8)


def _r31_r3() -> FixtureEntry:
    meta = _meta("r31-r3-example")
    pair = LiePair(F.r31(), F.r3())
    prod = _product_from_text(meta["products"], pair.n.basis)
    checks = _pair_checks(pair, prod)
    checks["induced-g-is-r31"] = lambda: induced_g(pair.n, prod)[0].same_brackets(pair.g)
    checks["r3-r31-fingerprints-differ"] = lambda: classify(F.r3()) != classify(F.r31())
    checks["both-solvable"] = lambda: classify(F.r3()).is_solvable and classify(F.r31()).is_solvable
    return FixtureEntry("r31-r3-example", {"pair": pair, "product": prod}, meta["anchor"], checks)


def _sl3_inner() -> FixtureEntry:
    meta = _meta("sl3-inner-structure")
    files = meta["files"]
    n = _file_algebra(files["n"])
    basis = n.basis
    phi = _file_matrix(files["phi"], basis)
    table = _file_product(files["product"], basis)
    g_table = _file_algebra(files["g_table"])
    f = _file_matrix(files["f"], basis)
    target = _file_algebra(files["target"])
    prod = inner_product_from_map(n, phi)
    g, _ = induced_g(n, prod)
    pair = LiePair(g_table, n)
    checks = {
        "product-equals-table": lambda: _same_product(prod, table, basis),
        "induced-g-equals-table": lambda: _same_brackets(LieAlgebra("g", basis, g.c), g_table),
        "induced-g-jacobi": lambda: check_jacobi(g).ok,
        **_pair_checks(pair, table),
        "phi-rota-baxter-weight-1": lambda: check_rota_baxter(n, phi, 1).ok,
        "f-is-isomorphism": lambda: check_isomorphism(f, g_table, target),
        "det-f=-3": lambda: (la.det(f) == laj.parse_rational(meta["det_f"]), f"det f = {la.det(f)}"),
        "isomorphism-preserves-fingerprint": lambda: classify(g_table) == classify(target),
        "n-semisimple": lambda: _semisimple(n),
        "n-complete": lambda: classify(n).is_complete,
    }
    payload = {"n": n, "phi": phi, "product": table, "g": g_table, "f": f, "target": target}
    return FixtureEntry("sl3-inner-structure", payload, meta["anchor"], checks)


def _sl2sl2_rb() -> FixtureEntry:
    meta = _meta("sl2sl2-rota-baxter")
    files = meta["files"]
    n = _file_algebra(files["n"])
    basis = n.basis
    phi = _file_matrix(files["phi"], basis)
    table = _file_product(files["product"], basis)
    g_table = _file_algebra(files["g_table"])
    n1 = laj.parse_span(meta["spans"]["n1"], basis)
    n2 = laj.parse_span(meta["spans"]["n2"], basis)
    ideals = [laj.parse_span(s, basis) for s in meta["ideals"]]
    pair = LiePair(g_table, n)

    def rb_matches():
        r = rb_from_subalgebra_pair(n, n1, n2)
        return r == phi, "" if r == phi else f"got {r}"

    def decomposition():
        g = g_table
        r2fp = classify(F.r2())
        for s in ideals:
            if not is_ideal(g, s):
                return False, f"{laj.format_combination(s.basis[0], basis)}... is not an ideal"
            if classify(subalgebra(g, s)) != r2fp:
                return False, "an ideal is not isomorphic to r2 by fingerprint"
        total = Subspace.zero(g.dim)
        for s in ideals:
            if total.intersection(s).dim:
                return False, "ideals are not independent"
            total = total + s
        return total.dim == g.dim, f"ideals span {total.dim} of {g.dim}"

    def rediscover():
        from .solver import Ansatz, search_rb
        support = frozenset(k for k, a in enumerate(phi.flatten()) if a)
        found = [s.operator for s in search_rb(n, Ansatz(coefficient_bound=1, support=support))]
        return phi in found, f"{len(found)} operators on the restricted grid"

    checks = {
        "n1-n2-subalgebras": lambda: is_subalgebra(n, n1) and is_subalgebra(n, n2),
        "rb-from-subalgebras-equals-phi": rb_matches,
        "phi-rota-baxter-weight-1": lambda: check_rota_baxter(n, phi, 1).ok,
        "product-equals-table": lambda: _same_product(inner_product_from_map(n, phi), table, basis),
        "induced-g-equals-table": lambda: _same_brackets(
            LieAlgebra("g", basis, induced_g(n, table)[0].c), g_table),
        **_pair_checks(pair, table),
        "ideals-r2+r2+r2": decomposition,
        "g-fingerprint-r2+r2+r2": lambda: classify(g_table) == classify(algebra("r2+r2+r2")),
        "solver-recovers-phi": rediscover,
    }
    payload = {"n": n, "phi": phi, "product": table, "g": g_table, "n1": n1, "n2": n2}
    for k, s in enumerate(ideals, start=1):
        payload[f"ideal{k}"] = s
    return FixtureEntry("sl2sl2-rota-baxter", payload, meta["anchor"], checks)


def _gl_line(size: int) -> FixtureEntry:
    meta = _meta("gl-line-structure")
    pair, prod = gl_line_structure(size)

    def g_invariants():
        fp = classify(pair.g)
        return fp.dim_center == 2 and fp.dim - fp.dim_derived == 2, (
            f"center {fp.dim_center}, [g,g] codim {fp.dim - fp.dim_derived}")

    checks = {
        **_pair_checks(pair, prod, embedding=size <= 2),
        "induced-g-recovers-g": lambda: induced_g(pair.n, prod)[0].same_brackets(pair.g),
        "n-solvable-not-nilpotent": lambda: classify(pair.n).is_solvable and not classify(pair.n).is_nilpotent,
        "g-center-2-derived-codim-2": g_invariants,
    }
    return FixtureEntry(f"gl-line-structure({size})", {"pair": pair, "product": prod}, meta["anchor"], checks,
                        {"size": size})


def _sl2_v2() -> FixtureEntry:
    meta = _meta("sl2-v2-disemisimple")
    g = F.sl_ltimes_natural(2)
    z = laj.parse_combination(meta["z"], g.basis)
    s1 = Subspace(g.dim, [g.unit(i) for i in range(3)])
    v2 = Subspace(g.dim, [g.unit(3), g.unit(4)])
    # exp_ad checks the automorphism property itself; the inverse is checked below
    phi = exp_ad(g, z)
    s2 = s1.image(phi)
    checks = {
        "ad-z-nilpotent": lambda: la.is_nilpotent_matrix(g.adjoint(z)),
        "exp-ad-z-inverse": lambda: phi @ exp_ad(g, la.scale_vector(-1, z)) == Matrix.identity(g.dim),
        "s1-s2-semisimple-subalgebras": lambda: all(
            is_subalgebra(g, s) and _semisimple(subalgebra(g, s)) for s in (s1, s2)),
        "s1+s2-spans": lambda: subspace_ops(g, s1, s2).spans,
        "dim-s1-meet-s2=n^2-n-1": lambda: (s1.intersection(s2).dim == 2 * 2 - 2 - 1,
                                           f"dim = {s1.intersection(s2).dim}"),
        "perfect": lambda: classify(g).is_perfect,
        "not-semisimple": lambda: not classify(g).is_semisimple,
        "rad=nil=V(2)": lambda: radical(g) == v2 and nilradical(g) == v2,
    }
    payload = {"algebra": g, "exp_ad_z": phi, "s1": s1, "s2": s2}
    return FixtureEntry("sl2-v2-disemisimple", payload, meta["anchor"], checks, {"z": meta["z_note"]})


def _sl2_diagonal() -> FixtureEntry:
    meta = _meta("sl2-diagonal-sum")
    g = direct_sum(F.sl(2), F.sl(2))
    s1 = laj.parse_span(meta["spans"]["s1"], g.basis)
    s2 = laj.parse_span(meta["spans"]["s2"], g.basis)
    checks = {
        "s1-s2-semisimple-subalgebras": lambda: all(
            is_subalgebra(g, s) and _semisimple(subalgebra(g, s)) for s in (s1, s2)),
        "direct-spanning-sum": lambda: subspace_ops(g, s1, s2).is_direct and subspace_ops(g, s1, s2).spans,
        "ambient-semisimple": lambda: _semisimple(g),
        "fingerprint-of-direct-sum": lambda: classify(g) == classify(
            direct_sum(subalgebra(g, s1), subalgebra(g, s2))),
    }
    return FixtureEntry("sl2-diagonal-sum", {"algebra": g, "s1": s1, "s2": s2}, meta["anchor"], checks)


def _gln_prelie(size: int) -> FixtureEntry:
    meta = _meta("gln-prelie")
    g = F.gl(size)
    prod = matrix_product_prelie(size)
    pair = LiePair(g, abelian_like(g))
    checks = {"prelie-pass": lambda: _report(check_prelie(g, prod)),
              **_pair_checks(pair, prod, embedding=size <= 2)}
    return FixtureEntry(f"gln-prelie({size})", {"pair": pair, "product": prod}, meta["anchor"], checks,
                        {"size": size})


def _lr(name: str, n: LieAlgebra) -> FixtureEntry:
    meta = _meta(name)
    pair = LiePair(abelian_like(n), n)
    prod = _product_from_text(meta["products"], n.basis)

    def rediscover():
        from .solver import Ansatz, search_postlie
        found = search_postlie(pair, Ansatz(coefficient_bound=1))
        return prod in found.products(), f"{len(found)} solutions, exhausted={found.exhausted}"

    checks = {**_pair_checks(pair, prod), "solver-rediscovers": rediscover}
    if name == "lr-n3":
        def transform():
            out = postlie_to_prelie(pair, prod)
            half = Fraction(1, 2)
            expected = BilinearProduct.from_entries(3, {(0, 1): {2: half}, (1, 0): {2: half}})
            return out == expected and check_prelie(pair.g, out).ok
        checks["prelie-transform"] = transform
    return FixtureEntry(name, {"pair": pair, "product": prod}, meta["anchor"], checks)


def _reductive_plus(name: str, lr_name: str) -> FixtureEntry:
    meta = _meta(name)
    lr = get(lr_name).payload
    gl2 = F.gl(2)
    first = (LiePair(gl2, abelian_like(gl2)), matrix_product_prelie(2))
    pair, prod = direct_sum_products(*first, lr["pair"], lr["product"])
    k = lr["pair"].dim
    sl2_plus = algebra(f"sl2+abelian{k + 1}")
    n_expected = direct_sum(F.abelian(4), lr["pair"].n)
    checks = {
        **_pair_checks(pair, prod, embedding=False),
        f"g-fingerprint-sl2+C{k + 1}": lambda: classify(pair.g) == classify(sl2_plus),
        f"n-fingerprint-C4+{lr['pair'].n.name}": lambda: classify(pair.n) == classify(n_expected),
    }
    return FixtureEntry(name, {"pair": pair, "product": prod}, meta["anchor"], checks)


def _sl_plus_gl() -> FixtureEntry:
    meta = _meta("sl-plus-gl")
    size = meta["size"]
    s = F.sl(size)
    gln = F.gl(size)
    zero_pair = (LiePair(s, s), BilinearProduct.zero(s.dim))
    pre_pair = (LiePair(gln, abelian_like(gln)), matrix_product_prelie(size))
    pair, prod = direct_sum_products(*zero_pair, *pre_pair)
    checks = {
        **_pair_checks(pair, prod, embedding=False),
        "g-reductive-not-semisimple": lambda: (classify(pair.g).dim_center == 1
                                               and not classify(pair.g).is_semisimple),
        "n-not-semisimple": lambda: not classify(pair.n).is_semisimple,
        "g-not-isomorphic-to-n": lambda: classify(pair.g) != classify(pair.n),
    }
    return FixtureEntry("sl-plus-gl", {"pair": pair, "product": prod}, meta["anchor"], checks, {"size": size})


# hand-derived nilradicals, as spans in each algebra's own basis
NILRADICAL_TABLE = {
    "abelian3": "e1, e2, e3",
    "n3": "e1, e2, e3",
    "n4": "e1, e2, e3, e4",
    "r2": "e2",
    "r3": "e2, e3",
    "r31": "e2, e3",
    "gl2": "E11+E22",
    "sl2|xV": "v1, v2",
    "sl2": "",
    "sl3-table": "",
    "sl2-plus-sl2": "",
}


def derivations_into_nilradical(g: LieAlgebra) -> bool:
    """Every basis derivation maps the radical into the nilradical."""
    rad, nil = radical(g), nilradical(g)
    return all(nil.contains_subspace(rad.image(d)) for d in derivation_basis(g))


def _nilradical_entry() -> FixtureEntry:
    meta = _meta("nilradical-table")
    checks = {}
    for name, span in NILRADICAL_TABLE.items():
        def table_check(name=name, span=span):
            g = algebra(name)
            want = laj.parse_span(span, g.basis)
            got = nilradical(g)
            return got == want, f"nil = <{', '.join(laj.format_combination(v, g.basis) for v in got.basis)}>"
        checks[f"nil({name})"] = table_check
    for name in ("r2", "r3", "r31", "n3", "n4"):
        def solvable_image(name=name):
            g = algebra(name)
            nil = nilradical(g)
            full = Subspace.full(g.dim)
            return all(nil.contains_subspace(full.image(d)) for d in derivation_basis(g))
        checks[f"Der({name})-into-nil"] = solvable_image
    for name in ALGEBRA_EXAMPLES:
        checks[f"D(rad)-into-nil({name})"] = lambda name=name: derivations_into_nilradical(algebra(name))
        checks[f"radical-ideal-contains-nil({name})"] = lambda name=name: _radical_consistent(algebra(name))
    return FixtureEntry("nilradical-table", {}, meta["anchor"], checks)


def _radical_consistent(g: LieAlgebra) -> bool:
    rad, nil = radical(g), nilradical(g)
    fp = classify(g)
    semisimple_agree = fp.is_semisimple == (rad.dim == 0) == (la.det(killing_form(g)) != 0)
    return is_ideal(g, rad) and is_ideal(g, nil) and rad.contains_subspace(nil) and semisimple_agree


def _filiform() -> FixtureEntry:
    meta = _meta("filiform-derivations")
    checks = {
        "Der(n4)-solvable": lambda: classify(derivation_algebra(F.filiform4())[1]).is_solvable,
        "dim-Der(n3)=6": lambda: (len(derivation_basis(F.heisenberg())) == 6,
                                  f"dim = {len(derivation_basis(F.heisenberg()))}"),
        "dim-Der(abelian2)=4": lambda: len(derivation_basis(F.abelian(2))) == 4,
    }
    return FixtureEntry("filiform-derivations", {"algebra": F.filiform4()}, meta["anchor"], checks)


def _r3_r31() -> FixtureEntry:
    meta = _meta("r3-r31-distinct")

    def differ():
        a, b = classify(F.r3()), classify(F.r31())
        fields = [k for k, v in a.as_dict().items() if b.as_dict()[k] != v]
        return bool(fields), f"differ in {', '.join(fields) or 'nothing'}"

    return FixtureEntry("r3-r31-distinct", {"r3": F.r3(), "r31": F.r31()}, meta["anchor"],
                        {"fingerprints-differ": differ})


def _rigidity() -> FixtureEntry:
    meta = _meta("rigidity-spot-checks")
    checks = {}
    anchors = {}
    for g_name, n_name, anchor in meta["pairs"]:
        anchors[f"no-structure({g_name},{n_name})"] = anchor
        def run(g_name=g_name, n_name=n_name):
            from .solver import Ansatz, nonexistence_report
            rep = nonexistence_report(LiePair(algebra(g_name), algebra(n_name)),
                                      Ansatz(coefficient_bound=meta["bound"]))
            return rep.status != "WITNESS-FOUND", str(rep)
        checks[f"no-structure({g_name},{n_name})"] = run
    return FixtureEntry("rigidity-spot-checks", {}, meta["anchor"], checks, check_provenance=anchors)


_PARAM_RE = re.compile(r"^([\w-]+)\((\d+)\)$")

_BUILDERS: dict[str, Callable[..., FixtureEntry]] = {
    "r31-r3-example": _r31_r3,
    "sl3-inner-structure": _sl3_inner,
    "sl2sl2-rota-baxter": _sl2sl2_rb,
    "gl-line-structure": _gl_line,
    "sl2-v2-disemisimple": _sl2_v2,
    "sl2-diagonal-sum": _sl2_diagonal,
    "gln-prelie": _gln_prelie,
    "lr-n3": lambda: _lr("lr-n3", F.heisenberg()),
    "lr-r2": lambda: _lr("lr-r2", F.r2()),
    "reductive-plus-n3": lambda: _reductive_plus("reductive-plus-n3", "lr-n3"),
    "reductive-plus-r2": lambda: _reductive_plus("reductive-plus-r2", "lr-r2"),
    "sl-plus-gl": _sl_plus_gl,
    "nilradical-table": _nilradical_entry,
    "filiform-derivations": _filiform,
    "r3-r31-distinct": _r3_r31,
}

_PARAMETRIZED = {"gl-line-structure", "gln-prelie"}


def _aliases() -> dict[str, str]:
    out = {}
    for name, meta in _metadata().items():
        for alias in meta.get("aliases", ()):
            out[alias] = name
    return out


def canonical_name(name: str) -> str:
    m = _PARAM_RE.match(name)
    base, arg = (m.group(1), m.group(2)) if m else (name, None)
    base = _aliases().get(base, base)
    return f"{base}({arg})" if arg is not None else base


def get(name: str) -> FixtureEntry:
    """Look up a fixture or algebra by name; raises :class:`UnknownFixtureError`."""
    name = canonical_name(name.strip())
    if name in _PARAMETRIZED:
        name = f"{name}({_metadata()[name]['sizes'][0]})"
    return _build(name)


@lru_cache(maxsize=None)
def _build(name: str) -> FixtureEntry:
    m = _PARAM_RE.match(name)
    if m and m.group(1) in _PARAMETRIZED:
        size = int(m.group(2))
        if size < 2:
            raise UnknownFixtureError(name)
        return _BUILDERS[m.group(1)](size)
    if name in _BUILDERS:
        return _BUILDERS[name]()
    if name == "rigidity-spot-checks":
        return _rigidity()
    return _algebra_entry(name)


def names() -> list[str]:
    """Fixture names followed by example algebra names."""
    return list(_metadata()) + [a for a in ALGEBRA_EXAMPLES if a not in _metadata()]


def suite() -> list[FixtureEntry]:
    """Every fixture run by the verification harness, parameter sizes expanded."""
    out = []
    for name, meta in _metadata().items():
        if name in _PARAMETRIZED:
            out.extend(get(f"{name}({k})") for k in meta["sizes"])
        else:
            out.append(get(name))
    return out


def verify_all(progress: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    results = []
    for entry in suite():
        for check in entry.checks:
            r = entry.run(check)
            results.append(r)
            if progress is not None:
                progress(r)
    return results


# -- emission ----------------------------------------------------------------------


def _basis_for(payload: dict):
    for key in ("n", "algebra", "g"):
        if isinstance(payload.get(key), LieAlgebra):
            return payload[key].basis
    if "pair" in payload:
        return payload["pair"].n.basis
    return None


def emit(name: str, out: str | Path) -> list[Path]:
    """Write the fixture's components as LAJ documents.

    A fixture consisting of a single algebra is written to ``out`` itself;
    anything else is written into the directory ``out``, one file per
    component, with subspaces collected in ``spans.json``.
    """
    entry = get(name)
    out = Path(out)
    payload = entry.payload
    if set(payload) == {"algebra"}:
        laj.write_document(laj.emit_algebra(payload["algebra"]), out)
        return [out]
    out.mkdir(parents=True, exist_ok=True)
    basis = _basis_for(payload)
    written = []
    spans = {}
    for key, value in payload.items():
        if isinstance(value, LieAlgebra):
            path = out / f"{key}.laj"
            laj.write_document(laj.emit_algebra(value), path)
        elif isinstance(value, LiePair):
            for side, alg in (("g", value.g), ("n", value.n)):
                path = out / f"{side}.laj"
                laj.write_document(laj.emit_algebra(alg), path)
                written.append(path)
            continue
        elif isinstance(value, BilinearProduct):
            path = out / f"{key}.lajp"
            laj.write_document(laj.emit_product(value, basis, key), path)
        elif isinstance(value, Matrix):
            path = out / f"{key}.lajm"
            laj.write_document(laj.emit_matrix(value, basis, key), path)
        elif isinstance(value, Subspace):
            spans[key] = ", ".join(laj.format_combination(v, basis) for v in value.basis)
            continue
        else:
            continue
        written.append(path)
    meta = {"fixture": entry.name, "provenance": entry.provenance, "expected": entry.expected}
    if spans:
        meta["spans"] = spans
    if entry.notes:
        meta["notes"] = entry.notes
    path = out / "fixture.json"
    path.write_text(json.dumps(meta, indent=2, ensure_ascii=False) + "\n")
    written.append(path)
    return written
