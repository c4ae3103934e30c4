"""Deterministic serialization of results to JSON, CSV, and markdown.

Rationals are always rendered in lowest terms as ``n/d`` (or a bare
integer), never as floating point, so identical inputs produce
byte-identical output.  Every reported quantity carries a ``formula``
string recording how it was computed, which makes reports reproducible
by hand.
"""

from __future__ import annotations

import enum
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ParamError
from .invariants import invariants, k_squared_from_lattice
from .lattice import DivisorClass, pair, self_intersection
from .polysign import OpenInterval
from .positivity import (
    ConeCell,
    ConeRay,
    SeshadriBound,
    ample_cover_polarization,
    boundary_seshadri_diagonal,
    seshadri_diagonal,
    seshadri_lower_bound_diagonal_cover,
)
from .rationals import DEFAULT_TOL, RationalInterval, RationalLike, as_fraction
from .stability import (
    S_FAMILY,
    StabilityWindow,
    destabilizes,
    instability_window_c,
    instability_window_s,
    kodaira_polarization,
    kodaira_window_c,
)
from .surfaces import (
    BranchedCover,
    GeneralModuliSquare,
    KodairaParams,
    ProductSurfaceParams,
    UserBounds,
    kodaira_surface,
    product_surface,
)


def render_value(v) -> str:
    """Canonical string form for report cells."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    if isinstance(v, RationalInterval):
        return f"[{v.lo}, {v.hi}]"
    if isinstance(v, OpenInterval):
        hi = "inf" if v.hi is None else render_value(v.hi)
        return f"({render_value(v.lo)}, {hi})"
    if isinstance(v, DivisorClass):
        return v.render()
    if isinstance(v, enum.Enum):
        return str(v.value)
    if isinstance(v, (tuple, list)):
        return "[" + ", ".join(render_value(x) for x in v) + "]"
    if v is None:
        return ""
    return str(v)


def endpoint_to_json(ep) -> object:
    if ep is None:
        return None
    if isinstance(ep, RationalInterval):
        return {"enclosure": {"lo": str(ep.lo), "hi": str(ep.hi)}}
    return {"exact": str(ep)}


def window_to_dict(window: StabilityWindow) -> dict:
    context = {}
    for key, value in window.context.items():
        if isinstance(value, Fraction):
            context[key] = str(value)
        elif isinstance(value, tuple):
            context[key] = [render_value(v) for v in value]
        else:
            context[key] = value
    return {
        "variable": window.variable,
        "intervals": [
            {"lo": endpoint_to_json(iv.lo), "hi": endpoint_to_json(iv.hi)}
            for iv in window.intervals
        ],
        "empty": window.is_empty,
        "context": context,
    }


def window_csv_rows(window: StabilityWindow) -> list[list[str]]:
    rows = [["variable", "index", "lo_min", "lo_max", "hi_min", "hi_max"]]
    for i, iv in enumerate(window.intervals):
        lo = iv.lo
        lo_min, lo_max = (
            (str(lo.lo), str(lo.hi)) if isinstance(lo, RationalInterval) else (str(lo), str(lo))
        )
        if iv.hi is None:
            hi_min = hi_max = ""
        elif isinstance(iv.hi, RationalInterval):
            hi_min, hi_max = str(iv.hi.lo), str(iv.hi.hi)
        else:
            hi_min = hi_max = str(iv.hi)
        rows.append([window.variable, str(i), lo_min, lo_max, hi_min, hi_max])
    return rows


def cone_csv_text(rays: Sequence[ConeRay], cells: Sequence[ConeCell]) -> str:
    out = io.StringIO()
    out.write("family,threshold_lo,threshold_hi\n")
    for ray in rays:
        hi = "" if ray.threshold_hi is None else str(ray.threshold_hi)
        out.write(f"{ray.family},{ray.threshold_lo},{hi}\n")
    out.write("\n")
    out.write("s_coeff,delta_coeff,is_ample\n")
    for cell in cells:
        out.write(f"{cell.f_coeff},{cell.delta_coeff},{cell.membership}\n")
    return out.getvalue()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# verification checks


@dataclass(frozen=True)
class VerificationCheck:
    check_id: str
    expected: str
    computed: str
    passed: bool
    provenance: str  # "reference" | "direct" | "derived"


@dataclass(frozen=True)
class VerificationSuiteResult:
    suite: str
    parameters: dict
    checks: tuple[VerificationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "parameters": self.parameters,
            "checks": [
                {
                    "id": c.check_id,
                    "expected": c.expected,
                    "computed": c.computed,
                    "passed": c.passed,
                    "provenance": c.provenance,
                }
                for c in self.checks
            ],
            "passed": self.passed,
        }

    def text_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            lines.append(
                f"[{tag}] {self.suite}.{c.check_id}: expected {c.expected}, "
                f"computed {c.computed} ({c.provenance})"
            )
        n_pass = sum(1 for c in self.checks if c.passed)
        lines.append(f"suite {self.suite}: {n_pass}/{len(self.checks)} checks passed")
        return lines


class CheckRecorder:
    def __init__(self):
        self.checks: list[VerificationCheck] = []

    def expect(self, check_id: str, expected, computed, provenance: str) -> None:
        self.checks.append(
            VerificationCheck(
                check_id=check_id,
                expected=render_value(expected),
                computed=render_value(computed),
                passed=expected == computed,
                provenance=provenance,
            )
        )

    def expect_true(self, check_id: str, condition: bool, detail: str, provenance: str) -> None:
        self.checks.append(
            VerificationCheck(
                check_id=check_id,
                expected="true",
                computed=("true" if condition else f"false ({detail})"),
                passed=bool(condition),
                provenance=provenance,
            )
        )


# ---------------------------------------------------------------------------
# report assembly


def _sc_mode_name(params: ProductSurfaceParams) -> Optional[str]:
    mode = params.sc_mode
    if mode is None:
        return None
    if isinstance(mode, BranchedCover):
        return f"branched_cover(k={mode.k})"
    if isinstance(mode, GeneralModuliSquare):
        return "general_moduli_square"
    if isinstance(mode, UserBounds):
        return f"user_bounds({mode.lo}, {mode.hi})"
    return str(mode)


def _quantity(name: str, value, formula: str) -> dict:
    return {"name": name, "value": render_value(value), "formula": formula}


def _seshadri_to_json(b: SeshadriBound) -> dict:
    return {
        "lower": str(b.lower),
        "upper": None if b.upper is None else str(b.upper),
        "exact": b.exact,
        "certified": b.certified,
        "note": b.note,
    }


def product_report(
    params: ProductSurfaceParams,
    s: RationalLike,
    c: RationalLike,
    tol: RationalLike = DEFAULT_TOL,
    with_window_s: bool = True,
    search_extent: RationalLike = 10,
) -> dict:
    """Full exact stability report for the diagonal on the product surface."""
    s, c = as_fraction(s), as_fraction(c)
    q = params.q
    model = product_surface(params)
    f = model.named("f")
    dp = model.named("delta_prime")
    K = model.canonical
    D = model.named("diagonal")
    L = s * f + dp
    boundary = s == q
    if s < q:
        raise ParamError(f"s must be at least q={q}")

    seshadri = boundary_seshadri_diagonal(params) if boundary else seshadri_diagonal(params, s)
    verdict = destabilizes(model, D, L, c, seshadri)
    window_c = instability_window_c(model, D, L, seshadri, tol)

    quantities = [
        _quantity("L.L", pair(L, L), "2(s^2 - q)"),
        _quantity("K.L", pair(K, L), "2s(2q - 2)"),
        _quantity("L.D", pair(L, D), "2s - 2q"),
        _quantity("K.D", pair(K, D), "2(2q - 2)"),
        _quantity("D.D", self_intersection(D), "2 - 2q"),
        _quantity("mu", verdict.mu, "mu = -(K.L)/L^2"),
        _quantity(
            "mu_c",
            verdict.mu_c,
            "mu_c = 3(2 L.D - c(K.D + D^2)) / (2c(3 L.D - c D^2))",
        ),
    ]

    report = {
        "report": "product",
        "parameters": {
            "q": q,
            "sc_mode": _sc_mode_name(params),
            "s": str(s),
            "c": str(c),
            "boundary_evaluation": boundary,
        },
        "surface": {
            "id": model.surface_id,
            "basis": list(model.basis),
            "gram": [[str(v) for v in row] for row in model.gram],
        },
        "polarization": L.render(),
        "subscheme": D.render(),
        "quantities": quantities,
        "seshadri": _seshadri_to_json(seshadri),
        "verdict": {
            "destabilized": verdict.destabilized,
            "admissible": verdict.admissible,
            "flags": list(verdict.flags),
        },
        "window_c": window_to_dict(window_c),
    }
    if with_window_s and c < 1:
        report["window_s"] = window_to_dict(
            instability_window_s(params, c, search_extent, tol)
        )
    return report


def kodaira_report(
    params: KodairaParams,
    s: Optional[RationalLike] = None,
    eps: RationalLike = 0,
    c: RationalLike = Fraction(1, 2),
    t: Optional[RationalLike] = None,
    tol: RationalLike = DEFAULT_TOL,
) -> dict:
    """Invariants plus slope data for the cyclic-cover surface."""
    eps, c = as_fraction(eps), as_fraction(c)
    s = as_fraction(s) if s is not None else Fraction(params.q)
    inv = invariants(params)
    lattice_k2 = k_squared_from_lattice(params)
    model = kodaira_surface(params)
    L = kodaira_polarization(model, S_FAMILY, s, eps)
    D = model.named("diagonal")
    seshadri = seshadri_lower_bound_diagonal_cover(params, s, eps)
    verdict = destabilizes(model, D, L, c, seshadri)
    window = kodaira_window_c(params, s, eps, seshadri, tol)

    inv_block = {
        "d": inv.d,
        "base_genus": inv.base_genus,
        "fiber_genus": inv.fiber_genus,
        "euler": inv.euler,
        "k_squared": inv.k_squared,
        "k_squared_from_lattice": lattice_k2,
        "signature": inv.signature,
        "d_overridden": inv.d_overridden,
        "formulas": {
            "euler": "chi = 4r(p-1)(q-1) + 2(p-1)(r-1)|G|",
            "k_squared": "K^2 = 8r(p-1)(q-1) + 4(r-1)(p-1)|G| + 2((r^2-1)/r)(q-1)d|G|",
            "signature": "tau = (K^2 - 2 chi)/3",
            "fiber_genus": "2g - 2 = r(2q-2) + (r-1)|G|",
            "base_genus": "2p - 2 = d(2q-2)",
        },
    }

    quantities = [
        _quantity("f.f", self_intersection(model.named("f")), "2rd"),
        _quantity(
            "delta_prime.delta_prime",
            self_intersection(model.named("delta_prime")),
            "-2rdq",
        ),
        _quantity("mu", verdict.mu, "mu = -(K.L)/L^2, eps term exact"),
        _quantity(
            "mu_c", verdict.mu_c, "mu_c = 3(2 L.D - c(K.D + D^2)) / (2c(3 L.D - c D^2))"
        ),
    ]
    if params.k is not None and t is not None:
        t = as_fraction(t)
        quantities.append(
            _quantity(
                "ample_certificate_t_family",
                ample_cover_polarization(params, t, eps).status.value,
                "nef pullback for t >= q/(k-1) plus eps*K",
            )
        )

    return {
        "report": "kodaira",
        "parameters": {
            "q": params.q,
            "r": params.r,
            "group_order": params.group_order,
            "k": params.k,
            "d": params.d,
            "s": str(s),
            "eps": str(eps),
            "c": str(c),
            "t": None if t is None else str(t),
        },
        "surface": {
            "id": model.surface_id,
            "basis": list(model.basis),
            "gram": [[str(v) for v in row] for row in model.gram],
        },
        "invariants": inv_block,
        "polarization": L.render(),
        "subscheme": D.render(),
        "quantities": quantities,
        "seshadri": _seshadri_to_json(seshadri),
        "verdict": {
            "destabilized": verdict.destabilized,
            "admissible": verdict.admissible,
            "flags": list(verdict.flags),
        },
        "window_c": window_to_dict(window),
    }


# ---------------------------------------------------------------------------
# markdown rendering


def _md_quantities(quantities: list[dict]) -> list[str]:
    lines = ["| quantity | value | formula |", "| --- | --- | --- |"]
    for item in quantities:
        lines.append(f"| {item['name']} | {item['value']} | {item['formula']} |")
    return lines


def report_markdown(report: dict) -> str:
    lines = [f"# {report['report']} stability report", ""]
    lines.append("## parameters")
    lines.append("")
    for key, value in report["parameters"].items():
        lines.append(f"- {key}: {value}")
    lines.append("")
    if "invariants" in report:
        inv = report["invariants"]
        lines.append("## invariants")
        lines.append("")
        for key in (
            "d",
            "base_genus",
            "fiber_genus",
            "euler",
            "k_squared",
            "k_squared_from_lattice",
            "signature",
        ):
            lines.append(f"- {key}: {inv[key]}")
        lines.append("")
    lines.append("## quantities")
    lines.append("")
    lines.extend(_md_quantities(report["quantities"]))
    lines.append("")
    sesh = report["seshadri"]
    lines.append("## seshadri bound")
    lines.append("")
    upper = sesh["upper"] if sesh["upper"] is not None else "unknown"
    lines.append(
        f"- lower {sesh['lower']}, upper {upper}, exact {sesh['exact']}, note: {sesh['note']}"
    )
    lines.append("")
    lines.append("## verdict")
    lines.append("")
    lines.append(f"- destabilized: {report['verdict']['destabilized']}")
    lines.append(f"- admissible c: {report['verdict']['admissible']}")
    if report["verdict"]["flags"]:
        lines.append(f"- flags: {'; '.join(report['verdict']['flags'])}")
    lines.append("")

    def window_lines(name: str, wd: dict) -> list[str]:
        out = [f"## {name}", ""]
        if wd["empty"]:
            out.append("- empty")
        for iv in wd["intervals"]:
            lo = iv["lo"]
            hi = iv["hi"]
            lo_s = lo["exact"] if "exact" in lo else f"[{lo['enclosure']['lo']}, {lo['enclosure']['hi']}]"
            if hi is None:
                hi_s = "inf"
            else:
                hi_s = hi["exact"] if "exact" in hi else f"[{hi['enclosure']['lo']}, {hi['enclosure']['hi']}]"
            out.append(f"- ({lo_s}, {hi_s})")
        out.append("")
        return out

    if "window_c" in report:
        lines.extend(window_lines("instability window in c", report["window_c"]))
    if "window_s" in report:
        lines.extend(window_lines("instability window in s", report["window_s"]))
    return "\n".join(lines)
