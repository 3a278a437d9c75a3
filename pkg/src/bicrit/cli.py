"""Command-line surface with machine-readable, reproducible reports.

Every run prints one JSON report (or CSV for the flat scan tables) to
stdout; progress notes go to stderr.  All numeric payloads are exact:
integers as decimal strings, rationals as "num/den" strings.  Re-running
the ``command`` + ``inputs`` block of any JSON report reproduces the
report byte for byte apart from the ``timings`` field.

Exit codes: 0 success / mathematical PASS, 1 mathematical FAIL (a
certificate check failed), 2 usage or resource errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .arith import ExtVal
from .belyi import belyi_coeffs, ncritical_form
from .errors import DomainError, ResourceBudgetError
from .idf import (
    IdfWitness,
    conjecture_check,
    find_idf_prime,
    mordell_candidates,
    scan_witnesses,
)
from .pcf import (
    DEFAULT_MONOMIAL_BUDGET,
    critical_orbit_poly,
    integrality_certificate,
    ncrit_counterexamples,
    transversality_check,
)
from .polyring import NewtonPolygon, SparsePoly, UniPoly
from .valdyn import ValParams, classify_case, divergence_certificate, orbit_val

__all__ = ["main", "entry"]

EXIT_OK = 0
EXIT_MATH_FAIL = 1
EXIT_USAGE = 2

_CSV_COMMANDS = {"idf scan", "idf mordell"}


# ---------------------------------------------------------------------------
# exact serialization helpers
# ---------------------------------------------------------------------------


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _extval(v: ExtVal) -> str:
    return "inf" if v.is_infinite else _frac(v.finite)


def _unipoly(p: UniPoly, var: str) -> dict:
    return {
        "variable": var,
        "coefficients": [_frac(c) for c in p.coeffs],
        "text": p.render(var),
    }


def _sparse(p: SparsePoly) -> dict:
    return {
        ",".join(str(e) for e in exps): _frac(c)
        for exps, c in sorted(p.terms.items())
    }


def _witness(w: IdfWitness | None) -> dict | None:
    if w is None:
        return None
    return {"p": str(w.p), "r": str(w.r), "e": str(w.e)}


def _polygon(np: NewtonPolygon | None) -> dict | None:
    if np is None:
        return None
    return {
        "p": str(np.p),
        "vanishing_order": str(np.vanishing_order),
        "segments": [
            {"slope": _frac(s.slope), "length": str(s.length)} for s in np.segments
        ],
        "root_valuations": [
            {"valuation": _extval(v), "multiplicity": str(m)}
            for v, m in np.root_valuations()
        ],
    }


def _field_elem(x) -> list[str]:
    return [str(c) for c in x.coeffs]


# ---------------------------------------------------------------------------
# handlers: each returns (payload, verdict, exit_code, csv_rows_or_None)
# ---------------------------------------------------------------------------


def _h_belyi_coeffs(ns):
    b = belyi_coeffs(ns.d, ns.k)
    payload = {
        "d": str(b.d),
        "k": str(b.k),
        "b": [_frac(c) for c in b.coeffs],
        "polynomial": _unipoly(b.polynomial(), "z"),
    }
    return payload, "OK", EXIT_OK, None


def _h_belyi_ncrit(ns):
    profile = [int(t) for t in ns.profile.split(",") if t.strip()]
    if ns.gamma is None or ns.gamma.strip().lower() in ("sym", "symbolic"):
        gammas = None
    else:
        gammas = [Fraction(t) for t in ns.gamma.split(",") if t.strip()]
    form = ncritical_form(ns.d, profile, gammas)
    coeffs = {}
    for e, c in form.coeffs:
        if form.symbolic:
            coeffs[str(e)] = {"gamma_poly": [_frac(x) for x in c.coeffs]}
        else:
            coeffs[str(e)] = _frac(c)
    payload = {
        "d": str(form.d),
        "profile": [str(k) for k in form.profile],
        "symbolic": form.symbolic,
        "gammas": None if form.gammas is None else [_frac(g) for g in form.gammas],
        "coefficients_by_z_power": coeffs,
    }
    return payload, "OK", EXIT_OK, None


def _h_idf_find(ns):
    w = find_idf_prime(ns.d, ns.k)
    payload = {"d": str(ns.d), "k": str(ns.k), "witness": _witness(w)}
    return payload, ("FOUND" if w else "NONE"), EXIT_OK, None


def _h_idf_conjecture(ns):
    w = conjecture_check(ns.n, ns.k)
    payload = {"n": str(ns.n), "k": str(ns.k), "witness": _witness(w)}
    return payload, ("FOUND" if w else "NONE"), EXIT_OK, None


def _h_idf_scan(ns):
    dmin = 2 * ns.k + 2 if ns.dmin is None else ns.dmin
    ns.dmin = dmin  # echoed in the inputs block for exact re-runs
    print(
        f"scanning k={ns.k}, d in [{dmin}, {ns.dmax}], jobs={ns.jobs}",
        file=sys.stderr,
    )
    witnesses = scan_witnesses(dmin, ns.dmax, ns.k, jobs=ns.jobs)
    rows = [
        {
            "d": str(d),
            "k": str(ns.k),
            "has_idf": "false" if w is None else "true",
            "p": "" if w is None else str(w.p),
            "r": "" if w is None else str(w.r),
            "e": "" if w is None else str(w.e),
        }
        for d, w in witnesses
    ]
    payload = {
        "dmin": str(dmin),
        "dmax": str(ns.dmax),
        "k": str(ns.k),
        "exceptions": [str(d) for d, w in witnesses if w is None],
        "range_note": "certifies only the scanned range; larger d are not decided",
        "rows": rows,
    }
    return payload, "OK", EXIT_OK, rows


def _h_idf_mordell(ns):
    cands = mordell_candidates(ns.xmax)
    rows = [
        {
            "x": str(m.x),
            "y": str(m.y),
            "b": str(m.b),
            "c": str(m.c),
            "d": str(m.d),
        }
        for m in cands
    ]
    payload = {"xmax": str(ns.xmax), "candidates": rows}
    return payload, "OK", EXIT_OK, rows


def _val_params(ns) -> ValParams:
    return ValParams(
        ns.d,
        ns.k,
        ns.r,
        ns.e,
        ExtVal.parse(ns.valpha),
        ExtVal.parse(ns.vbeta),
    )


def _h_valdyn_orbit(ns):
    params = _val_params(ns)
    steps = orbit_val(ns.start, params, ns.steps)
    case = classify_case(params)
    cert = None
    if case.value != "INTEGRAL":
        c = divergence_certificate(params)
        cert = {
            "kind": c.kind,
            "start": str(c.start),
            "steps": [
                {"value": _extval(t.value), "exact": t.exact} for t in c.steps
            ],
            "step_decrement": None
            if c.step_decrement is None
            else _frac(c.step_decrement),
        }
    payload = {
        "case": case.value,
        "orbit": [
            {"step": str(i + 1), "value": _extval(t.value), "exact": t.exact}
            for i, t in enumerate(steps)
        ],
        "certificate": cert,
    }
    return payload, case.value, EXIT_OK, None


def _h_valdyn_classify(ns):
    case = classify_case(_val_params(ns))
    return {"case": case.value}, case.value, EXIT_OK, None


def _h_pcf_locus(ns):
    F = critical_orbit_poly(ns.d, ns.k, 0, ns.n, ns.budget)
    G = critical_orbit_poly(ns.d, ns.k, 1, ns.m, ns.budget)
    payload = {
        "d": str(ns.d),
        "k": str(ns.k),
        "n": str(ns.n),
        "m": str(ns.m),
        "F": _sparse(F.poly),
        "G": _sparse(G.poly),
    }
    return payload, "OK", EXIT_OK, None


def _h_pcf_integrality(ns):
    cert = integrality_certificate(ns.d, ns.k, ns.n, ns.m, ns.budget)
    payload = {
        "d": str(ns.d),
        "k": str(ns.k),
        "n": str(ns.n),
        "m": str(ns.m),
        "witness": _witness(cert.witness),
        "res_a": _unipoly(cert.res_a, "a"),
        "res_c": _unipoly(cert.res_c, "c"),
        "stripped_a_power": str(cert.stripped_a_power),
        "stripped_a_content": _frac(cert.stripped_a_content),
        "stripped_c_content": _frac(cert.stripped_c_content),
        "newton_polygon_a": _polygon(cert.polygon_a),
        "newton_polygon_c": _polygon(cert.polygon_c),
        "a_valuations_all_zero": cert.a_valuations_all_zero,
        "c_valuations_nonnegative": cert.c_valuations_nonnegative,
    }
    code = EXIT_OK if cert.verdict == "PASS" else EXIT_MATH_FAIL
    return payload, cert.verdict, code, None


def _h_pcf_transversality(ns):
    rep = transversality_check(ns.d, ns.k, ns.n, ns.m, e_max=ns.emax, budget=ns.budget)
    fields = []
    for res in rep.per_field:
        fields.append(
            {
                "field": repr(res.field),
                "excluded_alpha_zero": str(res.excluded_alpha_zero),
                "solutions": [
                    {
                        "alpha": _field_elem(s.alpha),
                        "beta": _field_elem(s.beta),
                        "jacobian": _field_elem(s.jacobian_value),
                    }
                    for s in res.solutions
                ],
            }
        )
    payload = {
        "d": str(ns.d),
        "k": str(ns.k),
        "n": str(ns.n),
        "m": str(ns.m),
        "e_max": str(ns.emax),
        "witness": _witness(rep.witness),
        "per_field": fields,
        "alpha_jacobian_signs": [str(s) for s in rep.signs],
        "failure": None
        if rep.failure is None
        else {
            "alpha": _field_elem(rep.failure.alpha),
            "beta": _field_elem(rep.failure.beta),
            "jacobian": _field_elem(rep.failure.jacobian_value),
        },
    }
    code = EXIT_OK if rep.verdict == "PASS" else EXIT_MATH_FAIL
    return payload, rep.verdict, code, None


def _h_pcf_counterexamples(ns):
    rep = ncrit_counterexamples()
    payload = {
        "degree10_profile_7_1_constant_mod_7": rep.degree10_constant_mod7,
        "degree4_profile_1_1_coefficients_match": rep.degree4_coeffs_match,
        "reduced_quartic_mod_3": rep.reduced_quartic,
        "jacobian_identically_zero_mod_3": rep.jacobian_identically_zero,
        "periods_checked": [
            ",".join(str(x) for x in trip) for trip in rep.periods_checked
        ],
    }
    code = EXIT_OK if rep.verdict == "CONFIRMED" else EXIT_MATH_FAIL
    return payload, rep.verdict, code, None


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _int_flag(parser, name, required=True, default=None, help=""):
    parser.add_argument(name, type=int, required=required, default=default, help=help)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="bicrit",
        description="Exact certificates for bicritical PCF polynomial dynamics.",
    )
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="group", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_MONOMIAL_BUDGET,
        help="monomial budget for symbolic computations",
    )

    # belyi -----------------------------------------------------------------
    belyi = sub.add_parser("belyi", help="critical-point normal forms")
    bsub = belyi.add_subparsers(dest="cmd", required=True)
    bc = bsub.add_parser("coeffs", parents=[common], help="normal-form coefficients")
    _int_flag(bc, "--d")
    _int_flag(bc, "--k")
    bc.set_defaults(handler=_h_belyi_coeffs, inputs=("d", "k"))
    bn = bsub.add_parser("ncrit", parents=[common], help="n-critical normal form")
    _int_flag(bn, "--d")
    bn.add_argument("--profile", required=True, help="comma-separated k_0,..,k_{n-2}")
    bn.add_argument(
        "--gamma",
        default=None,
        help="'sym' for a symbolic gamma, or comma-separated rationals",
    )
    bn.set_defaults(handler=_h_belyi_ncrit, inputs=("d", "profile", "gamma"))

    # idf -------------------------------------------------------------------
    idf = sub.add_parser("idf", help="index-divisor-free prime search")
    isub = idf.add_subparsers(dest="cmd", required=True)
    ifind = isub.add_parser("find", parents=[common], help="smallest IDF witness")
    _int_flag(ifind, "--d")
    _int_flag(ifind, "--k")
    ifind.set_defaults(handler=_h_idf_find, inputs=("d", "k"))
    iscan = isub.add_parser("scan", parents=[common], help="scan a degree range")
    _int_flag(iscan, "--dmin", required=False, help="default: 2k + 2")
    _int_flag(iscan, "--dmax", required=False, default=10**5)
    _int_flag(iscan, "--k")
    iscan.add_argument("--jobs", type=int, default=1, help="parallel workers")
    iscan.set_defaults(handler=_h_idf_scan, inputs=("dmin", "dmax", "k", "jobs"))
    imord = isub.add_parser("mordell", parents=[common], help="bounded Mordell sieve")
    _int_flag(imord, "--xmax")
    imord.set_defaults(handler=_h_idf_mordell, inputs=("xmax",))
    iconj = isub.add_parser(
        "conjecture", parents=[common], help="witness over n(n-1)...(n-k)"
    )
    _int_flag(iconj, "--n")
    _int_flag(iconj, "--k")
    iconj.set_defaults(handler=_h_idf_conjecture, inputs=("n", "k"))

    # valdyn ----------------------------------------------------------------
    vd = sub.add_parser("valdyn", help="min-plus valuation dynamics")
    vsub = vd.add_subparsers(dest="cmd", required=True)

    def _vd_flags(p, with_orbit):
        _int_flag(p, "--d")
        _int_flag(p, "--k")
        _int_flag(p, "--r")
        _int_flag(p, "--e")
        p.add_argument("--valpha", required=True, help="v(alpha): rational or 'inf'")
        p.add_argument("--vbeta", required=True, help="v(beta): rational or 'inf'")
        if with_orbit:
            p.add_argument("--start", type=int, choices=(0, 1), required=True)
            p.add_argument("--steps", type=int, default=8)

    vorb = vsub.add_parser("orbit", parents=[common], help="orbit valuation bounds")
    _vd_flags(vorb, with_orbit=True)
    vorb.set_defaults(
        handler=_h_valdyn_orbit,
        inputs=("d", "k", "r", "e", "valpha", "vbeta", "start", "steps"),
    )
    vcls = vsub.add_parser("classify", parents=[common], help="parameter case tag")
    _vd_flags(vcls, with_orbit=False)
    vcls.set_defaults(
        handler=_h_valdyn_classify, inputs=("d", "k", "r", "e", "valpha", "vbeta")
    )

    # pcf -------------------------------------------------------------------
    pcf = sub.add_parser("pcf", help="locus and transversality certificates")
    psub = pcf.add_subparsers(dest="cmd", required=True)

    def _locus_flags(p):
        _int_flag(p, "--d")
        _int_flag(p, "--k")
        _int_flag(p, "--n")
        _int_flag(p, "--m")

    plocus = psub.add_parser("locus", parents=[common, budget], help="F_n and G_m")
    _locus_flags(plocus)
    plocus.set_defaults(handler=_h_pcf_locus, inputs=("d", "k", "n", "m", "budget"))
    pint = psub.add_parser(
        "integrality", parents=[common, budget], help="Newton-polygon certificate"
    )
    _locus_flags(pint)
    pint.set_defaults(
        handler=_h_pcf_integrality, inputs=("d", "k", "n", "m", "budget")
    )
    ptrv = psub.add_parser(
        "transversality", parents=[common, budget], help="Jacobian mod p"
    )
    _locus_flags(ptrv)
    ptrv.add_argument("--emax", type=int, default=1, help="largest extension degree")
    ptrv.set_defaults(
        handler=_h_pcf_transversality, inputs=("d", "k", "n", "m", "emax", "budget")
    )
    pctr = psub.add_parser(
        "counterexamples", parents=[common], help="n-critical failure checks"
    )
    pctr.set_defaults(handler=_h_pcf_counterexamples, inputs=())
    return top


def _emit_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code not in (0, None) else EXIT_OK

    started = time.perf_counter()
    try:
        payload, verdict, code, rows = ns.handler(ns)
    except (DomainError, ResourceBudgetError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    elapsed_us = int((time.perf_counter() - started) * 1_000_000)

    if ns.format == "csv":
        command = f"{ns.group} {ns.cmd}"
        if command not in _CSV_COMMANDS or rows is None:
            print("error: csv output is available for scan tables only", file=sys.stderr)
            return EXIT_USAGE
        sys.stdout.write(_emit_csv(rows))
        return code

    report = {
        "schema": "bicrit.report/1",
        "tool_version": __version__,
        "command": f"{ns.group} {ns.cmd}",
        "inputs": {
            name: ("" if getattr(ns, name) is None else str(getattr(ns, name)))
            for name in ns.inputs
        },
        "verdict": verdict,
        "result": payload,
        "timings": {"elapsed_us": str(elapsed_us)},
    }
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
