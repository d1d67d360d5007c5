"""Command-line front end.

Subcommands: spectrum, classify, permeability, greens, eval, verify,
laplace-spectrum, report.  Output is JSON (default) or CSV, written to
stdout or --out.  Numbers are formatted to 12 significant digits and
complex values appear as [re, im] pairs; every JSON document carries a
"schema": "v1" field.  Exit codes: 0 success, 2 validation error,
3 numerical/convergence error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import List, Optional

import numpy as np

from . import laplace, oracle, permeability, specfun, spectral
from .errors import ConvergenceError, DomainError
from .extensions import (PhysParams, Unitary2, bcform_to_json, cayley_to_bc,
                         named_extension, unitary_from_params)

_SCHEMA = "v1"


def _fmt(v: float) -> str:
    return "%.12g" % v


def _round12(obj):
    """Recursively clamp floats to 12 significant digits for stable output."""
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, complex):
        return [float(_fmt(obj.real)), float(_fmt(obj.imag))]
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(_fmt(float(obj)))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _emit(args, payload: dict, csv_rows: Optional[List[List]] = None,
          csv_header: Optional[List[str]] = None) -> None:
    if args.format == "csv":
        if csv_rows is None:
            raise DomainError("this subcommand has no CSV rendering")
        def cell(v):
            if isinstance(v, float):
                return _fmt(v)
            s = str(v)
            return '"%s"' % s if "," in s else s

        lines = [",".join(csv_header)]
        for row in csv_rows:
            lines.append(",".join(cell(v) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        payload = dict(payload)
        payload["schema"] = _SCHEMA
        text = json.dumps(_round12(payload), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args) -> PhysParams:
    return PhysParams(hbar=args.hbar, mass=args.mass, kappa=args.kappa)


def _unitary_from_args(args) -> Optional[Unitary2]:
    given = [x for x in (args.named, args.unitary, args.uparams)
             if x is not None]
    if len(given) > 1:
        raise DomainError("give at most one of --named, --unitary, --uparams")
    if args.named is not None:
        return named_extension(args.named)
    if args.unitary is not None:
        rows = json.loads(args.unitary)
        m = np.array([[complex(e[0], e[1]) if isinstance(e, list) else
                       complex(e) for e in row] for row in rows])
        return Unitary2(m)
    if args.uparams is not None:
        parts = [float(v) for v in args.uparams.split(",")]
        if len(parts) != 5:
            raise DomainError("--uparams wants theta,a_re,a_im,b_re,b_im")
        theta, ar, ai, br, bi = parts
        return unitary_from_params(theta, complex(ar, ai), complex(br, bi))
    return None


def _lambda_from_args(args) -> Optional[float]:
    if args.lam is None:
        return None
    if str(args.lam).strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    return float(args.lam)


def _add_common(sp):
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--mass", type=float, default=1.0)
    sp.add_argument("--kappa", type=float, default=1.0)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out", default=None)
    sp.add_argument("--tol", type=float, default=None)


def _add_extension(sp):
    sp.add_argument("--named", default=None,
                    help="dirichlet | neumannlike | periodic | antiperiodic")
    sp.add_argument("--unitary", default=None,
                    help="JSON 2x2 matrix, complex entries as [re, im]")
    sp.add_argument("--uparams", default=None,
                    help="theta,a_re,a_im,b_re,b_im")
    sp.add_argument("--lambda", dest="lam", default=None,
                    help="3D coupling lambda (real or 'inf')")
    sp.add_argument("--theta", type=float, default=None,
                    help="2D extension angle (label only)")


def _require_unitary(args) -> Unitary2:
    u = _unitary_from_args(args)
    if u is None:
        raise DomainError("a 1D extension needs --named, --unitary or "
                          "--uparams")
    return u


def _cmd_spectrum(args) -> int:
    params = _params(args)
    if args.dim == 1:
        u = _require_unitary(args)
        records = spectral.solve_spectrum_1d(u, params, args.tau_max)
    elif args.dim == 3:
        lam = _lambda_from_args(args)
        if lam is None and args.named is not None \
                and args.named.lower() == "dirichlet":
            lam = 0.0
        if lam is None:
            raise DomainError("a 3D extension needs --lambda (or --named "
                              "dirichlet)")
        if lam == 0.0:
            records = spectral.dirichlet_spectrum_3d(params, args.n_max)
        else:
            records = spectral.spectrum_3d_lambda(params, lam, args.tau_max)
    else:
        raise DomainError("eigenvalue computation for 2D extensions is out "
                          "of scope (no closed-form condition)")
    levels = [{"n": i + 1, "tau": r.tau, "energy": r.energy,
               "multiplicity": r.multiplicity}
              for i, r in enumerate(records)]
    rows = [[lv["n"], lv["energy"], lv["multiplicity"]] for lv in levels]
    _emit(args, {"command": "spectrum", "dim": args.dim, "levels": levels},
          rows, ["n", "energy", "multiplicity"])
    return 0


def _cmd_classify(args) -> int:
    u = _require_unitary(args)
    bc = cayley_to_bc(u)
    _emit(args, {"command": "classify", "bcform": bcform_to_json(bc)})
    return 0


def _cmd_permeability(args) -> int:
    u = _require_unitary(args)
    v = permeability.classify_extension(u)
    payload = {"command": "permeability", "verdict": v.verdict,
               "case": v.case_tag}
    if v.witness is not None:
        payload["witness"] = {
            "phi_plus": v.witness.phi_plus,
            "phi_minus": v.witness.phi_minus,
            "phitilde_plus": v.witness.phitilde_plus,
            "phitilde_minus": v.witness.phitilde_minus,
        }
        payload["witness_j0"] = v.witness_j0
    rows = [[v.verdict, v.case_tag,
             _fmt(v.witness_j0) if v.witness_j0 is not None else ""]]
    _emit(args, payload, rows, ["verdict", "case", "witness_j0"])
    return 0


def _cmd_greens(args) -> int:
    params = _params(args)
    xs = [float(v) for v in str(args.x).split(",")]
    ys = [float(v) for v in str(args.y).split(",")]
    if len(xs) != len(ys):
        raise DomainError("--x and --y need the same number of entries")
    values = [spectral.greens_dirichlet(params, args.energy, x, y)
              for x, y in zip(xs, ys)]
    entries = [{"x": x, "y": y, "value": v}
               for x, y, v in zip(xs, ys, values)]
    rows = [[e["x"], e["y"], e["value"]] for e in entries]
    _emit(args, {"command": "greens", "energy": args.energy,
                 "values": entries}, rows, ["x", "y", "value"])
    return 0


def _cmd_eval(args) -> int:
    params = _params(args)
    fn = args.fn
    if fn == "omega":
        if args.energy is None:
            raise DomainError("eval --fn omega needs --energy")
        ov = spectral.omega(params, args.energy)
        payload = {"command": "eval", "fn": fn, "energy": ov.energy,
                   "value": ov.omega, "nearest_pole_tau": ov.nearest_pole_tau}
        rows = [[ov.energy, ov.omega]]
        _emit(args, payload, rows, ["energy", "value"])
        return 0
    if fn in ("whittaker_w", "whittaker_m"):
        if args.tau is None or args.mu is None or args.z is None:
            raise DomainError("eval --fn %s needs --tau, --mu, --z" % fn)
        f = specfun.whittaker_w if fn == "whittaker_w" else specfun.whittaker_m
        res = f(args.tau, args.mu, args.z)
    elif fn in ("gamma", "digamma"):
        if args.z is None:
            raise DomainError("eval --fn %s needs --z" % fn)
        f = specfun.gamma_fn if fn == "gamma" else specfun.digamma
        res = f(args.z)
    elif fn in ("airy_ai", "airy_ai_prime"):
        if args.z is None:
            raise DomainError("eval --fn %s needs --z" % fn)
        f = specfun.airy_ai if fn == "airy_ai" else specfun.airy_ai_prime
        res = f(args.z)
    else:
        raise DomainError("unknown function %r" % (fn,))
    payload = {"command": "eval", "fn": fn, "value": res.value,
               "abs_err_estimate": res.abs_err_estimate}
    rows = [[res.value.real, res.value.imag, res.abs_err_estimate]]
    _emit(args, payload, rows, ["value_re", "value_im", "abs_err_estimate"])
    return 0


def _cmd_verify(args) -> int:
    params = _params(args)
    tol = args.tol if args.tol is not None else 1e-5
    checks = []

    def check(name, ok, detail):
        checks.append({"name": name, "pass": bool(ok), "detail": detail})

    # closed form vs shooting oracle, 1D Dirichlet
    recs = spectral.solve_spectrum_1d(named_extension("dirichlet"),
                                      params, 4.2)
    orc = oracle.shoot_spectrum_1d(named_extension("dirichlet"), params, 4.2)
    worst = max(abs(r.energy - e) / abs(e)
                for r, (e, _) in zip(recs, orc))
    check("spectrum_1d_dirichlet_vs_oracle", worst < tol,
          {"max_rel_error": worst})

    # 3D channels l = 0, 1, 2
    for l in (0, 1, 2):
        lv = oracle.shoot_eigenvalues_halfline(params, l=l, dim=3,
                                               bc_at_eps="dirichlet")
        exact = [spectral.energy_of_tau(params, float(n)).energy
                 for n in range(l + 1, 5)]
        worst = max(abs(a - b) / abs(b) for a, b in zip(lv, exact))
        check("spectrum_3d_l%d_vs_oracle" % l, worst < tol,
              {"max_rel_error": worst})

    # deficiency table
    expected = {(1, 0): 2, (2, 0): 1, (3, 0): 1}
    for (dim, l), want in expected.items():
        rep = oracle.integrability_evidence(params, dim, l)
        check("deficiency_dim%d" % dim, rep.operator_index == want,
              {"operator_index": rep.operator_index, "expected": want})

    # Airy spectrum vs finite differences
    sp = laplace.airy_spectrum_1d(params, 8)
    fd = oracle.fd_linear_levels(params, 8)
    worst = max(abs(pe.energy - e) / e for pe, (e, _) in zip(sp, fd))
    check("airy_vs_fd_oracle", worst < 1e-6, {"max_rel_error": worst})

    ok = all(c["pass"] for c in checks)
    _emit(args, {"command": "verify", "pass": ok, "checks": checks},
          [[c["name"], c["pass"]] for c in checks], ["check", "pass"])
    return 0 if ok else 3


def _cmd_laplace_spectrum(args) -> int:
    params = _params(args)
    sp = laplace.airy_spectrum_1d(params, args.n_max)
    levels = [{"n": pe.index, "parity": pe.parity, "energy": pe.energy}
              for pe in sp]
    payload = {"command": "laplace-spectrum", "levels": levels}
    if args.compare_asymptotic is not None:
        payload["asymptotic_comparison"] = laplace.\
            compare_asymptotic_conventions(params, args.compare_asymptotic)
    rows = [[lv["n"], lv["parity"], lv["energy"]] for lv in levels]
    _emit(args, payload, rows, ["n", "parity", "energy"])
    return 0


def _cmd_report(args) -> int:
    rep = laplace.selfadjointness_report()
    rows = []
    for key in ("V1", "V2", "V3"):
        r = rep[key]
        rows.append([key, r["domain"], r["deficiency_index"], r["spectrum"]])
    for dom, idx in rep["VC"]["deficiency_indices"].items():
        rows.append(["VC", dom, idx, ""])
    _emit(args, {"command": "report", "report": rep},
          rows, ["potential", "domain", "deficiency_index", "spectrum"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="coulombext",
        description="Self-adjoint extensions of the Coulomb Hamiltonian: "
                    "spectra, Green's function, permeability.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="bound-state spectrum")
    _add_common(sp)
    _add_extension(sp)
    sp.add_argument("--dim", type=int, choices=(1, 2, 3), default=1)
    sp.add_argument("--tau-max", type=float, default=4.2)
    sp.add_argument("--n-max", type=int, default=4)
    sp.set_defaults(fn_impl=_cmd_spectrum)

    sp = sub.add_parser("classify", help="boundary-condition normal form")
    _add_common(sp)
    _add_extension(sp)
    sp.set_defaults(fn_impl=_cmd_classify)

    sp = sub.add_parser("permeability", help="permeability verdict")
    _add_common(sp)
    _add_extension(sp)
    sp.set_defaults(fn_impl=_cmd_permeability)

    sp = sub.add_parser("greens", help="Dirichlet Green's function values")
    _add_common(sp)
    sp.add_argument("--energy", type=float, required=True)
    sp.add_argument("--x", required=True, help="comma-separated points")
    sp.add_argument("--y", required=True, help="comma-separated points")
    sp.set_defaults(fn_impl=_cmd_greens)

    sp = sub.add_parser("eval", help="evaluate a special function")
    _add_common(sp)
    sp.add_argument("--fn", required=True,
                    choices=("omega", "whittaker_w", "whittaker_m", "gamma",
                             "digamma", "airy_ai", "airy_ai_prime"))
    sp.add_argument("--tau", type=float, default=None)
    sp.add_argument("--mu", type=float, default=None)
    sp.add_argument("--z", type=float, default=None)
    sp.add_argument("--energy", type=float, default=None)
    sp.set_defaults(fn_impl=_cmd_eval)

    sp = sub.add_parser("verify", help="run the oracle cross-check suite")
    _add_common(sp)
    sp.set_defaults(fn_impl=_cmd_verify)

    sp = sub.add_parser("laplace-spectrum",
                        help="spectrum of the linear potential kappa |x|")
    _add_common(sp)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--compare-asymptotic", type=int, default=None)
    sp.set_defaults(fn_impl=_cmd_laplace_spectrum)

    sp = sub.add_parser("report", help="self-adjointness summary table")
    _add_common(sp)
    sp.set_defaults(fn_impl=_cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.fn_impl(args)
    except DomainError as exc:
        sys.stderr.write(json.dumps(
            {"schema": _SCHEMA, "error": type(exc).__name__,
             "message": str(exc)}) + "\n")
        return 2
    except (ConvergenceError, ArithmeticError) as exc:
        sys.stderr.write(json.dumps(
            {"schema": _SCHEMA, "error": type(exc).__name__,
             "message": str(exc)}) + "\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
