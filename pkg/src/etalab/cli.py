"""Command line front end: ``etalab <task> --job FILE [options]``.

Exit codes: 0 success, 1 unreadable or invalid job, 2 a standing hypothesis
fails, 3 a bound (J or D) is exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from math import factorial

from .checks import certify
from .errors import BoundError, EtalabError, HomogeneityError, HypothesisViolation, ParseError
from .invariants import (ab_identity_check, choose_E, eta, fit_even_odd, frac_str, gen_fun, hilbert_series,
                         koszul_residual, multiplicity_polynomial)
from .jobfile import FORMATS, TASKS, JobSpec, parse_job
from .modules import free_presentation
from .resolution import default_bounds
from .tor import ambient_tor_vanishing, rigidity_scan, tor_table

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_BOUND = 0, 1, 2, 3


def _error_object(exc: Exception, pair=None) -> dict:
    out = {"type": type(exc).__name__, "message": str(exc)}
    if pair is not None:
        out["pair"] = list(pair)
    if isinstance(exc, BoundError):
        out["suggested_J"] = exc.suggested_J
        out["suggested_D"] = exc.suggested_D
    return out


def _ring_json(job: JobSpec) -> dict:
    R = job.ring
    return {"field": str(R.field), "vars": list(R.variables),
            "relations": [R.format(f) for f in R.relations], "degrees": list(R.degrees),
            "v": R.v, "c": R.c, "n": R.n, "e_R": multiplicity_polynomial(R)}


def _bounds(job: JobSpec, M) -> tuple[int, int]:
    J, D = default_bounds(job.ring, M)
    return (J if job.J is None else job.J, D if job.D is None else job.D)


def _pair(job: JobSpec, names, task: str, errors: list) -> dict:
    R, c = job.ring, job.ring.c
    M, N = job.modules[names[0]], job.modules[names[1]]
    J, D = _bounds(job, M)
    out: dict = {"M": names[0], "N": names[1], "frontier": {"J": J, "D": D}}
    try:
        t = tor_table(M, N, R, J, D)
        out["tor"] = t.to_json()
        res = koszul_residual(t)
        out["residual"] = dict(res.to_json(), checked=[2 * c, J - 1])
        if task == "rigidity" or task == "report":
            if c >= 1:
                out["rigidity"] = [f.to_json() for f in rigidity_scan(t, c)]
        if task == "report":
            out["ab_identity"] = ab_identity_check(M, N, R, t).to_json()
            out["ambient_tor"] = ambient_tor_vanishing(M, N, R, D).to_json()
        if task in ("tor", "rigidity", "eta", "genfun", "report") and c < 1:
            if task != "tor":
                raise HypothesisViolation("eta_c and rigidity need codimension c >= 1")
            return out
        if task == "tor":
            fit_even_odd(t, c)  # bound sufficiency only
        if task in ("eta", "genfun", "report"):
            rep = eta(t, c)
            out["eta"] = rep.to_json()
        if task in ("genfun", "report"):
            E = choose_E(t, c)
            gens = [gen_fun(t, E, c), gen_fun(t, E + 2, c)]
            out["genfun"] = [g.to_json() for g in gens]
            target = 2 ** c * factorial(c) * rep.eta
            out["eta_consistency"] = {
                "expected_value_at_one": frac_str(target),
                "matches": all(g.value_at_one == target for g in gens),
                "E_independent": gens[0].value_at_one == gens[1].value_at_one,
            }
    except (BoundError, HypothesisViolation) as exc:
        errors.append(_error_object(exc, names))
    return out


def run(job: JobSpec, task: str | None = None) -> tuple[dict, int]:
    """Execute ``task`` (default: the job's own) and return (report, exit code)."""
    task = task or job.task
    report: dict = {"task": task, "ring": _ring_json(job)}
    errors: list = []
    D0 = job.D if job.D is not None else default_bounds(job.ring)[1]
    cert = certify(job.ring, D0)
    report["certificate"] = cert.to_json()
    if not cert.regular_sequence.verified:
        rs = cert.regular_sequence
        errors.append({"type": "HypothesisViolation",
                       "message": f"relations are not a regular sequence: dim R_{rs.degree} = "
                                  f"{rs.computed}, expected {rs.expected}"})
        report["errors"] = errors
        return report, EXIT_HYPOTHESIS
    if task == "hilbert":
        hs = {}
        for name, M in [("R", free_presentation(job.ring, (0,), "R"))] + list(job.modules.items()):
            D = job.D if job.D is not None else default_bounds(job.ring, M)[1]
            try:
                hs[name] = hilbert_series(M, job.ring, D).to_json()
            except BoundError as exc:
                errors.append(_error_object(exc))
        report["hilbert"] = hs
    elif task != "check":
        report["pairs"] = [_pair(job, p, task, errors) for p in job.pairs]
    report["errors"] = errors
    code = EXIT_OK
    if any(e["type"] == "HypothesisViolation" for e in errors):
        code = EXIT_HYPOTHESIS
    elif errors:
        code = EXIT_BOUND
    return report, code


# rendering ----------------------------------------------------------------------

def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "pairs" in report:
        for p in report["pairs"]:
            if "tor" not in p:
                continue
            dims = p["tor"]["dims"]
            buf.write(f"# Tor {p['M']} {p['N']}\n")
            w.writerow(["j\\i"] + list(range(len(dims[0]) if dims else 0)))
            for j, row in enumerate(dims):
                w.writerow([j] + row)
    elif "hilbert" in report:
        for name, h in report["hilbert"].items():
            w.writerow([name] + h["coeffs"])
    else:
        cert = report["certificate"]
        for k, v in cert.items():
            if isinstance(v, dict):
                for k2, v2 in v.items():
                    w.writerow([f"{k}.{k2}", json.dumps(v2)])
            else:
                w.writerow([k, v])
    return buf.getvalue()


def render_text(report: dict) -> str:
    r = report["ring"]
    lines = [f"ring: {r['field']}[{', '.join(r['vars'])}]/({', '.join(r['relations'])})"
             f"  v={r['v']} c={r['c']} n={r['n']}"]
    cert = report["certificate"]
    lines.append(f"regular sequence: {cert['regular_sequence']['status']}")
    lines.append(f"isolated singularity: {cert['isolated_singularity']['status']}")
    for name, h in report.get("hilbert", {}).items():
        lines.append(f"H_{name}: numerator {h['numerator']} / (1-t)^{h['pole_order']}")
    for p in report.get("pairs", []):
        lines.append(f"pair ({p['M']}, {p['N']}) frontier J={p['frontier']['J']} D={p['frontier']['D']}")
        if "tor" in p:
            betas = [x if x is not None else "inf" for x in p["tor"]["lengths"]]
            lines.append(f"  lengths: {betas}")
            lines.append(f"  Koszul onset: {p['residual']['onset']}")
        if "eta" in p:
            e = p["eta"]
            lines.append(f"  eta_{e['c']} = {e['eta']}" + (f", theta = {e['theta']}" if e["theta"] else ""))
            lines.append(f"  P_ev = {e['fit']['P_ev']}, P_odd = {e['fit']['P_odd']}")
        for g in p.get("genfun", []):
            lines.append(f"  eta_(c,{g['E']})(t) = {g['etaE_poly']}, at t=1: {g['value_at_one']}, "
                         f"order at t=1: {g['vanishing_order']}")
        for f in p.get("rigidity", []):
            lines.append(f"  zero window {f['window']}: violation at {f['violation_at']}")
        if "ab_identity" in p:
            lines.append(f"  AB identity deviation: {p['ab_identity']['max_deviation']}")
    for e in report.get("errors", []):
        lines.append(f"error: {e['type']}: {e['message']}")
    return "\n".join(lines) + "\n"


RENDER = {"json": render_json, "csv": render_csv, "text": render_text}


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgParser(prog="etalab", description="Tor, theta and eta invariants over graded complete intersections.")
    ap.add_argument("task", nargs="?", choices=TASKS, help="pipeline to run (default: the job's task)")
    ap.add_argument("--job", required=True, help="job file (TOML)")
    ap.add_argument("--J", type=int, help="homological bound")
    ap.add_argument("--D", type=int, help="internal degree bound")
    ap.add_argument("--field", help="Q or Fp:<prime>")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=FORMATS)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.job, encoding="utf-8") as fh:
            text = fh.read()
        job = parse_job(text, args.field)
    except OSError as exc:
        print(f"etalab: error: cannot read job file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, HomogeneityError) as exc:
        print(f"etalab: error: {args.job}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.J is not None:
        job.J = args.J
    if args.D is not None:
        job.D = args.D
    try:
        report, code = run(job, args.task)
    except EtalabError as exc:
        print(f"etalab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BOUND if isinstance(exc, BoundError) else EXIT_HYPOTHESIS
    text = RENDER[args.format or job.output_format](report)
    path = args.out
    if path is None and job.output_path:
        path = os.path.join(os.path.dirname(os.path.abspath(args.job)), job.output_path)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
