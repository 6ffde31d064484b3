"""Command-line harness for the verification battery.

Exit status: 0 when every requested check passes, 1 on a verification
failure, 2 on a usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time

import numpy as np

from . import checks as C
from . import gauge as G
from . import nurowski as nw
from .curvature import curvature_at, gauss_curvature
from .errors import VerificationError
from .manifold import sample_points
from .pfaffian import SystemParams, check_structure_equations, growth_vector

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PARAM_KEYS = ("a1", "b1", "c1", "a2", "b2", "c2", "k")


class ConfigError(Exception):
    pass


_SHORT = re.compile(r"^([+-]?)(\d*\.?\d*(?:e[+-]?\d+)?)\*?i(?:/(\d*\.?\d+(?:e[+-]?\d+)?))?$")


def parse_complex(text) -> complex:
    """[re, im], a plain number, or the shorthands 'i/3', '3i', '-i/3'."""
    if isinstance(text, (list, tuple)):
        if len(text) != 2 or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in text):
            raise ConfigError(f"complex value must be [re, im], got {text!r}")
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return complex(text)
    if not isinstance(text, str):
        raise ConfigError(f"cannot read a complex number from {text!r}")
    s = text.strip().replace(" ", "")
    if s.startswith("["):
        try:
            return parse_complex(json.loads(s))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad complex literal {text!r}: {exc}") from None
    m = _SHORT.match(s)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        mag = float(m.group(2)) if m.group(2) not in ("", None) else 1.0
        den = float(m.group(3)) if m.group(3) else 1.0
        if den == 0:
            raise ConfigError(f"division by zero in {text!r}")
        return complex(0.0, sign * mag / den)
    try:
        z = complex(s.replace("i", "j"))
    except ValueError:
        raise ConfigError(f"cannot read a complex number from {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ConfigError(f"non-finite value {text!r}")
    return z


def load_params(path: str) -> SystemParams:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read params file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"params file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("params file must hold a JSON object")
    missing = [k for k in PARAM_KEYS if k not in data]
    extra = sorted(set(data) - set(PARAM_KEYS))
    if missing or extra:
        raise ConfigError(f"params file keys: missing {missing}, unexpected {extra}")
    try:
        return SystemParams(**{k: parse_complex(data[k]) for k in PARAM_KEYS})
    except VerificationError as exc:
        raise ConfigError(str(exc)) from None


# --------------------------------------------------------------------------
# output


def _fmt(v) -> str:
    return json.dumps(v, sort_keys=True)


def render(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2, sort_keys=True) + "\n"
    lines = ["| check | status | max residual | anchor |", "|---|---|---|---|"]
    for c in rep["checks"]:
        lines.append(f"| {c['name']} | {c['status']} | {c['max_residual']} | {c['paper_anchor']} |")
    s = rep["summary"]
    lines += ["", f"**{s['passed']}/{s['total']} passed**, {s['failed']} failed", ""]
    for c in rep["checks"]:
        lines += [f"### {c['name']}", "", f"- expected: `{_fmt(c['expected'])}`",
                  f"- observed: `{_fmt(c['observed'])}`"]
        if c["runtime_ms"] is not None:
            lines.append(f"- runtime: {c['runtime_ms']} ms")
        lines.append("")
    return "\n".join(lines)


def emit(results: list, args) -> int:
    rep = C.report(results)
    text = render(rep, args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigError(f"cannot write report: {exc}") from None
    else:
        sys.stdout.write(text)
    return EXIT_OK if rep["summary"]["failed"] == 0 else EXIT_FAIL


def _config(args, **extra) -> C.RunConfig:
    try:
        return C.RunConfig(tol=args.tol, points=args.points, seed=args.seed,
                           timing=args.timing, **extra)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _timed(name, anchor, cfg, fn) -> C.CheckResult:
    t0 = time.perf_counter()
    acc, expected, observed = fn()
    ms = round((time.perf_counter() - t0) * 1000, 1) if cfg.timing else None
    if acc.failures and isinstance(observed, dict):
        observed = dict(observed, failures=acc.failures)
    return C.CheckResult(name, anchor, "pass" if acc.ok else "fail", acc.worst, expected, observed, ms)


# --------------------------------------------------------------------------
# commands


def cmd_verify_all(args) -> int:
    cfg = _config(args)
    only = args.only.split(",") if args.only else None
    if only:
        unknown = sorted(set(only) - {s.name for s in C.CHECKS})
        if unknown:
            raise ConfigError(f"unknown checks {unknown}")
    return emit(C.run_all(cfg, only), args)


def _on_locus(a2: complex, c2: complex) -> bool:
    scale = max(abs(a2), abs(c2)) ** 2
    return abs(9 * a2**2 + c2**2) < 1e-12 * scale or abs(a2**2 + 9 * c2**2) < 1e-12 * scale


def cmd_weyl(args) -> int:
    a2, c2 = parse_complex(args.a2), parse_complex(args.c2)
    if a2 == 0:
        raise ConfigError("a2 must be nonzero")
    if a2**2 + c2**2 == 0:
        raise ConfigError("a2^2 + c2^2 must be nonzero")
    cfg = _config(args)
    real_path = a2.imag == 0 and a2.real > 0 and c2.imag == 0

    def run():
        acc = C._Acc()
        pts = sample_points(cfg.rng(20), cfg.n(5 if real_path else 50))
        if real_path:
            v = C.w2424_values(a2.real, c2.real, pts)
            w = complex(np.mean(v["omega"]))
            cf = v["closed"]
            rel = abs(abs(w) - abs(cf)) / abs(cf)
            acc.below("|W2424| relative to closed form", rel, cfg.eff(1e-6))
            acc.below("pointwise constancy", float(np.max(np.abs(v["omega"] - w))) / abs(cf), cfg.eff(1e-6))
            return acc, {"W2424_closed_form": cf}, {
                "W2424": w, "W2424_theta_frame": complex(np.mean(v["theta"])),
                "sign_relative_to_closed_form": int(np.sign((w / cf).real)), "relative_error": rel}
        ct = curvature_at(nw.nurowski_metric_gtilde(SystemParams(a2=a2, c2=c2)), pts)
        m = float(np.max(np.abs(ct.weyl)))
        predicted = _on_locus(a2, c2)
        flat = m < cfg.eff(1e-7)
        acc.true(f"flatness {flat} disagrees with the locus prediction {predicted}", flat == predicted)
        if predicted:
            acc.below("max |Weyl|", m, cfg.eff(1e-7))
        return acc, {"flat": predicted}, {"flat": flat, "max_weyl": m}

    return emit([_timed("weyl", "weyl-component-w2424", cfg, run)], args)


def cmd_gauss(args) -> int:
    cfg = _config(args)
    K, rate = (1 / 9, 1 / 3) if args.case == "A" else (9.0, 3.0)

    def run():
        acc = C._Acc()
        pts = C._surface_points(cfg.rng(21), cfg.n(50), rate)
        k = gauss_curvature(nw.surface_metric(args.case), pts)
        res = float(np.max(np.abs(k - K)))
        acc.below("Gauss curvature", res, cfg.eff(1e-9))
        return acc, {"K": K}, {"K": complex(np.mean(k)), "max_deviation": res}

    return emit([_timed(f"gauss_{args.case}", "surface-gauss-curvature", cfg, run)], args)


def _matrix_json(m) -> list:
    return [[complex(z) for z in row] for row in np.asarray(m)]


def cmd_gauge(args) -> int:
    try:
        gc = G.GaugeCase(args.case, args.sign, args.variant)
    except VerificationError as exc:
        raise ConfigError(str(exc)) from None
    if not math.isfinite(args.r):
        raise ConfigError("r must be finite")
    cfg = _config(args)

    def run():
        acc = C._Acc()
        t = G.bracket_table(gc, [args.r])
        for k, v in t.residuals.items():
            acc.below(k, v, cfg.eff(1e-10))
        observed = {k: {"matrix": _matrix_json(v[0]), "E_components": G.components(v[0]),
                        "residual": t.residuals[k]} for k, v in t.computed.items()}
        expected = {k: _matrix_json(v[0]) for k, v in t.expected.items()}
        if gc.case == "A" and gc.variant == "complex":
            rs = G.rescaled_brackets(gc, [args.r])
            for k, v in rs.residuals.items():
                acc.below(k, v, cfg.eff(1e-10))
                expected[k] = _matrix_json(rs.expected[k][0]) if rs.expected[k].ndim == 3 else rs.expected[k][0]
                observed[k] = {"value": _matrix_json(rs.computed[k][0]) if rs.computed[k].ndim == 3
                               else rs.computed[k][0], "residual": v}
        return acc, expected, observed

    return emit([_timed(f"gauge_{gc.case}_{gc.sign}_{gc.variant}", "gauge-field-strength-brackets", cfg, run)], args)


def cmd_structure(args) -> int:
    params = load_params(args.params)
    cfg = _config(args, params=params)

    def run():
        acc = C._Acc()
        pts = sample_points(cfg.rng(22), cfg.n(20))
        rep = check_structure_equations(params, points=pts, tol=cfg.eff(1e-9))
        acc.true("structure equations", rep.passed)
        for k, v in rep.residuals.items():
            acc.below(k, v, cfg.eff(1e-9))
        gv = sorted({tuple(v) for v in growth_vector(params, pts)})
        acc.true("growth vector (2,3,5)", gv == [(2, 3, 5)])
        expected = {"growth": [2, 3, 5]}
        if params.simplified and params.a2 != 0:
            expected["H"] = (params.a2**2 + params.c2**2) / params.a2**2
        return acc, expected, {"H": rep.H, "residuals": rep.residuals, "leading": rep.leading,
                               "growth": gv}

    return emit([_timed("structure", "structure-equations-and-profile-ode", cfg, run)], args)


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-7, help="run-wide tolerance cap (default 1e-7)")
    common.add_argument("--points", type=int, default=100, help="sampling size, 100 = nominal")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--format", choices=("json", "markdown"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true",
                        help="record runtime_ms (otherwise null, keeping reports byte-stable)")

    p = _Parser(prog="su2pfaff", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify-all", parents=[common], help="run the full battery")
    v.add_argument("--only", default=None, help="comma-separated check names")
    v.set_defaults(fn=cmd_verify_all)

    w = sub.add_parser("weyl", parents=[common], help="W2424 or flatness verdict at (a2, c2)")
    w.add_argument("--a2", required=True)
    w.add_argument("--c2", required=True)
    w.set_defaults(fn=cmd_weyl)

    g = sub.add_parser("gauss", parents=[common], help="Gauss curvature of the real surface")
    g.add_argument("--case", required=True, choices=("A", "B"))
    g.set_defaults(fn=cmd_gauss)

    ga = sub.add_parser("gauge", parents=[common], help="field strength and bracket table")
    ga.add_argument("--case", required=True, choices=G.CASES)
    ga.add_argument("--sign", default="minus", choices=G.SIGNS)
    ga.add_argument("--variant", default="complex", choices=G.VARIANTS)
    ga.add_argument("--r", type=float, default=0.0)
    ga.set_defaults(fn=cmd_gauge)

    s = sub.add_parser("structure", parents=[common], help="structure equations for a params file")
    s.add_argument("--params", required=True)
    s.set_defaults(fn=cmd_structure)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, VerificationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
