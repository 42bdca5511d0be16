"""
Command-line driver: ``alphamod <subcommand> [--config FILE] [flags]``.

Configuration comes from an INI-style file (sections ``grid``, ``covering``,
``bump``, ``space``, ``sweep``, ``input``, ``output``) and is overridden by
command-line flags. Every JSON report is tagged ``"schema": "AMREP1"``,
embeds the fully resolved configuration and is written with sorted keys, so
the same configuration and seed give byte-identical reports.

Exit codes: 0 success, 1 acceptance failure, 2 invalid configuration.
"""

import argparse
import configparser
import json
import math
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import acceptance
from .bapu import (
    BumpSpec,
    TRANSITIONS,
    build_dyadic_family,
    build_grid_bapu,
    build_lizorkin_masks,
    build_shell_bapu,
    partition_deviation,
    pbapu_constant,
    support_violations,
)
from .covering import (
    coverage_gap,
    dyadic_covering,
    grid_alpha_covering,
    lizorkin_covering,
    max_overlap,
    r_threshold,
    scan_points,
    shell_alpha_covering,
    shell_radius_ratio_C,
    volume_ratio_C,
)
from .experiments import (
    ExponentInputs,
    THEOREM5_BRANCHES,
    corollary1_sweep,
    random_atoms,
    remark5_sigma_sweep,
    render_atoms,
    sharpness_sweep,
    stability_check,
    theorem1_spaces,
    theorem1_sweep,
    theorem2_spaces,
    theorem2_sweep,
    theorem5_spaces,
    theorem5_sweep,
)
from .grid import Grid, load_function
from .norms import KINDS, SpaceParams, norm
from .trace import trace_ratio

__all__ = ["ConfigError", "RunConfig", "load_config", "resolve_config", "run", "main"]

SCHEMA = "AMREP1"
SUBCOMMANDS = ("covering", "bapu-check", "norm", "trace-check", "sweep", "verify-all")
THEOREMS = ("1", "2", "5", "cor1", "rem5", "sharp1", "sharp2")
FORMATS = ("json", "csv", "plotdata")
COVERING_KINDS = ("grid", "shell", "lizorkin", "dyadic")


class ConfigError(ValueError):
    """Invalid configuration; ``field`` is ``section.key``."""

    def __init__(self, field, message, line=None):
        self.field, self.line = field, line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{field}{where}: {message}")


# --- value parsers -----------------------------------------------------------

def parse_real(text):
    """Float with ``inf`` and ``pi`` multiples: ``2``, ``0.5``, ``inf``, ``8pi``, ``8*pi``."""
    t = str(text).strip().lower().replace(" ", "")
    m = re.fullmatch(r"([0-9.eE+-]*)\*?pi", t)
    if m:
        head = m.group(1)
        return (float(head) if head not in ("", "+") else 1.0) * math.pi
    if t in ("inf", "+inf", "infinity"):
        return math.inf
    return float(t)


def parse_int(text):
    v = parse_real(text)
    if not float(v).is_integer():
        raise ValueError(f"expected an integer, got {text!r}")
    return int(v)


def parse_range(text):
    """``2:6`` (inclusive) or a comma list ``2,3,5``."""
    t = str(text).strip()
    if ":" in t:
        a, b = t.split(":")
        lo, hi = int(a), int(b)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(x) for x in t.split(",") if x.strip()]


def parse_grid_pair(text):
    """``M,L`` as given to ``--grid``."""
    parts = str(text).split(",")
    if len(parts) != 2:
        raise ValueError(f"expected M,L, got {text!r}")
    return parse_int(parts[0]), parse_real(parts[1])


def parse_bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _opt(parser):
    def p(text):
        if str(text).strip().lower() in ("", "none"):
            return None
        return parser(text)
    return p


def _choice(options):
    def p(text):
        t = str(text).strip()
        if t not in options:
            raise ValueError(f"expected one of {list(options)}, got {t!r}")
        return t
    return p


# section -> key -> (parser, default)
SCHEMA_KEYS = {
    "grid": {"n": (parse_int, 2), "M": (parse_int, 128), "L": (parse_real, 8 * math.pi)},
    "covering": {"kind": (_choice(COVERING_KINDS), "grid"), "alpha": (parse_real, 0.0),
                 "r": (_opt(parse_real), None), "window": (_opt(parse_real), None)},
    "bump": {"transition": (_choice(TRANSITIONS), "smooth_exp")},
    "space": {"kind": (_choice(KINDS), "modulation"), "p": (parse_real, 2.0),
              "q": (parse_real, 2.0), "s": (parse_real, 0.0), "alpha": (_opt(parse_real), None),
              "third_r": (_opt(parse_real), None), "s2": (_opt(parse_real), None)},
    "sweep": {"theorem": (_choice(THEOREMS), "1"), "trials": (parse_int, 50),
              "seed": (parse_int, 0), "Ns": (parse_range, [2, 3, 4, 5, 6]),
              "radius": (parse_int, 2), "branch": (_choice(THEOREM5_BRANCHES), "tilde_sp"),
              "eps": (parse_real, 1e-3), "r3": (parse_real, 2.0),
              "stability": (parse_bool, False)},
    "input": {"path": (_opt(str), None)},
    "output": {"path": (_opt(str), None), "format": (_choice(FORMATS), "json"),
               "report": (_opt(str), None), "pbapu_p": (str, "2,1,0.5"),
               "profile": (_choice(acceptance.PROFILES), "desk"),
               "only": (_opt(str), None)},
}


@dataclass
class RunConfig:
    """Resolved configuration, one plain dict per section."""

    grid: dict
    covering: dict
    bump: dict
    space: dict
    sweep: dict
    input: dict
    output: dict

    def as_dict(self):
        return {name: dict(getattr(self, name)) for name in SCHEMA_KEYS}

    def make_grid(self):
        g = self.grid
        try:
            return Grid(g["n"], g["M"], g["L"])
        except ValueError as exc:
            raise ConfigError("grid", str(exc)) from None

    def make_bump(self):
        return BumpSpec(self.bump["transition"])


def _defaults():
    return {sec: {k: d for k, (_, d) in keys.items()} for sec, keys in SCHEMA_KEYS.items()}


def _key_lines(text):
    """``(section, key) -> line number`` by a direct scan of the file."""
    out, section = {}, None
    for i, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s[0] in "#;":
            continue
        m = re.fullmatch(r"\[([^\]]+)\]", s)
        if m:
            section = m.group(1).strip()
            out[(section, None)] = i
            continue
        m = re.match(r"([^=:]+)[=:]", s)
        if m and section is not None:
            out.setdefault((section, m.group(1).strip()), i)
    return out


def load_config(path):
    """Parse and type-check a config file; returns ``{section: {key: value}}``.

    Only the keys present in the file appear in the result. Unknown sections
    or keys and unparsable values raise ``ConfigError`` naming the field and
    its line.
    """
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from None
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string(text, source=str(path))
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        raise ConfigError("config", f"parse error: {exc.message}", line) from None
    lines = _key_lines(text)
    out = {}
    for section in cp.sections():
        if section not in SCHEMA_KEYS:
            raise ConfigError(section, "unknown section", lines.get((section, None)))
        for key, raw in cp.items(section):
            line = lines.get((section, key))
            if key not in SCHEMA_KEYS[section]:
                raise ConfigError(f"{section}.{key}", "unknown key", line)
            parser = SCHEMA_KEYS[section][key][0]
            try:
                out.setdefault(section, {})[key] = parser(raw)
            except ValueError as exc:
                raise ConfigError(f"{section}.{key}", str(exc), line) from None
    return out


def resolve_config(file_values=None, overrides=None):
    """Defaults, then file values, then flag overrides (``None`` means unset)."""
    cfg = _defaults()
    for layer in (file_values or {}, overrides or {}):
        for section, keys in layer.items():
            for key, value in keys.items():
                if value is not None:
                    cfg[section][key] = value
    return RunConfig(**cfg)


def space_params(cfg):
    sp = cfg.space
    kw = {k: sp[k] for k in ("alpha", "third_r", "s2") if sp[k] is not None}
    try:
        return SpaceParams(sp["kind"], sp["p"], sp["q"], sp["s"], **kw)
    except ValueError as exc:
        raise ConfigError("space", str(exc)) from None


# --- reports -----------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v) or math.isinf(v):
            return str(v)
        return v
    return obj


def render_report(command, cfg, result):
    doc = {"schema": SCHEMA, "command": command, "config": cfg.as_dict(), "result": result}
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"


def _emit(text, path, stream):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        stream.write(text)


def _write_outputs(command, cfg, result, table=None, stdout=sys.stdout, stderr=sys.stderr):
    """Primary output per ``output.format``; the JSON report goes to
    ``output.report`` (or stderr) when the primary output is a table."""
    out = cfg.output
    report = render_report(command, cfg, result)
    fmt = out["format"]
    if fmt == "json" or table is None or table.get(fmt) is None:
        _emit(report, out["path"], stdout)
        return
    _emit(table[fmt], out["path"], stdout)
    _emit(report, out["report"], stderr)


# --- subcommands -------------------------------------------------------------

def _covering(cfg):
    c, n = cfg.covering, cfg.grid["n"]
    kind, alpha = c["kind"], c["alpha"]
    window = c["window"] if c["window"] is not None else cfg.make_grid().window_half_side
    try:
        if kind == "grid":
            r = c["r"] if c["r"] is not None else r_threshold(alpha, "grid")
            return grid_alpha_covering(alpha, r, window, n)
        if kind == "shell":
            r = c["r"] if c["r"] is not None else r_threshold(alpha, "shell")
            return shell_alpha_covering(alpha, r, window, n)
        if kind == "lizorkin":
            return lizorkin_covering(window, n)
        return dyadic_covering(window, n)
    except ValueError as exc:
        raise ConfigError("covering", str(exc)) from None


def cmd_covering(cfg, stdout, stderr):
    cov = _covering(cfg)
    n = cov.dim
    # scan the frequency nodes of a grid whose window is the covering window
    M = cfg.grid["M"]
    pts = scan_points(cov, Grid(n, M, math.pi * M / cov.window_half_side))
    stats = {"kind": cov.kind, "elements": len(cov), "n0": cov.n0,
             "max_overlap": max_overlap(cov, pts), "coverage_gap": coverage_gap(cov, pts),
             "scan_points": len(pts)}
    if cov.kind in ("grid", "shell"):
        stats["volume_ratio_C"] = volume_ratio_C(cov)
    if cov.kind == "shell":
        stats["shell_radius_ratio_C"] = shell_radius_ratio_C(cov)
    head = ["label_kind", "label"] + [f"center_{i + 1}" for i in range(n)] + ["half_side"]
    rows = [",".join(head)]
    for lab, reg in cov.elements:
        rows.append(",".join([lab.kind, str(lab)] + [repr(float(x)) for x in reg.center]
                             + [repr(float(reg.half_side))]))
    csv = "\n".join(rows) + "\n"
    _write_outputs("covering", cfg, {"stats": stats}, {"csv": csv}, stdout, stderr)
    return 0


def _family(cfg, grid):
    c, bump = cfg.covering, cfg.make_bump()
    alpha = c["alpha"]
    try:
        if c["kind"] == "grid":
            r = c["r"] if c["r"] is not None else r_threshold(alpha, "grid")
            return build_grid_bapu(alpha, r, grid, bump)
        if c["kind"] == "shell":
            r = c["r"] if c["r"] is not None else r_threshold(alpha, "shell")
            return build_shell_bapu(alpha, r, grid, bump)
        if c["kind"] == "dyadic":
            return build_dyadic_family(grid, bump)
        return build_lizorkin_masks(grid)
    except ValueError as exc:
        raise ConfigError("covering", str(exc)) from None


def cmd_bapu_check(cfg, stdout, stderr):
    grid = cfg.make_grid()
    try:
        ps = [parse_real(x) for x in cfg.output["pbapu_p"].split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError("output.pbapu_p", str(exc)) from None
    fam = _family(cfg, grid)
    table = {repr(p): pbapu_constant(fam, p) for p in ps}
    result = {"family": fam.kind, "labels": len(fam),
              "partition_deviation": partition_deviation(fam),
              "support_violations": support_violations(fam), "pbapu_constant": table}
    _write_outputs("bapu-check", cfg, result, None, stdout, stderr)
    return 0


def _input_function(cfg):
    path = cfg.input["path"]
    if path is None:
        grid = cfg.make_grid()
        rng = np.random.default_rng(cfg.sweep["seed"])
        return render_atoms(random_atoms(rng, grid.dim, cfg.sweep["radius"]), grid,
                            cfg.make_bump())
    try:
        return load_function(path)
    except (OSError, ValueError) as exc:
        raise ConfigError("input.path", str(exc)) from None


def cmd_norm(cfg, stdout, stderr):
    f = _input_function(cfg)
    params = space_params(cfg)
    try:
        rep = norm(f, params, bump=cfg.make_bump())
    except ValueError as exc:
        raise ConfigError("space", str(exc)) from None
    labels = sorted(rep.per_label, key=str)
    csv = "label,weight,block_norm\n" + "".join(
        f"{lab},{float(rep.per_label[lab][0])!r},{float(rep.per_label[lab][1])!r}\n" for lab in labels)
    result = {"params": params.as_dict(), "total": rep.total,
              "active_labels": len(rep.per_label),
              "grid": {"n": f.grid.dim, "M": f.grid.M, "L": f.grid.L}}
    _write_outputs("norm", cfg, result, {"csv": csv}, stdout, stderr)
    return 0


def _trace_spaces(cfg, dim):
    sp, sw = cfg.space, cfg.sweep
    th, p, q, s = sw["theorem"], sp["p"], sp["q"], sp["s"]
    try:
        if th == "1":
            return theorem1_spaces(p, q, s)
        if th == "2":
            return theorem2_spaces(p, q, s, sp["alpha"] or 0.0)
        if th == "5":
            return theorem5_spaces(p, q, s, dim, sw["branch"])
        if th == "cor1":
            gain = 1.0 / min(p, q, 1.0) - (0.0 if math.isinf(q) else 1.0 / q) + sw["eps"]
            return SpaceParams("modulation", p, q, s + gain), SpaceParams("modulation", p, q, s)
    except ValueError as exc:
        raise ConfigError("space", str(exc)) from None
    raise ConfigError("sweep.theorem", f"trace-check supports 1, 2, 5 and cor1, not {th}")


def cmd_trace_check(cfg, stdout, stderr):
    f = _input_function(cfg)
    if f.grid.dim < 2:
        raise ConfigError("grid.n", "the trace needs dimension >= 2")
    source, target = _trace_spaces(cfg, f.grid.dim)
    try:
        rep = trace_ratio(f, source, target, cfg.make_bump())
    except ValueError as exc:
        raise ConfigError("input", str(exc)) from None
    _write_outputs("trace-check", cfg, rep.as_dict(), None, stdout, stderr)
    return 0


def _sweep_callable(cfg):
    sp, sw, bump = cfg.space, cfg.sweep, cfg.make_bump()
    th, p, q, s = sw["theorem"], sp["p"], sp["q"], sp["s"]
    alpha = sp["alpha"] if sp["alpha"] is not None else 0.0
    common = dict(trials=sw["trials"], seed=sw["seed"], radius=sw["radius"], bump=bump)
    if th == "1":
        return lambda g: theorem1_sweep(p, q, s, g, **common)
    if th == "2":
        return lambda g: theorem2_sweep(p, q, s, alpha, g, **common)
    if th == "5":
        return lambda g: theorem5_sweep(p, q, s, g, sw["branch"], **common)
    if th == "cor1":
        return lambda g: corollary1_sweep(p, q, s, sw["eps"], g, **common)
    if th == "rem5":
        def rem5(g):
            x = ExponentInputs(g.dim, p, q, s, alpha, sw["eps"])
            return remark5_sigma_sweep(x, g, **common)
        return rem5
    variant = "harmonic" if th == "sharp1" else "log"
    return lambda g: sharpness_sweep(variant, g, sw["Ns"], p, q, sw["r3"], bump)


def cmd_sweep(cfg, stdout, stderr):
    grid = cfg.make_grid()
    sweep = _sweep_callable(cfg)
    try:
        res = sweep(grid)
        result = res.as_dict()
        if cfg.sweep["stability"] and cfg.sweep["theorem"] not in ("sharp1", "sharp2"):
            result["stability"] = stability_check(sweep, grid)
    except ValueError as exc:
        raise ConfigError("sweep", str(exc)) from None
    _write_outputs("sweep", cfg, result, {"csv": res.csv(), "plotdata": res.plotdata()},
                   stdout, stderr)
    return 0


def cmd_verify_all(cfg, stdout, stderr):
    only = cfg.output["only"]
    try:
        numbers = parse_range(only) if only else None
        if numbers and any(n not in acceptance.CRITERIA for n in numbers):
            raise ValueError(f"criteria are numbered 1..{len(acceptance.CRITERIA)}")
    except ValueError as exc:
        raise ConfigError("output.only", str(exc)) from None

    def echo(line):
        stdout.write(line + "\n")
        stdout.flush()

    results = acceptance.run_all(cfg.output["profile"], numbers, echo)
    ok = all(r.passed for r in results)
    echo(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    if cfg.output["path"]:
        # timings are left out so the report stays reproducible
        body = [{k: v for k, v in r.as_dict().items() if k != "seconds"} for r in results]
        _emit(render_report("verify-all", cfg, {"criteria": body, "passed": ok}),
              cfg.output["path"], stdout)
    return 0 if ok else 1


COMMANDS = {
    "covering": cmd_covering,
    "bapu-check": cmd_bapu_check,
    "norm": cmd_norm,
    "trace-check": cmd_trace_check,
    "sweep": cmd_sweep,
    "verify-all": cmd_verify_all,
}


# --- argument parsing --------------------------------------------------------

# flag dest -> (section, key, parser)
FLAGS = {
    "n": ("grid", "n", parse_int),
    "M": ("grid", "M", parse_int),
    "L": ("grid", "L", parse_real),
    "cover_kind": ("covering", "kind", str),
    "alpha": (None, "alpha", parse_real),
    "r": ("covering", "r", parse_real),
    "window": ("covering", "window", parse_real),
    "transition": ("bump", "transition", str),
    "kind": ("space", "kind", str),
    "p": ("space", "p", parse_real),
    "q": ("space", "q", parse_real),
    "s": ("space", "s", parse_real),
    "third_r": ("space", "third_r", parse_real),
    "s2": ("space", "s2", parse_real),
    "theorem": ("sweep", "theorem", str),
    "trials": ("sweep", "trials", parse_int),
    "seed": ("sweep", "seed", parse_int),
    "Ns": ("sweep", "Ns", parse_range),
    "radius": ("sweep", "radius", parse_int),
    "branch": ("sweep", "branch", str),
    "eps": ("sweep", "eps", parse_real),
    "r3": ("sweep", "r3", parse_real),
    "stability": ("sweep", "stability", parse_bool),
    "input": ("input", "path", str),
    "out": ("output", "path", str),
    "format": ("output", "format", str),
    "report": ("output", "report", str),
    "pbapu_p": ("output", "pbapu_p", str),
    "profile": ("output", "profile", str),
    "only": ("output", "only", str),
}


def build_parser():
    ap = argparse.ArgumentParser(prog="alphamod",
                                 description="Trace and norm experiments for "
                                             "alpha-modulation and Besov spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="INI-style config file (flags override it)")
        p.add_argument("--grid", help="M,L (L may be written like 8pi)")
        p.add_argument("--n", help="dimension")
        p.add_argument("--M", help="samples per axis")
        p.add_argument("--L", help="box side length")
        p.add_argument("--transition", choices=TRANSITIONS)
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--report", help="JSON report path when --format is a table")

    def space(p):
        p.add_argument("--kind", choices=KINDS, help="space kind")
        for name in ("p", "q", "s", "alpha", "s2"):
            p.add_argument(f"--{name}")
        p.add_argument("--third-r", dest="third_r")

    p = sub.add_parser("covering", help="emit a covering and its admissibility stats")
    common(p)
    p.add_argument("--kind", dest="cover_kind", choices=COVERING_KINDS)
    p.add_argument("--alpha")
    p.add_argument("--r")
    p.add_argument("--window", help="frequency window half-side")

    p = sub.add_parser("bapu-check", help="partition, support and p-BAPU constants")
    common(p)
    p.add_argument("--kind", dest="cover_kind", choices=COVERING_KINDS)
    p.add_argument("--alpha")
    p.add_argument("--r")
    p.add_argument("--pbapu-p", dest="pbapu_p", help="comma list of p values")

    p = sub.add_parser("norm", help="norm of a stored (or random) function")
    common(p)
    space(p)
    p.add_argument("--input", help="AMGRID1 function file")
    p.add_argument("--seed")
    p.add_argument("--radius")

    p = sub.add_parser("trace-check", help="trace ratio for one function")
    common(p)
    space(p)
    p.add_argument("--theorem", choices=("1", "2", "5", "cor1"))
    p.add_argument("--branch", choices=THEOREM5_BRANCHES)
    p.add_argument("--eps")
    p.add_argument("--input", help="AMGRID1 function file")
    p.add_argument("--seed")
    p.add_argument("--radius")

    p = sub.add_parser("sweep", help="trace-ratio sweeps and sharpness families")
    common(p)
    space(p)
    p.add_argument("--theorem", choices=THEOREMS)
    p.add_argument("--branch", choices=THEOREM5_BRANCHES)
    for name in ("eps", "trials", "seed", "radius", "r3"):
        p.add_argument(f"--{name}")
    p.add_argument("--Ns", help="N range, e.g. 2:6")
    p.add_argument("--stability", action="store_const", const="true",
                   help="also run the grid/window doubling comparison")

    p = sub.add_parser("verify-all", help="run the acceptance suite")
    p.add_argument("--config")
    p.add_argument("--profile", choices=acceptance.PROFILES)
    p.add_argument("--only", help="criteria subset, e.g. 1:4 or 3,11")
    p.add_argument("--out", help="JSON report path")
    return ap


def _overrides(args):
    over = {}
    ns = vars(args)
    if ns.get("grid"):
        try:
            M, L = parse_grid_pair(ns["grid"])
        except ValueError as exc:
            raise ConfigError("grid", str(exc)) from None
        over.setdefault("grid", {}).update(M=M, L=L)
    for dest, (section, key, parser) in FLAGS.items():
        raw = ns.get(dest)
        if raw is None:
            continue
        if section is None:
            section = "covering" if args.command in ("covering", "bapu-check") else "space"
        try:
            value = parser(raw)
        except ValueError as exc:
            raise ConfigError(f"{section}.{key}", str(exc)) from None
        over.setdefault(section, {})[key] = value
    return over


def run(argv=None, stdout=None, stderr=None):
    """Execute one subcommand; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        file_values = load_config(args.config) if args.config else {}
        cfg = resolve_config(file_values, _overrides(args))
        return COMMANDS[args.command](cfg, stdout, stderr)
    except ConfigError as exc:
        stderr.write(f"alphamod: config error: {exc}\n")
        return 2


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code if isinstance(exc.code, int) else 2
    sys.exit(code)


if __name__ == "__main__":
    main()
