"""Command-line interface.

Subcommands::

    e3geom verify [--smax N] [--jmax N] [--tol X] [--json]
    e3geom distance|angle|volume|spectra --config FILE
    e3geom sweep --config FILE [--out FILE]

Exit codes: 0 success, 1 verification failure, 2 configuration error.
Angles are radians in the config; columns ending in ``_deg`` are degrees.
"""

from __future__ import annotations

import argparse
import bisect
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import empirical as emp
from . import oracle
from .classical import Line3
from .errors import DomainError
from .operators import ElementaryParams, spectra
from .qnum import HalfInt, QNum

THREADS_ENV = "E3GEOM_THREADS"
SWEEP_HEADER = ("j", "P", "pair", "d_abs", "classical_ref", "rel_err", "uncertainty", "beta12")
ROW_ERRORS = (DomainError, ArithmeticError, ValueError)


class ConfigError(Exception):
    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line

    def __str__(self):
        where = f"line {self.line}: " if self.line else ""
        return where + self.args[0]


# ---------------------------------------------------------------------------
# line-anchored JSON


class _Obj(dict):
    """dict that remembers the line where it started."""

    line = None


def _load_json(text: str):
    newlines = [i for i, ch in enumerate(text) if ch == "\n"]
    decoder = json.JSONDecoder()

    def parse_object(s_and_end, *args):
        start = s_and_end[1]
        obj, end = json.decoder.JSONObject(s_and_end, *args)
        out = _Obj(obj)
        out.line = bisect.bisect_left(newlines, start) + 1
        return out, end

    decoder.parse_object = parse_object
    decoder.scan_once = json.scanner.py_make_scanner(decoder)
    try:
        return decoder.decode(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, exc.lineno) from None


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class SystemSpec:
    P: float
    q: QNum
    euler: tuple
    xi: tuple
    line: int


@dataclass(frozen=True)
class SweepSpec:
    j_values: tuple
    p_scale: float
    lines: tuple


@dataclass(frozen=True)
class RunConfig:
    systems: tuple
    hbar: float
    sweep: SweepSpec | None
    fmt: str
    path: str | None


def _line_of(obj, default=None):
    return getattr(obj, "line", None) or default


def _number(value, what, line):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{what} must be a number, got {value!r}", line)
    return float(value)


def _vector3(value, what, line):
    if not isinstance(value, list) or len(value) != 3:
        raise ConfigError(f"{what} must be a list of three numbers", line)
    out = tuple(_number(v, what, line) for v in value)
    if not all(math.isfinite(v) for v in out):
        raise ConfigError(f"{what} must be finite", line)
    return out


def _half(value, what, line):
    if isinstance(value, bool):
        raise ConfigError(f"{what} must be a half-integer", line)
    try:
        return HalfInt.of(value)
    except DomainError as exc:
        raise ConfigError(f"{what}: {exc}", line) from None


def _object(value, what, line, allowed):
    if not isinstance(value, dict):
        raise ConfigError(f"{what} must be an object", line)
    line = _line_of(value, line)
    extra = sorted(set(value) - set(allowed))
    if extra:
        raise ConfigError(f"unknown key(s) in {what}: {', '.join(extra)}", line)
    return line


def _parse_system(raw, idx, line):
    what = f"systems[{idx}]"
    line = _object(raw, what, line, ("P", "s", "j", "m", "euler", "xi"))
    for key in ("P", "s", "j", "m"):
        if key not in raw:
            raise ConfigError(f"{what} is missing '{key}'", line)
    P = _number(raw["P"], f"{what}.P", line)
    s, j, m = (_half(raw[k], f"{what}.{k}", line) for k in ("s", "j", "m"))
    try:
        q = QNum(s, j, m)
    except DomainError as exc:
        raise ConfigError(f"{what}: {exc}", line) from None
    euler = _vector3(raw.get("euler", [0, 0, 0]), f"{what}.euler", line)
    xi = _vector3(raw.get("xi", [0, 0, 0]), f"{what}.xi", line)
    return SystemSpec(P, q, euler, xi, line)


def _parse_sweep(raw, line):
    line = _object(raw, "sweep", line, ("j_values", "p_scale", "lines"))
    js = raw.get("j_values")
    if not isinstance(js, list) or not js:
        raise ConfigError("sweep.j_values must be a non-empty list", line)
    j_values = tuple(_half(j, "sweep.j_values", line) for j in js)
    if any(j <= 0 for j in j_values):
        raise ConfigError("sweep.j_values must be positive", line)
    p_scale = _number(raw.get("p_scale", 1.0), "sweep.p_scale", line)
    if not p_scale > 0:
        raise ConfigError("sweep.p_scale must be positive", line)
    raw_lines = raw.get("lines")
    if not isinstance(raw_lines, list) or len(raw_lines) < 2:
        raise ConfigError("sweep.lines needs at least two lines", line)
    lines = []
    for i, item in enumerate(raw_lines):
        what = f"sweep.lines[{i}]"
        ln = _object(item, what, line, ("point", "dir"))
        point = _vector3(item.get("point"), f"{what}.point", ln)
        direction = _vector3(item.get("dir"), f"{what}.dir", ln)
        if not any(direction):
            raise ConfigError(f"{what}.dir must be nonzero", ln)
        lines.append((Line3(point, direction), ln))
    for (a, la), (b, lb) in itertools.combinations(lines, 2):
        if np.linalg.norm(np.cross(a.dir, b.dir)) < 1e-9:
            raise ConfigError("sweep lines must be pairwise non-parallel", lb)
    return SweepSpec(j_values, p_scale, tuple(x for x, _ in lines))


def parse_config(text: str) -> RunConfig:
    """Validate a JSON config document; errors carry the offending line."""
    raw = _load_json(text)
    line = _object(raw, "config", 1, ("systems", "hbar", "sweep", "output"))
    hbar = _number(raw.get("hbar", 1.0), "hbar", line)
    if not (hbar > 0 and math.isfinite(hbar)):
        raise ConfigError("hbar must be positive", line)
    systems = raw.get("systems", [])
    if not isinstance(systems, list):
        raise ConfigError("systems must be a list", line)
    parsed = tuple(_parse_system(x, i, line) for i, x in enumerate(systems))
    sweep = _parse_sweep(raw["sweep"], line) if "sweep" in raw else None
    output = raw.get("output", {})
    oline = _object(output, "output", line, ("format", "path"))
    fmt = output.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("output.format must be 'csv' or 'json'", oline)
    path = output.get("path")
    if path is not None and not isinstance(path, str):
        raise ConfigError("output.path must be a string", oline)
    return RunConfig(parsed, hbar, sweep, fmt, path)


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text)


# ---------------------------------------------------------------------------
# tables


def fmt_number(x) -> str:
    if isinstance(x, str):
        return x
    return f"{float(x):.12g}"


def _json_value(x):
    if isinstance(x, str):
        return x
    x = float(f"{float(x):.12g}")
    return None if not math.isfinite(x) else x


def render(header, rows, fmt: str) -> str:
    if fmt == "json":
        records = [{k: _json_value(v) for k, v in zip(header, row)} for row in rows]
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_number(v) for v in row])
    return buf.getvalue()


def _emit(text: str, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _ordered_map(fn, items):
    """map preserving input order, threaded when E3GEOM_THREADS > 1."""
    n = _threads()
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _placed(spec: SystemSpec, hbar: float) -> emp.PlacedState:
    params = ElementaryParams(spec.P, spec.q.s, hbar)
    return emp.PlacedState(spec.q, params, emp.E3Placement(spec.euler, spec.xi))


def _error_row(label, width, exc):
    return [label] + ["nan"] * (width - 2) + [f"error: {exc}"]


def _require(config: RunConfig, n: int, what: str):
    if len(config.systems) < n:
        raise ConfigError(f"{what} needs at least {n} systems, got {len(config.systems)}")


DISTANCE_HEADER = ("pair", "d12", "numerator", "Dsq", "beta12", "beta12_deg", "uncertainty",
                   "classical_ref", "classical_part", "quantum_part", "status")


def distance_rows(config: RunConfig):
    _require(config, 2, "distance")

    def row(pair):
        (i, a), (k, b) = pair
        label = f"{i + 1}-{k + 1}"
        try:
            g = emp.empirical_distance(_placed(a, config.hbar), _placed(b, config.hbar))
        except ROW_ERRORS as exc:
            return _error_row(label, len(DISTANCE_HEADER), exc)
        return [label, g.d12, g.numerator, g.Dsq, g.beta12, math.degrees(g.beta12),
                g.uncertainty, g.classical_ref, g.classical_part, g.quantum_part, "ok"]

    return DISTANCE_HEADER, _ordered_map(row, list(itertools.combinations(enumerate(config.systems), 2)))


ANGLE_HEADER = ("pair", "omega", "omega_deg", "beta12", "beta12_deg", "status")


def angle_rows(config: RunConfig):
    _require(config, 2, "angle")

    def row(pair):
        (i, a), (k, b) = pair
        label = f"{i + 1}-{k + 1}"
        try:
            sa, sb = _placed(a, config.hbar), _placed(b, config.hbar)
            omega = emp.empirical_angle(sa, sb)
            beta = math.acos(max(-1.0, min(1.0, emp.cos_beta12(sa.placement, sb.placement))))
        except ROW_ERRORS as exc:
            return _error_row(label, len(ANGLE_HEADER), exc)
        return [label, omega, math.degrees(omega), beta, math.degrees(beta), "ok"]

    return ANGLE_HEADER, _ordered_map(row, list(itertools.combinations(enumerate(config.systems), 2)))


VOLUME_HEADER = ("triple", "volume", "euclidean_volume", "status")


def volume_rows(config: RunConfig):
    _require(config, 3, "volume")

    def row(triple):
        label = "-".join(str(i + 1) for i, _ in triple)
        try:
            states = [_placed(s, config.hbar) for _, s in triple]
            vol = emp.empirical_volume(*states)
            euclid = float(np.linalg.det(np.column_stack([s.placement.axis for s in states]))) / 6.0
        except ROW_ERRORS as exc:
            return _error_row(label, len(VOLUME_HEADER), exc)
        return [label, vol, euclid, "ok"]

    return VOLUME_HEADER, _ordered_map(row, list(itertools.combinations(enumerate(config.systems), 3)))


SPECTRA_HEADER = ("system", "s", "j", "C2", "J2", "L2", "W", "status")


def spectra_rows(config: RunConfig):
    _require(config, 1, "spectra")

    def row(item):
        i, spec = item
        label = str(i + 1)
        try:
            params = ElementaryParams(spec.P, spec.q.s, config.hbar)
            sp = spectra(params, spec.q.j)
        except ROW_ERRORS as exc:
            return _error_row(label, len(SPECTRA_HEADER), exc)
        return [label, spec.q.s.value, spec.q.j.value, sp.c2, sp.j2, sp.l2, params.W, "ok"]

    return SPECTRA_HEADER, _ordered_map(row, list(enumerate(config.systems)))


def sweep_rows(config: RunConfig):
    """One row per (line pair, j), ordered by pair then j as listed."""
    if config.sweep is None:
        raise ConfigError("sweep section is required for the sweep command")
    sw = config.sweep
    tasks = [(f"{i + 1}-{k + 1}", a, b, j)
             for (i, a), (k, b) in itertools.combinations(enumerate(sw.lines), 2)
             for j in sw.j_values]

    def row(task):
        label, a, b, j = task
        P = sw.p_scale * j.value
        try:
            g = emp.classical_limit_distance(a, b, j, sw.p_scale, config.hbar)
        except ROW_ERRORS as exc:
            print(f"row {label} j={j}: error: {exc}", file=sys.stderr)
            return [j.value, P, label, "ERROR", "nan", "nan", "nan", "nan"]
        d_abs = abs(g.d12)
        rel = abs(d_abs - g.classical_ref) / g.classical_ref if g.classical_ref > 0 else math.nan
        return [j.value, P, label, d_abs, g.classical_ref, rel, g.uncertainty, g.beta12]

    return SWEEP_HEADER, _ordered_map(row, tasks)


# ---------------------------------------------------------------------------
# entry point


def _build_parser():
    parser = argparse.ArgumentParser(prog="e3geom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the brute-force verification suite")
    v.add_argument("--smax", default="2", help="largest |s| (half-integer, default 2)")
    v.add_argument("--jmax", default="6", help="largest j (half-integer, default 6)")
    v.add_argument("--tol", type=float, default=1e-9, help="absolute tolerance")
    v.add_argument("--json", action="store_true", help="emit the report as JSON")
    for name, text in (("distance", "empirical distances of all system pairs"),
                       ("angle", "empirical angles of all system pairs"),
                       ("volume", "empirical 3-volumes of all system triples"),
                       ("spectra", "Casimir spectra of each system")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="JSON configuration file")
    s = sub.add_parser("sweep", help="classical-limit sweep over j for line pairs")
    s.add_argument("--config", required=True, help="JSON configuration file")
    s.add_argument("--out", help="output file (overrides output.path)")
    return parser


TABLES = {"distance": distance_rows, "angle": angle_rows, "volume": volume_rows,
          "spectra": spectra_rows, "sweep": sweep_rows}


def cmd_verify(smax, jmax, tol, as_json=False) -> int:
    try:
        smax, jmax = HalfInt.of(smax), HalfInt.of(jmax)
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if smax < 0 or jmax < 0 or not tol >= 0:
        print("config error: limits and tolerance must be non-negative", file=sys.stderr)
        return 2
    report = oracle.run_suite(smax, jmax, tol)
    print(report.to_json() if as_json else report.to_text())
    return 0 if report.passed else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args.smax, args.jmax, args.tol, args.json)
    try:
        config = load_config(args.config)
        header, rows = TABLES[args.command](config)
    except ConfigError as exc:
        print(f"config error: {args.config}: {exc}", file=sys.stderr)
        return 2
    path = getattr(args, "out", None) or config.path
    _emit(render(header, rows, config.fmt), path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
