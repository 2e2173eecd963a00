"""``qdisc`` command-line front end.

Exit codes: 0 success, 1 verification failure, 2 singular parameter or bad
configuration, 3 non-convergence, 4 unparsable input.  Errors go to stderr as
one JSON object per line.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import eigen, qspecial, transform, verify
from .errors import ConfigError, NonConvergence, QDiscError, SingularParameter
from .lattice import Lattice, LatticeFunction
from .qspecial import SeriesTolerance
from .transform import SpectralFunction, SpectralGrid

CONFIG_ENV = "QDISC_CONFIG"
BUNDLED = {"bundled:f0": "f0.json"}


class InputError(QDiscError):
    """The input file could not be read or parsed."""


@dataclass(frozen=True)
class RunConfig:
    q: float = 0.5
    l_re: float = 0.0
    l_im: float = 0.0
    lattice_J: int = 60
    grid_N: int = 4096
    abs_tol: float = 1e-14
    max_terms: int = 10000
    output_format: str = "json"
    output_path: str = "-"

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ConfigError(f"q must lie in (0, 1), got {self.q}")
        if self.lattice_J < 8:
            raise ConfigError(f"lattice_J must be >= 8, got {self.lattice_J}")
        if self.grid_N < 16:
            raise ConfigError(f"grid_N must be >= 16, got {self.grid_N}")
        if not self.abs_tol > 0:
            raise ConfigError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_terms < 1:
            raise ConfigError(f"max_terms must be positive, got {self.max_terms}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output_format must be csv or json, got {self.output_format!r}")

    @property
    def l(self) -> complex:
        return complex(self.l_re, self.l_im)

    @property
    def tol(self) -> SeriesTolerance:
        return SeriesTolerance(self.abs_tol, self.max_terms)

    @classmethod
    def resolve(cls, flags: dict, env: dict | None = None) -> "RunConfig":
        """Merge built-in defaults < ``$QDISC_CONFIG`` JSON < explicit flags."""
        env = os.environ if env is None else env
        values: dict = {}
        path = env.get(CONFIG_ENV)
        if path:
            try:
                with open(path) as fh:
                    data = json.load(fh)
            except (OSError, ValueError) as exc:
                raise ConfigError(f"cannot read {CONFIG_ENV}={path}: {exc}") from exc
            if not isinstance(data, dict):
                raise ConfigError(f"{CONFIG_ENV} must hold a JSON object")
            names = {f.name for f in dataclasses.fields(cls)}
            unknown = set(data) - names
            if unknown:
                raise ConfigError(f"unknown config keys: {sorted(unknown)}")
            values.update(data)
        values.update({k: v for k, v in flags.items() if v is not None})
        types = {f.name: f.type for f in dataclasses.fields(cls)}
        try:
            for k, v in values.items():
                values[k] = {"float": float, "int": int, "str": str}[types[k]](v)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad config value: {exc}") from exc
        return cls(**values)


# output


def _num(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real + 0.0, "im": z.imag + 0.0}


def emit(text: str, path: str) -> None:
    """Write ``text`` to stdout or atomically to ``path``."""
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qdisc-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) if isinstance(v, int) else repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _error(exc: BaseException, code: int) -> int:
    sys.stderr.write(_dump({"error": type(exc).__name__, "message": str(exc), "exit_code": code}))
    return code


# input


def read_input(source: str) -> tuple[str, str]:
    """Return ``(text, kind)`` where kind is ``csv`` or ``json``."""
    try:
        if source in BUNDLED:
            text = (resources.files("qdisc") / "data" / BUNDLED[source]).read_text()
            name = BUNDLED[source]
        elif source == "-":
            text, name = sys.stdin.read(), ""
        else:
            with open(source) as fh:
                text = fh.read()
            name = source
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    if name.endswith(".csv") or (not name.endswith(".json") and not text.lstrip().startswith(("[", "{"))):
        return text, "csv"
    return text, "json"


def _parse(source: str, parser):
    text, kind = read_input(source)
    try:
        return parser(text, kind)
    except (ValueError, KeyError, TypeError, QDiscError) as exc:
        raise InputError(f"cannot parse {source}: {exc}") from exc


def load_lattice_function(source: str, q: float) -> LatticeFunction:
    return _parse(source, lambda t, k: LatticeFunction.from_csv(t, q) if k == "csv"
                  else LatticeFunction.from_json(t, q))


def load_spectral_function(source: str, q: float, tol: SeriesTolerance) -> SpectralFunction:
    return _parse(source, lambda t, k: SpectralFunction.from_csv(t, q, tol) if k == "csv"
                  else SpectralFunction.from_json(t, q, tol))


def parse_range(spec: str) -> range:
    """``"5"`` or ``"a:b"`` (inclusive) to a range of indices."""
    try:
        if ":" in spec:
            a, b = spec.split(":", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(spec)
    except ValueError as exc:
        raise ConfigError(f"bad index range {spec!r}") from exc
    if lo < 0 or hi < lo:
        raise ConfigError(f"bad index range {spec!r}")
    return range(lo, hi + 1)


# commands


def cmd_eval(cfg: RunConfig, args) -> int:
    q, l, tol = cfg.q, cfg.l, cfg.tol
    kind = args.kind
    inputs: dict = {"kind": kind, "q": q}
    if kind == "pochhammer":
        a = complex(args.a_re, args.a_im)
        inputs["a"] = _num(a)
        if args.n is None:
            value = qspecial.qpochhammer_infinite(a, q, tol)
        else:
            inputs["n"] = args.n
            value = qspecial.qpochhammer_finite(a, q, args.n)
    elif kind == "qgamma":
        z = complex(args.z_re, args.z_im)
        inputs["z"] = _num(z)
        inputs["base"] = q * q
        value = qspecial.qgamma(z, q * q, tol)
    elif kind == "lambda":
        inputs["l"] = _num(l)
        value = qspecial.lambda_eig(l, q)
    elif kind == "cfunc":
        inputs["l"] = _num(l)
        value = qspecial.cfunc(l, q, tol)
    else:
        inputs["l"] = _num(l)
        if args.x_index is None:
            raise ConfigError(f"--x-index is required for --kind {kind}")
        inputs["x_index"] = args.x_index
        x = q ** (-2 * args.x_index)
        inputs["x"] = x
        if kind == "phi":
            value = eigen.phi_table(Lattice(q, args.x_index), [l])[args.x_index, 0]
        else:
            value = eigen.psi_l(x, l, q, tol)
    emit(_dump({**inputs, "value": _num(value)}), cfg.output_path)
    return 0


def cmd_green(cfg: RunConfig, args) -> int:
    kernel = eigen.GreenKernel(cfg.l, cfg.q, cfg.tol)
    rows, cols = parse_range(args.x_index), parse_range(args.xi_index)
    x = Lattice(cfg.q, max(rows.stop, cols.stop)).points
    entries = [(i, j, float(x[i]), float(x[j]), kernel.at_indices(i, j)) for i in rows for j in cols]
    if cfg.output_format == "csv":
        text = _csv(["i", "j", "x", "xi", "re", "im"],
                    [(i, j, xi_, xj, g.real, g.imag) for i, j, xi_, xj, g in entries])
    else:
        text = _dump({
            "q": cfg.q, "l": _num(cfg.l), "regime": kernel.regime,
            "entries": [{"i": i, "j": j, "x": a, "xi": b, **_num(g)} for i, j, a, b, g in entries],
        })
    emit(text, cfg.output_path)
    return 0


def _metrics_out(cfg: RunConfig, args, metrics: dict) -> None:
    if args.metrics_output:
        emit(_dump(metrics), args.metrics_output)
    else:
        sys.stderr.write(_dump({"metrics": metrics}))


def cmd_transform(cfg: RunConfig, args) -> int:
    direction = args.direction
    metrics: dict = {}
    if direction == "inverse":
        fh = load_spectral_function(args.input, cfg.q, cfg.tol)
        result = transform.inverse(fh, Lattice(cfg.q, cfg.lattice_J))
    else:
        f = load_lattice_function(args.input, cfg.q)
        grid = SpectralGrid(cfg.q, cfg.grid_N, cfg.tol)
        nonzero = len(f.support) > 0
        metrics["plancherel_defect"] = transform.plancherel_defect(f, grid) if nonzero else 0.0
        if direction == "forward":
            result = transform.forward(f, grid)
        elif direction == "roundtrip":
            result = transform.inverse(transform.forward(f, grid), f.lattice)
            metrics["roundtrip_maxerr"] = float(np.max(np.abs(result.values - f.values)))
        else:
            result = None
    if result is None:
        emit(_dump({"metrics": metrics}), cfg.output_path)
    elif cfg.output_format == "csv":
        emit(result.to_csv(), cfg.output_path)
        _metrics_out(cfg, args, metrics)
    else:
        emit(_dump({"data": json.loads(result.to_json()), "metrics": metrics}), cfg.output_path)
    return 0


def _load_green_rows(source: str):
    def parse(text, kind):
        if kind == "csv":
            return [(r["i"], r["j"], r["re"], r["im"]) for r in csv.DictReader(io.StringIO(text))], None
        data = json.loads(text)
        meta = (data["q"], complex(data["l"]["re"], data["l"]["im"]))
        return [(e["i"], e["j"], e["re"], e["im"]) for e in data["entries"]], meta
    return _parse(source, parse)


def cmd_verify(cfg: RunConfig, args) -> int:
    if args.suite == "green-defect":
        if not args.input:
            raise ConfigError("--input is required for the green-defect suite")
        rows, meta = _load_green_rows(args.input)
        q, l = meta if meta else (cfg.q, cfg.l)
        checks = verify.green_defect_from_rows(rows, q, qspecial.lambda_eig(l, q))
        if not checks:
            raise InputError("kernel window has no column with rows 0..r, r > column index")
    else:
        q = cfg.q
        checks = verify.run_suite(args.suite, q, cfg.tol, cfg.grid_N)
    ok = all(c.passed for c in checks)
    emit(_dump({"suite": args.suite, "q": q, "passed": ok, "checks": [c.as_dict() for c in checks]}),
         cfg.output_path)
    return 0 if ok else 1


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration (overrides $QDISC_CONFIG)")
    g.add_argument("--q", type=float)
    g.add_argument("--l-re", dest="l_re", type=float)
    g.add_argument("--l-im", dest="l_im", type=float)
    g.add_argument("--J", dest="lattice_J", type=int, help="lattice size (points x_0..x_J)")
    g.add_argument("--N", dest="grid_N", type=int, help="spectral grid intervals")
    g.add_argument("--abs-tol", dest="abs_tol", type=float)
    g.add_argument("--max-terms", dest="max_terms", type=int)
    g.add_argument("--format", dest="output_format", choices=["csv", "json"])
    g.add_argument("--output", "-o", dest="output_path", help="output file, '-' for stdout")

    p = argparse.ArgumentParser(prog="qdisc", description="Harmonic analysis on the q-disc lattice.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a special function")
    e.add_argument("--kind", required=True, choices=["pochhammer", "qgamma", "cfunc", "psi", "phi", "lambda"])
    e.add_argument("--a-re", type=float, default=0.0)
    e.add_argument("--a-im", type=float, default=0.0)
    e.add_argument("--n", type=int, help="finite Pochhammer length (omit for infinite)")
    e.add_argument("--z-re", type=float, default=1.0)
    e.add_argument("--z-im", type=float, default=0.0)
    e.add_argument("--x-index", type=int)

    gr = sub.add_parser("green", parents=[common], help="emit a window of the Green kernel")
    gr.add_argument("--x-index", default="0:10", help="row index or inclusive range a:b")
    gr.add_argument("--xi-index", default="0:10", help="column index or inclusive range a:b")

    t = sub.add_parser("transform", parents=[common], help="spectral transform of lattice data")
    t.add_argument("--direction", required=True, choices=["forward", "inverse", "roundtrip", "plancherel"])
    t.add_argument("--input", "-i", required=True, help="CSV/JSON file, '-' for stdin, or bundled:f0")
    t.add_argument("--metrics-output", help="where CSV runs write the metrics record (default stderr)")

    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("--suite", default="all", choices=["all", *verify.SUITES, "green-defect"])
    v.add_argument("--input", "-i", help="kernel window from 'qdisc green' (green-defect suite)")
    return p


COMMANDS = {"eval": cmd_eval, "green": cmd_green, "transform": cmd_transform, "verify": cmd_verify}
CONFIG_KEYS = [f.name for f in dataclasses.fields(RunConfig)]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.resolve({k: getattr(args, k, None) for k in CONFIG_KEYS})
        return COMMANDS[args.command](cfg, args)
    except (ConfigError, SingularParameter) as exc:
        return _error(exc, 2)
    except NonConvergence as exc:
        return _error(exc, 3)
    except InputError as exc:
        return _error(exc, 4)
    except QDiscError as exc:
        return _error(exc, 2)


if __name__ == "__main__":
    sys.exit(main())
