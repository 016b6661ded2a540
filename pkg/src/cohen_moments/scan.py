"""Error-scan campaigns over an x-grid with log-log exponent regression."""
from __future__ import annotations

import ast
import csv
import io
import json
import math
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .arith import build_sieve
from .errors import CohenMomentsError, DomainError
from .moments import MomentQuery, in_theorem_range, moment_report
from .partial_sums import PartialSumQuery, delta_report, main_term_sigma, main_term_sigma_pair

__all__ = [
    "CSV_HEADER",
    "RegressionResult",
    "ScanConfig",
    "ScanRecord",
    "YRule",
    "format_number",
    "load_config",
    "parse_complex",
    "regress",
    "render_csv",
    "render_json",
    "run_scan",
    "write_atomic",
]

TARGETS = ("thm2", "thm3", "thm4", "thm5", "prop1")
CSV_HEADER = ("x", "y", "exact", "main", "error", "bound", "normalized", "in_range", "status", "wall_time_ms")
ERROR_FLOOR = 1e-300


# ---------------------------------------------------------------- parsing


def parse_complex(text: str | int | float | complex) -> complex:
    """Parse "a+bi", "a-bi", "bi", "a" or a rational "p/q" into a complex."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    raw = text.strip().replace(" ", "")
    if not raw:
        raise DomainError("empty complex literal")
    if "/" in raw and "i" not in raw and "j" not in raw:
        try:
            return complex(float(Fraction(raw)))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad rational literal {text!r}") from exc
    try:
        return complex(raw.replace("i", "j"))
    except ValueError as exc:
        raise DomainError(f"bad complex literal {text!r}; expected a+bi") from exc


_FUNCS = {"log": math.log, "floor": math.floor, "ceil": math.ceil, "sqrt": math.sqrt}
_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
    ast.Pow: lambda a, b: a**b,
}


class YRule:
    """Arithmetic over ``x``: + - * / ** (or ^), log, floor, ceil, sqrt, numbers.

    >>> YRule("floor(x^1.5 * log(x)^5)")(50)
    323938
    """

    def __init__(self, text: str):
        self.text = text
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise DomainError(f"bad y_rule {text!r}: {exc.msg}") from exc
        self._check(tree.body)
        self._tree = tree.body

    def _check(self, node: ast.AST) -> None:
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            self._check(node.left)
            self._check(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            self._check(node.operand)
        elif isinstance(node, ast.Call):
            if not (isinstance(node.func, ast.Name) and node.func.id in _FUNCS) or node.keywords:
                raise DomainError(f"y_rule {self.text!r}: only {sorted(_FUNCS)} may be called")
            if len(node.args) != 1:
                raise DomainError(f"y_rule {self.text!r}: functions take one argument")
            self._check(node.args[0])
        elif isinstance(node, ast.Name):
            if node.id != "x":
                raise DomainError(f"y_rule {self.text!r}: unknown name {node.id!r}")
        elif isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            pass
        else:
            raise DomainError(f"y_rule {self.text!r}: unsupported syntax {type(node).__name__}")

    def _eval(self, node: ast.AST, x: int):
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](self._eval(node.left, x), self._eval(node.right, x))
        if isinstance(node, ast.UnaryOp):
            val = self._eval(node.operand, x)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.Call):
            return _FUNCS[node.func.id](self._eval(node.args[0], x))
        if isinstance(node, ast.Name):
            return x
        return node.value

    def __call__(self, x: int) -> int | float:
        try:
            val = self._eval(self._tree, x)
        except (ArithmeticError, ValueError) as exc:
            raise DomainError(f"y_rule {self.text!r} fails at x = {x}: {exc}") from exc
        if isinstance(val, complex) or not math.isfinite(val):
            raise DomainError(f"y_rule {self.text!r} is not a finite real at x = {x}")
        return val


# ---------------------------------------------------------------- config


@dataclass(frozen=True)
class ScanConfig:
    target: str
    beta: int
    x_grid: tuple[int, ...]
    y_rule: str = "x"
    k: int | None = None
    z: complex | None = None
    z1: complex | None = None
    z2: complex | None = None
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.target not in TARGETS:
            raise DomainError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.beta < 1:
            raise DomainError(f"beta must be >= 1, got {self.beta}")
        grid = self.x_grid
        if len(grid) < 3:
            raise DomainError("x_grid needs at least 3 points for the regression")
        if any(x < 1 for x in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
            raise DomainError("x_grid must be strictly increasing positive integers")
        rule = YRule(self.y_rule)
        for x in grid:
            if rule(x) < x:
                raise DomainError(f"y_rule gives y = {rule(x)} < x = {x}")
        if self.target in ("thm4",) and self.z is None:
            raise DomainError("thm4 scan needs z")
        if self.target == "thm5" and (self.z1 is None or self.z2 is None):
            raise DomainError("thm5 scan needs z1 and z2")
        if self.target == "thm2" and self.moment_order != 1:
            raise DomainError("thm2 scans the first moment; k must be 1")
        if self.target == "thm3" and self.moment_order != 2:
            raise DomainError("thm3 scans the second moment; k must be 2")
        # reject invalid theorem parameters up front rather than per point
        if self.target == "thm4":
            main_term_sigma(PartialSumQuery(2.0, self.beta, self.z))
        elif self.target == "thm5":
            main_term_sigma_pair(PartialSumQuery(3.0, self.beta, self.z1, self.z2))

    @property
    def moment_order(self) -> int:
        if self.k is not None:
            return self.k
        return {"thm2": 1, "thm3": 2}.get(self.target, 1)


def _int_field(raw: Any, name: str) -> int:
    if isinstance(raw, bool):
        raise DomainError(f"{name} must be an integer")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str) and raw.strip().lstrip("+-").isdigit():
        return int(raw.strip())
    raise DomainError(f"{name} must be an integer (decimal string), got {raw!r}")


def config_from_dict(doc: dict) -> ScanConfig:
    known = {"target", "beta", "x_grid", "y_rule", "k", "z", "z1", "z2", "output_path"}
    extra = set(doc) - known
    if extra:
        raise DomainError(f"unknown config keys {sorted(extra)}")
    for key in ("target", "beta", "x_grid"):
        if key not in doc:
            raise DomainError(f"config is missing {key!r}")
    if not isinstance(doc["x_grid"], list):
        raise DomainError("x_grid must be a list")
    return ScanConfig(
        target=str(doc["target"]),
        beta=_int_field(doc["beta"], "beta"),
        x_grid=tuple(_int_field(v, "x_grid entry") for v in doc["x_grid"]),
        y_rule=str(doc.get("y_rule", "x")),
        k=_int_field(doc["k"], "k") if doc.get("k") is not None else None,
        z=parse_complex(doc["z"]) if doc.get("z") is not None else None,
        z1=parse_complex(doc["z1"]) if doc.get("z1") is not None else None,
        z2=parse_complex(doc["z2"]) if doc.get("z2") is not None else None,
        output_path=doc.get("output_path"),
    )


def load_config(path: str | Path) -> ScanConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DomainError("config must be a JSON object")
    return config_from_dict(doc)


# ---------------------------------------------------------------- records


@dataclass(frozen=True)
class ScanRecord:
    x: int
    y: int | float
    exact: Any = None
    main_term: Any = None
    error: Any = None
    bound_shape: float | None = None
    normalized_error: float | None = None
    in_range: bool = False
    status: str = "ok"
    wall_time_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    max_normalized_error: float
    points_used: int


@lru_cache(maxsize=2)
def _sieve(limit: int):
    return build_sieve(limit)


def _compute_point(config: ScanConfig, x: int, sieve_limit: int) -> ScanRecord:
    y = YRule(config.y_rule)(x)
    start = time.perf_counter()
    try:
        if config.target in ("thm4", "thm5"):
            y = x
            if config.target == "thm4":
                rep = delta_report("single", PartialSumQuery(x, config.beta, config.z))
            else:
                rep = delta_report("pair", PartialSumQuery(x, config.beta, config.z1, config.z2))
            in_range = in_theorem_range(config.target, config.beta, x, x)
        else:
            query = MomentQuery(config.moment_order, config.beta, x, y)
            rep = moment_report(config.target, query, _sieve(sieve_limit))
            in_range = in_theorem_range(config.target, config.beta, x, y, config.moment_order)
    except CohenMomentsError as exc:
        elapsed = (time.perf_counter() - start) * 1e3
        status = f"error:{type(exc).__name__}:{exc}"
        return ScanRecord(x, y, status=status, wall_time_ms=elapsed)
    elapsed = (time.perf_counter() - start) * 1e3
    return ScanRecord(
        x,
        y,
        exact=rep.exact,
        main_term=rep.main_term,
        error=rep.error,
        bound_shape=rep.bound_shape,
        normalized_error=rep.normalized_error,
        in_range=in_range,
        wall_time_ms=elapsed,
    )


def regress(records: Sequence[ScanRecord]) -> RegressionResult:
    """Least squares of log|error| on log x over computed points with nonzero error."""
    done = [r for r in records if r.ok]
    norms = [r.normalized_error for r in done]
    max_norm = max(norms) if norms else math.nan
    pts = [(r.x, abs(r.error)) for r in done if r.error != 0]
    if len(pts) < 2:
        return RegressionResult(math.nan, math.nan, max_norm, len(pts))
    lx = np.log(np.array([p[0] for p in pts], dtype=np.float64))
    le = np.log(np.maximum(np.array([float(p[1]) for p in pts]), ERROR_FLOOR))
    slope, intercept = np.polyfit(lx, le, 1)
    return RegressionResult(float(slope), float(intercept), max_norm, len(pts))


def run_scan(
    config: ScanConfig, workers: int = 1, output_path: str | Path | None = None, fmt: str = "csv"
) -> tuple[list[ScanRecord], RegressionResult]:
    """Compute one record per grid point, in grid order, and fit the error exponent.

    Per-point failures are recorded in the status column. When an output path
    is given (or set in the config) the rendered table is written atomically.
    """
    limit = max(config.x_grid) if config.target in ("thm2", "thm3", "prop1") else 1
    args = [(config, x, limit) for x in config.x_grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_compute_point, *zip(*args)))
    else:
        records = [_compute_point(*a) for a in args]
    reg = regress(records)
    dest = output_path or config.output_path
    if dest:
        text = render_json(records, reg) if fmt == "json" else render_csv(records)
        write_atomic(dest, text)
    return records, reg


# ---------------------------------------------------------------- output


def format_number(value: Any) -> str:
    """Locale-free, round-trip text for ints, floats and complex values."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, complex):
        if value.imag == 0:
            return repr(float(value.real))
        sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
        return f"{float(value.real)!r}{sign}{abs(float(value.imag))!r}i"
    return repr(float(value))


def _row(r: ScanRecord) -> list[str]:
    return [
        format_number(r.x),
        format_number(r.y),
        format_number(r.exact),
        format_number(r.main_term),
        format_number(r.error),
        format_number(r.bound_shape),
        format_number(r.normalized_error),
        format_number(r.in_range),
        r.status,
        f"{r.wall_time_ms:.3f}",
    ]


def render_csv(records: Sequence[ScanRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(_row(r))
    return buf.getvalue()


def _json_value(value: Any):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, complex):
        return format_number(value) if value.imag != 0 else _json_value(value.real)
    f = float(value)
    return f if math.isfinite(f) else repr(f)


def render_json(records: Sequence[ScanRecord], reg: RegressionResult | None = None) -> str:
    rows = [dict(zip(CSV_HEADER, _record_values(r))) for r in records]
    doc: dict[str, Any] = {"records": rows}
    if reg is not None:
        doc["regression"] = {k: _json_value(v) for k, v in asdict(reg).items()}
    return json.dumps(doc, indent=2) + "\n"


def _record_values(r: ScanRecord) -> list:
    vals = [r.x, r.y, r.exact, r.main_term, r.error, r.bound_shape, r.normalized_error, r.in_range, r.status]
    return [_json_value(v) for v in vals] + [round(r.wall_time_ms, 3)]


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
