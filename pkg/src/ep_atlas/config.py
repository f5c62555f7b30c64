"""Job configuration: JSON documents describing a field, symmetries, a scan and outputs.

Errors carry a JSON pointer to the offending value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

import numpy as np

from . import expr as dsl
from .basis import BasisFamily
from .epfinder import ScanConfig
from .fields import HamiltonianField, from_coefficients, from_entries
from .models import MODELS, get_model
from .symmetry import SymmetryKind, SymmetryOperator, default_generator
from .tables import named_generator

__all__ = ["ConfigError", "JobConfig", "OutputSpec", "load_config", "parse_config", "parse_value", "OUTPUT_KINDS"]

OUTPUT_KINDS = ("bands", "constraints", "ep_report", "dispersion", "symmetry_report", "table_check")
_SCAN_KEYS = {"grid", "cluster_radius", "rank_tol", "refine_tol", "max_refine_iters", "curve_min_cells", "threads"}


class ConfigError(ValueError):
    """Invalid configuration; ``pointer`` locates the problem (RFC 6901)."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {message}")


def _ptr(base: str, key) -> str:
    key = str(key).replace("~", "~0").replace("/", "~1")
    return f"{base}/{key}"


def parse_value(value: Any, pointer: str = "") -> complex:
    """Number, ``[re, im]`` pair or constant DSL string to complex."""
    if isinstance(value, bool):
        raise ConfigError(pointer, "expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(isinstance(v, (int, float)) for v in value):
        return complex(value[0], value[1])
    if isinstance(value, str):
        try:
            return dsl.evaluate(dsl.parse(value), {})
        except dsl.ExpressionError as exc:
            raise ConfigError(pointer, str(exc)) from None
    raise ConfigError(pointer, f"expected a number, [re, im] or expression string, got {value!r}")


def _real(value: Any, pointer: str) -> float:
    z = parse_value(value, pointer)
    if z.imag != 0:
        raise ConfigError(pointer, "expected a real number")
    return z.real


def _params(raw: Any, pointer: str) -> dict:
    if raw is None:
        return {}
    if not isinstance(raw, Mapping):
        raise ConfigError(pointer, "expected an object of parameter values")
    out = {}
    for k, v in raw.items():
        z = parse_value(v, _ptr(pointer, k))
        out[k] = z.real if z.imag == 0 else z
    return out


def _matrix(raw: Any, n: int, pointer: str) -> np.ndarray:
    if isinstance(raw, str):
        try:
            return named_generator(n, raw)
        except KeyError as exc:
            raise ConfigError(pointer, str(exc.args[0])) from None
    if not isinstance(raw, list) or len(raw) != n or any(not isinstance(r, list) or len(r) != n for r in raw):
        raise ConfigError(pointer, f"generator must be a name or an {n}x{n} matrix")
    return np.array([[parse_value(v, _ptr(_ptr(pointer, i), j)) for j, v in enumerate(r)] for i, r in enumerate(raw)])


@dataclass(frozen=True)
class OutputSpec:
    kind: str
    path: Optional[str]
    format: str = "json"


@dataclass
class JobConfig:
    """Parsed job: the field plus optional symmetries, scan and outputs."""

    field: HamiltonianField
    source: dict
    model: Optional[str] = None
    symmetries: list = field(default_factory=list)
    scan: Optional[ScanConfig] = None
    fixed: dict = field(default_factory=dict)
    classify: dict = field(default_factory=dict)
    tablecheck: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)


def _field(h: Any, pointer: str) -> tuple[HamiltonianField, Optional[str], dict]:
    if not isinstance(h, Mapping):
        raise ConfigError(pointer, "hamiltonian must be an object")
    sources = [k for k in ("model", "coefficients", "entries") if k in h]
    if len(sources) != 1:
        raise ConfigError(pointer, "exactly one of 'model', 'coefficients' or 'entries' is required")
    params = _params(h.get("params"), _ptr(pointer, "params"))
    fixed_raw = h.get("fixed") or {}
    if not isinstance(fixed_raw, Mapping):
        raise ConfigError(_ptr(pointer, "fixed"), "expected an object")
    fixed = {k: _real(v, _ptr(_ptr(pointer, "fixed"), k)) for k, v in fixed_raw.items()}
    model = None
    try:
        if sources[0] == "model":
            model = h["model"]
            if model not in MODELS:
                raise ConfigError(_ptr(pointer, "model"), f"unknown model {model!r}; choose from {sorted(MODELS)}")
            spec = get_model(model)
            unknown = set(params) - set(spec.defaults)
            if unknown:
                raise ConfigError(_ptr(pointer, "params"), f"unknown parameter(s) {sorted(unknown)} for {model}")
            Hf = spec.build(**params)
            fixed = dict(spec.fixed, **fixed)
        else:
            momenta = h.get("momenta", ["k_x"])
            if not isinstance(momenta, list) or not all(isinstance(m, str) for m in momenta):
                raise ConfigError(_ptr(pointer, "momenta"), "expected a list of names")
            if sources[0] == "coefficients":
                fam = h.get("family")
                if fam is None:
                    n = h.get("dimension")
                    fam = {2: "Pauli", 3: "GellMann3", 4: "GellMann4"}.get(n)
                    if fam is None:
                        raise ConfigError(_ptr(pointer, "dimension"), "dimension must be 2, 3 or 4 when no family is given")
                try:
                    fam = BasisFamily(fam)
                except ValueError:
                    raise ConfigError(_ptr(pointer, "family"), f"unknown basis family {fam!r}") from None
                if "dimension" in h and h["dimension"] != fam.dimension:
                    raise ConfigError(_ptr(pointer, "dimension"), f"{fam.value} is {fam.dimension}-dimensional")
                Hf = from_coefficients(fam, h["coefficients"], h.get("d0", "0"), params, momenta, h.get("name", "coefficients"))
            else:
                Hf = from_entries(h["entries"], params, momenta, h.get("name", "entries"))
    except ConfigError:
        raise
    except dsl.ExpressionError as exc:
        raise ConfigError(_ptr(pointer, sources[0]), str(exc)) from None
    except ValueError as exc:
        raise ConfigError(_ptr(pointer, sources[0]), str(exc)) from None
    bad = set(fixed) - set(Hf.momenta)
    if bad:
        raise ConfigError(_ptr(pointer, "fixed"), f"unknown momenta {sorted(bad)}")
    return Hf, model, fixed


def _symmetries(raw: Any, n: int, pointer: str) -> list:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise ConfigError(pointer, "expected a list")
    ops = []
    for i, item in enumerate(raw):
        p = _ptr(pointer, i)
        if not isinstance(item, Mapping) or "kind" not in item:
            raise ConfigError(p, "each symmetry needs a 'kind'")
        try:
            kind = SymmetryKind(item["kind"])
        except ValueError:
            raise ConfigError(_ptr(p, "kind"), f"unknown symmetry kind {item['kind']!r}") from None
        zeta = item.get("zeta")
        gen = item.get("generator", "default")
        try:
            A = default_generator(kind, n, zeta or 1) if gen == "default" else _matrix(gen, n, _ptr(p, "generator"))
            ops.append(SymmetryOperator(kind, A, zeta))
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(p, str(exc)) from None
    return ops


def _scan(raw: Any, free: tuple, default_grid: Mapping, pointer: str) -> Optional[ScanConfig]:
    raw = dict(raw or {})
    unknown = set(raw) - _SCAN_KEYS
    if unknown:
        raise ConfigError(pointer, f"unknown scan field(s) {sorted(unknown)}")
    grid_raw = raw.pop("grid", None)
    if grid_raw is None:
        grid_raw = {m: default_grid[m] for m in free if m in default_grid}
    if isinstance(grid_raw, Mapping):
        missing = [m for m in free if m not in grid_raw]
        extra = set(grid_raw) - set(free)
        if extra:
            raise ConfigError(_ptr(pointer, "grid"), f"unknown or fixed momenta {sorted(extra)}")
        if missing:
            if not grid_raw and not free:
                return None
            raise ConfigError(_ptr(pointer, "grid"), f"no grid for momenta {missing}")
        axes = [(m, grid_raw[m]) for m in free]
    elif isinstance(grid_raw, list):
        if len(grid_raw) != len(free):
            raise ConfigError(_ptr(pointer, "grid"), f"expected {len(free)} axes, got {len(grid_raw)}")
        axes = list(zip(free, grid_raw))
    else:
        raise ConfigError(_ptr(pointer, "grid"), "expected an object or a list of [min, max, count]")
    grid = []
    for m, ax in axes:
        p = _ptr(_ptr(pointer, "grid"), m)
        if not isinstance(ax, (list, tuple)) or len(ax) != 3:
            raise ConfigError(p, "expected [min, max, count]")
        count = ax[2]
        if isinstance(count, bool) or not isinstance(count, int) and not (isinstance(count, float) and count.is_integer()):
            raise ConfigError(p, "count must be an integer")
        grid.append((_real(ax[0], p), _real(ax[1], p), int(count)))
    try:
        return ScanConfig(tuple(grid), **raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(pointer, str(exc)) from None


def _outputs(raw: Any, pointer: str) -> list:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise ConfigError(pointer, "expected a list")
    out = []
    for i, item in enumerate(raw):
        p = _ptr(pointer, i)
        if not isinstance(item, Mapping) or item.get("kind") not in OUTPUT_KINDS:
            raise ConfigError(_ptr(p, "kind"), f"output kind must be one of {list(OUTPUT_KINDS)}")
        fmt = item.get("format", "json")
        if fmt not in ("json", "csv"):
            raise ConfigError(_ptr(p, "format"), "format must be 'json' or 'csv'")
        if fmt == "csv" and item["kind"] not in ("bands", "constraints"):
            raise ConfigError(_ptr(p, "format"), f"{item['kind']} is only available as json")
        path = item.get("path")
        if path is not None and not isinstance(path, str):
            raise ConfigError(_ptr(p, "path"), "path must be a string")
        out.append(OutputSpec(item["kind"], path, fmt))
    return out


def parse_config(doc: Any) -> JobConfig:
    """Validate a decoded JSON document and build the job.

    Raises
    ------
    ConfigError
        With a JSON pointer for the first invalid value.
    """
    if not isinstance(doc, Mapping):
        raise ConfigError("", "configuration must be a JSON object")
    schema = doc.get("schema", 1)
    if schema != 1:
        raise ConfigError("/schema", f"unsupported schema version {schema!r}")
    if "hamiltonian" not in doc:
        raise ConfigError("/hamiltonian", "missing")
    Hf, model, fixed = _field(doc["hamiltonian"], "/hamiltonian")
    ops = _symmetries(doc.get("symmetries"), Hf.n, "/symmetries")
    if model and doc.get("symmetries") is None:
        ops = get_model(model).operators()
    free = tuple(m for m in Hf.momenta if m not in fixed)
    default_grid = get_model(model).grid if model else {}
    scan = _scan(doc.get("scan"), free, default_grid, "/scan") if free else None
    cls = doc.get("classify") or {}
    if not isinstance(cls, Mapping):
        raise ConfigError("/classify", "expected an object")
    tc = doc.get("tablecheck") or {}
    if not isinstance(tc, Mapping):
        raise ConfigError("/tablecheck", "expected an object")
    return JobConfig(Hf, dict(doc), model, ops, scan, fixed, dict(cls), dict(tc), _outputs(doc.get("outputs"), "/outputs"))


def load_config(path: str) -> JobConfig:
    """Read and parse a JSON config file."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError("", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_config(doc)
