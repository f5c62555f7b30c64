"""Command-line interface: ``ep-atlas bands|scan|classify|symcheck|tablecheck``.

Exit codes: 0 success, 1 table mismatch, 2 configuration error,
3 refinement did not converge.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import report
from .charpoly import constraints, sort_spectrum
from .config import ConfigError, JobConfig, OutputSpec, parse_config
from .dispersion import DEFAULT_RANGE, classify, scaling_exponents
from .epfinder import ScanConfig, scan
from .models import MODELS
from .symmetry import SymmetryKind, pattern_check, symmetry_report
from .tables import check_row, rows

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_MISMATCH", "EXIT_CONFIG", "EXIT_UNCONVERGED"]

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_UNCONVERGED = 0, 1, 2, 3

# which output kinds each command produces
_PRODUCES = {
    "bands": ("bands", "constraints"),
    "scan": ("ep_report",),
    "classify": ("dispersion",),
    "symcheck": ("symmetry_report",),
    "tablecheck": ("table_check",),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ep-atlas", description="Exceptional-point analysis of non-Hermitian Bloch Hamiltonians.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("bands", "eigenvalues on the grid"),
        ("scan", "locate degeneracies and exceptional points"),
        ("classify", "scan, then classify each EP3/EP4 by its dispersion"),
        ("symcheck", "check the configured symmetries and their constraint patterns"),
        ("tablecheck", "compare measured parameter tables with the reference tables"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--out", help="output path (default: stdout)")
        s.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "tablecheck":
            s.add_argument("--n", type=int, choices=(2, 3, 4), help="matrix size (default: all)")
            s.add_argument("--kind", help="symmetry kind (default: all)")
            s.add_argument("--draws", type=int, default=20, help="random draws per row (default: 20)")
            s.add_argument("--config")
            continue
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("--config", help="JSON job file")
        src.add_argument("--model", choices=sorted(MODELS))
        s.add_argument("--param", action="append", default=[], metavar="NAME=VALUE", help="override a parameter (repeatable)")
        s.add_argument("--grid", action="append", default=[], metavar="K=MIN:MAX:COUNT", help="grid for one momentum (repeatable)")
        if name == "classify":
            s.add_argument("--direction", help="approach direction, comma separated")
    return p


def _job(args) -> JobConfig:
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError("", f"cannot read {args.config}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError("", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        if not isinstance(doc, dict):
            raise ConfigError("", "configuration must be a JSON object")
    else:
        doc = {"hamiltonian": {"model": args.model}}
    ham = doc.setdefault("hamiltonian", {})
    for item in getattr(args, "param", []):
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ConfigError("/hamiltonian/params", f"--param expects NAME=VALUE, got {item!r}")
        if not isinstance(ham, dict):
            break
        ham.setdefault("params", {})[name.strip()] = value.strip()
    if getattr(args, "grid", None):
        grid = {}
        for item in args.grid:
            name, sep, spec = item.partition("=")
            parts = spec.split(":")
            if not sep or len(parts) != 3:
                raise ConfigError("/scan/grid", f"--grid expects K=MIN:MAX:COUNT, got {item!r}")
            try:
                count = int(parts[2])
            except ValueError:
                raise ConfigError(f"/scan/grid/{name}", f"count must be an integer, got {parts[2]!r}") from None
            grid[name.strip()] = [parts[0], parts[1], count]
        scan_doc = doc.setdefault("scan", {})
        if isinstance(scan_doc, dict):
            scan_doc["grid"] = grid
    return parse_config(doc)


def _header(job: JobConfig, command: str) -> dict:
    Hf = job.field
    head = {
        "schema": report.SCHEMA,
        "command": command,
        "model": job.model or Hf.name,
        "params": {k: v for k, v in sorted(Hf.params.items())},
        "momenta": list(Hf.momenta),
        "fixed": dict(job.fixed),
    }
    if job.scan is not None:
        head["grid"] = {m: list(ax) for m, ax in zip(_free(job), job.scan.grid)}
        head["tolerances"] = {f.name: getattr(job.scan, f.name) for f in dataclasses.fields(job.scan) if f.name not in ("grid", "threads")}
    return head


def _free(job: JobConfig) -> list:
    return [m for m in job.field.momenta if m not in job.fixed]


def _restricted(job: JobConfig):
    return job.field.restrict(job.fixed) if job.fixed else job.field


def _scan_cfg(job: JobConfig) -> ScanConfig:
    return job.scan if job.scan is not None else ScanConfig(())


def _grid_points(job: JobConfig) -> np.ndarray:
    cfg = _scan_cfg(job)
    if not cfg.grid:
        return np.zeros((1, 0))
    mesh = np.meshgrid(*cfg.axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _emit(job: JobConfig, command: str, payloads: dict, args) -> None:
    """Write each produced output to its configured destination.

    ``payloads`` maps an output kind to ``(json_obj, csv_table_or_None)``.
    ``--out``/``--format`` select the primary output; config ``outputs``
    entries add more.
    """
    primary = _PRODUCES[command][0]
    specs = [o for o in job.outputs if o.kind in payloads]
    if args.out or not specs:
        specs.insert(0, OutputSpec(primary, args.out, args.format))
    for spec in specs:
        obj, table = payloads[spec.kind]
        if spec.format == "csv":
            if table is None:
                raise ConfigError("/outputs", f"{spec.kind} has no csv form")
            text = report.write_csv(*table)
        else:
            text = report.dumps(obj)
        report.write_text(spec.path, text)


# ---------------------------------------------------------------- commands


def _cmd_bands(job: JobConfig, args) -> int:
    Hf = _restricted(job)
    pts = _grid_points(job)
    eigs = np.array([sort_spectrum(np.linalg.eigvals(Hf(k))) for k in pts])
    cons = [constraints(Hf(k)).generic for k in pts]
    momenta = _free(job)
    head = _header(job, "bands")
    bands = dict(head, points=pts, eigenvalues=eigs)
    ctab_rows = []
    for k, g in zip(pts, cons):
        row = [float(x) for x in k]
        for z in g:
            row += [float(complex(z).real), float(complex(z).imag)]
        ctab_rows.append(row)
    nc = len(cons[0])
    cnames = [f"tr{j}" for j in range(2, Hf.n)] + ["det"]
    cheader = list(momenta) + [f"{p}_{c}" for c in cnames[:nc] for p in ("re", "im")]
    payloads = {
        "bands": (bands, report.bands_table(momenta, pts, eigs)),
        "constraints": (dict(head, names=cnames[:nc], points=pts, values=cons), (cheader, ctab_rows)),
    }
    _emit(job, "bands", payloads, args)
    return EXIT_OK


def _scan_payload(job: JobConfig) -> tuple[dict, object]:
    Hf = _restricted(job)
    hint = job.symmetries[0].kind if len(job.symmetries) == 1 else None
    res = scan(Hf, _scan_cfg(job), hint)
    out = dict(
        _header(job, "scan"),
        candidates=res.candidates,
        curves=res.curves,
        unconverged=res.unconverged,
        notes=res.notes,
    )
    return out, res


def _cmd_scan(job: JobConfig, args) -> int:
    out, res = _scan_payload(job)
    _emit(job, "scan", {"ep_report": (out, None)}, args)
    return EXIT_UNCONVERGED if res.unconverged else EXIT_OK


def _cmd_classify(job: JobConfig, args) -> int:
    Hf = _restricted(job)
    opts = dict(job.classify)
    direction = opts.get("direction")
    if getattr(args, "direction", None):
        try:
            direction = [float(x) for x in args.direction.split(",")]
        except ValueError:
            raise ConfigError("/classify/direction", f"expected comma-separated numbers, got {args.direction!r}") from None
    omega = tuple(opts.get("omega_range", DEFAULT_RANGE))
    samples = int(opts.get("samples", 25))
    if direction is not None and len(direction) != Hf.arity:
        raise ConfigError("/classify/direction", f"expected {Hf.arity} components")
    out, res = _scan_payload(job)
    out["command"] = "classify"
    cfg = _scan_cfg(job)
    classified = []
    for rep in res.all_reports():
        if not rep.is_ep or rep.algebraic_mult != Hf.n or Hf.n not in (3, 4) or Hf.arity == 0:
            continue
        try:
            cls = classify(Hf, rep.k_point, direction, omega, samples, cluster_radius=cfg.cluster_radius, rank_tol=cfg.rank_tol)
        except ValueError as exc:
            classified.append({"k_point": list(rep.k_point), "error": str(exc)})
            continue
        fit = scaling_exponents(Hf, rep.k_point, direction, omega, samples, cluster_radius=cfg.cluster_radius)
        rep.dispersion_class = cls.label
        rep.exponents = fit.exponents
        classified.append({"k_point": list(rep.k_point), "class": cls, "scaling": fit})
    out["classified"] = classified
    out["omega_range"] = list(omega)
    out["direction"] = direction
    _emit(job, "classify", {"dispersion": (out, None)}, args)
    return EXIT_UNCONVERGED if res.unconverged else EXIT_OK


def _cmd_symcheck(job: JobConfig, args) -> int:
    Hf = _restricted(job)
    rng = np.random.default_rng(0)
    ks = [rng.uniform(-1, 1, Hf.arity) for _ in range(20)] if Hf.arity else [np.zeros(0)]
    items = []
    for op in job.symmetries:
        rep = symmetry_report(Hf, op, ks)
        pred = rep.prediction
        pat = rep.pattern
        items.append({
            "kind": op.kind.value,
            "generator": op.generator,
            "zeta": op.zeta,
            "relation_residual": rep.relation_residual,
            "spectral_residual": rep.spectral_residual,
            "predicted_constraints": None if pred is None else {"count": pred.count, "descriptors": list(pred.descriptors)},
            "predicted_vanishing": None if pat.predicted is None else sorted(pat.predicted),
            "observed_vanishing": sorted(pat.forbidden),
            "prediction_holds": None if pat.predicted is None else pat.predicted <= pat.forbidden,
        })
    out = dict(_header(job, "symcheck"), symmetries=items)
    _emit(job, "symcheck", {"symmetry_report": (out, None)}, args)
    return EXIT_OK


def _cmd_tablecheck(args) -> int:
    n_sel, kind_sel = args.n, args.kind
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("", f"cannot read {args.config}: {exc}") from None
        tc = doc.get("tablecheck", {}) if isinstance(doc, dict) else {}
        if not isinstance(tc, dict):
            raise ConfigError("/tablecheck", "expected an object")
        n_sel = n_sel or tc.get("n")
        kind_sel = kind_sel or tc.get("kind")
    if n_sel is not None and n_sel not in (2, 3, 4):
        raise ConfigError("/tablecheck/n", "n must be 2, 3 or 4")
    if kind_sel is not None:
        try:
            kind_sel = SymmetryKind(kind_sel)
        except ValueError:
            raise ConfigError("/tablecheck/kind", f"unknown symmetry kind {kind_sel!r}") from None
    ns = [n_sel] if n_sel else [2, 3, 4]
    kinds = [kind_sel] if kind_sel else list(SymmetryKind)
    patterns, table_rows, ok = [], [], True
    for n in ns:
        for kind in kinds:
            if kind is SymmetryKind.CS and n % 2:
                patterns.append({"n": n, "kind": kind.value, "status": "skipped", "reason": "chiral symmetry needs even n"})
                continue
            pc = pattern_check(kind, n, draws=args.draws)
            ok &= pc.passed
            patterns.append({
                "n": n,
                "kind": kind.value,
                "status": "pass" if pc.passed else "fail",
                "expected": sorted(pc.pattern.predicted or ()),
                "observed": sorted(pc.pattern.forbidden),
                "spurious": sorted(pc.spurious),
            })
        for row in rows(n=n):
            if kind_sel is not None and kind_sel not in row.kinds:
                continue
            rc = check_row(row, draws=max(2, args.draws // 2))
            good = rc.count_ok and rc.set_ok
            ok &= good
            table_rows.append({
                "table": row.table,
                "row": row.name,
                "status": "pass" if good else "fail",
                "count_expected": row.count,
                "count_observed": rc.count_observed,
                "missing": rc.missing,
                "extra": rc.extra,
            })
    out = {"schema": report.SCHEMA, "command": "tablecheck", "patterns": patterns, "rows": table_rows, "passed": bool(ok)}
    for p in patterns:
        line = f"pattern n={p['n']} {p['kind']}: {p['status']}"
        if p["status"] == "fail":
            line += f" expected={p['expected']} observed={p['observed']} spurious={p['spurious']}"
        print(line, file=sys.stderr)
    for r in table_rows:
        line = f"{r['table']} {r['row']}: {r['status']} count {r['count_expected']}/{r['count_observed']}"
        if r["status"] == "fail":
            line += f" missing={r['missing']} extra={r['extra']}"
        print(line, file=sys.stderr)
    if args.format == "csv":
        raise ConfigError("/format", "tablecheck output is json only")
    report.write_text(args.out, report.dumps(out))
    return EXIT_OK if ok else EXIT_MISMATCH


_COMMANDS = {"bands": _cmd_bands, "scan": _cmd_scan, "classify": _cmd_classify, "symcheck": _cmd_symcheck}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "tablecheck":
            return _cmd_tablecheck(args)
        job = _job(args)
        if args.format == "csv" and args.command != "bands":
            raise ConfigError("/format", f"{args.command} output is json only")
        return _COMMANDS[args.command](job, args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
