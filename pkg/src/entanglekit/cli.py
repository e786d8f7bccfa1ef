"""Command-line front end.

Exit codes: ``analyze-*`` return 0 for an entangled state, 1 for an
unentangled one and 2 on bad input. ``verify-algebra`` returns 0 iff
every selected relation holds. ``teleport`` returns 1 when the statistics
Bob receives admit no solution (for example after ``--tamper-m0``).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import algebra, qubit, qutrit, teleport
from .errors import AmbiguousResource, EntangleKitError, Unsolvable

log = logging.getLogger("entanglekit")

FORMATS = ("human", "records", "csv")
RENORM_WARN = 1e-6


@dataclass
class RunConfig:
    command: str
    amplitudes: list[str] = field(default_factory=list)
    input_path: str | None = None
    output_path: str | None = None
    fmt: str = "human"
    tolerance: float | None = None
    points: int | None = None
    tr_range: tuple[float, float] | None = None
    det2_range: tuple[float, float] | None = None
    basis: str | None = None
    alpha: float | None = None
    a00: float | None = None
    tamper_m0: float = 1.0
    tamper_m1: float = 1.0
    relation: str = "all"
    seed: int = 0


class InputError(Exception):
    pass


def _parse_numbers(tokens) -> list[float]:
    try:
        vals = [float(t) for t in tokens]
    except ValueError as exc:
        raise InputError(f"not a number: {exc}") from None
    if not all(math.isfinite(v) for v in vals):
        raise InputError("amplitudes must be finite")
    return vals


def read_amplitudes(cfg: RunConfig, dim: int) -> np.ndarray:
    """Amplitudes from the command line, a file, or ``random`` (seeded Haar state).

    ``dim**2`` numbers are real amplitudes, ``2 dim**2`` are (re, im) pairs.
    Input is renormalised, with a warning above a 1e-6 correction.
    """
    n = dim * dim
    if cfg.input_path == "random":
        rng = np.random.default_rng(cfg.seed)
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        return v / np.linalg.norm(v)
    tokens = list(cfg.amplitudes)
    if cfg.input_path is not None:
        try:
            fh = sys.stdin if cfg.input_path == "-" else open(cfg.input_path)
            with fh:
                tokens += fh.read().split()
        except OSError as exc:
            raise InputError(str(exc)) from None
    vals = _parse_numbers(tokens)
    if len(vals) == n:
        v = np.array(vals, dtype=complex)
    elif len(vals) == 2 * n:
        v = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    else:
        raise InputError(f"expected {n} or {2 * n} numbers, got {len(vals)}")
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise InputError("zero state vector")
    if abs(norm - 1.0) > RENORM_WARN:
        log.warning("input renormalised (norm was %r)", norm)
    return v / norm


def _emit(out, cfg: RunConfig, human_lines, records, csv_header=None, csv_rows=None):
    if cfg.fmt == "records":
        for r in records:
            out.write(json.dumps(r, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        if csv_header is None:
            csv_header = list(records[0])
            csv_rows = [[r[k] for k in csv_header] for r in records]
        out.write(",".join(csv_header) + "\n")
        for row in csv_rows:
            out.write(",".join(_csv_cell(c) for c in row) + "\n")
    else:
        out.write("\n".join(human_lines) + "\n")


def _csv_cell(c) -> str:
    if c is None:
        return ""
    if isinstance(c, bool):
        return "true" if c else "false"
    if isinstance(c, float):
        return repr(c)
    s = str(c)
    return f'"{s}"' if "," in s else s


def _human(rec: dict, title: str) -> list[str]:
    width = max(len(k) for k in rec)
    lines = [title]
    for k, v in rec.items():
        lines.append(f"  {k:<{width}}  {v}")
    return lines


def cmd_analyze_qubit(cfg: RunConfig, out) -> int:
    v = read_amplitudes(cfg, 2)
    tol = cfg.tolerance if cfg.tolerance is not None else qubit.DET_TOL
    rep = qubit.analyze(qubit.QubitPairState(v), tol=tol)
    rec = rep.to_record()
    _emit(out, cfg, _human(rec, "two-qubit state"), [rec])
    return 1 if rep.classification is qubit.Classification.UNENTANGLED else 0


def cmd_analyze_qutrit(cfg: RunConfig, out) -> int:
    v = read_amplitudes(cfg, 3)
    rep = qutrit.analyze(qutrit.QutritPairState(v))
    rec = rep.to_record()
    _emit(out, cfg, _human(rec, "two-qutrit state"), [rec])
    return 1 if rep.classification is qubit.Classification.UNENTANGLED else 0


def cmd_teleport(cfg: RunConfig, out) -> int:
    info = teleport.InformationQubit.from_alpha(cfg.alpha)
    res = teleport.ResourceState.from_a00(cfg.a00)
    bases = [cfg.basis] if cfg.basis else list(teleport.BASES)
    records, lines, failed = [], [], False
    for b in bases:
        t = teleport.measure(teleport.run_circuit(info, res), b)
        stats = teleport.BobStats(t.bob_stats.m0 * cfg.tamper_m0, t.bob_stats.m1 * cfg.tamper_m1)
        t = replace(t, bob_stats=stats)
        try:
            t = replace(t, recovered=teleport.recover_information((stats.m0, stats.m1), abs(res.det_a), b))
        except AmbiguousResource as exc:
            t = replace(t, recovery_candidates=exc.candidates, recovery_error=f"AmbiguousResource: {exc}")
        except Unsolvable as exc:
            failed = True
            t = replace(t, recovery_error=f"Unsolvable: {exc}")
        rec = t.to_record()
        records.append(rec)
        lines += _human(rec, f"alice basis {b}")
    _emit(out, cfg, lines, records)
    return 1 if failed else 0


def cmd_verify_algebra(cfg: RunConfig, out) -> int:
    names = list(algebra.RELATIONS) if cfg.relation == "all" else [cfg.relation]
    reports = [algebra.RELATIONS[n]() for n in names]
    records = [r.to_record() for r in reports]
    lines = []
    for r in reports:
        lines.append(f"{r.relation_id:<11} {'PASS' if r.passed else 'FAIL'}  "
                     f"pairs={r.pairs_checked:<3} max_residual={r.max_residual:.3e}")
        lines += [f"    note: {n}" for n in r.notes]
    if cfg.fmt == "csv":
        _emit(out, cfg, lines, records, ["id", "pairs", "residual", "pass"],
              [[r.relation_id, r.pairs_checked, r.max_residual, r.passed] for r in reports])
    else:
        _emit(out, cfg, lines, records)
    return 0 if all(r.passed for r in reports) else 1


def cmd_entropy_sweep_qubit(cfg: RunConfig, out) -> int:
    n = cfg.points if cfg.points is not None else 1001
    if n < 2:
        raise InputError("--points must be at least 2")
    out.write("det_a_squared,entropy_nats\n")
    for d2 in np.linspace(0.0, 0.25, n):
        d2 = float(d2)
        out.write(f"{d2!r},{qubit.qubit_entropy(math.sqrt(d2))!r}\n")
    return 0


def cmd_entropy_sweep_qutrit(cfg: RunConfig, out) -> int:
    n = cfg.points if cfg.points is not None else 50
    tr = cfg.tr_range or (0.0, math.sqrt(3.0))
    d2 = cfg.det2_range or (0.0, 1.0 / 27.0)
    try:
        rows = qutrit.entropy_grid(tr, d2, n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.write(qutrit.grid_to_csv(rows))
    return 0


COMMANDS = {
    "analyze-qubit": cmd_analyze_qubit,
    "analyze-qutrit": cmd_analyze_qutrit,
    "teleport": cmd_teleport,
    "verify-algebra": cmd_verify_algebra,
    "entropy-sweep-qubit": cmd_entropy_sweep_qubit,
    "entropy-sweep-qutrit": cmd_entropy_sweep_qutrit,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--format", choices=FORMATS, default=os.environ.get("ENTANGLEKIT_FORMAT", "human"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerance", type=float, help="determinant threshold for the verdict")

    p = argparse.ArgumentParser(prog="entanglekit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("analyze-qubit", "analyze-qutrit"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("amplitudes", nargs="*", help="real amplitudes, or re/im pairs")
        s.add_argument("--input", help="file with amplitudes, '-' for stdin, or 'random'")
    t = sub.add_parser("teleport", parents=[common])
    t.add_argument("--alpha", type=float, required=True)
    t.add_argument("--a00", type=float, required=True)
    t.add_argument("--basis", choices=teleport.BASES)
    t.add_argument("--tamper-m0", type=float, default=1.0, help="scale M0 before recovery")
    t.add_argument("--tamper-m1", type=float, default=1.0, help="scale M1 before recovery")
    v = sub.add_parser("verify-algebra", parents=[common])
    v.add_argument("relation", nargs="?", default="all", choices=["all", *algebra.RELATIONS])
    q = sub.add_parser("entropy-sweep-qubit", parents=[common])
    q.add_argument("--points", type=int)
    r = sub.add_parser("entropy-sweep-qutrit", parents=[common])
    r.add_argument("--points", type=int, help="grid points per axis")
    r.add_argument("--tr-range", type=float, nargs=2, metavar=("LO", "HI"))
    r.add_argument("--det2-range", type=float, nargs=2, metavar=("LO", "HI"))
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        amplitudes=getattr(ns, "amplitudes", []) or [],
        input_path=getattr(ns, "input", None),
        output_path=ns.output,
        fmt=ns.format,
        tolerance=ns.tolerance,
        points=getattr(ns, "points", None),
        tr_range=tuple(ns.tr_range) if getattr(ns, "tr_range", None) else None,
        det2_range=tuple(ns.det2_range) if getattr(ns, "det2_range", None) else None,
        basis=getattr(ns, "basis", None),
        alpha=getattr(ns, "alpha", None),
        a00=getattr(ns, "a00", None),
        tamper_m0=getattr(ns, "tamper_m0", 1.0),
        tamper_m1=getattr(ns, "tamper_m1", 1.0),
        relation=getattr(ns, "relation", "all"),
        seed=ns.seed,
    )


def run(cfg: RunConfig, out) -> int:
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (InputError, EntangleKitError) as exc:
        print(f"entanglekit {cfg.command}: error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    logging.basicConfig(format="entanglekit: %(levelname)s: %(message)s", stream=sys.stderr)
    ns = build_parser().parse_args(argv)
    if ns.format not in FORMATS:
        print(f"entanglekit: unknown format {ns.format!r}", file=sys.stderr)
        return 2
    cfg = config_from_args(ns)
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="") as fh:
            return run(cfg, fh)
    return run(cfg, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
