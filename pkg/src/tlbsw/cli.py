"""Command-line front end: ``tlbsw <command> ...``.

Commands print certificates or tables and exit with status 0 iff every
emitted certificate passes.  Set ``TLBSW_THREADS`` above 1 to run the
independent certificates of ``repro-all`` in worker processes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any

from .cellular import cell_labels, cell_module, gram, rules_for
from .diagrams import DiagramError, enumerate_diagrams
from .duality import (
    Certificate,
    FunctorContext,
    algebra_image_dimension,
    commutant_inclusion,
    functoriality,
    semisimplicity_experiment,
    truncation_stability,
    verify_affine_relations,
    verify_category_relations,
)
from .qfield import QFieldError, as_ratfunc, render
from .tlb import basis, structure_constants

__all__ = ["RunConfig", "main", "build_parser", "parse_ells"]

FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    """Validated arguments of one invocation; ``depth`` defaults to ``r + 2`` downstream."""

    command: str
    ell: list[int]
    r: int | None
    rmax: int | None
    Q: str | None
    depth: int | None
    out: str | None
    fmt: str
    timing: bool = True


def parse_ells(text: str) -> list[int]:
    """``"-1..3"`` gives ``[-1, 0, 1, 2, 3]``; ``"0,2"`` gives ``[0, 2]``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    if not out or any(e < -1 for e in out):
        raise argparse.ArgumentTypeError(f"bad ell range {text!r}; values must be >= -1")
    return out


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tlbsw", description="Type-B Temperley-Lieb diagrams and Schur-Weyl certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, fmt: str = "json") -> None:
        sp.add_argument("--format", dest="fmt", choices=FORMATS, default=fmt)
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp.add_argument("--no-timing", dest="timing", action="store_false", help="zero elapsed_ms for byte-stable output")

    sp = sub.add_parser("enumerate", help="list the marked diagrams r -> s")
    sp.add_argument("r", type=int)
    sp.add_argument("s", type=int)
    common(sp, "text")

    sp = sub.add_parser("mult-table", help="multiplication table of TLB_n in the diagram basis")
    sp.add_argument("n", type=int)
    sp.add_argument("--Q", help="specialize Q to an expression in s, q, i")
    common(sp, "csv")

    sp = sub.add_parser("gram", help="Gram matrix and determinant of the cell module W_t(n)")
    sp.add_argument("n", type=int)
    sp.add_argument("t", type=int)
    sp.add_argument("--Q", help="specialize Q to an expression in s, q, i")
    common(sp, "text")

    sp = sub.add_parser("scan", help="semisimplicity verdicts against the rule r <= ell+1")
    sp.add_argument("--ell", type=parse_ells, default=parse_ells("-1..3"))
    sp.add_argument("--rmax", type=_positive, default=4)
    common(sp)

    for name, hlp in (
        ("verify-duality", "dimension of the image algebra in End(M(ell) ⊗ V^r)"),
        ("check-relations", "category and affine relations for the functor images"),
    ):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("--ell", type=parse_ells, default=[1])
        sp.add_argument("--r", type=_positive, default=2)
        sp.add_argument("--depth", type=int, help="truncation depth D (default r+2)")
        common(sp)

    sp = sub.add_parser("repro-all", help="every reproduction certificate at desk-scale defaults")
    sp.add_argument("--ell", type=parse_ells, default=parse_ells("-1..2"))
    sp.add_argument("--rmax", type=_positive, default=3)
    common(sp)
    return p


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    # "--ell -1..3" would otherwise be read as an unknown option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--ell":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--ell={nxt}")
        else:
            out.append(tok)
    return out


# ---------------------------------------------------------------------------
# emission


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _certs_text(certs: Sequence[Certificate], fmt: str, timing: bool) -> str:
    if fmt == "json":
        payload: Any = [c.as_dict(timing) for c in certs]
        if len(certs) == 1:
            payload = payload[0]
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "ell", "r", "D", "Q", "status", "elapsed_ms", "witness"])
        for c in certs:
            p = c.params
            w.writerow(
                [
                    c.check,
                    p.get("ell"),
                    p.get("r"),
                    p.get("D"),
                    p.get("Q"),
                    c.status,
                    c.elapsed_ms if timing else 0,
                    json.dumps(c.witness, sort_keys=True),
                ]
            )
        return buf.getvalue()
    lines = []
    for c in certs:
        p = c.params
        lines.append(f"{c.check:26s} ell={p.get('ell')} r={p.get('r')} D={p.get('D')}  {c.status.upper()}")
        for k, v in c.witness.items():
            if k != "rows":
                lines.append(f"    {k}: {v}")
        for row in c.witness.get("rows", []):
            lines.append(
                f"    ell={row['ell']:>2} r={row['r']}  "
                f"{'semisimple' if row['semisimple'] else 'non-semisimple':15s} "
                f"predicted={'semisimple' if row['predicted'] else 'non-semisimple':15s} "
                f"{'ok' if row['match'] else 'MISMATCH'}"
            )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_enumerate(r: int, s: int, fmt: str) -> str:
    ds = enumerate_diagrams(r, s)
    if fmt == "json":
        return json.dumps({"r": r, "s": s, "count": len(ds), "diagrams": [str(d) for d in ds]}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "diagram"])
        for i, d in enumerate(ds):
            w.writerow([i, str(d)])
        return buf.getvalue()
    return "".join(f"{d}\n" for d in ds)


def cmd_mult_table(n: int, Q: str | None, fmt: str) -> str:
    rules = rules_for(as_ratfunc(Q) if Q else None)
    B = basis(n)
    table = structure_constants(n, rules)

    def cell(entry: dict[int, Any]) -> str:
        if not entry:
            return "0"
        return " + ".join(f"{render(c)}*[{k}]" for k, c in entry.items())

    if fmt == "json":
        return (
            json.dumps(
                {
                    "n": n,
                    "Q": "generic" if Q is None else render(rules.Q),
                    "basis": [str(d) for d in B],
                    "table": [[cell(e) for e in row] for row in table],
                },
                indent=2,
            )
            + "\n"
        )
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + [f"[{k}] {d}" for k, d in enumerate(B)])
    for i, row in enumerate(table):
        w.writerow([f"[{i}] {B[i]}"] + [cell(e) for e in row])
    return buf.getvalue()


def cmd_gram(n: int, t: int, Q: str | None, fmt: str) -> tuple[str, bool]:
    if t not in cell_labels(n):
        raise DiagramError(f"t={t} is not a cell label for n={n}")
    G = gram(n, t, as_ratfunc(Q) if Q else None)
    d = G.det()
    mod = cell_module(n, t, as_ratfunc(Q) if Q else None)
    mat = [[render(x) for x in row] for row in G.entries]
    if fmt == "json":
        payload = {"n": n, "t": t, "Q": Q or "generic", "basis": [str(b) for b in mod.basis], "matrix": mat, "det": render(d)}
        return json.dumps(payload, indent=2) + "\n", True
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in mat:
            w.writerow(row)
        w.writerow(["det", render(d)])
        return buf.getvalue(), True
    lines = [f"W_{t}({n}), Q = {Q or 'generic'}, dim {len(mat)}"]
    lines += ["  " + "  ".join(row) for row in mat]
    lines.append(f"det = {render(d)}")
    return "\n".join(lines) + "\n", True


def _check_relations(ell: int, r: int, D: int | None) -> list[Certificate]:
    ctx = FunctorContext(ell, r, D)
    certs = [verify_category_relations(ctx), commutant_inclusion(ctx)]
    if r >= 2:
        certs.append(verify_affine_relations(ctx))
    return certs


def _verify_duality(ell: int, r: int, D: int | None) -> list[Certificate]:
    return [algebra_image_dimension(FunctorContext(ell, r, D))]


def _job(spec: tuple[str, tuple]) -> list[Certificate]:
    name, args = spec
    return _JOBS[name](*args)


_JOBS: dict[str, Callable[..., list[Certificate]]] = {
    "relations": _check_relations,
    "duality": _verify_duality,
    "functoriality": lambda ell, r: [functoriality(FunctorContext(ell, r))],
    "stability": lambda ell, r: [truncation_stability(ell, r)],
    "semisimplicity": lambda ells, rmax: [semisimplicity_experiment(ells, rmax)],
}


def _run_jobs(specs: list[tuple[str, tuple]]) -> list[Certificate]:
    threads = int(os.environ.get("TLBSW_THREADS", "1") or 1)
    if threads > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_job, specs))
    else:
        results = [_job(s) for s in specs]
    return [c for res in results for c in res]


def repro_specs(ells: Sequence[int], rmax: int) -> list[tuple[str, tuple]]:
    specs: list[tuple[str, tuple]] = []
    for ell in ells:
        for r in range(1, rmax + 1):
            specs.append(("relations", (ell, r, None)))
            specs.append(("duality", (ell, r, None)))
        specs.append(("functoriality", (ell, 2)))
        specs.append(("stability", (ell, 2)))
    specs.append(("semisimplicity", (list(range(-1, 4)), 5)))
    return specs


def config_from_args(args: argparse.Namespace) -> RunConfig:
    depth = getattr(args, "depth", None)
    r = getattr(args, "r", None)
    if depth is not None and r is not None and depth < r + 1:
        print(f"tlbsw: error: --depth must be at least r+1 = {r + 1}", file=sys.stderr)
        raise SystemExit(2)
    return RunConfig(
        command=args.command,
        ell=getattr(args, "ell", []),
        r=r,
        rmax=getattr(args, "rmax", None),
        Q=getattr(args, "Q", None),
        depth=depth,
        out=args.out,
        fmt=args.fmt,
        timing=args.timing,
    )


def main(argv: Sequence[str] | None = None) -> int:
    argv = _normalize_argv(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    fmt, timing = cfg.fmt, cfg.timing
    try:
        if args.command == "enumerate":
            _emit(cmd_enumerate(args.r, args.s, fmt), args.out)
            return 0
        if args.command == "mult-table":
            _emit(cmd_mult_table(args.n, args.Q, fmt), args.out)
            return 0
        if args.command == "gram":
            text, ok = cmd_gram(args.n, args.t, args.Q, fmt)
            _emit(text, args.out)
            return 0 if ok else 1
        if args.command == "scan":
            certs = [semisimplicity_experiment(args.ell, args.rmax)]
        elif args.command == "verify-duality":
            certs = _run_jobs([("duality", (e, args.r, args.depth)) for e in args.ell])
        elif args.command == "check-relations":
            certs = _run_jobs([("relations", (e, args.r, args.depth)) for e in args.ell])
        elif args.command == "repro-all":
            certs = _run_jobs(repro_specs(args.ell, args.rmax))
        else:  # pragma: no cover - argparse rejects unknown commands
            raise AssertionError(args.command)
    except (DiagramError, QFieldError, ValueError) as exc:
        print(f"tlbsw: error: {exc}", file=sys.stderr)
        return 2
    _emit(_certs_text(certs, fmt, timing), args.out)
    return 0 if all(c.passed for c in certs) else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
