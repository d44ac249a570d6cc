"""Command-line front end.

Exit status: 0 when every checked inequality holds, 1 when one is violated,
2 on invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

import mpmath
import numpy as np

from . import bounds, constructions, suites
from .errors import QuasiRamseyError
from .graphs import SimpleGraph
from .kernels import EXACT, FLOAT, density, embed_graph, to_fraction
from .parallel import ordered_map
from .patterns import PatternGraph, connected_spanning_classes, parse_pattern
from .quasirandomness import centered_stats, effective_distance_report, format_number

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
FORMATS = ("human", "csv", "json")


class _Usage(Exception):
    pass


# -- output ---------------------------------------------------------------------


def _plain(x):
    if isinstance(x, Fraction):
        return format_number(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, mpmath.mpf)):
        return float(x)
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _cell(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (Fraction, float, int, np.floating, np.integer, mpmath.mpf)):
        return format_number(float(x) if isinstance(x, mpmath.mpf) else x)
    if x is None:
        return ""
    return str(x)


class Emitter:
    """Streams records in the chosen format; ``single`` emits a bare JSON object."""

    def __init__(self, stream, fmt: str, fields: Sequence[str], single: bool = False):
        self.stream, self.fmt, self.fields, self.single = stream, fmt, list(fields), single
        self.count = 0
        self._writer = None

    def write(self, record: Dict[str, object]) -> None:
        if self.fmt == "csv":
            if self._writer is None:
                self._writer = csv.writer(self.stream, lineterminator="\n")
                self._writer.writerow(self.fields)
            self._writer.writerow([_cell(record.get(f)) for f in self.fields])
        elif self.fmt == "json":
            text = json.dumps(_plain(record))
            if self.single:
                self.stream.write(text + "\n")
            else:
                self.stream.write(("[" if self.count == 0 else ",\n ") + text)
        else:
            if self.count and len(self.fields) > 3:
                self.stream.write("\n")
            if len(self.fields) <= 3 and self.single:
                self.stream.write(" ".join(_cell(record.get(f)) for f in self.fields) + "\n")
            else:
                width = max(len(f) for f in self.fields)
                for f in self.fields:
                    self.stream.write(f"{f:<{width}}  {_cell(record.get(f))}\n")
        self.count += 1

    def close(self) -> None:
        if self.fmt == "json" and not self.single:
            self.stream.write("]\n" if self.count else "[]\n")
        elif self.fmt == "csv" and self._writer is None:
            csv.writer(self.stream, lineterminator="\n").writerow(self.fields)


# -- input helpers ----------------------------------------------------------------


def _graph(spec: Optional[str]) -> SimpleGraph:
    if not spec:
        raise _Usage("--graph is required")
    return constructions.graph_from_spec(spec)


def _pattern(spec: str) -> PatternGraph:
    try:
        return parse_pattern(open(spec).read() if _is_file(spec) else spec)
    except ValueError as exc:
        raise _Usage(f"bad pattern {spec!r}: {exc}") from exc


def _is_file(path: str) -> bool:
    import os

    return os.path.isfile(path)


def _probability(text: str, mode: str):
    try:
        q = to_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _Usage(f"bad probability {text!r}") from exc
    if not 0 < q < 1:
        raise _Usage(f"probability must lie in (0, 1), got {text}")
    return q if mode == EXACT else float(q)


def _int_list(text: str) -> List[int]:
    try:
        return [int(float(x)) if "e" in x.lower() else int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise _Usage(f"bad integer list {text!r}") from exc


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise _Usage(f"bad number list {text!r}") from exc


def _log_grid(text: str) -> List[int]:
    """``lo:hi:count`` in decades, rounded to integers and deduplicated."""
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError as exc:
        raise _Usage(f"log grid must be lo:hi:count, got {text!r}") from exc
    if count < 1:
        raise _Usage("log grid count must be positive")
    vals = np.logspace(lo, hi, count) if count > 1 else np.array([10 ** lo])
    out: List[int] = []
    for v in vals:
        k = int(round(float(v)))
        if not out or out[-1] != k:
            out.append(k)
    return out


# -- verbs ------------------------------------------------------------------------


def cmd_density(args, out) -> int:
    h = _pattern(args.pattern)
    if args.kernel:
        w = constructions.kernel_from_spec(args.kernel, args.mode)
        source = args.kernel
    else:
        w = embed_graph(_graph(args.graph), args.mode)
        source = args.graph
    if w.mode != args.mode:
        w = w.to_exact() if args.mode == EXACT else w.to_float()
    value = density(h, w)
    em = Emitter(out, args.format, ["pattern", "source", "mode", "density"], single=True)
    em.write({"pattern": args.pattern, "source": source, "mode": args.mode, "density": value})
    em.close()
    return EXIT_OK


def cmd_stats(args, out) -> int:
    g = _graph(args.graph)
    p = _probability(args.p, args.mode)
    st = centered_stats(g, p, args.mode)
    rec = {"graph": args.graph, "n": g.n, "p": p, "mode": args.mode, "mu": st.mu, "nu": st.nu}
    fields = list(rec)
    status = EXIT_OK
    if args.pattern:
        h = _pattern(args.pattern)
        nu = _probability(args.nu, args.mode) if args.nu else (st.nu or Fraction(1, g.n))
        rep = effective_distance_report(h, g, p, nu, args.mode, st)
        rec.update({"pattern": args.pattern, "r": rep.r, "nu_used": rep.nu,
                    "discrepancy": rep.discrepancy, "bound": rep.bound,
                    "theorem_applies": rep.theorem_applies, "within_bound": rep.within_bound})
        for name, ok in rep.preconditions + rep.side_checks:
            rec[name] = ok
        fields = list(rec)
        if not all(ok for _, ok in rep.side_checks):
            status = EXIT_VIOLATION
    em = Emitter(out, args.format, fields, single=True)
    em.write(rec)
    em.close()
    return status


def cmd_verify(args, out) -> int:
    if args.suite not in suites.suite_names():
        raise _Usage(f"unknown suite {args.suite!r}; choose from {', '.join(suites.suite_names())}")
    if args.trials is not None and args.trials < 0:
        raise _Usage("--trials must be nonnegative")
    mode = args.mode if args.mode_given else None
    em = Emitter(out, args.format, suites.ROW_FIELDS)
    failed = 0
    for row in suites.run_suite(args.suite, args.seed, args.trials, mode, args.jobs):
        failed += not row["holds"]
        em.write(row)
    em.close()
    return EXIT_VIOLATION if failed else EXIT_OK


def _scaling_row(task):
    m, n, seed, mode = task
    g = constructions.w_random_graph(constructions.block_graphon(m, FLOAT).kernel, n, seed)
    st = centered_stats(g, Fraction(1, 2) if mode == EXACT else 0.5, mode)
    lo, hi = 1 / (8 * m), 2 / m
    return {"m": m, "n": n, "seed": seed, "mu": st.mu, "nu": st.nu,
            "in_window": bool(lo <= st.mu <= hi and lo <= st.nu <= hi)}


def cmd_construct(args, out) -> int:
    what = args.what
    if what == "graph":
        g = _graph(args.graph)
        text = g.to_graph6() + "\n" if args.export == "graph6" else g.to_edge_list()
        out.write(text)
        return EXIT_OK
    if what == "block":
        em = Emitter(out, args.format, ["m", "r", "pattern", "density", "closed_form"])
        for r in range(1, args.r + 1):
            for j in connected_spanning_classes(r):
                value = constructions.connected_density(j.representative, args.m, check=False)
                direct = density(j.representative, _centered_block(args.m))
                em.write({"m": args.m, "r": r, "pattern": j.name, "density": direct,
                          "closed_form": value})
                if direct != value:
                    em.close()
                    return EXIT_VIOLATION
        em.close()
        return EXIT_OK
    if what == "deviation":
        em = Emitter(out, args.format, ["r", "m", "sum", "floor", "holds"])
        ok = True
        for r in _int_list(args.r_list):
            for m in _int_list(args.m_list):
                try:
                    dv = constructions.deviation_lower_bound(r, m)
                except AssertionError:
                    ok = False
                    continue
                em.write({"r": r, "m": m, "sum": dv.connected_r_term_sum, "floor": dv.floor,
                          "holds": dv.holds})
        em.close()
        return EXIT_OK if ok else EXIT_VIOLATION
    if what == "scaling":
        tasks = [(m, args.n_factor * m * m, args.seed + s, args.mode)
                 for m in _int_list(args.m_list) for s in range(args.seeds)]
        em = Emitter(out, args.format, ["m", "n", "seed", "mu", "nu", "in_window"])
        for row in ordered_map(_scaling_row, tasks, args.jobs, chunksize=1):
            em.write(row)
        em.close()
        return EXIT_OK
    raise _Usage(f"unknown construction {what!r}")


def _centered_block(m: int):
    from .kernels import center

    return center(constructions.block_graphon(m).kernel, Fraction(1, 2))


def _bound_record(res: bounds.BoundResult) -> Dict[str, object]:
    rec = res.as_dict()
    rec["bound_log"] = rec["bound_log"]["log"]
    rec["es_baseline_log"] = rec["es_baseline_log"]["log"]
    rec["ratio_log"] = rec["ratio_log"]["log"]
    return rec


BOUND_FIELDS = ("k", "l", "r", "epsilon", "C_eps", "phi", "log_alpha", "regime", "bound_log",
                "es_baseline_log", "ratio_log", "exact_value", "c_derived", "implied_exponent")


def cmd_bound(args, out) -> int:
    if args.k < 1 or args.l < 1:
        raise _Usage("--k and --l must be positive")
    if args.best:
        res = bounds.best_bound(args.k, args.l, args.eps, args.Ceps)
    else:
        if args.r is None:
            raise _Usage("--r is required unless --best is given")
        cfg = bounds.BoundConfig(args.r, args.eps, args.Ceps, args.c_small)
        res = bounds.ramsey_upper_bound(cfg, args.k, args.l)
    if args.format == "json":
        out.write(json.dumps(_plain(res.as_dict())) + "\n")
    else:
        em = Emitter(out, args.format, BOUND_FIELDS, single=True)
        em.write(_bound_record(res))
        em.close()
    return EXIT_OK


def cmd_table(args, out) -> int:
    ks = _log_grid(args.k_log) if args.k_log else _int_list(args.k)
    if not ks:
        raise _Usage("give --k or --k-log")
    ls = _int_list(args.l) if args.l else None
    cells = []
    for k in ks:
        for l in (ls or [k]):
            for r in _int_list(args.r):
                for eps in _float_list(args.eps):
                    cells.append((k, l, r, eps, args.Ceps))
    em = Emitter(out, args.format, bounds.BOUND_TABLE_FIELDS)
    for row in ordered_map(bounds.bound_row, cells, args.jobs):
        em.write(row)
    em.close()
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    if args.what == "ramsey":
        n, witness = constructions.ramsey_search(args.s, args.t, args.nmax)
        rec = {"s": args.s, "t": args.t, "nmax": args.nmax, "ramsey": n,
               "witness": witness.graph.to_graph6() if witness else None}
        if args.format == "human":
            out.write(("unknown" if n is None else str(n)) + "\n")
        else:
            em = Emitter(out, args.format, list(rec), single=True)
            em.write(rec)
            em.close()
        return EXIT_OK
    if args.what == "goodman":
        g = _graph(args.graph)
        mono, formula = bounds.goodman(g)
        em = Emitter(out, args.format, ["graph", "mono_triangles", "degree_formula", "equal"],
                     single=True)
        em.write({"graph": args.graph, "mono_triangles": mono, "degree_formula": formula,
                  "equal": mono == formula})
        em.close()
        return EXIT_OK if mono == formula else EXIT_VIOLATION
    if args.what == "clique":
        g = _graph(args.graph)
        em = Emitter(out, args.format, ["graph", "n", "clique_number", "independence_number"],
                     single=True)
        em.write({"graph": args.graph, "n": g.n, "clique_number": constructions.clique_number(g),
                  "independence_number": constructions.independence_number(g)})
        em.close()
        return EXIT_OK
    raise _Usage(f"unknown oracle {args.what!r}")


# -- parser -----------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default="human")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mode", choices=(EXACT, FLOAT), default=None)
    p.add_argument("--out", default=None, help="write output here instead of stdout")
    p.add_argument("--graph", default=None, help="graph file or generator spec")
    p.add_argument("--kernel", default=None, help="kernel JSON file or kernel spec")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="quasiramsey", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    d = sub.add_parser("density", parents=[common], help="homomorphism density of a pattern")
    d.add_argument("--pattern", required=True)
    d.set_defaults(func=cmd_density)

    s = sub.add_parser("stats", parents=[common], help="centered statistics mu and nu")
    s.add_argument("--p", required=True)
    s.add_argument("--pattern", default=None, help="also report the effective-distance bound")
    s.add_argument("--nu", default=None)
    s.set_defaults(func=cmd_stats)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite")
    v.add_argument("--trials", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", parents=[common], help="constructions and experiments")
    c.add_argument("what", choices=("graph", "block", "deviation", "scaling"))
    c.add_argument("--export", choices=("edgelist", "graph6"), default="edgelist")
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--r", type=int, default=4)
    c.add_argument("--r-list", default="2,3,4")
    c.add_argument("--m-list", default="1,2,3,4,5,6,7,8")
    c.add_argument("--seeds", type=int, default=20)
    c.add_argument("--n-factor", type=int, default=500)
    c.set_defaults(func=cmd_construct)

    b = sub.add_parser("bound", parents=[common], help="Ramsey upper bound at one (k, l)")
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--l", type=int, required=True)
    b.add_argument("--r", type=int, default=None)
    b.add_argument("--eps", type=float, required=True)
    b.add_argument("--Ceps", type=float, default=bounds.DEFAULT_C_EPS)
    b.add_argument("--c-small", type=float, default=bounds.DEFAULT_C_EPS_SMALL)
    b.add_argument("--best", action="store_true", help="use the prescribed r for this k")
    b.set_defaults(func=cmd_bound)

    t = sub.add_parser("table", parents=[common], help="bound table over a grid")
    t.add_argument("--k", default=None, help="comma-separated k values")
    t.add_argument("--k-log", default=None, help="log grid lo:hi:count in decades")
    t.add_argument("--l", default=None, help="comma-separated l values (default: l = k)")
    t.add_argument("--r", default="8")
    t.add_argument("--eps", default="0.25")
    t.add_argument("--Ceps", type=float, default=bounds.DEFAULT_C_EPS)
    t.set_defaults(func=cmd_table)

    o = sub.add_parser("oracle", parents=[common], help="brute-force Ramsey oracles")
    o.add_argument("what", choices=("ramsey", "goodman", "clique"))
    o.add_argument("--s", type=int, default=3)
    o.add_argument("--t", type=int, default=3)
    o.add_argument("--nmax", type=int, default=6)
    o.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.mode_given = args.mode is not None
    if args.mode is None:
        args.mode = EXACT
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    buf = io.StringIO() if args.out else sys.stdout
    try:
        status = args.func(args, buf)
    except (_Usage, QuasiRamseyError, FileNotFoundError) as exc:
        print(f"quasiramsey: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    return status


if __name__ == "__main__":
    sys.exit(main())
