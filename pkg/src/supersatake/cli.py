"""Command-line entry point: enumerate, verify, invariants and report."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import diagrams as dg
from . import invariants as inv
from . import spherical as sph
from .superalgebra import FAMILIES, GradingError, SuperMatrix
from .weyl import IrregularLevi, check_supersymmetric

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "all"
    max_rank: int = 3
    grading: tuple | None = None  # None means all gradings
    samples: int = 3
    seed: int = 0
    format: str = "json"
    out: str | None = None
    diagram: str | None = None
    jobs: int = 1
    c: str | None = None
    full: bool = False
    basis: bool = False
    parity: str = "even"

    def __post_init__(self):
        if self.max_rank < 1:
            raise UsageError("--max-rank must be at least 1")
        if self.samples < 1:
            raise UsageError("--samples must be at least 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")

    @property
    def families(self) -> tuple:
        return FAMILIES if self.family == "all" else (self.family,)


def parse_grading(text: str):
    if text == "all":
        return None
    if not text or set(text) - {"0", "1"}:
        raise argparse.ArgumentTypeError("grading must be a 0/1 bitstring or 'all'")
    return tuple(int(ch) for ch in text)


def parse_c(text: str) -> dict:
    """'0=2,2=-3/2' -> {0: 2, 2: -3/2} (0-based white nodes)."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        try:
            k, v = item.split("=")
            out[int(k)] = Fraction(v)
        except ValueError:
            raise UsageError(f"bad mixture entry {item!r}; expected node=value") from None
        if out[int(k)] == 0:
            raise UsageError("mixture parameters must be nonzero")
    return out


def load_diagrams(path: str) -> list:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read diagram file: {exc}") from None
    items = obj if isinstance(obj, list) else [obj]
    out = []
    for item in items:
        if not isinstance(item, dict):
            raise UsageError("diagram entries must be JSON objects")
        try:
            d = dg.from_dict(item)
            d.algebra  # validates the grading
        except (ValueError, GradingError) as exc:
            raise UsageError(str(exc)) from None
        out.append(d)
    return out


# -- output helpers ------------------------------------------------------------

def format_table(rows: list, columns: list) -> str:
    cells = [[_cell(r.get(c), c == "grading") for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _cell(v, bits: bool = False) -> str:
    if bits:
        return "".join(map(str, v))
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return json.dumps(v)
    if isinstance(v, dict):
        return ",".join(f"{k}={x}" for k, x in v.items()) or "-"
    return str(v)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def emit(text: str, cfg: RunConfig):
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def matrix_json(M: SuperMatrix) -> list:
    return [[str(x) for x in row] for row in M.rows()]


# -- enumerate -----------------------------------------------------------------

def collect_satake(cfg: RunConfig) -> list:
    out = []
    for fam in cfg.families:
        dedup = cfg.grading is None
        for cand in dg.enumerate_candidates(fam, cfg.max_rank, dedup, cfg.grading):
            if cand.satake:
                out.append(cand.diagram)
    return out


def cmd_enumerate(cfg: RunConfig) -> int:
    ds = collect_satake(cfg)
    if cfg.format == "json":
        text = dumps([dg.to_dict(d) for d in ds])
    elif cfg.format == "dot":
        text = "".join(dg.to_dot(d, f"D{i}") for i, d in enumerate(ds))
    else:
        rows = [dg.to_dict(d) for d in ds]
        text = format_table(rows, ["family", "rank", "grading", "black", "tau", "label"])
    emit(text, cfg)
    return EXIT_OK


# -- verify --------------------------------------------------------------------

def verify_one(args) -> dict:
    """Worker: rules plus sampled construction for one diagram."""
    obj, samples, seed = args
    d = dg.from_dict(obj)
    verdict = dg.selection_rules(d)
    t = d.triple()
    rep = sph.verify_nontrivial(t, samples, seed)
    lemma_ok = all(r.proper != r.lemma_trivial for r in rep.rows)
    expected = "proper" if verdict.passes else "trivial"
    row = dg.to_dict(d)
    row.update({
        "rules": sorted(verdict.rules()),
        "satake": verdict.passes,
        "verdict": rep.verdict(),
        "spherical": rep.all_spherical,
        "dim_g": rep.rows[0].dim_g,
        "dim_derived": rep.rows[0].dim_derived,
        "dim_k": sorted({r.dim_k for r in rep.rows}),
        "samples": [r.to_dict() for r in rep.rows],
    })
    row["ok"] = rep.verdict() == expected and rep.all_spherical and lemma_ok
    return row


def verification_rows(cfg: RunConfig, ds: list) -> list:
    work = [(dg.to_dict(d), cfg.samples, cfg.seed) for d in ds]
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            return list(pool.map(verify_one, work, chunksize=4))
    return [verify_one(w) for w in work]


def verify_targets(cfg: RunConfig) -> list:
    if cfg.diagram:
        ds = load_diagrams(cfg.diagram)
        for d in ds:
            try:
                ok = check_supersymmetric(d.triple())
            except IrregularLevi as exc:
                raise UsageError(f"irregular levi: {exc}") from None
            if not ok:
                raise UsageError(f"not a super-symmetric triple: {dg.to_json(d)}")
        return ds
    out = []
    for fam in cfg.families:
        dedup = cfg.grading is None
        out += [c.diagram for c in dg.enumerate_candidates(fam, cfg.max_rank, dedup, cfg.grading)]
    return out


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.format == "dot":
        raise UsageError("verify supports --format json or table")
    rows = verification_rows(cfg, verify_targets(cfg))
    failures = [r for r in rows if not r["ok"]]
    if cfg.format == "json":
        text = dumps({"rows": rows, "failures": len(failures)})
    else:
        text = format_table(rows, ["family", "grading", "black", "tau", "label", "satake",
                                   "verdict", "dim_g", "dim_derived", "dim_k", "ok"])
    emit(text, cfg)
    for r in failures:
        sys.stderr.write("verification failed: " + dg.to_json(dg.from_dict(r)) + "\n")
    return EXIT_FAIL if failures else EXIT_OK


# -- invariants ----------------------------------------------------------------

def _actions(alg) -> list:
    kinds = [inv.ActionKind.ADJOINT]
    if alg.family == "gl":
        kinds.append(inv.ActionKind.FORM_TWISTED)
    elif alg.N % 2 == 0:
        kinds.append(inv.ActionKind.D_TWISTED)
    return kinds


def formula_checks(d, t, c, gens) -> list:
    """Closed-form invariants that apply to this diagram, with membership verdicts."""
    out = []

    def check(name, kind, build):
        try:
            M = build()
        except ValueError as exc:
            out.append({"formula": name, "action": kind.value, "applicable": False, "reason": str(exc)})
            return
        out.append({"formula": name, "action": kind.value, "applicable": True,
                    "holds": inv.annihilates(gens, kind, M), "matrix": matrix_json(M)})

    alg = d.algebra
    cmap = c.as_dict()
    if d.family == "gl":
        if d.tau:
            check("GL-I", inv.ActionKind.ADJOINT, lambda: inv.gl_i_invariant(t, c))
        elif d.label == "shaft":
            check("I_l", inv.ActionKind.FORM_TWISTED, lambda: inv.shaft_invariant(d, c))
        if d.rank == 1 and alg.simple_roots[0].parity:
            c1 = cmap[0]
            check("e12 - c e21", inv.ActionKind.ADJOINT,
                  lambda: SuperMatrix.from_rows(d.grading, [[0, 1], [-c1, 0]]))
        if d.grading == (0, 0, 1, 1) and d.black == (0, 2):
            c2 = cmap[1]
            check("e12 - e21 - c(e34 - e43)", inv.ActionKind.FORM_TWISTED,
                  lambda: SuperMatrix.from_rows(d.grading, [[0, 1, 0, 0], [-1, 0, 0, 0],
                                                             [0, 0, 0, -c2], [0, 0, c2, 0]]))
    else:
        try:
            inv.black_tail_layout(d)
            check("black-tail I_1", inv.ActionKind.ADJOINT, lambda: inv.black_tail_invariant(d, c))
        except ValueError:
            pass
    return out


def cmd_invariants(cfg: RunConfig) -> int:
    if not cfg.diagram:
        raise UsageError("invariants needs --diagram FILE")
    if cfg.format == "dot":
        raise UsageError("invariants supports --format json or table")
    ds = load_diagrams(cfg.diagram)
    if len(ds) != 1:
        raise UsageError("invariants takes exactly one diagram")
    d = ds[0]
    if d.label is None:
        d = d.with_label(dg.classify(d))
    t = d.triple()
    try:
        if not check_supersymmetric(t):
            raise UsageError("not a super-symmetric triple")
    except IrregularLevi as exc:
        raise UsageError(f"irregular levi: {exc}") from None
    alg = t.algebra
    if cfg.c is not None:
        try:
            c = sph.MixtureVector.of(parse_c(cfg.c), t.tau)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        missing = set(t.whites) - set(c.as_dict())
        if missing:
            raise UsageError(f"missing mixture parameters for nodes {sorted(missing)}")
    else:
        import random
        c = sph.sample_mixture(t, random.Random(cfg.seed))
    norm = sph.SHAFT if d.label == "shaft" else sph.STANDARD
    gens = alg.basis() if cfg.full else sph.mixed_generators(t, c, norm)
    spaces = []
    for kind in _actions(alg):
        ks = inv.solve_invariants(gens, kind, cfg.parity)
        gs = inv.solve_invariants(alg.basis(), kind, cfg.parity)
        entry = {"action": kind.value, "parity": cfg.parity, "dim_k": ks.dimension, "dim_g": gs.dimension}
        if cfg.basis:
            entry["basis"] = [matrix_json(M) for M in ks.basis]
        spaces.append(entry)
    checks = [] if cfg.full else formula_checks(d, t, c, gens)
    result = {
        "diagram": dg.to_dict(d),
        "c": {str(k): str(v) for k, v in c.values},
        "k": "g" if cfg.full else "mixed",
        "normalization": norm,
        "spaces": spaces,
        "checks": checks,
    }
    if cfg.format == "json":
        text = dumps(result)
    else:
        text = format_table(spaces, ["action", "parity", "dim_k", "dim_g"])
        for ch in checks:
            state = ("holds" if ch["holds"] else "FAILS") if ch["applicable"] else "n/a"
            text += f"{ch['formula']} ({ch['action']}): {state}\n"
    emit(text, cfg)
    failed = [ch for ch in checks if ch["applicable"] and not ch["holds"]]
    return EXIT_FAIL if failed else EXIT_OK


# -- report --------------------------------------------------------------------

def cmd_report(cfg: RunConfig) -> int:
    from .report import write_report
    out = Path(cfg.out or "report")
    rows = verification_rows(cfg, verify_targets(cfg))
    paths = write_report(rows, out)
    for p in paths:
        sys.stdout.write(f"{p}\n")
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_FAIL


COMMANDS = {"enumerate": cmd_enumerate, "verify": cmd_verify,
            "invariants": cmd_invariants, "report": cmd_report}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supersatake",
                                description="Graded Satake diagrams and spherical subalgebras "
                                            "of basic matrix Lie superalgebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "table")):
        sp.add_argument("--family", choices=FAMILIES + ("all",), default="all")
        sp.add_argument("--max-rank", type=int, default=3)
        sp.add_argument("--grading", type=parse_grading, default=None,
                        help="0/1 parities of the natural basis, or 'all' (default)")
        sp.add_argument("--samples", type=int, default=3)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=formats, default="json")
        sp.add_argument("--out", default=None, help="output file (directory for report)")
        sp.add_argument("--diagram", default=None, help="JSON file with one diagram or a list")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    common(sub.add_parser("enumerate", help="list Satake diagrams"), ("json", "table", "dot"))
    common(sub.add_parser("verify", help="check selection rules against computed k"))
    sp = sub.add_parser("invariants", help="invariant matrices of k for one diagram")
    common(sp)
    sp.add_argument("--c", default=None, help="mixture vector, e.g. '0=2,2=-3'")
    sp.add_argument("--full", action="store_true", help="use all of g in place of k")
    sp.add_argument("--basis", action="store_true", help="include basis matrices")
    sp.add_argument("--parity", choices=inv.PARITIES, default="even")
    common(sub.add_parser("report", help="write CSV/TSV tables and PNG plots"))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    opts = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    try:
        cfg = RunConfig(**opts)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        sys.stderr.write(f"supersatake: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
