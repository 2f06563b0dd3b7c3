"""Command-line driver: classify windows, run single checks and audits,
build functor categories, and replay the regression suite.

Reports are persisted as JSON under a content-addressed filename (a
digest of the run configuration).  A rerun with the same configuration
reads the stored report back instead of recomputing; --fresh overrides.

Exit codes: 0 every check holds, 1 a failure witness was found,
2 at least one verdict is out of budget, 3 input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import axioms, catfile, functorcat
from .backends.materialize import WindowTooLarge, materialize
from .backends.theories import BACKENDS, get_backend
from .budget import Budget
from .report import CheckReport, config_digest, render_text

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_OOB = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


CHECKS = ("A1", "A1p", "A2", "A3", "A4", "A4p",
          "condA", "condB", "condC", "condD", "condE", "condF",
          "ssfl", "proto", "exact")
AUDITS = ("lemma1", "critproto", "prodsemdir", "homolex")


@dataclass
class RunConfig:
    """Everything that determines a run's verdicts; its digest is the
    report's content address."""
    command: str
    backend: str | None = None
    file_sha256: str | None = None
    bound: int = 3
    budget: dict | None = None
    token: str = ""
    variant: str = ""
    index_shape: str = ""
    seed: int = 0
    samples: int = 100
    all_witnesses: bool = False

    def as_dict(self) -> dict:
        d = {"command": self.command, "budget": self.budget,
             "seed": self.seed, "all_witnesses": self.all_witnesses}
        if self.backend:
            d["backend"] = self.backend
            d["bound"] = self.bound
        if self.file_sha256:
            d["category_file_sha256"] = self.file_sha256
        for k in ("token", "variant", "index_shape"):
            v = getattr(self, k)
            if v:
                d[k] = v
        if self.command == "functorcat":
            d["samples"] = self.samples
        return d


def _budget_from(args) -> Budget:
    kw = {}
    if args.budget_objects is not None:
        kw["max_objects"] = args.budget_objects
    if args.budget_pairs is not None:
        kw["max_parallel_pairs"] = args.budget_pairs
    if args.budget_apexes is not None:
        kw["max_candidate_apexes"] = args.budget_apexes
    if args.budget_wall is not None:
        kw["wall_clock_s"] = args.budget_wall
    return Budget(**kw)


def _read(path_str: str) -> tuple[Path, str]:
    path = Path(path_str)
    try:
        return path, path.read_text()
    except OSError as e:
        raise InputError(str(e))


def _parse_catfile(path: Path, text: str):
    try:
        return catfile.parse_category(text)
    except catfile.ParseError as e:
        raise InputError(f"{path}: {e}")


# -- prepare: validate flags and fill the config without heavy work -----------------


def _prepare_source(args, cfg: RunConfig) -> dict:
    if (args.backend is None) == (args.category_file is None):
        raise InputError(
            "exactly one of --backend and --category-file is required")
    if args.backend is not None:
        cfg.backend = args.backend
        cfg.bound = args.bound
        return {"kind": "backend", "name": args.backend, "bound": args.bound}
    path, text = _read(args.category_file)
    cfg.file_sha256 = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return {"kind": "file", "cat": _parse_catfile(path, text)}


def _prepare_token(args, cfg: RunConfig):
    token = args.token
    if len(token) == 1 and token in "ABCDEF":
        token = "cond" + token
    if args.command == "check":
        if token not in CHECKS:
            raise InputError(f"unknown check {args.token!r}; known: "
                             + ", ".join(CHECKS) + " (single letters A-F "
                             "abbreviate condA-condF)")
        cfg.variant = getattr(args, "variant", None) or ""
    else:
        if token not in AUDITS:
            raise InputError(f"unknown audit {args.token!r}; known: "
                             + ", ".join(AUDITS))
    cfg.token = token


def _prepare_shape(args, cfg: RunConfig) -> dict:
    spec = args.index_shape
    if spec in functorcat.SHAPE_NAMES:
        cfg.index_shape = spec
        return {"shape": functorcat.index_shape(spec)}
    path = Path(spec)
    if not path.exists():
        raise InputError(
            f"--index-shape {spec!r} is neither a built-in shape "
            f"({', '.join(functorcat.SHAPE_NAMES)}) nor a readable file")
    path, text = _read(spec)
    cfg.index_shape = "file:" + hashlib.sha256(
        text.encode("utf-8")).hexdigest()
    return {"shape": _parse_catfile(path, text)}


def prepare(args, cfg: RunConfig) -> dict:
    ctx: dict = {}
    if args.command in ("classify", "check", "audit", "functorcat"):
        ctx.update(_prepare_source(args, cfg))
    if args.command in ("check", "audit"):
        _prepare_token(args, cfg)
    if args.command == "functorcat":
        ctx.update(_prepare_shape(args, cfg))
        cfg.seed = args.seed
        cfg.samples = args.samples
    if args.command == "regress":
        cfg.seed = args.seed
    cfg.all_witnesses = args.all_witnesses
    return ctx


# -- execute -------------------------------------------------------------------------


def _category(ctx, budget):
    if ctx["kind"] == "file":
        return ctx["cat"]
    return materialize(get_backend(ctx["name"]), ctx["bound"], budget=budget)


def _check_dispatch(cat, token, variant, budget, aw):
    if token == "A1":
        return axioms.check_A1(cat, budget, "full", aw)
    if token == "A1p":
        return axioms.check_A1(cat, budget, "prime", aw)
    if token == "ssfl":
        return axioms.check_ssfl(cat, budget, variant or "iso",
                                 all_witnesses=aw)
    fn = {"A2": axioms.check_A2, "A3": axioms.check_A3,
          "A4": axioms.check_A4, "A4p": axioms.check_A4p,
          "condA": axioms.check_condA, "condB": axioms.check_condB,
          "condC": axioms.check_condC, "condD": axioms.check_condD,
          "condE": axioms.check_condE, "condF": axioms.check_condF,
          "proto": axioms.check_protomodular,
          "exact": axioms.check_exactness}[token]
    return fn(cat, budget, all_witnesses=aw)


def execute(args, budget, cfg: RunConfig, ctx: dict):
    if args.command == "classify":
        cat = _category(ctx, budget)
        reports, ladder = axioms.classify(cat, budget,
                                          all_witnesses=cfg.all_witnesses)
        return reports, {
            "ladder": [[rung, verdict] for rung, verdict in ladder],
            "strongest_confirmed": axioms.strongest_confirmed(ladder)}
    if args.command == "check":
        cat = _category(ctx, budget)
        return [_check_dispatch(cat, cfg.token, cfg.variant, budget,
                                cfg.all_witnesses)], {}
    if args.command == "audit":
        cat = _category(ctx, budget)
        fn = {"lemma1": axioms.audit_lemma1,
              "critproto": axioms.audit_critproto,
              "prodsemdir": axioms.audit_prodsemdir,
              "homolex": axioms.audit_homolex}[cfg.token]
        return [fn(cat, budget, all_witnesses=cfg.all_witnesses)], {}
    if args.command == "functorcat":
        cat = _category(ctx, budget)
        shape = ctx["shape"]
        fcat = functorcat.functor_category(cat, shape, budget)
        reports = [functorcat.pointwise_audit(
                       cat, shape, pred, budget=budget, seed=cfg.seed,
                       samples=cfg.samples, fcat=fcat)
                   for pred in functorcat.PREDICATES]
        reports.append(functorcat.classify_agreement(cat, shape, budget,
                                                     fcat=fcat))
        return reports, {"functor_category": fcat.label,
                         "functor_objects": len(fcat.objects),
                         "functor_morphisms": fcat.n_mors}
    from . import regression
    return regression.regression_suite(budget=budget, seed=cfg.seed), {}


# -- reporting -----------------------------------------------------------------------


def _exit_code(reports) -> int:
    if any(r.failed for r in reports):
        return EXIT_FAILS
    if any(r.inconclusive for r in reports):
        return EXIT_OOB
    return EXIT_HOLDS


def _reports_from_payload(payload) -> list[CheckReport]:
    return [CheckReport(d["check"], d["verdict"], d["claim"],
                        d.get("budget", {}), d.get("witness"),
                        d.get("details", {}))
            for d in payload["reports"]]


def _emit(payload, reports, fmt, out_file, cached):
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2,
                                    ensure_ascii=False) + "\n")
        return
    sys.stdout.write(render_text(reports))
    for key in ("ladder", "strongest_confirmed", "functor_category",
                "functor_objects", "functor_morphisms"):
        if key in payload:
            sys.stdout.write(f"{key}: {payload[key]}\n")
    if out_file is not None:
        origin = "cached report" if cached else "report"
        sys.stdout.write(f"{origin}: {out_file}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="catcheck",
        description="Verify categorical axioms and classification rungs "
                    "on finite algebraic categories.")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("category source")
    src.add_argument("--backend", help="built-in finite theory: "
                     + ", ".join(sorted(BACKENDS)))
    src.add_argument("--category-file",
                     help="explicit category in the text table format")
    src.add_argument("--bound", type=int, default=3,
                     help="carrier-size bound for backend windows "
                          "(default 3)")
    bud = common.add_argument_group("budget")
    bud.add_argument("--budget-objects", type=int, default=None,
                     help="window object cap")
    bud.add_argument("--budget-pairs", type=int, default=None,
                     help="parallel-pair scan cap")
    bud.add_argument("--budget-apexes", type=int, default=None,
                     help="candidate-apex cap for limit searches")
    bud.add_argument("--budget-wall", type=float, default=None,
                     help="wall clock limit in seconds")
    out = common.add_argument_group("output")
    out.add_argument("--report", choices=("json", "text"), default="text")
    out.add_argument("--all-witnesses", action="store_true",
                     help="keep scanning after the first failure")
    out.add_argument("--seed", type=int, default=0)
    out.add_argument("--out-dir", default="reports",
                     help="directory for persisted JSON reports; "
                          "'' disables persistence")
    out.add_argument("--fresh", action="store_true",
                     help="recompute even if a stored report exists")

    p = sub.add_parser("classify", parents=[common],
                       help="run the full classification ladder")
    p = sub.add_parser("check", parents=[common],
                       help="run one axiom or condition check")
    p.add_argument("token", metavar="CHECK",
                   help="one of " + ", ".join(CHECKS)
                        + "; single letters A-F abbreviate condA-condF")
    p.add_argument("--variant", choices=("iso", "strong_epi"), default=None,
                   help="ssfl variant (default iso)")
    p = sub.add_parser("audit", parents=[common],
                       help="cross-check an implication or equivalence")
    p.add_argument("token", metavar="AUDIT",
                   help="one of " + ", ".join(AUDITS))
    p = sub.add_parser("functorcat", parents=[common],
                       help="build a functor category and audit pointwise "
                            "transfer")
    p.add_argument("--index-shape", default="arrow",
                   help="built-in shape name or a category file "
                        "(default arrow)")
    p.add_argument("--samples", type=int, default=100,
                   help="sample count per audit predicate (default 100)")
    sub.add_parser("regress", parents=[common],
                   help="replay the pinned experiment set and witness "
                        "corpus")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command)
    try:
        budget = _budget_from(args)
        cfg.budget = budget.as_dict()
        cfg.seed = args.seed
        ctx = prepare(args, cfg)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    digest = config_digest(cfg.as_dict())
    out_dir = Path(args.out_dir) if args.out_dir else None
    out_file = out_dir / f"{args.command}-{digest}.json" if out_dir else None
    if out_file is not None and out_file.exists() and not args.fresh:
        try:
            payload = json.loads(out_file.read_text())
            reports = _reports_from_payload(payload)
        except (json.JSONDecodeError, KeyError, TypeError):
            pass    # unreadable cache entry: fall through and recompute
        else:
            _emit(payload, reports, args.report, out_file, cached=True)
            return _exit_code(reports)

    try:
        reports, extra = execute(args, budget, cfg, ctx)
    except WindowTooLarge as e:
        print(f"out of budget: {e}", file=sys.stderr)
        return EXIT_OOB

    payload = {"config": cfg.as_dict(), "digest": digest,
               "reports": [r.as_dict() for r in reports], **extra}
    if out_file is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        out_file.write_text(json.dumps(payload, sort_keys=True, indent=2,
                                       ensure_ascii=False) + "\n")
    _emit(payload, reports, args.report, out_file, cached=False)
    return _exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
