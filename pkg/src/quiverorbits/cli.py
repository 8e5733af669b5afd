"""
Command-line front end.

    quiverorbits orbits --type A --rank 3 --arrows 1>2,2>3 --dim 1,2,1
    quiverorbits poset  --type A --rank 3 --dim 1,1,1
    quiverorbits verify --suite all --type D --rank 4 --dim 1,1,1,1
    quiverorbits omega  --type A --rank 2 --dim 1,1 --cprime 1,0,1 --c 0,1,0
    quiverorbits ops    --type D --rank 4

Reports go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification failure, 2 usage or config error, 3 guard exhaustion.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import hall, orbits
from .dynkin import adapted_word, build_diagram, build_quiver
from .hall import InterpolationError
from .laurent import LaurentPoly
from .repkit import GuardError

log = logging.getLogger("quiverorbits")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
SUITES = ("main", "geometric", "bongartz", "riedtmann", "all")


class UsageError(ValueError):
    pass


@dataclass
class JobConfig:
    type: str = "A"
    rank: int = 2
    arrows: tuple[tuple[int, int], ...] | None = None   # default: i -> j for i < j
    dim: tuple[int, ...] | None = None                  # default: all ones
    primes: tuple[int, ...] | None = None
    max_dim: int = hall.MAX_TOTAL_DIM
    max_degree: int = hall.DEGREE_GUARD
    format: str | None = None                            # default: dot for poset, else json
    seed: int = 0


# parsing

def _split(text: str, what: str) -> list[str]:
    tokens = [t.strip() for t in text.split(",")]
    for pos, tok in enumerate(tokens, 1):
        if not tok:
            raise UsageError(f"{what}: empty token at position {pos} in {text!r}")
    return tokens


def parse_int_list(text: str, what: str) -> tuple[int, ...]:
    out = []
    for pos, tok in enumerate(_split(text, what), 1):
        try:
            out.append(int(tok))
        except ValueError:
            raise UsageError(f"{what}: token {pos} ({tok!r}) is not an integer") from None
    return tuple(out)


def parse_arrows(text: str) -> tuple[tuple[int, int], ...]:
    """``"1>2,3>2"`` -> ``((1, 2), (3, 2))``."""
    out = []
    for pos, tok in enumerate(_split(text, "--arrows"), 1):
        parts = tok.split(">")
        try:
            if len(parts) != 2:
                raise ValueError
            out.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise UsageError(f"--arrows: token {pos} ({tok!r}) is not of the form i>j") from None
    return tuple(out)


def load_config(path: str) -> dict:
    """Read the ``[job]`` section of an INI file into raw strings."""
    cp = configparser.ConfigParser()
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if "job" not in cp:
        raise UsageError(f"config {path} has no [job] section")
    known = {"type", "rank", "arrows", "dim", "primes", "max_dim", "max_degree", "format", "seed"}
    unknown = set(cp["job"]) - known
    if unknown:
        raise UsageError(f"config {path}: unknown keys {sorted(unknown)}")
    return dict(cp["job"])


def build_config(args: argparse.Namespace) -> JobConfig:
    raw = load_config(args.config) if args.config else {}
    for key in ("type", "rank", "arrows", "dim", "primes", "max_dim", "max_degree", "format", "seed"):
        val = getattr(args, key, None)
        if val is not None:
            raw[key] = str(val)
    cfg = JobConfig()
    try:
        if "type" in raw:
            cfg.type = raw["type"].strip().upper()
        for key in ("rank", "max_dim", "max_degree", "seed"):
            if key in raw:
                setattr(cfg, key, int(raw[key]))
    except ValueError as exc:
        raise UsageError(f"bad integer setting: {exc}") from None
    if "arrows" in raw:
        cfg.arrows = parse_arrows(raw["arrows"])
    if "dim" in raw:
        cfg.dim = parse_int_list(raw["dim"], "--dim")
    if "primes" in raw:
        cfg.primes = parse_int_list(raw["primes"], "--primes")
    if "format" in raw:
        cfg.format = raw["format"].strip()
    if cfg.format is not None and cfg.format not in ("json", "dot", "table"):
        raise UsageError(f"--format must be json, dot or table, not {cfg.format!r}")
    if cfg.dim is not None and any(x < 0 for x in cfg.dim):
        raise UsageError("--dim entries must be nonnegative")
    return cfg


def setup(cfg: JobConfig):
    try:
        diagram = build_diagram(cfg.type, cfg.rank)
        quiver = build_quiver(diagram, cfg.arrows)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = cfg.dim if cfg.dim is not None else (1,) * cfg.rank
    if len(d) != cfg.rank:
        raise UsageError(f"--dim has {len(d)} entries, the quiver has {cfg.rank} vertices")
    try:
        hall.configure(primes=cfg.primes, max_dim=cfg.max_dim, degree_guard=cfg.max_degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    aw = adapted_word(quiver)
    return aw, orbits.catalog(aw, d)


# serialisation

def frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def poly_json(p: LaurentPoly) -> list:
    return [[k, c] for k, c in p.to_pairs()]


def poly_from_json(pairs: Sequence, var: str = "q") -> LaurentPoly:
    return LaurentPoly.from_pairs(((k, Fraction(c)) for k, c in pairs), var)


def op_json(u) -> dict:
    out = {"s": u.s, "t": u.t, "middle": list(u.middle), "op": list(u.op),
           "case_formula_agrees": u.case_formula_agrees}
    if u.e_value is not None:
        out["ext_poly"] = poly_json(u.ext_poly)
        out["e_value"] = frac(u.e_value)
        out["regular"] = u.regular
    return out


def quiver_json(cat) -> dict:
    q = cat.quiver
    return {"type": q.diagram.type_letter, "rank": q.n, "arrows": [list(a) for a in q.arrows],
            "word": list(cat.word.word), "roots": [list(r) for r in cat.word.root_order],
            "d": list(cat.d), "dim_Ed": cat.dim_Ed, "dim_Gd": cat.dim_Gd}


# commands

def cmd_orbits(cfg: JobConfig) -> tuple[dict, str]:
    aw, cat = setup(cfg)
    rows = [orbits.smoothness_row(cat, c) for c in cat.classes]
    M = orbits.leq_matrix(cat)
    n = len(cat.classes)
    report = {
        "quiver": quiver_json(cat),
        "orbits": [{"c": list(r.c), "d_c": r.d_c, "J": [list(a) for a in r.J],
                    "dim_EdJ": r.dim_EdJ, "smooth": r.rationally_smooth,
                    "chi": frac(r.euler_char), "point_count": poly_json(r.point_count)}
                   for r in rows],
        "order": [[a, b] for a in range(n) for b in range(n) if a != b and M[a, b]],
    }
    lines = [f"{cfg.type}{cfg.rank}  arrows {list(cat.quiver.arrows)}  d = {cat.d}  "
             f"dim E_d = {cat.dim_Ed}  orbits = {n}",
             f"{'#':>3}  {'c':<24} {'d(c)':>5} {'dimE(J)':>8} {'smooth':>7} {'chi':>5}  P_c(q)"]
    for k, r in enumerate(rows):
        lines.append(f"{k:>3}  {str(r.c):<24} {r.d_c:>5} {r.dim_EdJ:>8} "
                     f"{'yes' if r.rationally_smooth else 'no':>7} {str(r.euler_char):>5}  {r.point_count}")
    return report, "\n".join(lines)


def poset_dot(cat) -> str:
    lines = ["digraph degenerations {", "  rankdir=BT;", "  node [shape=box];"]
    for k, c in enumerate(cat.classes):
        smooth = "smooth" if orbits.is_rationally_smooth(cat, c) else "not smooth"
        label = f"{','.join(map(str, c))} | {orbits.orbit_dim(cat, c)} | {smooth}"
        lines.append(f'  n{k} [label="{label}"];')
    for lo, hi in orbits.hasse(cat):
        lines.append(f"  n{cat.index(lo)} -> n{cat.index(hi)};")
    lines.append("}")
    return "\n".join(lines)


def cmd_poset(cfg: JobConfig) -> tuple[dict, str]:
    aw, cat = setup(cfg)
    edges = orbits.hasse(cat)
    report = {"quiver": quiver_json(cat),
              "nodes": [{"c": list(c), "d_c": orbits.orbit_dim(cat, c),
                         "smooth": orbits.is_rationally_smooth(cat, c)} for c in cat.classes],
              "edges": [[cat.index(a), cat.index(b)] for a, b in edges]}
    return report, poset_dot(cat)


class Suite:
    """Collects check records; guard and interpolation failures are per item."""

    def __init__(self, name: str):
        self.name = name
        self.checks: list[dict] = []
        self.guarded = 0

    def record(self, name: str, passed: bool, **detail):
        self.checks.append({"check": name, "status": "pass" if passed else "fail", **detail})

    def run(self, name: str, fn):
        try:
            fn()
        except (GuardError, InterpolationError) as exc:
            self.guarded += 1
            self.checks.append({"check": name, "status": "guard", "error": str(exc)})
            log.warning("%s: %s", name, exc)

    @property
    def failed(self) -> int:
        return sum(c["status"] == "fail" for c in self.checks)


def _suite_main(cat, ops, s: Suite):
    M = orbits.leq_matrix(cat)
    for a, cp in enumerate(cat.classes):
        for b, c in enumerate(cat.classes):
            if a == b or not M[a, b]:
                continue

            def one(cp=cp, c=c):
                r = hall.theorem_main_check(cat, ops, cp, c)
                s.record("derivative", r.passed, cprime=list(cp), c=list(c),
                         value_at_1=frac(r.value_at_1), D=frac(r.D), predicted=frac(r.predicted),
                         connecting=[op_json(u) for u in r.connecting], multiple=r.multiple)
            s.run(f"derivative {cp} < {c}", one)


def _suite_geometric(cat, ops, s: Suite, rng=None):
    rng = rng if rng is not None else np.random.default_rng(0)
    for c in cat.classes:
        def one(c=c):
            row = orbits.smoothness_row(cat, c)
            s.record("euler_characteristic", row.euler_char == row.dim_EdJ, c=list(c),
                     chi=frac(row.euler_char), dim_EdJ=row.dim_EdJ)
            J = orbits.support(cat.word, c)
            got = orbits.s_set(cat, c, ops)
            want = {orbits.c_ij(cat, i, j) for i, j in J}
            s.record("S_c", got == want, c=list(c), S=sorted(map(list, got)),
                     expected=sorted(map(list, want)))
            smooth = orbits.is_rationally_smooth(cat, c)
            generic = orbits.generic_class(cat, J, rng)
            s.record("generic_oracle", (generic == c) == smooth, c=list(c), smooth=smooth,
                     generic=list(generic))
            for r in hall.smoothness_sum_check(cat, c):
                s.record("derivative_sum", r.passed, c=list(c), lower=list(r.lower),
                         lhs=frac(r.lhs), rhs=r.rhs)
        s.run(f"geometric {c}", one)


def _suite_bongartz(cat, ops, s: Suite):
    for cp in cat.classes:
        for c in cat.classes:
            a, b = orbits.leq(cat, cp, c), orbits.leq_dual(cat, cp, c)
            s.record("hom_criteria_agree", a == b, cprime=list(cp), c=list(c), covariant=a, contravariant=b)
            if a and cp != c:
                u = orbits.chain_witness(cat, ops, cp, c)
                s.record("operation_chain", u is not None, cprime=list(cp), c=list(c))


def _suite_riedtmann(cat, ops, s: Suite):
    for u in ops:
        def one(u=u):
            r = hall.riedtmann_check(cat.word, u.s, u.t, u.middle)
            s.record("riedtmann", r.passed, s_index=u.s, t_index=u.t, middle=list(u.middle),
                     hall=poly_json(r.hall), ext=poly_json(r.ext), method=r.method)
        s.run(f"riedtmann {u.s},{u.t}", one)


def cmd_verify(cfg: JobConfig, suite: str) -> tuple[dict, str, int]:
    aw, cat = setup(cfg)
    ops = hall.annotate_ops(aw, orbits.elementary_ops(aw))
    runners = {"main": _suite_main, "geometric": _suite_geometric,
               "bongartz": _suite_bongartz, "riedtmann": _suite_riedtmann}
    names = list(runners) if suite == "all" else [suite]
    suites = []
    for name in names:
        s = Suite(name)
        if name == "geometric":
            _suite_geometric(cat, ops, s, np.random.default_rng(cfg.seed))
        else:
            runners[name](cat, ops, s)
        suites.append(s)
    failed = sum(s.failed for s in suites)
    guarded = sum(s.guarded for s in suites)
    code = EXIT_FAIL if failed else (EXIT_GUARD if guarded else EXIT_OK)
    report = {"quiver": quiver_json(cat), "passed": code == EXIT_OK,
              "suites": [{"suite": s.name, "passed": not s.failed and not s.guarded,
                          "checks": s.checks} for s in suites]}
    lines = []
    for s in suites:
        n_pass = sum(c["status"] == "pass" for c in s.checks)
        lines.append(f"{s.name:<10} {n_pass} passed, {s.failed} failed, {s.guarded} guarded")
        for c in s.checks:
            if c["status"] != "pass":
                lines.append(f"  {c}")
    return report, "\n".join(lines), code


def cmd_omega(cfg: JobConfig, cprime, c) -> tuple[dict, str]:
    aw, cat = setup(cfg)
    try:
        om = hall.omega(cat, cprime, c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = {"cprime": list(om.cprime), "c": list(om.c), "poly_u": poly_json(om.poly),
              "value_at_1": frac(om.value_at_1), "du_at_1": frac(om.derivative_at_1),
              "dv_at_1": frac(om.dv_at_1)}
    text = (f"Omega^{om.c}_{om.cprime}(u) = {om.poly}   value(1) = {om.value_at_1}   "
            f"d/du(1) = {om.derivative_at_1}   d/dv(1) = {om.dv_at_1}")
    return report, text


def cmd_ops(cfg: JobConfig) -> tuple[dict, str]:
    aw, cat = setup(cfg)
    ops = hall.annotate_ops(aw, orbits.elementary_ops(aw))
    report = {"quiver": quiver_json(cat), "ops": [op_json(u) for u in ops]}
    lines = [f"{'s':>3} {'t':>3}  {'middle':<28} E(q)"]
    for u in ops:
        lines.append(f"{u.s:>3} {u.t:>3}  {str(u.middle):<28} {u.ext_poly}   e = {u.e_value}")
    return report, "\n".join(lines)


# entry point

def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with a [job] section")
    common.add_argument("--type", help="Dynkin type A, D or E")
    common.add_argument("--rank", type=int)
    common.add_argument("--arrows", help="comma-separated i>j (default: i>j for every edge i<j)")
    common.add_argument("--dim", help="dimension vector, e.g. 1,2,1 (default: all ones)")
    common.add_argument("--primes", help="sample primes for interpolation")
    common.add_argument("--max-dim", dest="max_dim", type=int, help="submodule enumeration guard")
    common.add_argument("--max-degree", dest="max_degree", type=int, help="interpolation degree guard")
    common.add_argument("--format", choices=("json", "dot", "table"))
    common.add_argument("--seed", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="quiverorbits", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("orbits", parents=[common], help="orbit catalog with smoothness verdicts")
    sub.add_parser("poset", parents=[common], help="Hasse diagram of the degeneration order")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=SUITES, default="all")
    o = sub.add_parser("omega", parents=[common], help="one Omega coefficient")
    o.add_argument("--cprime", required=True)
    o.add_argument("--c", required=True)
    sub.add_parser("ops", parents=[common], help="elementary operations and their e-values")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    code = EXIT_OK
    try:
        cfg = build_config(args)
        fmt = cfg.format or ("dot" if args.command == "poset" else "json")
        if fmt == "dot" and args.command != "poset":
            raise UsageError("--format dot is only available for poset")
        if args.command == "orbits":
            report, text = cmd_orbits(cfg)
        elif args.command == "poset":
            report, text = cmd_poset(cfg)
        elif args.command == "verify":
            report, text, code = cmd_verify(cfg, args.suite)
        elif args.command == "omega":
            report, text = cmd_omega(cfg, parse_int_list(args.cprime, "--cprime"),
                                     parse_int_list(args.c, "--c"))
        else:
            report, text = cmd_ops(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GuardError, InterpolationError) as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    print(json.dumps(report, indent=2) if fmt == "json" else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
