"""Command-line entry point: ``ncpart <subcommand> [options]``.

Exit status is 0 on success, 1 when a verification suite finds a mismatch,
and 2 for usage errors and any error raised by the library.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .bijections import nabla
from .coxtype import FLAVORS, GROUP, parse_tuple, print_tuple
from .errors import NcpartError
from .exceptional import ranksel_exceptional
from .formulas import (blocks_only_multichains, decomp_formula, multichain_blocks,
                       rank_selected_chains, total_multichains)
from .group import parse_element
from .oracle import build_ncm_poset, decomposition_number_oracle
from .polys import ExactPoly
from .triangles import dual_m_triangle, expected_maximal_intervals, fm_check_D, m_triangle
from .verify import SUITES, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_ERROR = 0, 1, 2

# csv header: which formula produced the value
SOURCES = {
    "decomp": "closed decomposition-number formula",
    "decomp-oracle": "factorisation count",
    "chains": "rank-selected chain formula",
    "blocks": "multichains with prescribed block sizes",
    "total": "total multichain count",
    "mtriangle": "M-triangle",
    "fm-check": "F-side vs M-side (type D)",
    "expected-intervals": "expected number of maximal intervals",
    "ranksel-exc": "rank-selected chains, exceptional group",
    "nabla": "nabla bijection",
}


@dataclass
class RunConfig:
    subcommand: str
    family: str | None = None
    group: str | None = None
    n: int | None = None
    m: int = 1
    l: int | None = None
    i: int | None = None
    ranks: list = field(default_factory=list)
    blocks: list | None = None
    types: str = ""
    flavor: str = GROUP
    tuple_text: str = ""
    dual: bool = False
    fmt: str = "text"
    oracle_limit: int | None = None
    suites: list = field(default_factory=list)
    scale: str = "small"
    seed: int = 0

    def validate(self) -> None:
        if self.n is not None and self.n < 1:
            raise NcpartError("--n must be positive")
        if self.m < 1:
            raise NcpartError("--m must be positive")
        if self.flavor not in FLAVORS:
            raise NcpartError(f"--flavor must be one of {', '.join(FLAVORS)}")
        if self.family is not None and self.family not in ("A", "B", "D"):
            raise NcpartError("--family must be A, B or D")


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncpart", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--oracle-limit", type=int, default=None,
                        help="largest group order the brute-force code may enumerate")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def fam(p, m=False, l=False):
        p.add_argument("--family", required=True, choices=("A", "B", "D"))
        p.add_argument("--n", type=int, required=True,
                       help="number of letters for A (S_n), rank for B and D")
        if m:
            p.add_argument("--m", type=int, default=1)
        if l:
            p.add_argument("--l", type=int, required=True)

    for name in ("decomp", "decomp-oracle"):
        p = sub.add_parser(name, parents=[common], help=SOURCES[name])
        fam(p)
        p.add_argument("--types", required=True, help='e.g. "B1,A1" or "A1^2,A2"')
        p.add_argument("--flavor", choices=FLAVORS, default=GROUP)

    p = sub.add_parser("chains", parents=[common], help=SOURCES["chains"])
    fam(p, m=True)
    p.add_argument("--ranks", type=_int_list, required=True)

    p = sub.add_parser("blocks", parents=[common], help=SOURCES["blocks"])
    fam(p, m=True)
    p.add_argument("--b", dest="blocks", type=_int_list, required=True,
                   help="b_1,...,b_n")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ranks", type=_int_list)
    g.add_argument("--l", type=int)

    p = sub.add_parser("total", parents=[common], help=SOURCES["total"])
    fam(p, m=True, l=True)

    p = sub.add_parser("mtriangle", parents=[common], help=SOURCES["mtriangle"])
    fam(p, m=True)
    p.add_argument("--dual", action="store_true")

    p = sub.add_parser("fm-check", parents=[common], help=SOURCES["fm-check"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)

    p = sub.add_parser("expected-intervals", parents=[common], help=SOURCES["expected-intervals"])
    fam(p, m=True, l=True)
    p.add_argument("--i", type=int, required=True)

    p = sub.add_parser("ranksel-exc", parents=[common], help=SOURCES["ranksel-exc"])
    p.add_argument("--group", required=True, help="I2, I2(a) with a >= 3, H3, H4, F4, E6, E7, E8")
    p.add_argument("--ranks", type=_int_list, required=True)

    p = sub.add_parser("nabla", parents=[common], help=SOURCES["nabla"])
    fam(p, m=True)
    p.add_argument("--tuple", dest="tuple_text", required=True,
                   help='w_0;w_1;...;w_m in cycle notation, e.g. "(4,5,6);(3,6);(1,7);(1,2,6)"')

    p = sub.add_parser("verify", parents=[common], help="run self-test suites")
    p.add_argument("suites", nargs="+", help="suite names or 'all': " + ", ".join(SUITES))
    sc = p.add_mutually_exclusive_group()
    sc.add_argument("--small", dest="scale", action="store_const", const="small")
    sc.add_argument("--full", dest="scale", action="store_const", const="full")
    p.add_argument("--seed", type=int, default=0)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.subcommand)
    for name in ("family", "group", "n", "m", "l", "i", "ranks", "blocks", "types",
                 "flavor", "tuple_text", "dual", "fmt", "oracle_limit", "suites", "seed"):
        if getattr(ns, name, None) is not None:
            setattr(cfg, name, getattr(ns, name))
    cfg.scale = getattr(ns, "scale", None) or "small"
    return cfg


# ---------------------------------------------------------------------------
# output

def _plain(value):
    if isinstance(value, ExactPoly):
        return value.to_text()
    if isinstance(value, Fraction):
        return str(value)
    return value


def _jsonable(value):
    if isinstance(value, ExactPoly):
        return {"text": value.to_text(), **value.to_json()}
    if isinstance(value, Fraction):
        return {"numerator": value.numerator, "denominator": value.denominator}
    return value


def emit(cfg: RunConfig, inputs: dict, value, text: str | None = None, out=None) -> None:
    out = out or sys.stdout
    if cfg.fmt == "json":
        json.dump({"command": cfg.subcommand, "input": inputs, "value": _jsonable(value)},
                  out, sort_keys=True)
        out.write("\n")
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["input", SOURCES.get(cfg.subcommand, cfg.subcommand)])
        w.writerow([";".join(f"{k}={inputs[k]}" for k in sorted(inputs)), _plain(value)])
        out.write(buf.getvalue())
    else:
        out.write((text if text is not None else str(_plain(value))) + "\n")


# ---------------------------------------------------------------------------
# dispatch

def _need(cfg, *names):
    for name in names:
        if getattr(cfg, name) in (None, []):
            raise NcpartError(f"--{name} is required for {cfg.subcommand}")


def _run_verify(cfg: RunConfig, out) -> int:
    names = list(SUITES) if "all" in cfg.suites else cfg.suites
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise NcpartError(f"unknown suite(s): {', '.join(unknown)}")
    results = [run_suite(name, cfg.scale, cfg.seed) for name in names]
    ok = all(r.ok for r in results)
    if cfg.fmt == "json":
        json.dump({"command": "verify", "scale": cfg.scale, "seed": cfg.seed, "ok": ok,
                   "suites": [{"name": r.name, "ok": r.ok, "checked": r.checked,
                               "seconds": round(r.seconds, 3), "failures": r.failures}
                              for r in results]}, out, sort_keys=True)
        out.write("\n")
    elif cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["suite", "status", "checked", "seconds"])
        for r in results:
            w.writerow([r.name, "PASS" if r.ok else "FAIL", r.checked, f"{r.seconds:.2f}"])
    else:
        out.write(f"{'suite':<12} {'status':<6} {'checked':>8} {'seconds':>8}\n")
        for r in results:
            out.write(f"{r.name:<12} {'PASS' if r.ok else 'FAIL':<6} {r.checked:>8} {r.seconds:>8.2f}\n")
        for r in results:
            for f in r.failures:
                out.write(f"  {r.name}: mismatch at {f}\n")
        out.write("all suites passed\n" if ok else "verification FAILED\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    if cfg.oracle_limit is not None:
        os.environ["NCPART_ORACLE_LIMIT"] = str(cfg.oracle_limit)
    sc = cfg.subcommand
    base = {"family": cfg.family, "n": cfg.n}
    if sc in ("decomp", "decomp-oracle"):
        types = parse_tuple(cfg.types, cfg.flavor)
        fn = decomp_formula if sc == "decomp" else decomposition_number_oracle
        value = fn(cfg.family, cfg.n, types, cfg.flavor)
        emit(cfg, {**base, "types": print_tuple(types), "flavor": cfg.flavor}, value, out=out)
    elif sc == "chains":
        value = rank_selected_chains(cfg.family, cfg.n, cfg.m, cfg.ranks)
        emit(cfg, {**base, "m": cfg.m, "ranks": cfg.ranks}, value, out=out)
    elif sc == "blocks":
        if cfg.ranks:
            value = multichain_blocks(cfg.family, cfg.n, cfg.m, cfg.ranks, cfg.blocks)
            emit(cfg, {**base, "m": cfg.m, "ranks": cfg.ranks, "b": cfg.blocks}, value, out=out)
        else:
            _need(cfg, "l")
            value = blocks_only_multichains(cfg.family, cfg.n, cfg.m, cfg.l, cfg.blocks)
            emit(cfg, {**base, "m": cfg.m, "l": cfg.l, "b": cfg.blocks}, value, out=out)
    elif sc == "total":
        value = total_multichains(cfg.family, cfg.n, cfg.m, cfg.l)
        emit(cfg, {**base, "m": cfg.m, "l": cfg.l}, value, out=out)
    elif sc == "mtriangle":
        p = build_ncm_poset(cfg.family, cfg.n, cfg.m)
        value = dual_m_triangle(p) if cfg.dual else m_triangle(p)
        emit(cfg, {**base, "m": cfg.m, "dual": cfg.dual}, value, out=out)
    elif sc == "fm-check":
        rep = fm_check_D(cfg.n, cfg.m)
        inputs = {"family": "D", "n": cfg.n, "m": cfg.m}
        if cfg.fmt == "json":
            emit(cfg, inputs, {"ok": rep.ok, "f_side": _jsonable(rep.f_side),
                               "zeta_side": _jsonable(rep.zeta_side),
                               "poset_side": _jsonable(rep.poset_side),
                               "mismatches": [[list(k), list(map(str, v))] for k, v in rep.mismatches]},
                 out=out)
        else:
            emit(cfg, inputs, "ok" if rep.ok else "mismatch",
                 text=("ok" if rep.ok else "mismatch") + f"\n{rep.f_side.to_text()}", out=out)
        return EXIT_OK if rep.ok else EXIT_MISMATCH
    elif sc == "expected-intervals":
        value = expected_maximal_intervals(cfg.family, cfg.n, cfg.m, cfg.i, cfg.l)
        emit(cfg, {**base, "m": cfg.m, "i": cfg.i, "l": cfg.l}, value, out=out)
    elif sc == "ranksel-exc":
        value = ranksel_exceptional(cfg.group, cfg.ranks)
        emit(cfg, {"group": cfg.group, "ranks": cfg.ranks}, value,
             text=value.to_factored_text(), out=out)
    elif sc == "nabla":
        parts = [s for s in cfg.tuple_text.split(";")]
        if len(parts) != cfg.m + 1:
            raise NcpartError(f"expected {cfg.m + 1} elements separated by ';', got {len(parts)}")
        elems = [parse_element(s.strip(), n=cfg.n, family=cfg.family) for s in parts]
        value = nabla(cfg.family, cfg.n, cfg.m, elems)
        if cfg.fmt == "json":
            emit(cfg, {**base, "m": cfg.m, "tuple": cfg.tuple_text},
                 json.loads(value.to_json()), out=out)
        else:
            emit(cfg, {**base, "m": cfg.m, "tuple": cfg.tuple_text}, value.to_text(), out=out)
    elif sc == "verify":
        return _run_verify(cfg, out)
    else:
        raise NcpartError(f"unknown subcommand {sc!r}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return run(config_from_args(ns))
    except NcpartError as exc:
        print(f"ncpart: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"ncpart: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
