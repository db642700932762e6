#!/usr/bin/env python3
"""Classify every built-in example table and report wall-clock timings.

Runs the associativity-status cascade over the zoo (or a chosen subset) and
prints one line per table: size, verdict, the key evidence, and elapsed
time.  Useful for eyeballing how the budgets behave as table size grows.

    python scripts/classify_zoo.py
    python scripts/classify_zoo.py --only pre_sl2 --arity-cap 6
"""

import argparse
import dataclasses
import sys
import time

from assocf import magmas, zoo


@dataclasses.dataclass(frozen=True)
class RunConfig:
    names: tuple
    budget: int | None
    arity_cap: int | None
    threads: int
    seed: int


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--only",
        action="append",
        metavar="NAME",
        help="restrict to this builtin (repeatable); default: all",
    )
    parser.add_argument("--budget", type=int, default=None, help="max added carets")
    parser.add_argument("--arity-cap", type=int, default=None)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    names = tuple(args.only) if args.only else tuple(sorted(zoo.BUILTINS))
    unknown = [n for n in names if n not in zoo.BUILTINS]
    if unknown:
        parser.error(f"unknown builtin(s): {', '.join(unknown)}")
    return RunConfig(names, args.budget, args.arity_cap, args.threads, args.seed)


def budgets_for(m, cfg):
    budgets = magmas.SearchBudgets.for_size(len(m.elements))
    if cfg.budget is not None:
        budgets = dataclasses.replace(budgets, eventual_carets=cfg.budget)
    if cfg.arity_cap is not None:
        budgets = dataclasses.replace(budgets, law_arity_cap=cfg.arity_cap)
    return budgets


def evidence_summary(status):
    ev = status.evidence
    if status.kind == "full_f" and status.reason == "solvable":
        return f"chain {list(ev['chain_sizes'])}, constant {ev['zero']!r}"
    if status.kind == "trivial_certified":
        return f"identity {ev['identity']!r}, counterexample {ev['counterexample']}"
    if status.kind == "contains_commutator":
        return f"expansion {ev['expansion']}" if "expansion" in ev else "on the nose"
    if status.kind == "no_law_up_to":
        note = ev.get("fvl_search")
        return f"arity <= {ev['arity']}" + (f"; {note}" if note else "")
    if status.kind == "unknown":
        laws = ", ".join(magmas.format_law(law) for law in ev["laws"])
        return f"arity <= {ev['searched_up_to']}: {laws}"
    return ""


def main(argv=None):
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    width = max(len(n) for n in cfg.names)
    for name in cfg.names:
        m = zoo.BUILTINS[name]()
        start = time.perf_counter()
        status = magmas.assoc_status(
            m, budgets_for(m, cfg), seed=cfg.seed, threads=cfg.threads
        )
        elapsed = time.perf_counter() - start
        print(
            f"{name:<{width}}  |S|={len(m.elements):<3} "
            f"{status.kind} ({status.reason})  [{elapsed:6.2f}s]"
        )
        summary = evidence_summary(status)
        if summary:
            print(f"{'':<{width}}  {summary}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
