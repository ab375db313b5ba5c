"""Command-line driver: learn, verify, eval, compare.

Exit codes: 0 success, 1 configuration or input error, 2 budget exceeded,
3 the verified automaton is wrong.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
import time

from .automata import BudgetExceeded, FormatError, equivalent, from_text, to_dot, to_text, to_walnut, trim
from .lstar import learn_from
from .numeration import (
    TrackSystemSpec,
    UnsupportedSystem,
    by_name,
    from_config,
    register_adder,
)
from .sequences import SequenceDfao, builtin
from .teachers import AdderTeacher, EqFacTeacher, EqRevFacTeacher, PeriodTeacher, direct_eqfac
from .teachers.eqfac import DIRECT_THRESHOLD
from .teachers.linrep import NotSynchronized
from .teachers.partial_sum import DIRECT_LIMIT, PartialSumTeacher, SynchronizedSequence, synchronized

PREDICATES = ("eqfac", "eqrevfac", "period", "adder", "partial-sum")

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_WRONG = 0, 1, 2, 3

log = logging.getLogger("selfverify")


class ConfigError(Exception):
    pass


def load_system(ref: str):
    """A system by name, or from a config file (validity automaton plus places)."""
    if os.path.exists(ref):
        with open(ref) as fh:
            return from_config(fh.read(), name=os.path.splitext(os.path.basename(ref))[0])
    return by_name(ref)


def load_sequence(ref: str, system: str | None = None) -> SequenceDfao:
    if os.path.exists(ref):
        with open(ref) as fh:
            text = fh.read()
        ns = load_system(system) if system else None
        name = os.path.splitext(os.path.basename(ref))[0]
        return SequenceDfao.from_text(text, ns, name=name)
    try:
        X = builtin(ref)
    except KeyError as e:
        raise ConfigError(str(e.args[0])) from None
    if system and load_system(system) != X.system:
        raise ConfigError(f"{ref} is defined over {X.system.name}, not {system}")
    return X


def load_synchronized(ref: str) -> SynchronizedSequence:
    if not os.path.exists(ref):
        try:
            return synchronized(ref)
        except KeyError as e:
            raise ConfigError(str(e.args[0])) from None
    with open(ref) as fh:
        dfa, extras = from_text(fh.read())
    if dfa.alphabet.arity != 2:
        raise ConfigError("a synchronized automaton needs exactly two tracks (n, x)")
    names = {}
    for toks in extras.get("system", []):
        if len(toks) != 2:
            raise ConfigError("system lines read 'system <track> <name>'")
        names[int(toks[0])] = toks[1]
    systems = [by_name(names.get(k, f"msd_{dfa.alphabet.radices[k]}")) for k in range(2)]
    spec = TrackSystemSpec(systems)
    if spec.alphabet != dfa.alphabet:
        raise ConfigError("track radices do not match the declared systems")
    name = os.path.splitext(os.path.basename(ref))[0]
    return SynchronizedSequence(name, spec, dfa)


def make_teacher(predicate: str, args) -> tuple[object, str]:
    """The teacher plus a short label used in output file names."""
    threshold = args.threshold_direct
    if predicate == "adder":
        if not args.system:
            raise ConfigError("adder jobs need --system")
        ns = load_system(args.system)
        return AdderTeacher(ns), ns.name
    if not args.sequence:
        raise ConfigError(f"{predicate} jobs need --sequence")
    if predicate == "partial-sum":
        b = load_synchronized(args.sequence)
        return PartialSumTeacher(b, threshold or DIRECT_LIMIT), b.name
    X = load_sequence(args.sequence, args.system)
    if args.adder:
        with open(args.adder) as fh:
            dfa, _ = from_text(fh.read())
        register_adder(X.system, dfa)
    cls = {"eqfac": EqFacTeacher, "eqrevfac": EqRevFacTeacher, "period": PeriodTeacher}[predicate]
    return cls(X, threshold=threshold or DIRECT_THRESHOLD), X.name


def _slug(s: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", s)


def cmd_learn(args) -> int:
    teacher, label = make_teacher(args.predicate, args)
    dfa, stats = learn_from(teacher, cache=not args.no_cache, max_queries=args.max_queries,
                            max_states=args.max_states)
    os.makedirs(args.out, exist_ok=True)
    stem = os.path.join(args.out, f"{args.predicate}-{_slug(label)}")
    systems = [s.name for s in teacher.spec.systems]
    extras = [f"system {k} {name}" for k, name in enumerate(systems)]
    with open(stem + ".txt", "w") as fh:
        fh.write(to_text(dfa, extras))
    with open(stem + ".dot", "w") as fh:
        fh.write(to_dot(dfa, name=_slug(args.predicate).replace("-", "_").replace(".", "_")))
    if args.format == "walnut":
        with open(stem + ".walnut.txt", "w") as fh:
            fh.write(to_walnut(dfa, systems))
    with open(stem + ".stats", "w") as fh:
        fh.write(stats.to_lines(timing=args.timing))
    print(f"{args.predicate} {label}: {dfa.n_states} states ({trim(dfa).n_states} trimmed)")
    print(stats.to_table(label))
    print(f"wrote {stem}.txt")
    return EXIT_OK


def cmd_verify(args) -> int:
    teacher, _ = make_teacher(args.predicate, args)
    with open(args.automaton) as fh:
        dfa, _ = from_text(fh.read())
    if dfa.alphabet != teacher.alphabet:
        raise ConfigError(f"automaton reads radices {dfa.alphabet.radices}, "
                          f"the predicate needs {teacher.alphabet.radices}")
    verdict = teacher.diagnose(dfa)
    if verdict.correct:
        print("correct")
        return EXIT_OK
    values = "invalid" if verdict.values is None else " ".join(map(str, verdict.values))
    accepted = dfa.accepts(verdict.counterexample)
    print(f"counterexample {values} ({'accepted' if accepted else 'rejected'} by the automaton)")
    print(f"failing check: {verdict.check}", file=sys.stderr)
    return EXIT_WRONG


def cmd_eval(args) -> int:
    try:
        values = [int(v) for v in args.values]
    except ValueError:
        raise ConfigError(f"not a list of integers: {' '.join(args.values)}") from None
    if any(v < 0 for v in values):
        raise ConfigError("values must be natural numbers")
    ns = argparse.Namespace(**vars(args))
    if args.predicate == "adder":
        ns.system, ns.sequence = args.target, None
    else:
        ns.sequence = args.target
    teacher, _ = make_teacher(args.predicate, ns)
    if len(values) != teacher.spec.arity:
        raise ConfigError(f"{args.predicate} takes {teacher.spec.arity} integers")
    print("true" if teacher.member_values(*values) else "false")
    return EXIT_OK


def cmd_compare(args) -> int:
    X = load_sequence(args.sequence, args.system)
    if X.system.name == "tribonacci" and not args.force:
        raise ConfigError("the quantifier route on Tribonacci builds intermediates of "
                          "hundreds of millions of states; pass --force to try anyway")
    t0 = time.perf_counter()
    direct, cstats = direct_eqfac(X)
    t1 = time.perf_counter()
    learned, stats = learn_from(EqFacTeacher(X), max_queries=args.max_queries,
                                max_states=args.max_states)
    t2 = time.perf_counter()
    same = equivalent(direct, learned) is None
    print(f"direct: {direct.n_states} states ({trim(direct).n_states} trimmed), "
          f"peak intermediate {cstats.peak_states}" + (f", {t1 - t0:.1f}s" if args.timing else ""))
    print(f"learned: {learned.n_states} states ({trim(learned).n_states} trimmed), "
          f"{stats.num_unique_queries} unique queries" + (f", {t2 - t1:.1f}s" if args.timing else ""))
    print("equivalent" if same else "NOT equivalent")
    return EXIT_OK if same else EXIT_WRONG


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="selfverify",
                                description="Learn automata for self-verifying predicates with L*.")
    p.add_argument("-v", "--verbose", action="store_true", help="log every L* iteration")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--sequence", help="built-in name or DFAO file")
        sp.add_argument("--system", help="numeration system (msd_2, msd_fib, msd_trib, ...)")
        sp.add_argument("--adder", help="canonical file with an adder for the system")
        sp.add_argument("--threshold-direct", type=int, default=None,
                        help="use direct evaluation below this n")
        sp.add_argument("--max-queries", type=int, default=10 ** 6)
        sp.add_argument("--max-states", type=int, default=10 ** 4)
        sp.add_argument("--timing", action="store_true", help="include wall-clock times")

    sp = sub.add_parser("learn", help="learn a predicate automaton")
    sp.add_argument("predicate", choices=PREDICATES)
    common(sp)
    sp.add_argument("--out", default=".", help="output directory")
    sp.add_argument("--format", choices=("canonical", "dot", "walnut"), default="canonical",
                    help="walnut adds a best-effort Walnut export")
    sp.add_argument("--no-cache", action="store_true", help="disable the membership cache")
    sp.set_defaults(func=cmd_learn)

    sp = sub.add_parser("verify", help="check an automaton against a predicate")
    sp.add_argument("predicate", choices=PREDICATES)
    sp.add_argument("automaton", help="canonical automaton file")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("eval", help="evaluate the membership oracle")
    sp.add_argument("predicate", choices=PREDICATES)
    sp.add_argument("target", help="sequence (or numeration system for adder)")
    sp.add_argument("values", nargs="+")
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("compare", help="eqfac via quantifiers against L*")
    common(sp)
    sp.add_argument("--force", action="store_true", help="allow Tribonacci")
    sp.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "compare" and not args.sequence:
        print("error: compare needs --sequence", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, FormatError, UnsupportedSystem, NotSynchronized, KeyError,
            OSError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
