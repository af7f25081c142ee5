"""Command-line interface.

Exit status: 0 success, 1 invalid input, 2 size or budget limit, 64 unknown
subcommand.  ``--machine`` output is one ``key=value`` record per line.
Keys may repeat; records are emitted in a fixed order and a ``system=`` or
``prime=`` record opens a new group of records.  Every report starts with
the run configuration (``command``, ``input``, ``primes``, ``budget``,
``group_cap``, ``degree_cap``, ``seed``).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import __version__
from .catalog import DESCRIPTIONS, Builtin, load_builtin
from .checks import (NoneFound, cartan_leray_report, condition_c_check, finite_cover,
                     hopf_h2_group, hurewicz_nonzero, hspace_obstruction, loop_census,
                     vanishing_witness, verify_certificate)
from .cyclotomic import is_prime
from .engine.homology import HomologySummary, betti_twisted, homology_integral, homology_mod_p
from .errors import BudgetExceededError, InvalidInputError, SizeLimitError, TwistedHomError
from .groups import (DEFAULT_DEGREE_CAP, DEFAULT_GROUP_CAP, bar_cohomology_dims, nerve_group,
                     nontrivial_characters)
from .io import parse_complex
from .local_systems import (EquivariantComplex, enumerate_local_systems, parse_local_system,
                            twisted_complex)
from .presentation import DEFAULT_COSET_BUDGET, format_word
from .simplicial import IntegerChainComplex, SimplicialComplex

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_USAGE = 0, 1, 2, 64

ENVIRONMENT = {
    "TWISTEDHOM_PRIMES": "primes",
    "TWISTEDHOM_COSET_BUDGET": "budget",
    "TWISTEDHOM_GROUP_CAP": "group_cap",
    "TWISTEDHOM_DEGREE_CAP": "degree_cap",
    "TWISTEDHOM_SEED": "seed",
}


class UsageError(InvalidInputError):
    pass


@dataclass(frozen=True)
class RunConfig:
    primes: tuple[int, ...] = (2, 3)
    budget: int = DEFAULT_COSET_BUDGET
    group_cap: int = DEFAULT_GROUP_CAP
    degree_cap: int = DEFAULT_DEGREE_CAP
    machine: bool = False
    seed: int = 0

    def __post_init__(self):
        if not self.primes:
            raise InvalidInputError("at least one prime is required")
        for p in self.primes:
            if not is_prime(p):
                raise InvalidInputError(f"{p} is not prime")
        for name in ("budget", "group_cap", "degree_cap"):
            if getattr(self, name) <= 0:
                raise InvalidInputError(f"{name} must be positive")

    def records(self) -> list[tuple[str, object]]:
        return [("primes", ",".join(map(str, self.primes))), ("budget", self.budget),
                ("group_cap", self.group_cap), ("degree_cap", self.degree_cap),
                ("seed", self.seed)]


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        ps = tuple(sorted({int(t) for t in text.replace(" ", "").split(",") if t}))
    except ValueError:
        raise InvalidInputError(f"bad prime list {text!r}") from None
    return ps


def _integer(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidInputError(f"{what} must be an integer, got {text!r}") from None


class Report:
    """Collects records; renders them as key=value lines or human text."""

    def __init__(self, machine: bool):
        self.machine = machine
        self.records: list[tuple[str, str]] = []
        self.text: list[str] = []

    def add(self, key: str, value, human: str | None = None) -> None:
        value = _fmt(value)
        self.records.append((key, value))
        if human is not False:
            self.text.append(human if human is not None else f"{key}: {value}")

    def say(self, line: str) -> None:
        self.text.append(line)

    def render(self) -> str:
        if self.machine:
            return "".join(f"{k}={v}\n" for k, v in self.records)
        return "".join(line + "\n" for line in self.text)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (tuple, list)):
        return ",".join(_fmt(x) for x in v)
    if v is None:
        return "n/a"
    return str(v)


# ---------------------------------------------------------------------------
# input resolution

def _resolve(args) -> Builtin:
    if args.builtin and args.file:
        raise UsageError("give either --builtin or --file, not both")
    if args.builtin:
        return load_builtin(args.builtin)
    if args.file:
        obj = parse_complex(args.file)
        if isinstance(obj, SimplicialComplex):
            return Builtin(args.file, obj)
        if isinstance(obj, EquivariantComplex):
            return Builtin(args.file, _equivariant=lambda: obj)
        if isinstance(obj, IntegerChainComplex):
            return Builtin(args.file, _integer=lambda: obj)
    raise UsageError("an input is required: --builtin NAME or --file PATH")


def _model(b: Builtin):
    """What the checkers consume: the simplicial complex when there is one."""
    return b.simplicial if b.simplicial is not None else b.equivariant()


def _input_name(args) -> str:
    return getattr(args, "builtin", None) or getattr(args, "file", None) or "-"


# ---------------------------------------------------------------------------
# subcommands

def _summary(rep: Report, s: HomologySummary, lines: bool, table: bool) -> None:
    rep.add("field", s.field)
    rep.add("betti", s.betti)
    for k in range(len(s.betti)):
        rep.add(f"H{k}", s.group_string(k), human=f"H {k} = {s.group_string(k)}" if lines else False)
    rep.add("euler", s.euler_characteristic())
    if table:
        rep.say(s.table())


def cmd_homology(args, cfg, rep):
    b = _resolve(args)
    C = b.integer_complex()
    field = args.field.upper()
    if field == "Z":
        s = homology_integral(C)
    elif field == "Q":
        z = homology_integral(C)
        s = HomologySummary("Q", z.betti)
    else:
        p = _integer(field[2:] if field.startswith("F_") else field, "field")
        if not is_prime(p):
            raise InvalidInputError(f"field must be Z, Q or a prime, got {args.field!r}")
        s = homology_mod_p(C, p)
    rep.add("sizes", C.sizes())
    _summary(rep, s, lines=args.lines or not args.report, table=args.report)


def _systems(args, cfg, E: EquivariantComplex):
    if args.system and args.all_systems:
        raise UsageError("--system and --all-systems are exclusive")
    if args.system:
        return [parse_local_system(args.system, E.presentation)]
    if not args.all_systems:
        raise UsageError("give --system 'l=<p>; a:1 ...' or --all-systems")
    out = []
    for ell in cfg.primes:
        out.extend(enumerate_local_systems(E.presentation, ell))
    return out


def cmd_twisted_homology(args, cfg, rep):
    E = _resolve(args).equivariant()
    rep.add("presentation", _presentation(E.presentation))
    rep.add("sizes", E.sizes())
    for L in _systems(args, cfg, E):
        rep.add("system", L.format(), human=f"system {L.format()}")
        s = betti_twisted(twisted_complex(E, L, check=True))
        _summary(rep, s, lines=True, table=False)


def _presentation(P) -> str:
    gens = " ".join(P.names)
    rels = ", ".join(format_word(r, P.names) for r in P.relators)
    return f"<{gens} | {rels}>"


def cmd_local_systems(args, cfg, rep):
    E = _resolve(args).equivariant()
    rep.add("presentation", _presentation(E.presentation))
    for ell in cfg.primes:
        systems = enumerate_local_systems(E.presentation, ell)
        rep.add("prime", ell, human=f"l = {ell}: {len(systems)} local systems")
        rep.add("count", len(systems), human=False)
        for L in systems:
            rep.add("system", L.format(), human=f"  {L.format()}")


def cmd_cover(args, cfg, rep):
    X = _model(_resolve(args))
    C = finite_cover(X, cfg.budget)
    H = homology_integral(C.chain_complex, check=False)
    rep.add("order", C.order, human=f"N = {C.order} (order of the fundamental group)")
    rep.add("base_sizes", C.base_complex.sizes())
    rep.add("cover_sizes", C.chain_complex.sizes())
    rep.add("euler_base", C.base_complex.euler_characteristic())
    rep.add("euler_cover", C.euler_characteristic(),
            human=f"chi = {C.euler_characteristic()} (cover), "
                  f"{C.base_complex.euler_characteristic()} x {C.order} expected")
    for k in range(len(H.betti)):
        rep.add(f"cover_H{k}", H.group_string(k))
    hur = hurewicz_nonzero(X, cfg.budget)
    rep.add("hurewicz_nonzero", hur.nonzero)
    rep.add("hopf_h2_group", str(hopf_h2_group(X, cfg.budget)))


def cmd_condition_c(args, cfg, rep):
    X = _model(_resolve(args))
    for ell in cfg.primes:
        r = condition_c_check(X, ell, budget=cfg.budget, group_cap=cfg.group_cap,
                              degree_cap=cfg.degree_cap)
        rep.add("prime", ell, human=f"l = {ell}: {r.verdict}")
        rep.add("verdict", r.verdict, human=False)
        rep.add("hurewicz_nonzero", r.hurewicz_nonzero)
        rep.add("h2_group", r.h2_group)
        rep.add("h2_space", r.h2_space)
        rep.add("h3_group", r.h3_group)
        rep.add("h3_space", r.h3_space)
        for note in r.notes:
            rep.add("note", note)


def cmd_cartan_leray(args, cfg, rep):
    X = _model(_resolve(args))
    for ell in cfg.primes:
        r = cartan_leray_report(X, ell, budget=cfg.budget, group_cap=cfg.group_cap,
                                degree_cap=cfg.degree_cap)
        rep.add("prime", ell, human=f"l = {ell}")
        rep.add("dims", r.dims, human=f"  dims H2(G) H2(M) H2inv H3(G) H3(M) = {r.dims}")
        rep.add("rank_pi_star", r.rank_pi_star)
        rep.add("kernel_pi_star", r.kernel_pi_star)
        rep.add("kernel_equals_h2_group", r.kernel_identity)
        rep.add("connecting_bound", r.connecting_bound)
        rep.add("verdict", r.verdict)


def cmd_census(args, cfg, rep):
    X = _model(_resolve(args))
    for ell in cfg.primes:
        c = loop_census(X, ell, budget=cfg.budget)
        rep.add("prime", ell, human=f"l = {ell}: (a, b) = ({c.invariant_h2}, {c.h1})")
        rep.add("a", c.invariant_h2, human=False)
        rep.add("b", c.h1, human=False)
        rep.add("count", c.count)
        rep.add("exists_trivial_on_base", c.exists_trivial_on_base)


def cmd_hspace_check(args, cfg, rep):
    X = _model(_resolve(args))
    res = hspace_obstruction(X, cfg.primes)
    if isinstance(res, NoneFound):
        rep.add("result", "none-found", human=res.describe())
        rep.add("systems_checked", res.systems_checked, human=False)
        return
    ok = verify_certificate(X, res)
    rep.add("result", "certificate", human=res.describe())
    rep.add("l", res.ell, human=False)
    rep.add("system", res.system.format(), human=False)
    rep.add("degree", res.degree, human=False)
    rep.add("rank", res.rank, human=False)
    rep.add("verified", ok)


def _group(args, cfg):
    if args.group and (args.builtin or args.file):
        raise UsageError("give either --group or an input complex")
    if args.group:
        inv = [_integer(t, "group invariant") for t in args.group.replace("x", ",").split(",") if t]
        if not inv or any(n < 1 for n in inv):
            raise InvalidInputError(f"bad group {args.group!r}")
        G = nerve_group(inv)
        if G.order > cfg.group_cap:
            raise SizeLimitError(f"group order {G.order} exceeds the cap {cfg.group_cap}")
        return G
    return finite_cover(_model(_resolve(args)), cfg.budget).group


def cmd_group_cohomology(args, cfg, rep):
    G = _group(args, cfg)
    primes = [args.l] if args.l else cfg.primes
    rep.add("order", G.order)
    for ell in primes:
        dims = bar_cohomology_dims(G, ell, args.degree, cap=cfg.group_cap,
                                   degree_cap=cfg.degree_cap)
        rep.add("prime", ell, human=f"l = {ell}: dim H^k(G; F_{ell}), k = 0..{args.degree}")
        rep.add("dims", dims, human=f"  {dims}")


def _element(G, g: int) -> str:
    names = G.presentation.names if G.presentation else None
    return format_word(G.words[g], names) if names else str(g)


def cmd_vanishing_witness(args, cfg, rep):
    G = _group(args, cfg)
    if not G.is_abelian():
        raise InvalidInputError("the vanishing witness needs an abelian group")
    if args.all_characters:
        chars = []
        for ell in ([args.l] if args.l else cfg.primes):
            chars.extend(nontrivial_characters(G, ell))
    elif args.character:
        text = args.character
        if not text.lstrip().startswith("l"):
            if not args.l:
                raise UsageError("--character without 'l=' needs --l")
            text = f"l={args.l}; {text}"
        chars = [parse_local_system(text, G.presentation)]
    else:
        ell = args.l or cfg.primes[0]
        chars = nontrivial_characters(G, ell)[:1]
    rep.add("order", G.order)
    rep.add("degree", args.degree)
    for chi in chars:
        w = vanishing_witness(G, chi, args.degree, cap=cfg.group_cap)
        rep.add("character", chi.format(), human=f"character {chi.format()}")
        rep.add("element", _element(G, w.element))
        rep.add("coefficient", w.coefficient)
        rep.add("boundary_is_unit", w.bounds_unit)
        rep.add("betti", w.betti)
        rep.add("vanishes", w.vanishes)


def cmd_catalog(args, cfg, rep):
    for name, desc in DESCRIPTIONS:
        rep.add("entry", name, human=f"{name:16s} {desc}")


COMMANDS: dict[str, tuple[Callable, str]] = {
    "homology": (cmd_homology, "homology over Z, Q or F_p"),
    "twisted-homology": (cmd_twisted_homology, "homology with rank-one local coefficients"),
    "local-systems": (cmd_local_systems, "enumerate Z/l local systems"),
    "cover": (cmd_cover, "universal cover summary (finite fundamental group)"),
    "condition-c": (cmd_condition_c, "decide condition (C) where possible"),
    "cartan-leray": (cmd_cartan_leray, "low-degree Cartan-Leray dimensions"),
    "census": (cmd_census, "local systems on the free loop space"),
    "hspace-check": (cmd_hspace_check, "search for a twisted homology obstruction"),
    "group-cohomology": (cmd_group_cohomology, "bar-resolution cohomology dimensions"),
    "vanishing-witness": (cmd_vanishing_witness, "witness for vanishing on the nerve"),
    "catalog": (cmd_catalog, "list builtin complexes"),
}

INPUT_COMMANDS = {"homology", "twisted-homology", "local-systems", "cover", "condition-c",
                  "cartan-leray", "census", "hspace-check", "group-cohomology",
                  "vanishing-witness"}


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _env_help() -> str:
    lines = ["environment variables (flags take precedence):"]
    lines += [f"  {var:26s} default for --{opt.replace('_', '-')}" for var, opt in ENVIRONMENT.items()]
    lines.append("exit status: 0 ok, 1 invalid input, 2 size or budget limit, 64 unknown subcommand")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistedhom", description="Twisted homology toolkit.",
                     epilog=_env_help(), formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext, description=helptext, epilog=_env_help(),
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--machine", action="store_true", help="key=value records")
        p.add_argument("--primes", help="comma-separated primes (default 2,3)")
        p.add_argument("--budget", help=f"coset enumeration budget (default {DEFAULT_COSET_BUDGET})")
        p.add_argument("--group-cap", help=f"largest group order (default {DEFAULT_GROUP_CAP})")
        p.add_argument("--degree-cap", help=f"largest bar degree (default {DEFAULT_DEGREE_CAP})")
        p.add_argument("--seed", help="seed echoed in reports (default 0)")
        if name in INPUT_COMMANDS:
            p.add_argument("--builtin", metavar="NAME", help="a catalog entry, see 'catalog'")
            p.add_argument("--file", metavar="PATH", help="a complex file")
        if name == "homology":
            p.add_argument("--field", default="Z", help="Z, Q or a prime p (default Z)")
            p.add_argument("--lines", action="store_true", help="print 'H k = ...' lines")
            p.add_argument("--report", action="store_true", help="print an aligned table")
        if name == "twisted-homology":
            p.add_argument("--system", help="e.g. 'l=2; a:1'")
            p.add_argument("--all-systems", action="store_true",
                           help="every local system for every prime")
        if name in ("group-cohomology", "vanishing-witness"):
            p.add_argument("--group", help="invariant factors, e.g. 2,2 or 3x3")
            p.add_argument("--l", type=int, help="coefficient prime (default: --primes)")
            p.add_argument("--degree", type=int, default=3 if name == "group-cohomology" else 4,
                           help="top degree")
        if name == "vanishing-witness":
            p.add_argument("--character", help="e.g. 'a:1' with --l, or 'l=3; a:1'")
            p.add_argument("--all-characters", action="store_true")
    return parser


def _config(args, env) -> RunConfig:
    def pick(flag, var, default):
        v = getattr(args, flag)
        return v if v is not None else env.get(var, default)

    primes = pick("primes", "TWISTEDHOM_PRIMES", "2,3")
    return RunConfig(
        primes=_parse_primes(primes) if isinstance(primes, str) else primes,
        budget=_integer(str(pick("budget", "TWISTEDHOM_COSET_BUDGET", DEFAULT_COSET_BUDGET)),
                         "budget"),
        group_cap=_integer(str(pick("group_cap", "TWISTEDHOM_GROUP_CAP", DEFAULT_GROUP_CAP)),
                            "group cap"),
        degree_cap=_integer(str(pick("degree_cap", "TWISTEDHOM_DEGREE_CAP", DEFAULT_DEGREE_CAP)),
                             "degree cap"),
        machine=args.machine,
        seed=_integer(str(pick("seed", "TWISTEDHOM_SEED", 0)), "seed"),
    )


def main(argv: Sequence[str] | None = None, *, stdout=None, stderr=None,
         env: dict | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    env = os.environ if env is None else env
    parser = build_parser()
    first = next((a for a in argv if not a.startswith("-")), None)
    if first is None and not any(a in ("-h", "--help", "--version") for a in argv):
        err.write(parser.format_usage())
        return EXIT_USAGE
    if first is not None and first not in COMMANDS:
        err.write(parser.format_usage())
        err.write(f"twistedhom: unknown subcommand {first!r}\n")
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:   # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_INPUT
    try:
        cfg = _config(args, env)
        rep = Report(cfg.machine)
        rep.add("command", args.command, human=False)
        rep.add("input", _input_name(args), human=False)
        for k, v in cfg.records():
            rep.add(k, v, human=False)
        echo = [("input", _input_name(args))] + cfg.records()
        rep.say(f"# twistedhom {args.command} " + " ".join(f"{k}={_fmt(v)}" for k, v in echo))
        COMMANDS[args.command][0](args, cfg, rep)
    except (BudgetExceededError, SizeLimitError) as exc:
        err.write(f"twistedhom: limit: {exc}\n")
        return EXIT_LIMIT
    except TwistedHomError as exc:
        err.write(f"twistedhom: error: {exc}\n")
        return EXIT_INPUT
    out.write(rep.render())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
