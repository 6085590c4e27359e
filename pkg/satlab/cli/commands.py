"""
Command-line subcommands.
Parses flags, dispatches to the library and maps outcomes to exit codes.
"""

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from ..config import Config
from ..errors import SatlabError
from ..families import (
    Theorem,
    build_extremal,
    families_from_document,
    families_to_document,
    saturation_to_families,
    verify_conditions,
)
from ..formulas import (
    alon_bound,
    conjectured_strong_sat_number,
    directed_strong_sat_number,
    directed_weak_sat_number,
    gk_edge_count,
    identity_check,
    l_set_size,
    q_enumerate,
    q_formula,
    qn_enumerate,
    qn_formula,
    w_crude_bounds,
    w_inclusion_exclusion,
    weak_sat_number,
)
from ..hypergraph import (
    Mode,
    Pattern,
    build_box_complement,
    build_g0,
    build_gk,
    build_lower_bound_gadget,
    build_three_cliques,
    gadget_pattern,
    greedy_closure,
    lift_process_to_gadget,
    process_from_document,
    process_to_document,
    read_graph,
    verify_process,
    weight_process,
    write_graph,
)
from ..search import (
    conjecture_csv,
    conjecture_table,
    grid_csv,
    min_strong_saturation,
    min_weak_saturation,
    weak_grid_table,
)
from .templates import JSON, TEXT, OutputTemplates

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class UsageError(SatlabError):
    """A flag combination the subcommand cannot act on."""


def _int_list(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-d", type=int, help="uniformity (number of vertex classes)")
    parser.add_argument("-n", type=int, help="labels per vertex class")
    parser.add_argument("-p", type=_int_list, help="clique class sizes, comma separated")
    parser.add_argument("--directed", action="store_true",
                        help="p_i vertices must sit in class i (p keeps its order)")
    parser.add_argument("--format", choices=(TEXT, JSON), default=TEXT, help="output format")
    parser.add_argument("--output", "-o", help="write to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per subcommand."""
    parser = argparse.ArgumentParser(
        prog="satlab",
        description="Weak and strong saturation of complete d-partite hypergraphs: "
                    "closed forms, constructions, process checks and exhaustive search.",
    )
    parser.add_argument("--config", help="TOML config file (defaults to SATLAB_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    formula = sub.add_parser("formula", help="evaluate a counting formula")
    _add_common(formula)
    which = formula.add_mutually_exclusive_group(required=True)
    which.add_argument("--qn", action="store_true",
                       help="q_n(p) by lattice scan; tuples whose i-th smallest coordinate is >= p_i")
    which.add_argument("--qn-formula", action="store_true",
                       help="q_n(p) by the multinomial sum over min-vectors")
    which.add_argument("--w", action="store_true",
                       help="weak saturation number n^d - q_n(p) (exact value for every n, d, p)")
    which.add_argument("--w-directed", action="store_true",
                       help="directed weak saturation number n^d - prod(n - p_i + 1), "
                       "attained by the box complement")
    which.add_argument("--w-ie", action="store_true",
                       help="weak saturation number by inclusion-exclusion over the sets L_i(p_i) "
                       "of tuples with i coordinates below p_i")
    which.add_argument("--bounds", action="store_true",
                       help="crude sandwich |L_1(p_1)| <= W <= sum_i |L_i(p_i)|")
    which.add_argument("--l", action="store_true", help="|L_i(t)|: tuples with i coordinates below t")
    which.add_argument("--q", dest="q_count", action="store_true",
                       help="Q(a, b), the Two-Families bound with permutable caps, by profile enumeration")
    which.add_argument("--q-formula", action="store_true",
                       help="Q(a, b) by inclusion-exclusion over subsets of permutations (d <= 4)")
    which.add_argument("--alon", action="store_true",
                       help="fixed-cap Two-Families bound prod C(a_i + b_i, b_i)")
    which.add_argument("--identity", action="store_true",
                       help="check the identity Q(n - p, 1..1) = q_n(p) linking set pairs to weak saturation")
    which.add_argument("--strong-directed", action="store_true",
                       help="directed strong saturation number (p+q-2)n - (p-1)(q-1) for K_{p,q}")
    which.add_argument("--strong-conjectured", action="store_true",
                       help="conjectured strong saturation number: directed value "
                       "minus floor((q-p)^2/4), attained by G^k")
    which.add_argument("--gk-count", action="store_true", help="edge count of G^k_{p,q}")
    formula.add_argument("-a", type=_int_list, help="caps a_1..a_d")
    formula.add_argument("-b", type=_int_list, help="caps b_1..b_d")
    formula.add_argument("-i", type=int, help="index i for --l")
    formula.add_argument("-t", type=int, help="threshold t for --l")
    formula.add_argument("-q", type=int, help="larger part q of K_{p,q}")
    formula.add_argument("-k", type=int, help="block size k for --gk-count")

    construct = sub.add_parser("construct", help="emit an extremal construction")
    _add_common(construct)
    which = construct.add_mutually_exclusive_group(required=True)
    which.add_argument("--g0", action="store_true",
                       help="G0: weakly saturated with n^d - q_n(p) edges, "
                       "upper bound of the weak saturation formula")
    which.add_argument("--box", action="store_true",
                       help="box complement: directed weakly saturated graph of minimum size")
    which.add_argument("--three-cliques", action="store_true",
                       help="d = 2 warm-up: union of three complete bipartite graphs, "
                       "equal to G0 for K_{p,q}")
    which.add_argument("--gk", action="store_true",
                       help="G^k: strongly K_{p,q}-saturated bipartite graph with a k x k block, "
                       "upper bound of the strong conjecture")
    which.add_argument("--gadget", action="store_true",
                       help="lower-bound gadget: h on labels 1..n, complement of G0 "
                       "on n+1..2n, all mixed edges")
    which.add_argument("--extremal", action="store_true",
                       help="extremal skew set-pair sequence of length Q(a, b), "
                       "showing the Two-Families bound is tight")
    construct.add_argument("--with-process", action="store_true",
                           help="emit a process document (graph and saturation process)")
    construct.add_argument("--graph", help="graph file h for --gadget ('-' for stdin)")
    construct.add_argument("-q", type=int, help="larger part q of K_{p,q}")
    construct.add_argument("-k", type=int, default=0, help="block size k for --gk")
    construct.add_argument("-a", type=_int_list, help="caps a for --extremal")
    construct.add_argument("-b", type=_int_list, help="caps b for --extremal")

    closure = sub.add_parser("closure", help="close a graph under single-edge additions")
    _add_common(closure)
    closure.add_argument("--graph", default="-", help="graph file ('-' for stdin)")
    closure.add_argument("--shuffle", action="store_true", help="visit non-edges in random order")
    closure.add_argument("--seed", type=int, help="seed for --shuffle (defaults to SATLAB_SEED)")
    closure.add_argument("--emit-process", action="store_true",
                         help="print the process document instead of a summary")

    verify = sub.add_parser("verify", help="replay a saturation process")
    _add_common(verify)
    verify.add_argument("--process", required=True, help="process document ('-' for stdin)")
    verify.add_argument("--graph", help="start graph file; defaults to the one in the document")

    families = sub.add_parser("families", help="skew set-pair sequences")
    _add_common(families)
    which = families.add_mutually_exclusive_group(required=True)
    which.add_argument("--extremal", action="store_true", help="build the extremal sequence")
    which.add_argument("--verify", metavar="FILE", help="check a families document")
    which.add_argument("--from-process", metavar="FILE",
                       help="set pairs of a process document with embedded graph and pattern")
    families.add_argument("-a", type=_int_list, help="caps a")
    families.add_argument("-b", type=_int_list, help="caps b")
    families.add_argument("--theorem", choices=[t.value for t in Theorem], default=Theorem.NEW.value,
                          help="new: caps may be permuted per pair; alon: caps fixed per part")
    families.add_argument("--non-skew", action="store_true",
                          help="require A_i to meet B_j for every i != j")

    search = sub.add_parser("search", help="exhaustive minimum search")
    _add_common(search)
    which = search.add_mutually_exclusive_group(required=True)
    which.add_argument("--weak", action="store_true", help="minimum weakly saturated graph")
    which.add_argument("--strong", action="store_true", help="minimum strongly saturated graph")
    search.add_argument("--h-free", action="store_true",
                        help="strong search: the graph itself must not contain the clique")
    search.add_argument("--budget", type=int, help="maximum candidates (defaults to SATLAB_BUDGET)")
    search.add_argument("--workers", type=int,
                        help="worker processes, 0 = one per CPU (defaults to SATLAB_WORKERS)")
    search.add_argument("--symmetry", action="store_true", default=None,
                        help="skip candidates that are not first under relabelling")

    table = sub.add_parser("table", help="CSV tables comparing search and closed forms")
    _add_common(table)
    which = table.add_mutually_exclusive_group(required=True)
    which.add_argument("--conjecture", action="store_true",
                       help="strong K_{p,q} saturation against the conjectured value")
    which.add_argument("--weak-grid", action="store_true",
                       help="weak saturation search against the closed form, every p")
    table.add_argument("-q", type=int, help="larger part q of K_{p,q}")
    table.add_argument("--n-from", type=int, default=None, help="first n (default: q, or 1)")
    table.add_argument("--n-to", type=int, required=True, help="last n")
    table.add_argument("--h-free", action="store_true", help="require h-free witnesses")
    table.add_argument("--budget", type=int, help="maximum candidates per search")
    table.add_argument("--workers", type=int, help="worker processes per search")
    table.add_argument("--symmetry", action="store_true", default=None,
                       help="skip candidates that are not first under relabelling")
    return parser


class CommandHandlers:
    """
    Runs one parsed subcommand.

    Artifacts go to stdout (or --output); diagnostics go to stderr and the log.
    """

    def __init__(self, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None,
                 stderr: Optional[TextIO] = None):
        """
        Initialize command handlers.

        Args:
            stdin: Stream for '-' inputs
            stdout: Stream for artifacts when --output is not given
            stderr: Stream for notes to the user
        """
        self.stdin = stdin or sys.stdin
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def dispatch(self, args: argparse.Namespace) -> int:
        handler = getattr(self, f"{args.command}_command")
        return handler(args)


    def _emit(self, text: str, args: argparse.Namespace) -> None:
        if getattr(args, "output", None):
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            self.stdout.write(text)

    def _read(self, path: str) -> str:
        if path == "-":
            return self.stdin.read()
        try:
            return Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}")

    @staticmethod
    def _require(args: argparse.Namespace, *names: str) -> None:
        missing = [name for name in names if getattr(args, name, None) is None]
        if missing:
            flags = ", ".join(f"-{m}" if len(m) == 1 else f"--{m.replace('_', '-')}" for m in missing)
            raise UsageError(f"{args.command}: missing {flags}")

    def _pattern(self, args: argparse.Namespace, n: Optional[int] = None) -> Pattern:
        """Pattern from -n/-p/--directed; n may come from an input graph instead."""
        if args.p is None:
            raise UsageError(f"{args.command}: missing -p")
        if args.n is not None and n is not None and n != args.n:
            raise UsageError(f"-n {args.n} disagrees with the input graph (n={n})")
        n = args.n if args.n is not None else n
        if n is None:
            raise UsageError(f"{args.command}: missing -n")
        if args.d is not None and args.d != len(args.p):
            raise UsageError(f"-d {args.d} but -p lists {len(args.p)} sizes")
        mode = Mode.DIRECTED if args.directed else Mode.UNDIRECTED
        pattern = Pattern(n=n, p=tuple(args.p), mode=mode)
        self._echo_canonical(args.p, pattern.p)
        return pattern

    def _echo_canonical(self, given: List[int], canonical) -> None:
        if list(canonical) != list(given):
            self.stderr.write(f"# canonical p: {','.join(str(x) for x in canonical)}\n")

    def _pq(self, args: argparse.Namespace):
        self._require(args, "n", "p", "q")
        if len(args.p) != 1:
            raise UsageError(f"{args.command}: -p takes a single value together with -q")
        return args.n, args.p[0], args.q


    def formula_command(self, args: argparse.Namespace) -> int:
        """Evaluate one formula and print its value."""
        fmt = args.format
        if args.identity:
            self._require(args, "n", "p")
            ok = identity_check(args.n, self._sorted_p(args))
            self._emit(OutputTemplates.format_flag("identity", ok, fmt), args)
            return EXIT_OK if ok else EXIT_FAILED
        if args.bounds:
            self._require(args, "n", "p")
            self._emit(OutputTemplates.format_bounds(w_crude_bounds(args.n, self._sorted_p(args)), fmt), args)
            return EXIT_OK

        if args.qn:
            name, result = "qn", qn_enumerate(args.n, self._sorted_p(args))
        elif args.qn_formula:
            name, result = "qn", qn_formula(args.n, self._sorted_p(args))
        elif args.w:
            name, result = "w", weak_sat_number(args.n, self._sorted_p(args))
        elif args.w_directed:
            self._require(args, "n", "p")
            name, result = "w-directed", directed_weak_sat_number(args.n, args.p)
        elif args.w_ie:
            name, result = "w", w_inclusion_exclusion(args.n, self._sorted_p(args))
        elif args.l:
            self._require(args, "n", "d", "i", "t")
            name, result = "l", l_set_size(args.n, args.d, args.i, args.t)
        elif args.q_count or args.q_formula or args.alon:
            self._require(args, "a", "b")
            evaluator = q_enumerate if args.q_count else q_formula if args.q_formula else alon_bound
            name, result = ("alon" if args.alon else "q"), evaluator(args.a, args.b)
        elif args.strong_directed:
            name, result = "strong-directed", directed_strong_sat_number(*self._pq(args))
        elif args.strong_conjectured:
            name, result = "strong-conjectured", conjectured_strong_sat_number(*self._pq(args))
        else:
            self._require(args, "k")
            name, result = "gk-count", gk_edge_count(*self._pq(args), args.k)
        self._emit(OutputTemplates.format_count(name, result, fmt), args)
        return EXIT_OK

    def _sorted_p(self, args: argparse.Namespace) -> List[int]:
        self._require(args, "n", "p")
        if args.d is not None and args.d != len(args.p):
            raise UsageError(f"-d {args.d} but -p lists {len(args.p)} sizes")
        canonical = sorted(args.p)
        self._echo_canonical(args.p, canonical)
        return canonical

    def construct_command(self, args: argparse.Namespace) -> int:
        """Emit a construction as graph text, a process document or a families document."""
        if args.extremal:
            self._require(args, "a", "b")
            self._emit(families_to_document(build_extremal(args.a, args.b)), args)
            return EXIT_OK

        if args.three_cliques or args.gk:
            n, p, q = self._pq(args)
            g = build_gk(n, p, q, args.k) if args.gk else build_three_cliques(n, p, q)
            pattern = Pattern(n=n, p=(p, q))
            proc = greedy_closure(g, pattern)[1] if args.with_process else None
        elif args.gadget:
            self._require(args, "graph")
            h = read_graph(self._read(args.graph))
            pattern = self._pattern(args, n=h.n)
            g = build_lower_bound_gadget(h, pattern)
            proc = None
            if args.with_process:
                closed, h_proc = greedy_closure(h, pattern)
                if not closed.is_complete:
                    self.stderr.write("h is not weakly saturated; no process to lift\n")
                    return EXIT_FAILED
                proc = lift_process_to_gadget(h, h_proc, pattern)
            pattern = gadget_pattern(pattern)
        elif args.box:
            args.directed = True
            pattern = self._pattern(args)
            g = build_box_complement(pattern)
            proc = greedy_closure(g, pattern)[1] if args.with_process else None
        else:
            pattern = self._pattern(args)
            g = build_g0(pattern)
            proc = weight_process(pattern) if args.with_process else None

        if proc is not None:
            self._emit(process_to_document(proc, pattern=pattern, graph=g), args)
        else:
            self._emit(write_graph(g), args)
        return EXIT_OK

    def closure_command(self, args: argparse.Namespace) -> int:
        g = read_graph(self._read(args.graph))
        pattern = self._pattern(args, n=g.n)
        rng = None
        if args.shuffle:
            rng = random.Random(Config.SEED if args.seed is None else args.seed)
        closed, proc = greedy_closure(g, pattern, rng=rng)
        if args.emit_process:
            self._emit(process_to_document(proc, pattern=pattern, graph=g), args)
        else:
            missing = closed.cells - closed.edge_count
            self._emit(OutputTemplates.format_closure(len(proc), missing, closed.is_complete,
                                                      args.format), args)
        return EXIT_OK if closed.is_complete else EXIT_FAILED

    def verify_command(self, args: argparse.Namespace) -> int:
        """Replay a process document against its start graph."""
        proc, doc_pattern, doc_graph = process_from_document(self._read(args.process))
        if args.graph is not None:
            g = read_graph(self._read(args.graph))
        elif doc_graph is not None:
            g = doc_graph
        else:
            raise UsageError("verify: the document carries no graph; pass --graph")
        if args.p is not None:
            pattern = self._pattern(args, n=g.n)
        elif doc_pattern is not None:
            pattern = doc_pattern
        else:
            raise UsageError("verify: the document carries no pattern; pass -p")
        verdict = verify_process(g, proc, pattern)
        self._emit(OutputTemplates.format_process_verdict(verdict, args.format), args)
        if not verdict:
            logger.warning(f"Process rejected: {verdict.message}")
        return EXIT_OK if verdict else EXIT_FAILED

    def families_command(self, args: argparse.Namespace) -> int:
        if args.extremal:
            self._require(args, "a", "b")
            self._emit(families_to_document(build_extremal(args.a, args.b)), args)
            return EXIT_OK
        if args.from_process:
            proc, pattern, g = process_from_document(self._read(args.from_process))
            if pattern is None or g is None:
                raise UsageError("families: the process document needs an embedded graph and pattern")
            self._emit(families_to_document(saturation_to_families(g, proc, pattern)), args)
            return EXIT_OK
        fp = families_from_document(self._read(args.verify))
        verdict = verify_conditions(fp, theorem=Theorem(args.theorem), non_skew=args.non_skew)
        self._emit(OutputTemplates.format_condition_verdict(verdict, args.format), args)
        return EXIT_OK if verdict else EXIT_FAILED

    def search_command(self, args: argparse.Namespace) -> int:
        """Run an exhaustive search and print its certificate."""
        pattern = self._pattern(args)
        if args.weak:
            if args.h_free:
                raise UsageError("search: --h-free only applies to --strong")
            cert = min_weak_saturation(pattern, budget=args.budget, workers=args.workers,
                                       symmetry=args.symmetry)
        else:
            cert = min_strong_saturation(pattern, require_h_free=args.h_free, budget=args.budget,
                                         workers=args.workers, symmetry=args.symmetry)
        self._emit(OutputTemplates.format_certificate(cert, args.format), args)
        return EXIT_OK if cert.conclusive and cert.minimum is not None else EXIT_INCONCLUSIVE

    def table_command(self, args: argparse.Namespace) -> int:
        if args.conjecture:
            self._require(args, "p", "q")
            if len(args.p) != 1:
                raise UsageError("table: -p takes a single value together with -q")
            p, q = args.p[0], args.q
            start = args.n_from if args.n_from is not None else q
            rows = conjecture_table(p, q, range(start, args.n_to + 1),
                                    require_h_free=args.h_free, budget=args.budget,
                                    workers=args.workers, symmetry=args.symmetry)
            self._emit(conjecture_csv(rows), args)
        else:
            self._require(args, "d")
            start = args.n_from if args.n_from is not None else 1
            mode = Mode.DIRECTED if args.directed else Mode.UNDIRECTED
            rows = weak_grid_table(args.d, range(start, args.n_to + 1), mode=mode,
                                   budget=args.budget, workers=args.workers,
                                   symmetry=args.symmetry)
            self._emit(grid_csv(rows), args)
        return EXIT_OK
