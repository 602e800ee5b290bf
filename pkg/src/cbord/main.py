import argparse
import json
import logging
import shlex
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from tqdm import tqdm

# Ensure the src directory is in the Python path
# This allows running main.py directly from a checkout
project_root = Path(__file__).resolve().parent.parent.parent
sys.path.insert(0, str(project_root / 'src'))

from cbord import __version__, handle_exception, setup_logging  # noqa: E402
from cbord.braid import (  # noqa: E402
    BraidWord, QuasipositiveWord, expand_quasipositive, format_braid,
    format_quasipositive, parse_braid, parse_quasipositive,
)
from cbord.errors import BudgetExceededError, InputError  # noqa: E402
from cbord.homfly import HomflyBudget, clear_trace_cache, homfly, mfw_bounds  # noqa: E402
from cbord.obstruction import (  # noqa: E402
    GenusValue, Kind, cor16_order, cor19_mirror, cor24_certificate, cor26_certificate,
    cor27_certificate, cor33_test, cor34_test, encode_rational, parse_genus, prop14_certificate,
    quasipositive_genus, spc_test, thm23_certificate, thm25_certificate,
)
from cbord.plumbing import (  # noqa: E402
    boundary_components, format_tree, genus_lower_bound, is_spc_cboundary, is_strongly_excessive,
    mp_ord_v, parse_tree, tree_seifert_matrix, uniform_decomposition,
)
from cbord.seifert import (  # noqa: E402
    SeifertMatrix, alexander, bennequin_seifert_matrix, determinant_and_nullity, inertia,
    is_alexander_trivial, signature,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

# JSON schema: every report has REPORT_KEYS, every failed batch line has
# ERROR_KEYS, and a report's "results" has exactly RESULT_KEYS[command].
REPORT_KEYS = ("command", "input", "results", "warnings")
ERROR_KEYS = ("command", "input", "error", "exit_code")
RESULT_KEYS = {
    "homfly": ("polynomial", "ord_v", "maxdeg_v", "components", "mfw_bounds"),
    "signature": ("signature", "inertia", "determinant", "nullity", "seifert_matrix"),
    "alexander": ("alexander", "trivial", "seifert_matrix"),
    "obstruct": ("ord_v", "components", "signature", "M", "spc_verdict", "obstructed", "certificates"),
    "plumbing": (
        "weights", "k", "s", "p", "q", "strongly_excessive", "ord_v", "r", "genus_lower_bound",
        "signature", "alexander", "determinant", "spc_verdict", "certificate",
    ),
    "certify": ("verdict", "certificate"),
}


@dataclass
class Report:
    """One command's output: the normalized input echo plus a results record."""

    command: str
    input: str
    results: Dict[str, Any]
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """The JSON record; "results" always carries the command's full key set, absent values as null."""
        results = {key: self.results.get(key) for key in RESULT_KEYS[self.command]}
        return dict(zip(REPORT_KEYS, (self.command, self.input, _jsonable(results), list(self.warnings))))

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.input}"]
        for key, value in self.results.items():
            if key == "certificates":
                for cert in value:
                    lines.append(f"  certificate {cert['rule']}: {cert['verdict']}")
                    lines.extend(f"    {step}" for step in cert["inequality_trace"])
            elif key == "certificate" and value:
                lines.append(f"  certificate {value['rule']}: {value['verdict']}")
                lines.extend(f"    {step}" for step in value["inequality_trace"])
            elif isinstance(value, (dict, list)):
                lines.append(f"  {key}: {json.dumps(_jsonable(value))}")
            else:
                lines.append(f"  {key}: {_jsonable(value)}")
        lines.extend(f"  warning: {w}" for w in self.warnings)
        return "\n".join(lines)


def _jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return encode_rational(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises InputError instead of exiting, so callers pick the exit code."""

    def error(self, message):
        raise InputError(message)


# Input helpers -------------------------------------------------------------

def _parse_link(text: str) -> Tuple[BraidWord, Optional[QuasipositiveWord], str]:
    """Accept a braid (``B<n>: ...``) or a quasipositive word (``QP<n>: ...``)."""
    if text.lstrip().startswith("QP"):
        q = parse_quasipositive(text)
        return expand_quasipositive(q), q, format_quasipositive(q)
    b = parse_braid(text)
    return b, None, format_braid(b)


def _budget(args) -> HomflyBudget:
    budget = HomflyBudget.from_env()
    return HomflyBudget(
        args.max_strands if args.max_strands is not None else budget.max_strands,
        args.max_letters if args.max_letters is not None else budget.max_letters,
    )


def _seifert_source(args) -> Tuple[SeifertMatrix, str]:
    if args.tree is not None:
        if args.link is not None:
            raise InputError("give either a braid or --tree, not both")
        T = parse_tree(args.tree)
        return tree_seifert_matrix(T), format_tree(T)
    if args.link is None:
        raise InputError("a braid or --tree is required")
    b, _, echo = _parse_link(args.link)
    return bennequin_seifert_matrix(b), echo


def _split_warning(V: SeifertMatrix) -> List[str]:
    return ["the braided surface is disconnected, so the closure is a split link"] if V.split else []


# Subcommands ---------------------------------------------------------------

def cmd_homfly(args) -> Report:
    """HOMFLY polynomial, valuations and braid bounds of a braid or quasipositive word."""
    b, _, echo = _parse_link(args.link)
    result = homfly(b, _budget(args))
    lower, upper = mfw_bounds(b)
    return Report("homfly", echo, {
        "polynomial": str(result.polynomial),
        "ord_v": result.ord_v,
        "maxdeg_v": result.maxdeg_v,
        "components": result.components,
        "mfw_bounds": [lower, upper],
    })


def cmd_signature(args) -> Report:
    """Signature, inertia, determinant and nullity from a braid or --tree."""
    V, echo = _seifert_source(args)
    positive, negative, zero = inertia(V)
    det, nullity = determinant_and_nullity(V)
    return Report("signature", echo, {
        "signature": signature(V),
        "inertia": [positive, negative, zero],
        "determinant": det,
        "nullity": nullity,
        "seifert_matrix": V.rows(),
    }, _split_warning(V))


def cmd_alexander(args) -> Report:
    """Alexander polynomial from a braid or --tree."""
    V, echo = _seifert_source(args)
    return Report("alexander", echo, {
        "alexander": str(alexander(V)),
        "trivial": is_alexander_trivial(V),
        "seifert_matrix": V.rows(),
    }, _split_warning(V))


def cmd_obstruct(args) -> Report:
    """
    Run the valuation obstructions.

    Braid input runs the component bound, the signature test with
    --auto-sigma and the genus test with the best genus bound available. Tree
    input runs the all-negative-weights decision.
    """
    if args.tree is not None:
        if args.link is not None:
            raise InputError("give either a braid or --tree, not both")
        if args.genus_lb is not None or args.auto_sigma:
            raise InputError("--genus-lb and --auto-sigma apply to braid input only")
        T = parse_tree(args.tree)
        verdict = is_spc_cboundary(T)
        return Report("obstruct", format_tree(T), {
            "ord_v": mp_ord_v(T),
            "components": boundary_components(T),
            "signature": None,
            "M": None,
            "spc_verdict": "yes" if verdict.is_cboundary else "no",
            "obstructed": verdict.certificate.obstructed,
            "certificates": [verdict.certificate.to_dict()],
        })

    if args.link is None:
        raise InputError("a braid, a quasipositive word or --tree is required")
    b, q, echo = _parse_link(args.link)
    P = homfly(b, _budget(args))
    certificates = [cor33_test(P)]
    results: Dict[str, Any] = {"ord_v": P.ord_v, "components": P.components, "signature": None}
    warnings: List[str] = []

    sigma = None
    if args.auto_sigma:
        V = bennequin_seifert_matrix(b)
        sigma = signature(V)
        results["signature"] = sigma
        warnings.extend(_split_warning(V))
        if P.components == 1:
            certificates.append(cor34_test(P, sigma))
        else:
            warnings.append("the signature test applies to knots only; skipped")

    if args.genus_lb is not None:
        M = parse_genus(args.genus_lb)
    elif q is not None:
        M = quasipositive_genus(q)
    elif sigma is not None:
        M = GenusValue(Fraction(abs(sigma), 2), Kind.LOWER, "signature bound |sigma|/2")
    else:
        M = GenusValue(0, Kind.LOWER, "trivial bound")
    certificates.append(spc_test(P, M))

    results["M"] = {"value": M.value, "kind": M.kind.value, "provenance": M.provenance}
    results["spc_verdict"] = None
    results["obstructed"] = any(c.obstructed for c in certificates)
    results["certificates"] = [c.to_dict() for c in certificates]
    return Report("obstruct", echo, results, warnings)


def cmd_plumbing(args) -> Report:
    """Full plumbing record of a tree; the valuation fields stay null when it is not strongly excessive."""
    T = parse_tree(args.tree)
    decomposition = uniform_decomposition(T)
    report = is_strongly_excessive(T)
    V = tree_seifert_matrix(T)
    det, _ = determinant_and_nullity(V)
    results: Dict[str, Any] = {
        "weights": list(T.weights),
        "k": decomposition.k,
        "s": decomposition.s,
        "p": decomposition.p,
        "q": decomposition.q,
        "strongly_excessive": report.strongly_excessive,
        "ord_v": None,
        "r": boundary_components(T),
        "genus_lower_bound": genus_lower_bound(T),
        "signature": signature(V),
        "alexander": str(alexander(V)),
        "determinant": det,
        "spc_verdict": None,
        "certificate": None,
    }
    warnings = [f"condition {f.condition} fails: {f.message}" for f in report.failures]
    if report:
        verdict = is_spc_cboundary(T)
        results["ord_v"] = mp_ord_v(T)
        results["spc_verdict"] = "yes" if verdict.is_cboundary else "no"
        results["certificate"] = verdict.certificate.to_dict()
    return Report("plumbing", format_tree(T), results, warnings)


def _genus_arg(args, name: str) -> GenusValue:
    value = getattr(args, name)
    if value is None:
        raise InputError(f"rule {args.rule} needs --{name}")
    return parse_genus(value, provenance=f"--{name}")


def _int_arg(args, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        raise InputError(f"rule {args.rule} needs --{name}")
    return value


CERTIFY_RULES = {
    "prop14": lambda a: prop14_certificate(_genus_arg(a, "M1"), _genus_arg(a, "M2"), _genus_arg(a, "Msum")),
    "cor16": lambda a: cor16_order(_genus_arg(a, "M"), _int_arg(a, "order")),
    "cor19": lambda a: cor19_mirror(_genus_arg(a, "M")),
    "cor24": lambda a: cor24_certificate(_genus_arg(a, "M1"), _genus_arg(a, "M2"), _genus_arg(a, "Msum")),
    "thm23": lambda a: thm23_certificate(_genus_arg(a, "MK"), _genus_arg(a, "MJ")),
    "thm25": lambda a: thm25_certificate(_genus_arg(a, "MJ"), _genus_arg(a, "MK"),
                                         _int_arg(a, "t"), _int_arg(a, "omega")),
    "cor26": lambda a: cor26_certificate(_genus_arg(a, "MK"), _int_arg(a, "p"), _int_arg(a, "q")),
    "cor27": lambda a: cor27_certificate(
        parse_genus(a.M, provenance="--M") if a.M is not None else None,
        _int_arg(a, "sigma"),
        not a.K_not_null_concordant,
    ),
}


def cmd_certify(args) -> Report:
    """Evaluate one concordance rule from its command-line values."""
    certificate = CERTIFY_RULES[args.rule](args)
    given = {k: v for k, v in vars(args).items()
             if k in _CERTIFY_OPTIONS and v not in (None, False)}
    echo = " ".join([args.rule] + [f"--{k} {v}" for k, v in given.items()])
    return Report("certify", echo, {
        "verdict": certificate.verdict.value,
        "certificate": certificate.to_dict(),
    })


_CERTIFY_OPTIONS = ("M", "M1", "M2", "Msum", "MK", "MJ", "p", "q", "t", "omega", "order", "sigma")


def _error_record(line: str, command: Optional[str], message: str, code: int) -> Tuple[Dict[str, Any], int]:
    return dict(zip(ERROR_KEYS, (command, line, message, code))), code


def _run_line(line: str, defaults) -> Tuple[Dict[str, Any], int]:
    """
    Run one batch line; errors become an error record instead of raising.

    Returns:
        The JSON record (REPORT_KEYS on success, ERROR_KEYS on failure, where
        "command" is null when the line did not parse) and the exit code.
    """
    command = None
    try:
        tokens = shlex.split(line)
        args = build_parser().parse_args(tokens)
        command = args.command
        if args.command == "batch":
            raise InputError("batch files cannot nest batch commands")
        for name in ("max_strands", "max_letters"):
            if getattr(args, name) is None:
                setattr(args, name, getattr(defaults, name))
        return args.handler(args).to_dict(), EXIT_OK
    except SystemExit:
        return _error_record(line, command, "argument parsing stopped", EXIT_INPUT)
    except InputError as e:
        return _error_record(line, command, str(e), EXIT_INPUT)
    except BudgetExceededError as e:
        return _error_record(line, command, str(e), EXIT_BUDGET)
    except Exception as e:
        logger.error(f"Unexpected error on batch line {line!r}: {e}")
        logger.debug(traceback.format_exc())
        return _error_record(line, command, str(e), EXIT_FAILURE)


def cmd_batch(args) -> int:
    """
    Run every command line of a file on a thread pool and print NDJSON records in file order.

    Returns:
        EXIT_OK when every line succeeded, EXIT_FAILURE otherwise.
    """
    path = Path(args.file)
    try:
        raw_lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise InputError(f"cannot read batch file {path}: {e}")
    lines = [line.strip() for line in raw_lines if line.strip() and not line.strip().startswith("#")]
    logger.info(f"Running {len(lines)} batch lines with {args.workers} worker(s)")

    failed = 0
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as executor:
        outcomes = executor.map(lambda line: _run_line(line, args), lines)
        for record, code in tqdm(outcomes, total=len(lines), file=sys.stderr, unit="line", disable=not lines):
            if code != EXIT_OK:
                failed += 1
            print(json.dumps(record), flush=True)
    clear_trace_cache()

    logger.info(f"Batch complete: {len(lines) - failed} succeeded, {failed} failed")
    return EXIT_FAILURE if failed else EXIT_OK


# Parser --------------------------------------------------------------------

def build_parser() -> ArgumentParser:
    """The cbord argument parser with one subparser per command."""
    parser = ArgumentParser(prog="cbord", description="Link invariants and C-boundary obstruction certificates")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", help="Emit the report as JSON", action="store_true")
    parser.add_argument("--log-level", help="Logging level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        default="WARNING")
    parser.add_argument("--log-file", help="Also write the log to this file", type=str)
    parser.add_argument("--max-strands", help="HOMFLY strand budget (overrides CBORD_BUDGET)", type=int)
    parser.add_argument("--max-letters", help="HOMFLY letter budget (overrides CBORD_BUDGET)", type=int)

    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    p = subparsers.add_parser("homfly", help="HOMFLY polynomial, valuation and braid bounds")
    p.add_argument("link", help="Braid 'B<n>: g1 g2 ...' or quasipositive word 'QP<n>: (w | i) ...'")
    p.set_defaults(handler=cmd_homfly)

    for name, handler, text in (
        ("signature", cmd_signature, "Signature, inertia and determinant of the Seifert form"),
        ("alexander", cmd_alexander, "Alexander polynomial from a Seifert matrix"),
    ):
        p = subparsers.add_parser(name, help=text)
        p.add_argument("link", nargs="?", help="Braid or quasipositive word")
        p.add_argument("--tree", help="Plumbing tree '(weight child ...)' instead of a braid")
        p.set_defaults(handler=handler)

    p = subparsers.add_parser("obstruct", help="Valuation obstructions to being an spc-C-boundary")
    p.add_argument("link", nargs="?", help="Braid or quasipositive word")
    p.add_argument("--tree", help="Plumbing tree; runs the all-negative-weights decision")
    genus = p.add_mutually_exclusive_group()
    genus.add_argument("--genus-lb", help="Genus M as '1', '3/2' or '>=1'")
    genus.add_argument("--auto-sigma", help="Compute the signature from the braided surface", action="store_true")
    p.set_defaults(handler=cmd_obstruct)

    p = subparsers.add_parser("plumbing", help="Full record for a plumbing tree")
    p.add_argument("tree", help="Plumbing tree '(weight child ...)'")
    p.set_defaults(handler=cmd_plumbing)

    p = subparsers.add_parser("certify", help="Concordance certificate arithmetic")
    p.add_argument("rule", choices=sorted(CERTIFY_RULES))
    for option in ("M", "M1", "M2", "Msum", "MK", "MJ"):
        p.add_argument(f"--{option}", help="Genus as '1', '3/2', '<=1' or '>=1'")
    for option in ("p", "q", "t", "omega", "order", "sigma"):
        p.add_argument(f"--{option}", type=int)
    p.add_argument("--K-not-null-concordant", dest="K_not_null_concordant", action="store_true",
                   help="The companion knot is not null-concordant")
    p.set_defaults(handler=cmd_certify)

    p = subparsers.add_parser("batch", help="Run one command per line and emit NDJSON")
    p.add_argument("file", help="File with one command per line; blank lines and '#' comments are skipped")
    p.add_argument("--workers", help="Number of concurrent workers", type=int, default=1)
    p.set_defaults(handler=None)

    return parser


def main(argv=None) -> int:
    """
    Entry point for the cbord command line.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:].

    Returns:
        The exit code: 0 success, 1 unexpected error, 2 bad input, 3 budget exceeded.
    """
    sys.excepthook = handle_exception
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as e:
        print(f"cbord: error: {e}", file=sys.stderr)
        return EXIT_INPUT

    setup_logging(args.log_file, getattr(logging, args.log_level))

    try:
        if args.command == "batch":
            return cmd_batch(args)
        report = args.handler(args)
    except InputError as e:
        print(f"cbord: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as e:
        print(f"cbord: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except Exception as e:
        logger.error(f"An unexpected error occurred: {e}")
        logger.debug(traceback.format_exc())
        return EXIT_FAILURE

    print(json.dumps(report.to_dict()) if args.json else report.to_text())
    return EXIT_OK


if __name__ == "__main__":
    exit(main())
