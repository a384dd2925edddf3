"""Command-line front end.

Every subcommand writes JSON to stdout (or to --out) and reports through its
exit code: 0 pass, 1 fail, 2 usage or precondition error, 3 search stopped by
its budget. Errors go to stderr as {code, message, context}.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from zpgabor.config import get_settings
from zpgabor.engine.engine import Engine
from zpgabor.errors import DomainError, ZpGaborError
from zpgabor.fourier.fourier import Window, dft, idft, plancherel_check
from zpgabor.gabor.system import GaborSystem, duality_check, is_orthonormal_basis
from zpgabor.gabor.theorems import (
    indicator_equivalence_check,
    non_indicator_window_check,
    positive_window_check,
    subspace_lattice_check,
    support_size_window_check,
)
from zpgabor.gabor.windows import (
    make_flat_window,
    make_gauss_window,
    make_indicator_window,
    make_parabola,
    make_parabola_dual_window,
    make_product_window,
    make_qr_row_window,
    make_sign_window,
)
from zpgabor.group.group import GroupParams, Point, PointSet, is_graph
from zpgabor.models.documents import Backend, ErrorDocument, PointSetDocument, WindowDocument
from zpgabor.models.search import SearchJob, SearchKind, SearchReport
from zpgabor.pairs.pairs import (
    WeightFn,
    is_packing,
    is_spectral_pair,
    is_tiling_pair,
    square_sum_identity,
    weighted_spectrum_check,
)
from zpgabor.search.search import fuglede_verdict
from zpgabor.storage.sqlite_storage import SQLiteReportStorage

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2
EXIT_TRUNCATED = 3

CONSTRUCTORS = ["indicator", "gauss", "flat", "sign", "product", "qr-row", "parabola", "parabola-dual"]

VERIFY_KINDS = [
    "spectral", "tiling", "packing", "weighted-spectrum", "square-sum", "gabor-basis", "duality",
    "plancherel", "graph", "indicator", "support-size", "positive", "subspace", "non-indicator",
]

SEARCH_KINDS = {
    "tiles": SearchKind.ALL_TILES,
    "spectral": SearchKind.ALL_SPECTRAL,
    "fuglede": SearchKind.FUGLEDE_COMPARE,
    "find-spectrum": SearchKind.FIND_SPECTRUM,
    "find-tiling": SearchKind.FIND_TILING,
    "exotic-window": SearchKind.EXOTIC_WINDOW,
    "weighted-sweep": SearchKind.WEIGHTED_SWEEP,
    "nonseparable": SearchKind.NONSEPARABLE,
}

M = TypeVar("M", bound=BaseModel)


class UsageError(ZpGaborError):
    code = "usage"


class InputError(ZpGaborError):
    code = "input"


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, {"usage": self.format_usage().strip()})


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def emit(obj: Any, out: Optional[str] = None) -> None:
    text = dumps(obj)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def load_document(path: str, model: Type[M]) -> M:
    try:
        return model.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}", {"path": path})
    except ValidationError as e:
        raise InputError(f"{path} is not a valid {model.__name__}", {"path": path, "errors": json.loads(e.json(include_url=False))})


def load_set(path: str) -> PointSet:
    return PointSet.from_document(load_document(path, PointSetDocument))


def load_window(path: str, backend: Backend) -> Window:
    window = Window.from_document(load_document(path, WindowDocument))
    return window.to_backend(backend) if backend == Backend.FLOAT else window


def parse_point(params: GroupParams, text: str) -> Point:
    try:
        coords = [int(c) for c in text.split(",")]
    except ValueError:
        raise UsageError(f"point must be comma-separated integers, got {text!r}", {"point": text})
    return Point(params, tuple(coords))


def parse_budget(text: str) -> int:
    try:
        value = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid budget {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def parse_shard(text: str) -> List[int]:
    try:
        index, count = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must look like i/n, got {text!r}")
    return [index, count]


def require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'kind', getattr(args, 'name', ''))} needs {', '.join(missing)}",
                         {"missing": missing})


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="zpgabor", description="Gabor bases, spectral sets and tilings over Z_p^d")
    parser.add_argument("--backend", choices=[b.value for b in Backend], default=Backend.EXACT.value)
    parser.add_argument("--log-level", default=None, help="overrides the configured log level")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    construct = sub.add_parser("construct", help="build a window or set")
    construct.add_argument("name", help=f"one of {', '.join(CONSTRUCTORS)}")
    construct.add_argument("--p", type=int)
    construct.add_argument("--d", type=int, default=2, help="dimension of the product window")
    construct.add_argument("--set", help="PointSet JSON for the indicator window")
    construct.add_argument("--factors", nargs="+", help="window JSON files multiplied by the product constructor")
    construct.add_argument("--A-out", dest="a_out", help="parabola-dual: write the translation set here")
    construct.add_argument("--B-out", dest="b_out", help="parabola-dual: write the modulation set here")
    construct.add_argument("--out")

    verify = sub.add_parser("verify", help="decide a property")
    verify.add_argument("kind", choices=VERIFY_KINDS)
    verify.add_argument("--E")
    verify.add_argument("--A")
    verify.add_argument("--B")
    verify.add_argument("--window")
    verify.add_argument("--weight", help="window JSON with nonnegative rational values")
    verify.add_argument("--k", type=int, help="split Z_p^k x Z_p^(d-k) for the subspace check")
    verify.add_argument("--x", help="single point for square-sum, e.g. 1,2")
    verify.add_argument("--strict", action="store_true", help="gabor-basis: require norm 1")
    verify.add_argument("--out")

    search = sub.add_parser("search", help="run a search job")
    search.add_argument("kind", choices=sorted(SEARCH_KINDS))
    search.add_argument("--job", help="SearchJob JSON; other job flags are ignored")
    search.add_argument("--p", type=int)
    search.add_argument("--d", type=int, default=2)
    search.add_argument("--E", help="target set for find-spectrum / find-tiling")
    search.add_argument("--window", help="window for the nonseparable hunt")
    search.add_argument("--alphabet", help="comma-separated rationals, e.g. 0,1,-1,1/2")
    search.add_argument("--budget", type=parse_budget, help="node budget, e.g. 1e7")
    search.add_argument("--time-limit", type=float)
    search.add_argument("--shard", type=parse_shard, default=[0, 1], help="i/n")
    search.add_argument("--symmetry", action="store_true", help="also count translation-orbit representatives")
    search.add_argument("--no-prefilter", action="store_true")
    search.add_argument("--jobs", type=int, default=1, help="worker processes; 0 = physical cores")
    search.add_argument("--checkpoint", help="checkpoint file for resumable runs")
    search.add_argument("--db", help="archive the report in this SQLite file")
    search.add_argument("--out", help="find-*: write the set found here")

    fourier = sub.add_parser("fourier", help="transform a window")
    fourier.add_argument("--window", required=True)
    fourier.add_argument("--inverse", action="store_true")
    fourier.add_argument("--out")

    report = sub.add_parser("report", help="archived search reports")
    report.add_argument("action", choices=["list", "show", "delete"])
    report.add_argument("id", nargs="?")
    report.add_argument("--kind", choices=sorted(SEARCH_KINDS))
    report.add_argument("--limit", type=int)
    report.add_argument("--db")
    return parser


def cmd_construct(args: argparse.Namespace) -> int:
    backend = Backend(args.backend)
    name = args.name
    if name not in CONSTRUCTORS:
        raise UsageError(f"unknown constructor {name!r}", {"known": CONSTRUCTORS})
    if name == "indicator":
        require(args, "set")
        window = make_indicator_window(load_set(args.set))
    elif name == "product" and args.factors:
        window = make_product_window(*(load_window(f, Backend.EXACT) for f in args.factors))
    else:
        require(args, "p")
        p = args.p
        if name == "parabola":
            emit(make_parabola(p).to_document().model_dump(mode="json"), args.out)
            return EXIT_PASS
        if name == "gauss":
            window = make_gauss_window(p)
        elif name == "flat":
            window = make_flat_window(p)
        elif name == "sign":
            window = make_sign_window(p)
        elif name == "product":
            if args.d < 2:
                raise DomainError("product window needs d >= 2", {"d": args.d})
            window = make_product_window(make_gauss_window(p), *[make_sign_window(p)] * (args.d - 1))
        elif name == "qr-row":
            window = make_qr_row_window(p)
        else:
            window, A, B = make_parabola_dual_window(p)
            if args.a_out:
                emit(A.to_document().model_dump(mode="json"), args.a_out)
            if args.b_out:
                emit(B.to_document().model_dump(mode="json"), args.b_out)
    emit(window.to_backend(backend).to_document().model_dump(mode="json"), args.out)
    return EXIT_PASS


def _verify_window(args: argparse.Namespace) -> Window:
    require(args, "window")
    return load_window(args.window, Backend(args.backend))


def _verify_weight(args: argparse.Namespace) -> WeightFn:
    require(args, "weight")
    return WeightFn(load_window(args.weight, Backend.EXACT))


def _gabor_inputs(args: argparse.Namespace):
    require(args, "window", "A", "B")
    return _verify_window(args), load_set(args.A), load_set(args.B)


def cmd_verify(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind in ("spectral", "weighted-spectrum", "square-sum"):
        require(args, "B")
    if kind in ("tiling", "packing"):
        require(args, "E", "A")
    if kind == "spectral":
        require(args, "E")
        verdict = is_spectral_pair(load_set(args.E), load_set(args.B))
    elif kind == "tiling":
        verdict = is_tiling_pair(load_set(args.E), load_set(args.A))
    elif kind == "packing":
        verdict = is_packing(load_set(args.E), load_set(args.A))
    elif kind == "graph":
        require(args, "E")
        verdict = is_graph(load_set(args.E))
    elif kind == "indicator":
        require(args, "E", "A", "B")
        verdict = indicator_equivalence_check(load_set(args.E), load_set(args.A), load_set(args.B))
    elif kind == "weighted-spectrum":
        verdict = weighted_spectrum_check(_verify_weight(args), load_set(args.B))
    elif kind == "square-sum":
        w = _verify_weight(args)
        x = parse_point(w.params, args.x) if args.x else None
        verdict = square_sum_identity(w.normalized(), load_set(args.B), x)
    elif kind == "plancherel":
        verdict = plancherel_check(_verify_window(args))
    elif kind == "subspace":
        require(args, "k")
        verdict = subspace_lattice_check(_verify_window(args), args.k)
    elif kind == "gabor-basis":
        verdict = is_orthonormal_basis(GaborSystem(*_gabor_inputs(args)), scale_free=not args.strict)
    elif kind == "duality":
        verdict = duality_check(GaborSystem(*_gabor_inputs(args)))
    elif kind == "support-size":
        verdict = support_size_window_check(*_gabor_inputs(args))
    elif kind == "positive":
        verdict = positive_window_check(*_gabor_inputs(args))
    else:
        verdict = non_indicator_window_check(*_gabor_inputs(args))
    emit(json.loads(verdict.to_json()), args.out)
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def _job_from_args(args: argparse.Namespace) -> SearchJob:
    if args.job:
        return load_document(args.job, SearchJob)
    kind = SEARCH_KINDS[args.kind]
    options: Dict[str, Any] = {
        "kind": kind,
        "shard_index": args.shard[0],
        "shard_count": args.shard[1],
        "symmetry_reduction": args.symmetry,
        "prefilter": not args.no_prefilter,
        "time_limit": args.time_limit,
    }
    if args.budget is not None:
        options["node_budget"] = args.budget
    if args.E:
        target = load_document(args.E, PointSetDocument)
        options.update(p=target.p, d=target.d, target=target)
    if args.window:
        window = load_document(args.window, WindowDocument)
        options.update(p=window.p, d=window.d, window=window)
    if args.alphabet:
        options["alphabet"] = [a.strip() for a in args.alphabet.split(",") if a.strip()]
    if "p" not in options:
        require(args, "p")
        options.update(p=args.p, d=args.d)
    try:
        return SearchJob(**options)
    except ValidationError as e:
        raise UsageError("invalid search job", {"errors": json.loads(e.json(include_url=False))})


def _found_set(report: SearchReport) -> Optional[PointSetDocument]:
    if not report.certificates:
        return None
    cert = report.certificates[0]
    points = cert.get("spectrum", cert.get("complement"))
    return PointSetDocument(p=report.job.p, d=report.job.d, points=points)


def cmd_search(args: argparse.Namespace) -> int:
    job = _job_from_args(args)
    storage = SQLiteReportStorage(args.db) if args.db else None
    engine = Engine(jobs=args.jobs, checkpoint_path=args.checkpoint, storage=storage)
    report = engine.run(job)
    print(report.to_json())
    if not report.exhausted:
        return EXIT_TRUNCATED
    if job.kind == SearchKind.FUGLEDE_COMPARE:
        return EXIT_PASS if fuglede_verdict(report).passed else EXIT_FAIL
    if job.kind in (SearchKind.FIND_SPECTRUM, SearchKind.FIND_TILING):
        found = _found_set(report)
        if found is None:
            return EXIT_FAIL
        if args.out:
            emit(found.model_dump(mode="json"), args.out)
    return EXIT_PASS


def cmd_fourier(args: argparse.Namespace) -> int:
    window = load_window(args.window, Backend(args.backend))
    transformed = idft(window) if args.inverse else dft(window)
    emit(transformed.to_document().model_dump(mode="json"), args.out)
    return EXIT_PASS


def cmd_report(args: argparse.Namespace) -> int:
    storage = SQLiteReportStorage(args.db or get_settings().report_db)
    try:
        if args.action == "list":
            kind = SEARCH_KINDS[args.kind] if args.kind else None
            emit(storage.list_reports(kind, args.limit))
        elif args.action == "show":
            require(args, "id")
            print(storage.get_report(args.id).to_json())
        else:
            require(args, "id")
            storage.delete_report(args.id)
            emit({"deleted": args.id})
    finally:
        storage.close()
    return EXIT_PASS


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "search": cmd_search,
    "fourier": cmd_fourier,
    "report": cmd_report,
}


def report_error(error: ZpGaborError) -> int:
    doc = ErrorDocument(code=error.code, message=error.message, context=error.context)
    print(dumps(doc.model_dump(mode="json")), file=sys.stderr)
    return EXIT_ERROR


def dispatch(args: argparse.Namespace) -> int:
    try:
        return COMMANDS[args.command](args)
    except ZpGaborError as e:
        logging.error(f"{args.command} failed: [{e.code}] {e.message}")
        return report_error(e)
    except ValidationError as e:
        return report_error(InputError("invalid input document", {"errors": json.loads(e.json(include_url=False))}))


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
