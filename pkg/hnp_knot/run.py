"""
Command-line entry point for the knot engine.

    python -m hnp_knot.run zoo "P'n" --p 3 --n 2
    python -m hnp_knot.run sha cases.json --out outputs
    python -m hnp_knot.run h1pic --name semidirect-std --p 3 --mats "[[1,1],[0,1]],[[0,-1],[1,0]]"
    python -m hnp_knot.run verify p3-pgroups --csv outputs/p3.csv

Exit codes: 0 for a trivial decision or a passing suite, 10 when some decision
is nontrivial, 2 on any error or failing case.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from dotenv import load_dotenv
from pydantic import ValidationError
from tqdm import tqdm

from .config import build_run_config, load_config
from .errors import InputError, KnotError
from .evaluation import SUITES, run_suite
from .groups.permgroup import center, exponent, is_transitive, set_order_cap
from .groups.zoo import NAMED_CONSTRUCTIONS, construct
from .orchestrator.decision import KnotDecider
from .orchestrator.workflow import process_document
from .schemas.models import GroupLiteral, GroupSummary, InputDocument, NamedGroup, RunConfig, RunManifest
from .utils.hashing import slugify
from .utils.logging_setup import setup_logging

logger = logging.getLogger(__name__)

EXIT_TRIVIAL = 0
EXIT_NONTRIVIAL = 10
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Decide the Hasse norm principle for degree p^2 extensions")
    parser.add_argument("--config", type=str, default="config/config.yaml", help="Path to YAML config file")
    sub = parser.add_subparsers(dest="command", required=True)

    def engine_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--method", choices=["classifier", "cohomology", "both"], default=None)
        p.add_argument("--fast-p-part", dest="fast_p_part", action=argparse.BooleanOptionalAction, default=None,
                       help="Work modulo the part of |G| at the primes dividing the index")
        p.add_argument("--cross-check", dest="cross_check", action="store_true", default=None,
                       help="Recompute reduced Sha groups on the plain path and compare")
        p.add_argument("--jobs", type=int, default=None, help="Documents decided concurrently")
        p.add_argument("--out", type=str, default=None, help="Directory for reports, manifest and log")

    def group_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--p", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--mats", type=str, default=None, help='Matrices as "[[a,b],[c,d]],..."')

    zoo = sub.add_parser("zoo", help="Print a named construction as a group literal")
    zoo.add_argument("name", choices=NAMED_CONSTRUCTIONS)
    group_flags(zoo)
    zoo.add_argument("--m", type=int, default=None, help="Order for Cm")

    for command in ("sha", "h1pic", "adequacy"):
        cmd = sub.add_parser(command, help=f"Run {command} on a JSON document or a named construction")
        cmd.add_argument("input", nargs="?", default=None, help="JSON file holding one document or a list")
        cmd.add_argument("--name", choices=NAMED_CONSTRUCTIONS, default=None)
        group_flags(cmd)
        engine_flags(cmd)

    verify = sub.add_parser("verify", help="Run a verification suite")
    verify.add_argument("suite", choices=SUITES)
    verify.add_argument("--csv", type=str, default=None, help="Write the suite table to this CSV file")
    engine_flags(verify)
    return parser


def _json_location(exc: ValidationError, prefix: str) -> InputError:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in (prefix, *first["loc"]) if part != "")
    return InputError(first["msg"], location)


def load_documents(run_config: RunConfig) -> List[InputDocument]:
    """Documents from the input file, or one document for the named construction."""
    if run_config.input_path is None:
        if run_config.group_name is None:
            raise InputError("give an input file or --name", "input")
        named = NamedGroup(name=run_config.group_name, p=run_config.p, n=run_config.n, mats=run_config.mats)
        return [InputDocument(group=named, methods=run_config.methods, label=run_config.group_name)]
    path = Path(run_config.input_path)
    if not path.exists():
        raise InputError(f"input file not found: {path}", "input")
    try:
        raw: Union[Dict[str, Any], List[Any]] = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"{path.name}:{exc.lineno}:{exc.colno}") from exc
    items = raw if isinstance(raw, list) else [raw]
    documents = []
    for i, item in enumerate(items):
        try:
            documents.append(InputDocument.model_validate(item))
        except ValidationError as exc:
            raise _json_location(exc, f"[{i}]" if isinstance(raw, list) else "") from exc
    return documents


def cmd_zoo(run_config: RunConfig, name: str, m: Optional[int] = None) -> GroupSummary:
    params = {"p": run_config.p, "n": run_config.n, "mats": run_config.mats}
    if m is not None:
        params["m"] = m
    G = construct(name, {k: v for k, v in params.items() if v is not None})
    literal = GroupLiteral(degree=G.degree, generators=[list(g.images) for g in G.generators])
    return GroupSummary(
        name=name,
        literal=literal,
        order=G.order,
        transitive=is_transitive(G),
        exponent=exponent(G),
        center_order=center(G).order,
    )


async def process_all_documents(
    documents: List[InputDocument],
    decider: KnotDecider,
    command: str,
    concurrency: int,
) -> tuple:
    sem = asyncio.Semaphore(concurrency if concurrency > 0 else len(documents))
    manifest = RunManifest(total=len(documents))
    results: List[Optional[Dict[str, Any]]] = [None] * len(documents)
    progress = tqdm(total=len(documents), desc=command, disable=len(documents) < 2)

    async def handle_document(index: int, document: InputDocument) -> None:
        case = document.label or f"case-{index}"
        async with sem:
            try:
                result = await process_document(document=document, decider=decider, command=command)
                results[index] = result
                report = result["report"]
                manifest.record_success(nontrivial=not getattr(report, "is_trivial", True))
            except InputError as exc:
                logger.error(f"{case}: invalid input: {exc}")
                manifest.record_error(case, "validation", str(exc))
            except KnotError as exc:
                logger.error(f"{case}: {exc.__class__.__name__}: {exc}")
                manifest.record_error(case, "decision", f"{exc.__class__.__name__}: {exc}")
            except Exception as exc:
                logger.exception(f"{case}: unexpected failure")
                manifest.record_error(case, "internal", f"{exc.__class__.__name__}: {exc}")
            finally:
                progress.update(1)

    tasks = [asyncio.create_task(handle_document(i, doc)) for i, doc in enumerate(documents)]
    await asyncio.gather(*tasks)
    progress.close()
    manifest.finish()
    return results, manifest


def _write_outputs(out_dir: Path, results: List[Optional[Dict[str, Any]]], manifest: RunManifest) -> None:
    reports_dir = out_dir / "reports"
    reports_dir.mkdir(parents=True, exist_ok=True)
    for index, result in enumerate(results):
        if result is None:
            continue
        report = result["report"]
        stem = slugify(report.label) if report.label else f"case-{index}"
        (reports_dir / f"{stem}-{report.input_hash}.json").write_text(report.model_dump_json(indent=2), encoding="utf-8")
    with (out_dir / "run_manifest.json").open("w", encoding="utf-8") as f:
        f.write(manifest.model_dump_json(indent=2))


def run_decisions(run_config: RunConfig) -> int:
    documents = load_documents(run_config)
    decider = KnotDecider(
        methods=run_config.methods,
        fast_p_part=run_config.fast_p_part,
        sylow_reduction=run_config.sylow_reduction,
        cross_check=run_config.cross_check_fast_path,
    )
    results, manifest = asyncio.run(
        process_all_documents(documents, decider, run_config.command, run_config.concurrency)
    )
    for result in results:
        if result is not None:
            print(result["report"].model_dump_json(indent=2))
    if run_config.output_dir:
        _write_outputs(Path(run_config.output_dir), results, manifest)
    if manifest.errors:
        return EXIT_ERROR
    return EXIT_NONTRIVIAL if manifest.nontrivial else EXIT_TRIVIAL


def run_verify(run_config: RunConfig) -> int:
    frame = run_suite(run_config.suite, run_config)
    print(frame.drop(columns=["seconds"]).to_string(index=False))
    csv_path = run_config.csv_path
    if csv_path is None and run_config.output_dir:
        csv_path = str(Path(run_config.output_dir) / f"{run_config.suite}.csv")
    if csv_path:
        Path(csv_path).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(csv_path, index=False)
    return EXIT_TRIVIAL if frame["passed"].all() else EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    load_dotenv()
    try:
        config = load_config(args.config) if Path(args.config).exists() else {}
        run_config = build_run_config(config, args)
        setup_logging(log_dir=run_config.output_dir)
        set_order_cap(run_config.order_cap)
        if run_config.command == "zoo":
            print(cmd_zoo(run_config, args.name, getattr(args, "m", None)).model_dump_json(indent=2))
            return EXIT_TRIVIAL
        if run_config.command == "verify":
            return run_verify(run_config)
        return run_decisions(run_config)
    except InputError as exc:
        logger.error(f"invalid input: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except KnotError as exc:
        logger.error(f"{exc.__class__.__name__}: {exc}")
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
