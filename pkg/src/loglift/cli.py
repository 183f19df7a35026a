"""Command-line interface: analyze, review, apply, stats.

analyze   mine + index + suggest; patch on stdout, optional report file
review    interactive per-file (or per-statement) accept/reject, then apply
apply     apply every emitted suggestion in place
stats     metrics only, report JSON on stdout

Exit codes: 0 clean, 2 suggestions found, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .config import RunConfig, load_config
from .doi_engine import process_events
from .errors import LogliftError
from .levels import scheme_for
from .leveler import LevelingResult, Suggestion, assess
from .repo_miner import MineResult, mine, repository_root
from .reporter import build_report
from .rewriter import emit_patch, rewrite_file, rewrite_tree, write_files
from .source_index import index_tree

EXIT_CLEAN = 0
EXIT_ERROR = 1
EXIT_SUGGESTIONS = 2


@dataclass
class ProjectRun:
    project: str
    repo_root: Path
    config: RunConfig
    mine_result: MineResult
    leveling: LevelingResult
    report: dict
    patch: str
    patched: dict[str, str]

    @property
    def suggestions(self) -> list[Suggestion]:
        return self.leveling.suggestions


def run_project(path: str | Path, cli_overrides: dict, use_cache: bool = True) -> ProjectRun:
    """Full pipeline for one project directory."""
    project = Path(path).resolve()
    if not project.is_dir():
        raise LogliftError(f"{path}: not a directory")
    repo_root = repository_root(project)
    cfg = load_config(repo_root, cli_overrides)
    scheme = scheme_for(cfg.framework)

    mine_result = mine(
        repo_root,
        max_commits=cfg.max_commits,
        similarity_threshold=cfg.rename_similarity,
        cache_dir=cfg.cache_dir,
        use_cache=use_cache,
    )
    index = index_tree(project, scheme, rel_root=repo_root)
    model = process_events(mine_result.events)
    leveling = assess(
        index, model, scheme, cfg.heuristic_config(), cfg.doi_config()
    )
    originals, patched, stale = rewrite_tree(repo_root, leveling.suggestions, scheme)
    patch = emit_patch(originals, patched)
    report = build_report(
        index, leveling, mine_result, scheme, cfg.doi_config(), cfg.bug_pattern
    )
    report["project"] = project.as_posix()
    report["diagnostics"]["stale_spans"] = len(stale)
    return ProjectRun(
        project=str(project),
        repo_root=repo_root,
        config=cfg,
        mine_result=mine_result,
        leveling=leveling,
        report=report,
        patch=patch,
        patched=patched,
    )


def _summary(run: ProjectRun) -> str:
    t = run.report["totals"]
    return (
        f"{run.project}: {t['total_statements']} statements, "
        f"{t['analyzable']} analyzable, {t['nonfeature']} filtered, "
        f"{t['suggestions_emitted']} suggestion(s)"
    )


def _write_report(runs: list[ProjectRun], path: str) -> None:
    payload = runs[0].report if len(runs) == 1 else [r.report for r in runs]
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _collect_overrides(args: argparse.Namespace) -> dict:
    overrides = {
        "framework": args.framework,
        "ws": args.ws,
        "ws_categories": _csv(args.ws_categories),
        "ctch": args.ctch,
        "ifs": args.ifs,
        "keyl": args.keyl,
        "cnds": args.cnds,
        "keyr": args.keyr,
        "inh": args.inh,
        "tdist": args.tdist,
        "keyl_keywords": _csv(args.keyl_keywords),
        "keyr_keywords": _csv(args.keyr_keywords),
        "max_commits": args.max_commits,
        "bug_pattern": args.bug_pattern,
        "partition_all_methods": args.partition_all_methods,
        "edit_scaling": args.edit_scaling,
        "decay_rate": args.decay_rate,
        "cache_dir": args.cache_dir,
    }
    return overrides


def _csv(value: str | None) -> tuple[str, ...] | None:
    if value is None:
        return None
    return tuple(part.strip() for part in value.split(",") if part.strip())


def _add_common_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--framework", choices=["jul", "slf4j"], default=None)
    sub.add_argument("--ws", action=argparse.BooleanOptionalAction, default=None,
                     help="treat configured levels as categories (WS)")
    sub.add_argument("--ws-categories", metavar="LEVELS", default=None,
                     help="comma-separated category levels")
    for name in ("ctch", "ifs", "keyl", "cnds", "keyr", "inh"):
        sub.add_argument(
            f"--no-{name}", dest=name, action="store_const", const=False,
            default=None, help=f"disable the {name.upper()} heuristic",
        )
    sub.add_argument("--tdist", type=int, default=None, metavar="N",
                     help="maximum transformation distance")
    sub.add_argument("--keyl-keywords", metavar="WORDS", default=None)
    sub.add_argument("--keyr-keywords", metavar="WORDS", default=None)
    sub.add_argument("--max-commits", type=int, default=None, metavar="N")
    sub.add_argument("--bug-pattern", default=None, metavar="REGEX")
    sub.add_argument("--partition-all-methods", action="store_const", const=True,
                     default=None, help="partition over all methods, not only "
                     "those enclosing logging statements")
    sub.add_argument("--edit-scaling", type=float, default=None, metavar="S")
    sub.add_argument("--decay-rate", type=float, default=None, metavar="D")
    sub.add_argument("--cache-dir", default=None, metavar="DIR")
    sub.add_argument("--no-cache", dest="use_cache", action="store_false",
                     default=True, help="ignore and do not write the change cache")
    sub.add_argument("--report", default=None, metavar="FILE",
                     help="write the JSON report to FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loglift",
        description="Rejuvenate Java feature log levels from git history.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="report mismatches and print a patch")
    analyze.add_argument("paths", nargs="+", metavar="PROJECT")
    _add_common_options(analyze)
    analyze.add_argument("--out", default=None, metavar="FILE",
                         help="write the unified diff to FILE instead of stdout")
    analyze.add_argument("--apply", action="store_true",
                         help="write the transformed files in place")

    review = sub.add_parser("review", help="interactively accept suggestions")
    review.add_argument("paths", nargs=1, metavar="PROJECT")
    _add_common_options(review)
    review.add_argument("--per-statement", action="store_true",
                        help="prompt per statement instead of per file")

    apply_cmd = sub.add_parser("apply", help="apply every suggestion in place")
    apply_cmd.add_argument("paths", nargs=1, metavar="PROJECT")
    _add_common_options(apply_cmd)
    apply_cmd.add_argument("--out", default=None, metavar="FILE")

    stats = sub.add_parser("stats", help="print the run report as JSON")
    stats.add_argument("paths", nargs="+", metavar="PROJECT")
    _add_common_options(stats)

    return parser


def _run_projects(args: argparse.Namespace) -> tuple[list[ProjectRun], list[str]]:
    overrides = _collect_overrides(args)
    runs: list[ProjectRun] = []
    failures: list[str] = []
    for path in args.paths:
        try:
            runs.append(run_project(path, overrides, use_cache=args.use_cache))
        except LogliftError as exc:
            failures.append(f"{path}: {exc}")
            print(f"error: {path}: {exc}", file=sys.stderr)
    return runs, failures


def cmd_analyze(args: argparse.Namespace) -> int:
    runs, failures = _run_projects(args)
    for run in runs:
        print(_summary(run), file=sys.stderr)
    if args.report and runs:
        _write_report(runs, args.report)
    patch = "".join(run.patch for run in runs)
    if args.apply:
        for run in runs:
            written = write_files(run.repo_root, run.patched)
            for rel in written:
                print(f"rewrote {rel}", file=sys.stderr)
    elif args.out:
        Path(args.out).write_text(patch, encoding="utf-8")
    else:
        sys.stdout.write(patch)
    if failures:
        return EXIT_ERROR
    if any(run.suggestions for run in runs):
        return EXIT_SUGGESTIONS
    return EXIT_CLEAN


def cmd_stats(args: argparse.Namespace) -> int:
    runs, failures = _run_projects(args)
    for run in runs:
        print(json.dumps(run.report, indent=2, sort_keys=True))
    if args.report and runs:
        _write_report(runs, args.report)
    if failures:
        return EXIT_ERROR
    if any(run.suggestions for run in runs):
        return EXIT_SUGGESTIONS
    return EXIT_CLEAN


def cmd_apply(args: argparse.Namespace) -> int:
    runs, failures = _run_projects(args)
    if failures or not runs:
        return EXIT_ERROR
    run = runs[0]
    print(_summary(run), file=sys.stderr)
    if args.report:
        _write_report(runs, args.report)
    if args.out:
        Path(args.out).write_text(run.patch, encoding="utf-8")
    written = write_files(run.repo_root, run.patched)
    for rel in written:
        print(f"rewrote {rel}", file=sys.stderr)
    return EXIT_CLEAN


def _prompt(question: str) -> str:
    print(question, end=" ", flush=True)
    try:
        answer = input()
    except EOFError:
        return "q"
    return answer.strip().lower()


def cmd_review(args: argparse.Namespace) -> int:
    runs, failures = _run_projects(args)
    if failures or not runs:
        return EXIT_ERROR
    run = runs[0]
    if args.report:
        _write_report(runs, args.report)
    if not run.suggestions:
        print(_summary(run), file=sys.stderr)
        return EXIT_CLEAN
    if not sys.stdin.isatty():
        # non-interactive environments degrade to printing the patch
        sys.stdout.write(run.patch)
        return EXIT_SUGGESTIONS

    scheme = scheme_for(run.config.framework)
    by_file: dict[str, list[Suggestion]] = {}
    for sug in run.suggestions:
        by_file.setdefault(sug.statement.file_path, []).append(sug)

    accepted: dict[str, list[Suggestion]] = {}
    for rel in sorted(by_file):
        sugs = by_file[rel]
        original = (run.repo_root / rel).read_text(encoding="utf-8")
        preview = rewrite_file(original, sugs, scheme)
        print(emit_patch({rel: original}, {rel: preview.text}))
        answer = _prompt(f"Apply {len(sugs)} change(s) to {rel}? [y/n/s/q]")
        if answer == "q":
            print("aborted; no files modified", file=sys.stderr)
            return EXIT_CLEAN
        if answer == "s" or args.per_statement and answer == "y":
            chosen = []
            for sug in sugs:
                line = sug.statement.line
                what = f"{sug.current_level} -> {sug.proposed_level} at {rel}:{line}"
                sub_answer = _prompt(f"  apply {what}? [y/n/q]")
                if sub_answer == "q":
                    print("aborted; no files modified", file=sys.stderr)
                    return EXIT_CLEAN
                if sub_answer == "y":
                    chosen.append(sug)
            if chosen:
                accepted[rel] = chosen
        elif answer == "y":
            accepted[rel] = sugs

    if not accepted:
        print("nothing accepted; no files modified", file=sys.stderr)
        return EXIT_CLEAN
    to_write: dict[str, str] = {}
    for rel, sugs in accepted.items():
        original = (run.repo_root / rel).read_text(encoding="utf-8")
        to_write[rel] = rewrite_file(original, sugs, scheme).text
    written = write_files(run.repo_root, to_write)
    for rel in written:
        print(f"rewrote {rel}", file=sys.stderr)
    return EXIT_CLEAN


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "review":
            return cmd_review(args)
        if args.command == "apply":
            return cmd_apply(args)
        if args.command == "stats":
            return cmd_stats(args)
    except LogliftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    parser.error(f"unknown command {args.command!r}")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
