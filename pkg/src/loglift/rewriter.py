"""Apply accepted suggestions to source text and emit unified diffs.

Rewriting is span-driven token replacement: only the level token (standard
API) or the method-name token (convenience API) changes, so formatting and
every other byte of the file survive. A staleness check refuses spans whose
recorded token no longer matches the file.
"""

from __future__ import annotations

import difflib
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import StaleSpan
from .levels import LevelScheme
from .leveler import Suggestion
from .source_index import CONVENIENCE, LEVEL_ARGUMENT


def replacement_text(suggestion: Suggestion, scheme: LevelScheme) -> str:
    """Source text that replaces the recorded token."""
    stmt = suggestion.statement
    if stmt.flavor == CONVENIENCE:
        return scheme.convenience_name(suggestion.proposed_level)
    if stmt.flavor == LEVEL_ARGUMENT:
        if stmt.quoted:
            return f'"{suggestion.proposed_level}"'
        return suggestion.proposed_level
    raise ValueError(f"cannot rewrite {stmt.flavor} statement")


@dataclass
class RewriteOutcome:
    text: str
    applied: list[Suggestion]
    stale: list[StaleSpan]


def rewrite_file(
    source: str, suggestions: list[Suggestion], scheme: LevelScheme
) -> RewriteOutcome:
    """Replace the recorded tokens of ``suggestions`` within one file.

    Suggestions whose span no longer holds the analyzed token are skipped
    and reported as stale rather than applied blindly.
    """
    applied: list[Suggestion] = []
    stale: list[StaleSpan] = []
    text = source
    for sug in sorted(suggestions, key=lambda s: s.statement.span[0], reverse=True):
        start, end = sug.statement.span
        found = text[start:end]
        if found != sug.statement.token_text:
            stale.append(
                StaleSpan(sug.statement.file_path, sug.statement.line,
                          sug.statement.token_text, found)
            )
            continue
        text = text[:start] + replacement_text(sug, scheme) + text[end:]
        applied.append(sug)
    applied.reverse()
    return RewriteOutcome(text=text, applied=applied, stale=stale)


def _diff_lines(text: str) -> list[str]:
    lines = text.splitlines(keepends=True)
    if lines and not lines[-1].endswith("\n"):
        lines[-1] += "\n"
    return lines


def emit_patch(originals: dict[str, str], patched: dict[str, str]) -> str:
    """Unified diff (3 context lines) over all changed files, path order."""
    if set(originals) != set(patched):
        raise ValueError("original and patched file sets differ")
    chunks: list[str] = []
    for path in sorted(originals):
        old, new = originals[path], patched[path]
        if old == new:
            continue
        diff = difflib.unified_diff(
            _diff_lines(old),
            _diff_lines(new),
            fromfile=f"a/{path}",
            tofile=f"b/{path}",
            n=3,
        )
        chunks.extend(diff)
    return "".join(chunks)


def rewrite_tree(
    root: Path,
    suggestions: list[Suggestion],
    scheme: LevelScheme,
) -> tuple[dict[str, str], dict[str, str], list[StaleSpan]]:
    """Compute rewrites for all files touched by ``suggestions``.

    Returns (originals, patched, stale) keyed by repository-relative path;
    nothing is written to disk.
    """
    by_file: dict[str, list[Suggestion]] = {}
    for sug in suggestions:
        by_file.setdefault(sug.statement.file_path, []).append(sug)
    originals: dict[str, str] = {}
    patched: dict[str, str] = {}
    stale: list[StaleSpan] = []
    for rel, sugs in sorted(by_file.items()):
        source = (root / rel).read_text(encoding="utf-8")
        outcome = rewrite_file(source, sugs, scheme)
        originals[rel] = source
        patched[rel] = outcome.text
        stale.extend(outcome.stale)
    return originals, patched, stale


def write_files(root: Path, patched: dict[str, str]) -> list[str]:
    """Atomically write patched file contents; returns the written paths."""
    written: list[str] = []
    for rel in sorted(patched):
        target = root / rel
        tmp = target.with_name(target.name + ".loglift-tmp")
        tmp.write_text(patched[rel], encoding="utf-8")
        os.replace(tmp, target)
        written.append(rel)
    return written
