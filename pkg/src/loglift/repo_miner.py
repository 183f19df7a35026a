"""Mine a git repository into an ordered stream of method-level edit events.

History is traversed along the first-parent chain from HEAD, skipping merge
commits. Each textual change inside a method body becomes one EDIT event for
that method. Renamed methods (and renamed/moved classes and files) are
tracked so that historical edits accumulate under the method's identity in
the current tree; methods that no longer exist are dropped.

Mining is memoized per repository state: results are cached under the
repository's git directory and reused while HEAD is unchanged.
"""

from __future__ import annotations

import difflib
import hashlib
import json
import logging
import os
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import git
from filelock import FileLock

from .errors import EmptyRepository, NotARepository
from .javaparse import JavaFileIndex, JavaParseError, parse_java

log = logging.getLogger(__name__)

CACHE_FORMAT_VERSION = 1
DEFAULT_RENAME_SIMILARITY = 0.75

EDIT = "EDIT"


@dataclass(frozen=True, order=True)
class MethodIdentity:
    """Stable key for a method: repository-relative path plus signature."""

    file_path: str
    signature: str

    def __str__(self) -> str:
        return f"{self.file_path}:{self.signature}"


@dataclass(frozen=True)
class CommitRecord:
    id: str
    timestamp: int
    parent_count: int
    message: str


@dataclass(frozen=True)
class ChangeEvent:
    commit: str
    seq: int
    method: MethodIdentity
    kind: str = EDIT


@dataclass
class MethodChange:
    """One affected method in one commit (pre rename resolution)."""

    old: MethodIdentity | None
    new: MethodIdentity | None
    changed: bool = True

    @property
    def identity(self) -> MethodIdentity:
        ident = self.new if self.new is not None else self.old
        assert ident is not None
        return ident


class RenameMap:
    """Associates historical method identities with their current successor.

    The map is kept fully path-compressed on insert: no value ever appears
    as a key, so resolution is a single lookup, chains trivially terminate,
    and resolve is idempotent.
    """

    def __init__(self, entries: dict[MethodIdentity, MethodIdentity] | None = None):
        self.entries: dict[MethodIdentity, MethodIdentity] = dict(entries or {})

    def insert(self, old: MethodIdentity, new: MethodIdentity) -> None:
        if old == new:
            return
        # identities that previously moved to `old` have now moved to `new`
        for k, v in list(self.entries.items()):
            if v == old:
                self.entries[k] = new
        # `new` exists again as a live identity; a stale entry keyed by it
        # (name reuse across history) would create a chain
        self.entries.pop(new, None)
        self.entries[old] = new

    def resolve(self, ident: MethodIdentity) -> MethodIdentity:
        seen = set()
        cur = ident
        while cur in self.entries and cur not in seen:
            seen.add(cur)
            cur = self.entries[cur]
        return cur

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RenameMap) and self.entries == other.entries


@dataclass
class MineDiagnostics:
    commits_analyzed: int = 0
    merges_skipped: int = 0
    files_skipped: int = 0
    events_dropped: int = 0

    def as_dict(self) -> dict:
        return {
            "commits_analyzed": self.commits_analyzed,
            "merges_skipped": self.merges_skipped,
            "files_skipped": self.files_skipped,
            "events_dropped": self.events_dropped,
        }


@dataclass
class MineResult:
    commits: list[CommitRecord]
    events: list[ChangeEvent]
    renames: RenameMap
    diagnostics: MineDiagnostics
    cache_hit: bool = False


def _open_repo(repo_path: str | Path) -> git.Repo:
    try:
        return git.Repo(str(repo_path), search_parent_directories=True)
    except (git.NoSuchPathError, git.InvalidGitRepositoryError) as exc:
        raise NotARepository(f"{repo_path} is not inside a git repository") from exc


def repository_root(repo_path: str | Path) -> Path:
    """Working-tree root of the repository containing ``repo_path``."""
    repo = _open_repo(repo_path)
    if repo.working_tree_dir is None:
        raise NotARepository(f"{repo_path} has no working tree")
    return Path(repo.working_tree_dir)


def enumerate_commits(
    repo_path: str | Path, max_commits: int | None = None
) -> list[CommitRecord]:
    """Most recent ``max_commits`` non-merge first-parent commits, oldest first.

    Merge commits are skipped entirely and do not count against the limit.
    """
    records, _ = _enumerate(_open_repo(repo_path), max_commits, MineDiagnostics())
    return records


def _enumerate(
    repo: git.Repo, max_commits: int | None, diag: MineDiagnostics
) -> tuple[list[CommitRecord], dict[str, git.Commit]]:
    try:
        walk = list(repo.iter_commits("HEAD", first_parent=True))
    except (git.GitCommandError, ValueError) as exc:
        raise EmptyRepository(f"{repo.working_dir}: no commits reachable from HEAD") from exc
    if not walk:
        raise EmptyRepository(f"{repo.working_dir}: no commits reachable from HEAD")
    records: list[CommitRecord] = []
    by_id: dict[str, git.Commit] = {}
    for commit in walk:  # newest first
        if len(commit.parents) >= 2:
            diag.merges_skipped += 1
            continue
        records.append(
            CommitRecord(
                id=commit.hexsha,
                timestamp=int(commit.committed_date),
                parent_count=len(commit.parents),
                message=str(commit.message),
            )
        )
        by_id[commit.hexsha] = commit
        if max_commits is not None and len(records) >= max_commits:
            break
    records.reverse()
    return records, by_id


@dataclass
class _FileDelta:
    change_type: str  # A | D | M | R
    old_path: str | None
    new_path: str | None
    old_index: JavaFileIndex | None
    new_index: JavaFileIndex | None
    old_text: str
    new_text: str


def _blob_text(blob) -> str:
    if blob is None:
        return ""
    return blob.data_stream.read().decode("utf-8", errors="replace")


def _file_deltas(commit: git.Commit, diag: MineDiagnostics) -> list[_FileDelta]:
    if commit.parents:
        diffs = commit.parents[0].diff(commit, M=True)
    else:
        diffs = commit.diff(git.NULL_TREE)
    deltas: list[_FileDelta] = []
    for d in diffs:
        old_path = d.a_path if d.a_path and d.a_path.endswith(".java") else None
        new_path = d.b_path if d.b_path and d.b_path.endswith(".java") else None
        if d.new_file:
            old_path = None
        if d.deleted_file:
            new_path = None
        if old_path is None and new_path is None:
            continue
        change_type = d.change_type[0] if d.change_type else "M"
        if change_type == "C":
            # a copy's source file still holds its methods: the new file
            # is a plain addition, never a rename source
            change_type, old_path = "A", None
        old_text = _blob_text(d.a_blob) if old_path else ""
        new_text = _blob_text(d.b_blob) if new_path else ""
        try:
            old_index = parse_java(old_text) if old_path else None
            new_index = parse_java(new_text) if new_path else None
        except JavaParseError:
            diag.files_skipped += 1
            continue
        deltas.append(
            _FileDelta(
                change_type=change_type,
                old_path=old_path,
                new_path=new_path,
                old_index=old_index,
                new_index=new_index,
                old_text=old_text,
                new_text=new_text,
            )
        )
    deltas.sort(key=lambda fd: fd.new_path or fd.old_path or "")
    return deltas


def _changed_line_ranges(
    old_text: str, new_text: str
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """1-based inclusive line ranges touched on each side of the diff."""
    matcher = difflib.SequenceMatcher(
        None, old_text.splitlines(), new_text.splitlines(), autojunk=False
    )
    old_ranges: list[tuple[int, int]] = []
    new_ranges: list[tuple[int, int]] = []
    for tag, i1, i2, j1, j2 in matcher.get_opcodes():
        if tag == "equal":
            continue
        if i2 > i1:
            old_ranges.append((i1 + 1, i2))
        if j2 > j1:
            new_ranges.append((j1 + 1, j2))
    return old_ranges, new_ranges


def _overlapping_methods(index: JavaFileIndex, ranges: list[tuple[int, int]]):
    hit = []
    for m in index.methods:
        for lo, hi in ranges:
            if lo <= m.end_line and m.start_line <= hi:
                hit.append(m)
                break
    return hit


def _delta_method_changes(delta: _FileDelta) -> list[MethodChange]:
    old_ranges, new_ranges = _changed_line_ranges(delta.old_text, delta.new_text)
    old_sigs = (
        {m.signature for m in delta.old_index.methods} if delta.old_index else set()
    )
    new_sigs = (
        {m.signature for m in delta.new_index.methods} if delta.new_index else set()
    )
    changes: list[MethodChange] = []
    seen: set[tuple] = set()

    def emit(old_sig: str | None, new_sig: str | None) -> None:
        key = (old_sig, new_sig)
        if key in seen:
            return
        seen.add(key)
        old = (
            MethodIdentity(delta.old_path, old_sig)
            if old_sig is not None and delta.old_path
            else None
        )
        new = (
            MethodIdentity(delta.new_path, new_sig)
            if new_sig is not None and delta.new_path
            else None
        )
        if old is None and new is None:
            return
        changes.append(MethodChange(old=old, new=new))

    if delta.new_index is not None:
        for m in _overlapping_methods(delta.new_index, new_ranges):
            emit(m.signature if m.signature in old_sigs else None, m.signature)
    if delta.old_index is not None:
        for m in _overlapping_methods(delta.old_index, old_ranges):
            if m.signature in new_sigs:
                emit(m.signature, m.signature)
            else:
                emit(m.signature, None)
    changes.sort(key=lambda c: (c.identity.file_path, c.identity.signature))
    return changes


def extract_method_changes(
    commit: CommitRecord, repo_path: str | Path
) -> list[MethodChange]:
    """Methods affected by one non-merge commit, deduplicated."""
    repo = _open_repo(repo_path)
    diag = MineDiagnostics()
    changes: list[MethodChange] = []
    for delta in _file_deltas(repo.commit(commit.id), diag):
        changes.extend(_delta_method_changes(delta))
    changes.sort(key=lambda c: (c.identity.file_path, c.identity.signature))
    return changes


def _body_counter(index: JavaFileIndex, signature: str) -> Counter:
    for m in index.methods:
        if m.signature == signature:
            return Counter(m.body_tokens)
    return Counter()


def dice_similarity(a: Counter, b: Counter) -> float:
    """Dice coefficient over token multisets; empty bodies match exactly."""
    total = sum(a.values()) + sum(b.values())
    if total == 0:
        return 1.0
    if not a or not b:
        return 0.0
    inter = sum((a & b).values())
    return 2.0 * inter / total


def _delta_rename_pairs(
    delta: _FileDelta,
) -> tuple[list[tuple[MethodIdentity, MethodIdentity]], list, list]:
    """File-marker rename pairs plus leftover deleted/added candidates."""
    old_sigs = (
        {m.signature for m in delta.old_index.methods} if delta.old_index else set()
    )
    new_sigs = (
        {m.signature for m in delta.new_index.methods} if delta.new_index else set()
    )
    deleted = sorted(old_sigs - new_sigs)
    added = sorted(new_sigs - old_sigs)

    pairs: list[tuple[MethodIdentity, MethodIdentity]] = []
    if delta.change_type == "R" and delta.old_path and delta.new_path:
        # a moved/renamed file keeps its methods: identical signatures map
        # across paths, and signatures differing only in declaring type pair
        # up by method name and parameter list (class rename with the file)
        surviving = sorted(old_sigs & new_sigs)
        for sig in surviving:
            pairs.append(
                (
                    MethodIdentity(delta.old_path, sig),
                    MethodIdentity(delta.new_path, sig),
                )
            )

        def name_params(sig: str) -> str:
            return sig.split("#", 1)[1]

        del_by_np: dict[str, list[str]] = {}
        add_by_np: dict[str, list[str]] = {}
        for sig in deleted:
            del_by_np.setdefault(name_params(sig), []).append(sig)
        for sig in added:
            add_by_np.setdefault(name_params(sig), []).append(sig)
        matched_del: set[str] = set()
        matched_add: set[str] = set()
        for np_key, dels in del_by_np.items():
            adds = add_by_np.get(np_key, [])
            if len(dels) == 1 and len(adds) == 1:
                pairs.append(
                    (
                        MethodIdentity(delta.old_path, dels[0]),
                        MethodIdentity(delta.new_path, adds[0]),
                    )
                )
                matched_del.add(dels[0])
                matched_add.add(adds[0])
        deleted = [s for s in deleted if s not in matched_del]
        added = [s for s in added if s not in matched_add]

    del_pool = [
        (MethodIdentity(delta.old_path, sig), _body_counter(delta.old_index, sig))
        for sig in deleted
        if delta.old_path and delta.old_index
    ]
    add_pool = [
        (MethodIdentity(delta.new_path, sig), _body_counter(delta.new_index, sig))
        for sig in added
        if delta.new_path and delta.new_index
    ]
    return pairs, del_pool, add_pool


def _match_by_similarity(
    del_pool: list, add_pool: list, threshold: float
) -> list[tuple[MethodIdentity, MethodIdentity]]:
    """Unique mutual best matches with Dice similarity above threshold."""
    if not del_pool or not add_pool:
        return []
    scores: dict[tuple[int, int], float] = {}
    for i, (_, da) in enumerate(del_pool):
        for j, (_, ab) in enumerate(add_pool):
            scores[(i, j)] = dice_similarity(da, ab)

    def best_for_del(i: int) -> tuple[int, float] | None:
        row = [(scores[(i, j)], j) for j in range(len(add_pool))]
        row.sort(key=lambda t: (-t[0], t[1]))
        if row[0][0] < threshold:
            return None
        if len(row) > 1 and row[1][0] == row[0][0]:
            return None  # tie: not unique
        return row[0][1], row[0][0]

    def best_for_add(j: int) -> tuple[int, float] | None:
        col = [(scores[(i, j)], i) for i in range(len(del_pool))]
        col.sort(key=lambda t: (-t[0], t[1]))
        if col[0][0] < threshold:
            return None
        if len(col) > 1 and col[1][0] == col[0][0]:
            return None
        return col[0][1], col[0][0]

    pairs = []
    for i in range(len(del_pool)):
        bd = best_for_del(i)
        if bd is None:
            continue
        j, _ = bd
        ba = best_for_add(j)
        if ba is None or ba[0] != i:
            continue
        pairs.append((del_pool[i][0], add_pool[j][0]))
    return pairs


def build_rename_map(
    commits: list[CommitRecord],
    repo_path: str | Path,
    similarity_threshold: float = DEFAULT_RENAME_SIMILARITY,
) -> RenameMap:
    """Track method identities across rename refactorings, oldest first."""
    repo = _open_repo(repo_path)
    diag = MineDiagnostics()
    renames = RenameMap()
    for record in commits:
        deltas = _file_deltas(repo.commit(record.id), diag)
        _apply_commit_renames(deltas, renames, similarity_threshold)
    return renames


def _apply_commit_renames(
    deltas: list[_FileDelta], renames: RenameMap, threshold: float
) -> None:
    del_pool: list = []
    add_pool: list = []
    for delta in deltas:
        pairs, dels, adds = _delta_rename_pairs(delta)
        for old, new in pairs:
            renames.insert(old, new)
        del_pool.extend(dels)
        add_pool.extend(adds)
    # similarity matching runs commit-wide so moved methods pair across files
    for old, new in _match_by_similarity(del_pool, add_pool, threshold):
        renames.insert(old, new)


def current_tree_methods(root: Path, diag: MineDiagnostics | None = None) -> set[MethodIdentity]:
    """Identities of every method in the working tree's Java files."""
    found: set[MethodIdentity] = set()
    for path in sorted(root.rglob("*.java")):
        if ".git" in path.parts:
            continue
        rel = path.relative_to(root).as_posix()
        try:
            index = parse_java(path.read_text(encoding="utf-8", errors="replace"))
        except (JavaParseError, OSError):
            if diag is not None:
                diag.files_skipped += 1
            continue
        for m in index.methods:
            found.add(MethodIdentity(rel, m.signature))
    return found


def mine(
    repo_path: str | Path,
    max_commits: int | None = None,
    similarity_threshold: float = DEFAULT_RENAME_SIMILARITY,
    cache_dir: str | Path | None = None,
    use_cache: bool = True,
) -> MineResult:
    """Mine the repository containing ``repo_path`` into EDIT events.

    Pass 1 walks the commits, caching per-commit method changes while
    building the rename map. Pass 2 replays the cached changes, resolves
    identities through the rename map, drops methods absent from the
    current working tree, and numbers the surviving events.
    """
    repo = _open_repo(repo_path)
    root = Path(repo.working_tree_dir)
    diag = MineDiagnostics()
    records, by_id = _enumerate(repo, max_commits, diag)
    head = repo.head.commit.hexsha

    cache_path, lock_path = _cache_paths(repo, cache_dir, head, max_commits, similarity_threshold)
    if use_cache:
        cached = _load_cache(cache_path, head)
        if cached is not None:
            cached.cache_hit = True
            log.info("repository %s: cache hit for head %s", root, head[:10])
            return cached

    renames = RenameMap()
    per_commit: list[tuple[CommitRecord, list[MethodChange]]] = []
    for record in records:
        commit = by_id[record.id]
        deltas = _file_deltas(commit, diag)
        changes: list[MethodChange] = []
        for delta in deltas:
            changes.extend(_delta_method_changes(delta))
        changes.sort(key=lambda c: (c.identity.file_path, c.identity.signature))
        _apply_commit_renames(deltas, renames, similarity_threshold)
        per_commit.append((record, changes))
        diag.commits_analyzed += 1

    existing = current_tree_methods(root, diag)
    events: list[ChangeEvent] = []
    for record, changes in per_commit:
        resolved_here: set[MethodIdentity] = set()
        for change in changes:
            resolved = renames.resolve(change.identity)
            if resolved in resolved_here:
                continue
            if resolved not in existing:
                diag.events_dropped += 1
                continue
            resolved_here.add(resolved)
        for ident in sorted(resolved_here):
            events.append(ChangeEvent(commit=record.id, seq=len(events), method=ident))

    result = MineResult(
        commits=records, events=events, renames=renames, diagnostics=diag
    )
    if use_cache:
        _store_cache(cache_path, lock_path, head, result)
    return result


# -- cache ----------------------------------------------------------------


def _cache_paths(
    repo: git.Repo,
    cache_dir: str | Path | None,
    head: str,
    max_commits: int | None,
    similarity_threshold: float,
) -> tuple[Path, Path]:
    base = Path(cache_dir) if cache_dir else Path(repo.git_dir) / "loglift"
    key = json.dumps(
        {
            "root": str(repo.working_tree_dir),
            "version": CACHE_FORMAT_VERSION,
            "max_commits": max_commits,
            "similarity": similarity_threshold,
        },
        sort_keys=True,
    )
    digest = hashlib.sha256(key.encode()).hexdigest()[:16]
    return base / f"changes-{digest}.json", base / f"changes-{digest}.lock"


def _load_cache(cache_path: Path, head: str) -> MineResult | None:
    try:
        payload = json.loads(cache_path.read_text(encoding="utf-8"))
    except (OSError, ValueError):
        return None
    if payload.get("version") != CACHE_FORMAT_VERSION or payload.get("head") != head:
        return None
    try:
        commits = [CommitRecord(*row) for row in payload["commits"]]
        events = [
            ChangeEvent(commit=c, seq=s, method=MethodIdentity(p, sig))
            for c, s, p, sig in payload["events"]
        ]
        renames = RenameMap(
            {
                MethodIdentity(op, os_): MethodIdentity(np, ns)
                for op, os_, np, ns in payload["renames"]
            }
        )
        diag = MineDiagnostics(**payload["diagnostics"])
    except (KeyError, TypeError):
        return None
    return MineResult(commits=commits, events=events, renames=renames, diagnostics=diag)


def _store_cache(cache_path: Path, lock_path: Path, head: str, result: MineResult) -> None:
    payload = {
        "version": CACHE_FORMAT_VERSION,
        "head": head,
        "commits": [
            [c.id, c.timestamp, c.parent_count, c.message] for c in result.commits
        ],
        "events": [
            [e.commit, e.seq, e.method.file_path, e.method.signature]
            for e in result.events
        ],
        "renames": sorted(
            [k.file_path, k.signature, v.file_path, v.signature]
            for k, v in result.renames.entries.items()
        ),
        "diagnostics": result.diagnostics.as_dict(),
    }
    cache_path.parent.mkdir(parents=True, exist_ok=True)
    with FileLock(str(lock_path)):
        tmp = cache_path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
        os.replace(tmp, cache_path)
