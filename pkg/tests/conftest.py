"""Shared fixtures: scripted git repositories and synthetic indexes."""

from __future__ import annotations

import subprocess
from pathlib import Path

import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    criterion = getattr(getattr(item, "function", None), "_criterion", None)
    if criterion and report.when == "call":
        reporter = item.config.pluginmanager.get_plugin("terminalreporter")
        if reporter is not None:
            number, title = criterion
            status = "PASS" if report.passed else "FAIL"
            reporter.write_line(f"[criterion {number}] {title}: {status}")

from loglift.doi_engine import DoiModel
from loglift.repo_miner import ChangeEvent, MethodIdentity
from loglift.source_index import (
    CONVENIENCE,
    IndexedMethod,
    LEVEL_ARGUMENT,
    LoggingStatement,
    SourceIndex,
    UNANALYZABLE,
)


class GitRepo:
    """Scripted git repository for history fixtures."""

    def __init__(self, root: Path):
        self.root = root
        self.root.mkdir(parents=True, exist_ok=True)
        self._git("init", "-q", "-b", "main")
        self._git("config", "user.email", "dev@example.com")
        self._git("config", "user.name", "Dev")

    def _git(self, *args: str) -> str:
        proc = subprocess.run(
            ["git", *args],
            cwd=self.root,
            capture_output=True,
            text=True,
            check=True,
        )
        return proc.stdout.strip()

    def write(self, rel: str, content: str) -> None:
        path = self.root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")

    def read(self, rel: str) -> str:
        return (self.root / rel).read_text(encoding="utf-8")

    def replace(self, rel: str, old: str, new: str) -> None:
        text = self.read(rel)
        assert old in text, f"{old!r} not found in {rel}"
        self.write(rel, text.replace(old, new))

    def delete(self, rel: str) -> None:
        (self.root / rel).unlink()

    def move(self, old: str, new: str) -> None:
        (self.root / new).parent.mkdir(parents=True, exist_ok=True)
        self._git("mv", old, new)

    def commit(self, message: str) -> str:
        self._git("add", "-A")
        self._git("commit", "-q", "--allow-empty", "-m", message)
        return self._git("rev-parse", "HEAD")

    def branch(self, name: str, start: str = "HEAD") -> None:
        self._git("checkout", "-q", "-b", name, start)

    def checkout(self, name: str) -> None:
        self._git("checkout", "-q", name)

    def merge(self, name: str, message: str = "merge") -> str:
        self._git("merge", "-q", "--no-ff", "-m", message, name)
        return self._git("rev-parse", "HEAD")

    def head(self) -> str:
        return self._git("rev-parse", "HEAD")


@pytest.fixture
def git_repo(tmp_path) -> GitRepo:
    return GitRepo(tmp_path / "repo")


def ident(path: str, signature: str) -> MethodIdentity:
    return MethodIdentity(path, signature)


def make_statement(
    method: MethodIdentity,
    level: str | None,
    line: int,
    flavor: str = CONVENIENCE,
    message: str = "",
    in_catch: bool = False,
    first_in_branch: bool = False,
    level_guarded: bool = False,
    quoted: bool = False,
    token_text: str | None = None,
) -> LoggingStatement:
    if token_text is None:
        token_text = (level or "log").lower() if flavor == CONVENIENCE else (level or "x")
    start = line * 1000
    return LoggingStatement(
        file_path=method.file_path,
        line=line,
        span=(start, start + len(token_text)),
        token_text=token_text,
        flavor=flavor,
        level=level,
        quoted=quoted,
        message_literals=message,
        enclosing_method=method,
        in_catch=in_catch,
        first_in_branch=first_in_branch,
        level_guarded=level_guarded,
    )


def make_index(
    statements: list[LoggingStatement],
    extra_methods: list[MethodIdentity] = (),
    override_groups: list[set[MethodIdentity]] = (),
) -> SourceIndex:
    methods: dict[MethodIdentity, IndexedMethod] = {}
    for k, m in enumerate(
        list(dict.fromkeys([s.enclosing_method for s in statements])) + list(extra_methods)
    ):
        methods.setdefault(
            m, IndexedMethod(identity=m, start_line=k * 100 + 1, end_line=k * 100 + 50, has_body=True)
        )
    failures = sum(1 for s in statements if s.flavor == UNANALYZABLE)
    return SourceIndex(
        methods=list(methods.values()),
        statements=sorted(statements, key=lambda s: (s.file_path, s.line, s.span[0])),
        failures=failures,
        override_groups=list(override_groups),
    )


def events_for(identities: list[MethodIdentity]) -> list[ChangeEvent]:
    return [
        ChangeEvent(commit=f"c{i:04d}", seq=i, method=m)
        for i, m in enumerate(identities)
    ]


def model_for(identities: list[MethodIdentity]) -> DoiModel:
    from loglift.doi_engine import process_events

    return process_events(events_for(identities))


HOT_COLD_FILE = """import java.util.logging.Logger;
import java.util.logging.Level;

public class App {
    private static final Logger LOGGER = Logger.getLogger(App.class.getName());

    void cold() {
        LOGGER.log(Level.INFO, "{0} main build action completed: {1}");
        int unrelated = 0;
    }

    void hot() {
        LOGGER.finest("hot work step");
        int counter = 0;
    }

    void pad() {
        int filler = 0;
    }
}
"""

ALL_HEURISTICS_OFF_FLAGS = [
    "--no-ws", "--no-ctch", "--no-ifs", "--no-keyl",
    "--no-cnds", "--no-keyr", "--no-inh",
]


def build_hot_cold_repo(repo: GitRepo, pad_edits: int = 9, hot_edits: int = 10) -> None:
    """History where hot() has the recent edits and cold() one ancient edit."""
    repo.write("src/App.java", HOT_COLD_FILE)
    repo.commit("add app")
    for k in range(1, pad_edits + 1):
        repo.replace("src/App.java", f"int filler = {k - 1};", f"int filler = {k};")
        repo.commit(f"tune pad {k}")
    for k in range(1, hot_edits + 1):
        repo.replace("src/App.java", f"int counter = {k - 1};", f"int counter = {k};")
        repo.commit(f"hot work {k}")
