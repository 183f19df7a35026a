"""Index a Java working tree: methods, logging statements, context flags.

A call expression is treated as a logging statement when its receiver looks
like a logger (declared with a ``*Logger`` type or named log/logger in any
case) and its method is either a level-named convenience method or the
framework's generic log method. Levels are extracted by string matching:
``Level.X``, a statically imported bare ``X``, or a quoted ``"X"``. Anything
else (typically a level held in a variable) is recorded as unanalyzable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import UnparsableFile
from .javaparse import JavaCall, JavaFileIndex, JavaParseError, Token, parse_java
from .levels import LOGGER_NAME_RE, LOGGER_TYPE_SUFFIX, LevelScheme
from .repo_miner import MethodIdentity

CONVENIENCE = "CONVENIENCE"
LEVEL_ARGUMENT = "LEVEL_ARGUMENT"
UNANALYZABLE = "UNANALYZABLE"


@dataclass(frozen=True)
class IndexedMethod:
    identity: MethodIdentity
    start_line: int
    end_line: int
    has_body: bool


@dataclass
class LoggingStatement:
    file_path: str
    line: int
    span: tuple[int, int]  # char offsets of the level (or method name) token
    token_text: str  # exact source text in the span, for staleness checks
    flavor: str
    level: str | None
    quoted: bool
    message_literals: str
    enclosing_method: MethodIdentity
    in_catch: bool
    first_in_branch: bool
    level_guarded: bool

    @property
    def analyzable(self) -> bool:
        return self.flavor != UNANALYZABLE

    def key(self) -> tuple[str, int, int]:
        return (self.file_path, self.span[0], self.span[1])


@dataclass
class SourceIndex:
    methods: list[IndexedMethod]
    statements: list[LoggingStatement]
    failures: int
    unparsable_files: list[str] = field(default_factory=list)
    statements_outside_methods: int = 0
    # statements grouped by override chains (method name/params matching
    # across declared supertypes inside the indexed tree)
    override_groups: list[set[MethodIdentity]] = field(default_factory=list)

    @property
    def total_statements(self) -> int:
        return len(self.statements)

    @property
    def analyzed_fraction(self) -> float:
        if not self.statements:
            return 1.0
        return 1.0 - self.failures / len(self.statements)

    def methods_with_statements(self) -> list[MethodIdentity]:
        seen: dict[MethodIdentity, None] = {}
        for stmt in self.statements:
            if stmt.analyzable:
                seen.setdefault(stmt.enclosing_method)
        return list(seen)


def _literal_value(token_text: str) -> str:
    if token_text.startswith('"""'):
        return token_text[3:-3]
    body = token_text[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            out.append({"n": "\n", "t": "\t", "r": "\r"}.get(nxt, nxt))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def _extract_level(
    arg: list[Token], scheme: LevelScheme
) -> tuple[str, Token, bool] | None:
    """(level, span token, quoted) from a level argument, or None."""
    if not arg:
        return None
    if len(arg) == 1:
        tok = arg[0]
        if tok.kind == "ident" and scheme.is_level(tok.text):
            return tok.text, tok, False
        if tok.kind == "string":
            value = _literal_value(tok.text)
            if scheme.is_level(value):
                return value, tok, True
        return None
    # qualified form: anything ending in Level.X
    if (
        len(arg) >= 3
        and arg[-1].kind == "ident"
        and arg[-2].text == "."
        and arg[-3].kind == "ident"
        and arg[-3].text == "Level"
        and scheme.is_level(arg[-1].text)
    ):
        return arg[-1].text, arg[-1], False
    return None


def _guard_regex(scheme: LevelScheme) -> re.Pattern:
    names = "|".join(scheme.levels)
    titled = "|".join(lv.capitalize() for lv in scheme.levels)
    return re.compile(
        rf"\b(?:{names})\b|\bisLoggable\b|\bis(?:{titled})Enabled\b",
        re.IGNORECASE,
    )


def context_flags(call: JavaCall, scheme: LevelScheme) -> tuple[bool, bool, bool]:
    """(in_catch, first_in_branch, level_guarded) for one call."""
    guarded = False
    if call.guard_condition:
        guarded = bool(_guard_regex(scheme).search(call.guard_condition))
    return call.in_catch, call.first_in_branch, guarded


def message_keywords_present(stmt: LoggingStatement, keywords: list[str]) -> bool:
    """True when any keyword occurs in the message literals, ignoring case."""
    haystack = stmt.message_literals.lower()
    return any(kw.lower() in haystack for kw in keywords)


def _classify_call(
    call: JavaCall, scheme: LevelScheme, logger_vars: set[str], rel_path: str
) -> LoggingStatement | None:
    if call.receiver not in logger_vars and not LOGGER_NAME_RE.fullmatch(call.receiver):
        return None
    if call.method is None:
        return None  # handled by the caller (outside any method)
    flavor: str
    level: str | None
    span_tok: Token = call.name_token
    quoted = False
    message_args: list[list[Token]]
    if call.name in scheme.convenience_methods:
        flavor = CONVENIENCE
        level = scheme.convenience_methods[call.name]
        message_args = call.arg_tokens
    elif call.name in scheme.generic_log_methods:
        extracted = _extract_level(
            call.arg_tokens[0] if call.arg_tokens else [], scheme
        )
        message_args = call.arg_tokens[1:]
        if extracted is None:
            flavor, level = UNANALYZABLE, None
        else:
            flavor = LEVEL_ARGUMENT
            level, span_tok, quoted = extracted
    else:
        return None

    literals = "".join(
        _literal_value(tok.text)
        for arg in message_args
        for tok in arg
        if tok.kind == "string"
    )
    in_catch, first_in_branch, guarded = context_flags(call, scheme)
    ident = MethodIdentity(rel_path, call.method.signature)
    return LoggingStatement(
        file_path=rel_path,
        line=span_tok.line,
        span=(span_tok.start, span_tok.end),
        token_text=span_tok.text,
        flavor=flavor,
        level=level,
        quoted=quoted,
        message_literals=literals,
        enclosing_method=ident,
        in_catch=in_catch,
        first_in_branch=first_in_branch,
        level_guarded=guarded,
    )


@dataclass
class FileIndex:
    """Methods and logging statements of one compilation unit."""

    methods: list[IndexedMethod]
    statements: list[LoggingStatement]
    statements_outside_methods: int
    parsed: JavaFileIndex


def index_java_file(text: str, rel_path: str, scheme: LevelScheme) -> FileIndex:
    """Index one Java source file; raises UnparsableFile on syntax failure."""
    watch = frozenset(scheme.convenience_methods) | scheme.generic_log_methods
    try:
        parsed = parse_java(
            text, watch_calls=watch, logger_type_suffix=LOGGER_TYPE_SUFFIX
        )
    except JavaParseError as exc:
        raise UnparsableFile(rel_path, str(exc)) from exc
    methods = [
        IndexedMethod(
            identity=MethodIdentity(rel_path, m.signature),
            start_line=m.start_line,
            end_line=m.end_line,
            has_body=m.has_body,
        )
        for m in parsed.methods
    ]
    statements: list[LoggingStatement] = []
    outside = 0
    for call in parsed.calls:
        if call.method is None:
            if call.receiver in parsed.logger_vars or LOGGER_NAME_RE.fullmatch(
                call.receiver
            ):
                outside += 1
            continue
        stmt = _classify_call(call, scheme, parsed.logger_vars, rel_path)
        if stmt is not None:
            statements.append(stmt)
    return FileIndex(
        methods=methods,
        statements=statements,
        statements_outside_methods=outside,
        parsed=parsed,
    )


class _OverrideResolver:
    """Match methods against same-signature methods in declared supertypes."""

    def __init__(self):
        # simple type name -> [(qualified, file, supertype simple names)]
        self.types: dict[str, list[tuple[str, str, tuple[str, ...]]]] = {}
        # (qualified type, file) -> {(name, params) -> MethodIdentity}
        self.decls: dict[tuple[str, str], dict[str, MethodIdentity]] = {}

    def add_file(self, rel_path: str, index) -> None:
        for jt in index.types:
            self.types.setdefault(jt.name, []).append(
                (jt.qualified, rel_path, jt.supertypes)
            )
        for m in index.methods:
            key = (m.type_name, rel_path)
            name_params = m.signature.split("#", 1)[1]
            self.decls.setdefault(key, {})[name_params] = MethodIdentity(
                rel_path, m.signature
            )

    def groups(self) -> list[set[MethodIdentity]]:
        parent: dict[MethodIdentity, MethodIdentity] = {}

        def find(x: MethodIdentity) -> MethodIdentity:
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a: MethodIdentity, b: MethodIdentity) -> None:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for entries in self.types.values():
            for qualified, rel_path, supers in entries:
                decls = self.decls.get((qualified, rel_path), {})
                if not decls:
                    continue
                for ancestor in self._ancestors(supers):
                    for anc_qualified, anc_path, _ in self.types.get(ancestor, []):
                        anc_decls = self.decls.get((anc_qualified, anc_path), {})
                        for name_params, ident in decls.items():
                            target = anc_decls.get(name_params)
                            if target is not None and target != ident:
                                union(ident, target)
        grouped: dict[MethodIdentity, set[MethodIdentity]] = {}
        for ident in parent:
            grouped.setdefault(find(ident), set()).add(ident)
        return [g for g in grouped.values() if len(g) >= 2]

    def _ancestors(self, supers: tuple[str, ...]) -> set[str]:
        out: set[str] = set()
        work = list(supers)
        while work:
            name = work.pop()
            if name in out:
                continue
            out.add(name)
            for _, _, ups in self.types.get(name, []):
                work.extend(ups)
        return out


def index_tree(
    root: str | Path,
    scheme: LevelScheme,
    rel_root: str | Path | None = None,
) -> SourceIndex:
    """Index every ``.java`` file under ``root``.

    Statement and method paths are made relative to ``rel_root`` (the
    repository root) so identities line up with mined change events;
    it defaults to ``root`` itself.
    """
    root = Path(root)
    base = Path(rel_root) if rel_root is not None else root
    methods: list[IndexedMethod] = []
    statements: list[LoggingStatement] = []
    failures = 0
    outside = 0
    unparsable: list[str] = []
    resolver = _OverrideResolver()

    for path in sorted(root.rglob("*.java")):
        if ".git" in path.parts:
            continue
        rel = path.relative_to(base).as_posix()
        try:
            text = path.read_text(encoding="utf-8", errors="replace")
            file_index = index_java_file(text, rel, scheme)
        except (UnparsableFile, OSError):
            unparsable.append(rel)
            continue
        methods.extend(file_index.methods)
        resolver.add_file(rel, file_index.parsed)
        outside += file_index.statements_outside_methods
        statements.extend(file_index.statements)
        failures += sum(1 for s in file_index.statements if not s.analyzable)

    statements.sort(key=lambda s: (s.file_path, s.line, s.span[0]))
    methods.sort(key=lambda m: (m.identity.file_path, m.start_line, m.identity.signature))
    return SourceIndex(
        methods=methods,
        statements=statements,
        failures=failures,
        unparsable_files=unparsable,
        statements_outside_methods=outside,
        override_groups=resolver.groups(),
    )
