"""Lightweight structural indexing of Java source text.

This is not a full Java parser. It tokenizes a compilation unit and walks
the brace structure, which is enough to recover:

  * type declarations with their declared supertype names,
  * method and constructor declarations with line spans, parameter type
    lists, and raw body tokens,
  * call expressions on named receivers (filtered by a watch set of method
    names) together with the syntactic context needed downstream: the
    enclosing method, whether the call sits in a catch block, whether it is
    the first statement of a branch body, and the condition text of the
    innermost enclosing if.

Files that cannot be indexed (unterminated literals, unbalanced braces)
raise JavaParseError; callers decide whether that is fatal.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class JavaParseError(ValueError):
    """The file cannot be syntactically indexed."""


_KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while""".split()
)

# Control keywords that can never be a method name in a declaration.
_CONTROL = frozenset(
    {"if", "else", "for", "while", "do", "switch", "try", "catch", "finally",
     "synchronized", "return", "throw", "new", "case", "default", "break",
     "continue", "assert"}
)

_IDENT_START = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$"
)
_IDENT_CONT = _IDENT_START | frozenset("0123456789")


@dataclass(frozen=True)
class Token:
    text: str
    kind: str  # ident | string | char | number | punct
    line: int  # 1-based
    start: int  # char offset into the file
    end: int


def tokenize(text: str) -> list[Token]:
    """Split Java source into significant tokens (no comments/whitespace)."""
    tokens: list[Token] = []
    i, n, line = 0, len(text), 1
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            i += 1
            continue
        if c in " \t\r\f\x0b":
            i += 1
            continue
        if c == "/" and i + 1 < n:
            nxt = text[i + 1]
            if nxt == "/":
                j = text.find("\n", i)
                i = n if j < 0 else j
                continue
            if nxt == "*":
                j = text.find("*/", i + 2)
                if j < 0:
                    raise JavaParseError(f"unterminated comment at line {line}")
                line += text.count("\n", i, j)
                i = j + 2
                continue
        if text.startswith('"""', i):
            j = text.find('"""', i + 3)
            if j < 0:
                raise JavaParseError(f"unterminated text block at line {line}")
            start_line = line
            line += text.count("\n", i, j)
            tokens.append(Token(text[i : j + 3], "string", start_line, i, j + 3))
            i = j + 3
            continue
        if c == '"' or c == "'":
            quote, j = c, i + 1
            while j < n:
                if text[j] == "\\":
                    j += 2
                    continue
                if text[j] == quote:
                    break
                if text[j] == "\n":
                    break
                j += 1
            if j >= n or text[j] != quote:
                raise JavaParseError(f"unterminated literal at line {line}")
            kind = "string" if quote == '"' else "char"
            tokens.append(Token(text[i : j + 1], kind, line, i, j + 1))
            i = j + 1
            continue
        if c in _IDENT_START:
            j = i + 1
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            tokens.append(Token(text[i:j], "ident", line, i, j))
            i = j
            continue
        if c.isdigit():
            j = i + 1
            while j < n:
                ch = text[j]
                if ch in _IDENT_CONT or ch == ".":
                    j += 1
                elif ch in "+-" and text[j - 1] in "eEpP":
                    j += 1
                else:
                    break
            tokens.append(Token(text[i:j], "number", line, i, j))
            i = j
            continue
        if c == "-" and i + 1 < n and text[i + 1] == ">":
            tokens.append(Token("->", "punct", line, i, i + 2))
            i += 2
            continue
        if c == ":" and i + 1 < n and text[i + 1] == ":":
            tokens.append(Token("::", "punct", line, i, i + 2))
            i += 2
            continue
        tokens.append(Token(c, "punct", line, i, i + 1))
        i += 1
    return tokens


@dataclass
class JavaType:
    name: str
    qualified: str  # dotted nesting, e.g. Outer.Inner
    supertypes: tuple[str, ...]  # simple names from extends/implements
    line: int


@dataclass
class JavaMethod:
    type_name: str  # qualified declaring type
    name: str
    param_types: tuple[str, ...]
    start_line: int
    end_line: int
    has_body: bool = True
    body_tokens: tuple[str, ...] = ()

    @property
    def signature(self) -> str:
        return f"{self.type_name}#{self.name}({','.join(self.param_types)})"


@dataclass
class JavaCall:
    receiver: str
    name: str
    name_token: Token
    arg_tokens: list[list[Token]]
    method: JavaMethod | None
    in_catch: bool
    first_in_branch: bool
    guard_condition: str | None


@dataclass
class JavaFileIndex:
    methods: list[JavaMethod]
    types: list[JavaType]
    calls: list[JavaCall]
    logger_vars: set[str]


# Scope kinds that hold statements (everything except type bodies and
# array initializers).
_STMT_KINDS = frozenset(
    {"method", "then", "else", "vthen", "velse", "case", "vcase", "block",
     "loop", "vloop", "try", "catch", "finally", "sync", "init", "lambda",
     "switch"}
)
_VIRTUAL = frozenset({"vthen", "velse", "vcase", "vloop"})
_BRANCH = frozenset({"then", "else", "vthen", "velse"})


@dataclass
class _Scope:
    kind: str
    open_index: int = -1  # token index of the '{' (-1 for virtual/file)
    paren_depth: int = 0
    stmts: int = 0
    at_boundary: bool = True
    cond: str | None = None  # if-condition text for then/else scopes
    # type scopes
    type: JavaType | None = None
    member_start: int = 0
    is_enum: bool = False
    enum_constants_done: bool = True
    # method scopes
    method: JavaMethod | None = None
    # switch scopes
    in_label: bool = False
    case_boundary: bool = False
    stmt_first_in_case: bool = False
    # condition of the then-branch that closed most recently in this scope,
    # so a following else branch can reuse it for guard checks
    last_then_cond: str | None = None


def _match(tokens: list[Token], i: int, open_ch: str, close_ch: str) -> int:
    """Index of the token closing the group opened at ``i``."""
    depth = 0
    for j in range(i, len(tokens)):
        t = tokens[j].text
        if t == open_ch:
            depth += 1
        elif t == close_ch:
            depth -= 1
            if depth == 0:
                return j
    raise JavaParseError(f"unbalanced {open_ch!r} at line {tokens[i].line}")


def split_arguments(tokens: list[Token]) -> list[list[Token]]:
    """Split an argument token list at top-level commas."""
    args: list[list[Token]] = []
    cur: list[Token] = []
    depth = 0
    angle = 0
    for idx, t in enumerate(tokens):
        if t.text in "([{":
            depth += 1
        elif t.text in ")]}":
            depth -= 1
        elif t.text == "<" and idx > 0 and tokens[idx - 1].text == ".":
            angle += 1  # explicit generic invocation Foo.<A,B>bar()
        elif t.text == ">" and angle:
            angle -= 1
        elif t.text == "," and depth == 0 and angle == 0:
            args.append(cur)
            cur = []
            continue
        cur.append(t)
    if cur or args:
        args.append(cur)
    return args


def _normalize_param(tokens: list[str]) -> str | None:
    """Turn one parameter declaration token list into a type string."""
    toks = list(tokens)
    # strip annotations and modifiers
    out: list[str] = []
    i = 0
    while i < len(toks):
        t = toks[i]
        if t == "@":
            i += 2  # @ Name
            if i < len(toks) and toks[i] == "(":
                depth = 0
                while i < len(toks):
                    if toks[i] == "(":
                        depth += 1
                    elif toks[i] == ")":
                        depth -= 1
                        if depth == 0:
                            i += 1
                            break
                    i += 1
            continue
        if t == "final":
            i += 1
            continue
        out.append(t)
        i += 1
    if not out:
        return None
    # old-style trailing array dims attach to the type: int x[] -> int[]
    dims = ""
    while len(out) >= 2 and out[-1] == "]" and out[-2] == "[":
        dims += "[]"
        out = out[:-2]
    if not out:
        return None
    # last identifier is the parameter name (absent for receiver params)
    if out[-1] == "this":
        out = out[:-1]
    elif out and (out[-1][0] in _IDENT_START) and out[-1] not in _KEYWORDS:
        out = out[:-1]
    if not out:
        return None
    pieces: list[str] = []
    for idx, t in enumerate(out):
        if idx and t[0] in _IDENT_CONT and out[idx - 1][-1] in _IDENT_CONT | {"?"}:
            pieces.append(" ")
        pieces.append(t)
    return "".join(pieces) + dims


def parse_parameter_types(tokens: list[Token]) -> tuple[str, ...]:
    """Parameter type names from the tokens between a declaration's parens."""
    if not tokens:
        return ()
    types: list[str] = []
    depth = 0
    angle = 0
    cur: list[str] = []
    for t in tokens:
        if t.text in "([{":
            depth += 1
        elif t.text in ")]}":
            depth -= 1
        elif t.text == "<":
            angle += 1
        elif t.text == ">":
            angle = max(0, angle - 1)
        if t.text == "," and depth == 0 and angle == 0:
            types.append(cur and _normalize_param(cur) or "")
            cur = []
            continue
        cur.append(t.text)
    if cur:
        types.append(_normalize_param(cur) or "")
    return tuple(p for p in types if p is not None and p != "")


class _Walker:
    def __init__(self, tokens: list[Token], watch_calls: frozenset[str]):
        self.tokens = tokens
        self.watch = watch_calls
        self.methods: list[JavaMethod] = []
        self.types: list[JavaType] = []
        self.calls: list[JavaCall] = []
        self.stack: list[_Scope] = [_Scope("file")]
        # token index -> list of deferred actions registered by lookaheads
        self.pending_braces: dict[int, tuple[str, object]] = {}
        self.virtual_at: dict[int, list[_Scope]] = {}
        self.anon_counter = 0

    # -- helpers ---------------------------------------------------------

    def top(self) -> _Scope:
        return self.stack[-1]

    def _type_stack(self) -> list[_Scope]:
        return [s for s in self.stack if s.kind in ("type", "anon")]

    def _qualified(self, name: str) -> str:
        parts = [s.type.name for s in self._type_stack() if s.type] + [name]
        return ".".join(parts)

    def innermost_method(self) -> JavaMethod | None:
        for s in reversed(self.stack):
            if s.kind == "method":
                return s.method
        return None

    # -- lookahead registrations -----------------------------------------

    def _register_brace(self, idx: int, kind: str, payload: object = None) -> None:
        self.pending_braces.setdefault(idx, (kind, payload))

    def _register_virtual(self, idx: int, kind: str, cond: str | None) -> None:
        self.virtual_at.setdefault(idx, []).append(_Scope(kind, cond=cond))

    def _after_condition(self, i: int) -> int:
        """Token index after the ``( ... )`` group starting at i+1."""
        if i + 1 >= len(self.tokens) or self.tokens[i + 1].text != "(":
            return i + 1
        return _match(self.tokens, i + 1, "(", ")") + 1

    def _handle_if(self, i: int) -> None:
        if i + 1 >= len(self.tokens) or self.tokens[i + 1].text != "(":
            return
        close = _match(self.tokens, i + 1, "(", ")")
        cond = " ".join(t.text for t in self.tokens[i + 2 : close])
        body = close + 1
        if body >= len(self.tokens):
            return
        if self.tokens[body].text == "{":
            self._register_brace(body, "then", cond)
        else:
            self._register_virtual(body, "vthen", cond)

    def _handle_else(self, i: int) -> None:
        nxt = i + 1
        if nxt >= len(self.tokens):
            return
        t = self.tokens[nxt].text
        if t == "if":
            return  # else-if: the nested if registers its own branch
        # the else branch reuses the if's condition for guard checks
        cond = self.top().last_then_cond
        if t == "{":
            self._register_brace(nxt, "else", cond)
        else:
            self._register_virtual(nxt, "velse", cond)

    def _handle_simple_block_keyword(self, i: int, kind: str) -> None:
        """try/finally/do and similar: brace directly follows the keyword."""
        nxt = i + 1
        if nxt < len(self.tokens) and self.tokens[nxt].text == "{":
            self._register_brace(nxt, kind)

    def _handle_header_keyword(self, i: int, kind: str, braced_only: bool) -> None:
        """catch/switch/for/while/synchronized: ``kw ( ... ) body``."""
        body = self._after_condition(i)
        if body >= len(self.tokens):
            return
        if self.tokens[body].text == "{":
            self._register_brace(body, kind)
        elif not braced_only:
            self._register_virtual(body, "vloop", None)

    def _handle_try(self, i: int) -> None:
        nxt = i + 1
        if nxt >= len(self.tokens):
            return
        if self.tokens[nxt].text == "(":
            body = _match(self.tokens, nxt, "(", ")") + 1
        else:
            body = nxt
        if body < len(self.tokens) and self.tokens[body].text == "{":
            self._register_brace(body, "try")

    def _handle_new(self, i: int) -> None:
        j = i + 1
        n = len(self.tokens)
        # qualified type name
        saw_name = False
        while j < n and self.tokens[j].kind == "ident":
            saw_name = True
            if j + 1 < n and self.tokens[j + 1].text == ".":
                j += 2
            else:
                j += 1
                break
        if not saw_name or j >= n:
            return
        if self.tokens[j].text == "<":
            try:
                j = _match(self.tokens, j, "<", ">") + 1
            except JavaParseError:
                return
        if j < n and self.tokens[j].text == "(":
            close = _match(self.tokens, j, "(", ")")
            if close + 1 < n and self.tokens[close + 1].text == "{":
                self._register_brace(close + 1, "anon")

    def _handle_type_decl(self, i: int, keyword: str) -> None:
        n = len(self.tokens)
        if i + 1 >= n or self.tokens[i + 1].kind != "ident":
            return
        name = self.tokens[i + 1].text
        supertypes: list[str] = []
        j = i + 2
        collecting = False
        last_ident: str | None = None
        angle = 0
        while j < n:
            t = self.tokens[j]
            if t.text == "<":
                angle += 1
            elif t.text == ">":
                angle = max(0, angle - 1)
            elif t.text == "(" and angle == 0:
                j = _match(self.tokens, j, "(", ")")
            elif t.text == "{" and angle == 0:
                break
            elif t.text == ";" and angle == 0:
                return  # e.g. local "record" used as an identifier
            elif angle == 0:
                if t.text in ("extends", "implements"):
                    if collecting and last_ident:
                        supertypes.append(last_ident)
                    collecting = True
                    last_ident = None
                elif t.text == "permits":
                    if collecting and last_ident:
                        supertypes.append(last_ident)
                    collecting = False
                    last_ident = None
                elif collecting and t.kind == "ident":
                    last_ident = t.text
                elif collecting and t.text == "," and last_ident:
                    supertypes.append(last_ident)
                    last_ident = None
            j += 1
        if j >= n:
            return
        if collecting and last_ident:
            supertypes.append(last_ident)
        jt = JavaType(
            name=name,
            qualified=self._qualified(name),
            supertypes=tuple(supertypes),
            line=self.tokens[i].line,
        )
        self._register_brace(j, "type", (jt, keyword == "enum"))

    # -- member-level method detection -------------------------------------

    def _try_member_decl(self, i: int) -> None:
        """Called at '(' while directly inside a type body."""
        tokens = self.tokens
        scope = self.top()
        if i == 0 or tokens[i - 1].kind != "ident":
            return
        name_tok = tokens[i - 1]
        if name_tok.text in _CONTROL:
            return
        if i >= 2 and tokens[i - 2].text in ("@", "."):
            return  # annotation args or member access
        if scope.is_enum and not scope.enum_constants_done:
            return  # enum constant argument list
        # a '=' at top level since the member start means field initializer
        depth = 0
        for k in range(scope.member_start, i - 1):
            t = tokens[k].text
            if t in "([{":
                depth += 1
            elif t in ")]}":
                depth -= 1
            elif t == "=" and depth == 0:
                return
        close = _match(tokens, i, "(", ")")
        # skip throws clause / annotation default to find '{' or ';'
        j = close + 1
        n = len(tokens)
        while j < n and (
            tokens[j].kind in ("ident", "number", "string", "char")
            or tokens[j].text in (".", ",", "[", "]")
        ):
            j += 1
        if j >= n:
            return
        params = parse_parameter_types(tokens[i + 1 : close])
        method = JavaMethod(
            type_name=self._qualified("").rstrip("."),
            name=name_tok.text,
            param_types=params,
            start_line=tokens[scope.member_start].line
            if scope.member_start < n
            else name_tok.line,
            end_line=tokens[j].line,
        )
        if tokens[j].text == "{":
            if j not in self.pending_braces:
                self._register_brace(j, "method", method)
        elif tokens[j].text == ";":
            method.has_body = False
            method.body_tokens = ()
            self.methods.append(method)

    # -- call detection ----------------------------------------------------

    def _try_call(self, i: int) -> None:
        tokens = self.tokens
        if i < 3:
            return
        name_tok = tokens[i - 1]
        if name_tok.kind != "ident" or name_tok.text not in self.watch:
            return
        if tokens[i - 2].text != ".":
            return
        recv_tok = tokens[i - 3]
        if recv_tok.kind != "ident" or recv_tok.text in _KEYWORDS:
            return
        close = _match(tokens, i, "(", ")")
        args = split_arguments(tokens[i + 1 : close])
        scope = self.top()
        first = False
        if scope.kind in _BRANCH or scope.kind in ("case", "vcase"):
            first = scope.stmts <= 1
        elif scope.kind == "switch":
            first = scope.stmt_first_in_case
        guard = None
        for s in reversed(self.stack):
            if s.kind in _BRANCH:
                guard = s.cond
                break
        self.calls.append(
            JavaCall(
                receiver=recv_tok.text,
                name=name_tok.text,
                name_token=name_tok,
                arg_tokens=args,
                method=self.innermost_method(),
                in_catch=any(s.kind == "catch" for s in self.stack),
                first_in_branch=first,
                guard_condition=guard,
            )
        )

    # -- main loop ---------------------------------------------------------

    def walk(self) -> None:
        tokens = self.tokens
        n = len(tokens)
        i = 0
        while i < n:
            for vscope in self.virtual_at.pop(i, ()):  # blockless branch bodies
                self.stack.append(vscope)
            tok = tokens[i]
            text = tok.text
            scope = self.top()

            # statement bookkeeping (only inside statement-bearing scopes)
            if (
                scope.kind in _STMT_KINDS
                and scope.paren_depth == 0
                and text not in (";", "}", "else")
                and not (text == "{" and i in self.pending_braces)
            ):
                if scope.kind == "switch" and scope.in_label:
                    if text == ":":
                        scope.in_label = False
                        scope.case_boundary = True
                        i += 1
                        continue
                    if text == "->":
                        scope.in_label = False
                        body = i + 1
                        if body < n and tokens[body].text == "{":
                            self._register_brace(body, "case")
                        elif body < n:
                            self._register_virtual(body, "vcase", None)
                        i += 1
                        continue
                elif scope.at_boundary:
                    if scope.kind == "switch" and text in ("case", "default"):
                        scope.in_label = True
                        i += 1
                        continue
                    scope.stmts += 1
                    scope.stmt_first_in_case = scope.case_boundary
                    scope.case_boundary = False
                    scope.at_boundary = False

            if text == "{":
                self._open_brace(i)
            elif text == "}":
                self._close_brace(i)
            elif text == "(":
                scope = self.top()
                if scope.kind in ("type", "anon"):
                    self._try_member_decl(i)
                else:
                    self._try_call(i)
                scope.paren_depth += 1
            elif text == ")":
                self.top().paren_depth = max(0, self.top().paren_depth - 1)
            elif text == ";":
                self._semicolon(i)
            elif tok.kind == "ident":
                self._ident(i, text)
            elif text == "->":
                if i + 1 < n and tokens[i + 1].text == "{":
                    self._register_brace(i + 1, "lambda")
            i += 1

        if len(self.stack) != 1:
            raise JavaParseError("unexpected end of file (unclosed braces)")

    def _ident(self, i: int, text: str) -> None:
        scope = self.top()
        if text == "if":
            self._handle_if(i)
        elif text == "else":
            self._handle_else(i)
        elif text == "catch":
            self._handle_header_keyword(i, "catch", braced_only=True)
        elif text == "switch":
            self._handle_header_keyword(i, "switch", braced_only=True)
        elif text in ("for", "while"):
            self._handle_header_keyword(i, "loop", braced_only=False)
        elif text == "synchronized":
            self._handle_header_keyword(i, "sync", braced_only=True)
        elif text == "do":
            self._handle_simple_block_keyword(i, "loop")
        elif text == "finally":
            self._handle_simple_block_keyword(i, "finally")
        elif text == "try":
            self._handle_try(i)
        elif text == "new":
            self._handle_new(i)
        elif text == "static":
            if scope.kind in ("type", "anon"):
                self._handle_simple_block_keyword(i, "init")
        elif text in ("class", "interface", "enum"):
            if i == 0 or self.tokens[i - 1].text not in (".", "@"):
                self._handle_type_decl(i, text)
            elif i > 0 and self.tokens[i - 1].text == "@" and text == "interface":
                self._handle_type_decl(i, "interface")
        elif text == "record":
            if (
                i + 2 < len(self.tokens)
                and self.tokens[i + 1].kind == "ident"
                and self.tokens[i + 2].text == "("
                and (i == 0 or self.tokens[i - 1].text != ".")
            ):
                self._handle_type_decl(i, "record")

    def _open_brace(self, i: int) -> None:
        pending = self.pending_braces.pop(i, None)
        scope = self.top()
        if pending is not None:
            kind, payload = pending
            if kind == "type":
                jt, is_enum = payload  # type: ignore[misc]
                self.types.append(jt)
                self.stack.append(
                    _Scope(
                        "type",
                        open_index=i,
                        type=jt,
                        member_start=i + 1,
                        is_enum=is_enum,
                        enum_constants_done=not is_enum,
                    )
                )
            elif kind == "anon":
                self.anon_counter += 1
                name = f"${self.anon_counter}"
                jt = JavaType(
                    name=name,
                    qualified=self._qualified(name),
                    supertypes=(),
                    line=self.tokens[i].line,
                )
                self.stack.append(
                    _Scope("anon", open_index=i, type=jt, member_start=i + 1)
                )
            elif kind == "method":
                method: JavaMethod = payload  # type: ignore[assignment]
                self.stack.append(_Scope("method", open_index=i, method=method))
            elif kind in ("then", "else"):
                self.stack.append(_Scope(kind, open_index=i, cond=payload))  # type: ignore[arg-type]
            else:
                self.stack.append(_Scope(kind, open_index=i))
            return
        # unclassified brace
        if scope.kind in ("type", "anon"):
            if scope.is_enum and not scope.enum_constants_done:
                # enum constant body behaves like an anonymous subtype
                self.anon_counter += 1
                name = f"${self.anon_counter}"
                jt = JavaType(
                    name=name,
                    qualified=self._qualified(name),
                    supertypes=(),
                    line=self.tokens[i].line,
                )
                self.stack.append(
                    _Scope("anon", open_index=i, type=jt, member_start=i + 1)
                )
            else:
                self.stack.append(_Scope("init", open_index=i))
        else:
            prev = self.tokens[i - 1].text if i else ""
            if prev in ("=", ",", "(", "{", "]", "["):
                self.stack.append(_Scope("arrayinit", open_index=i))
            else:
                self.stack.append(_Scope("block", open_index=i))

    def _close_brace(self, i: int) -> None:
        if len(self.stack) <= 1:
            raise JavaParseError(f"unbalanced '}}' at line {self.tokens[i].line}")
        closed = self.stack.pop()
        parent = self.top()
        if closed.kind == "method" and closed.method is not None:
            m = closed.method
            m.end_line = self.tokens[i].line
            m.body_tokens = tuple(
                t.text for t in self.tokens[closed.open_index + 1 : i]
            )
            self.methods.append(m)
        if parent.kind in ("type", "anon"):
            parent.member_start = i + 1
        if closed.kind in ("then", "vthen"):
            parent.last_then_cond = closed.cond
        if closed.kind == "arrayinit":
            return  # part of an expression; statement continues
        nxt = self.tokens[i + 1].text if i + 1 < len(self.tokens) else ""
        if nxt in ("else", "catch", "finally", "while"):
            return  # same statement continues
        parent.at_boundary = True
        self._pop_virtuals()

    def _pop_virtuals(self) -> None:
        while self.top().kind in _VIRTUAL:
            closed = self.stack.pop()
            if closed.kind == "vthen":
                self.top().last_then_cond = closed.cond
            self.top().at_boundary = True

    def _semicolon(self, i: int) -> None:
        scope = self.top()
        if scope.paren_depth > 0:
            return  # for-header semicolon
        if scope.kind in ("type", "anon"):
            scope.member_start = i + 1
            if scope.is_enum:
                scope.enum_constants_done = True
            return
        scope.at_boundary = True
        self._pop_virtuals()


def _collect_logger_vars(tokens: list[Token], type_suffix: str) -> set[str]:
    names: set[str] = set()
    for k in range(1, len(tokens) - 1):
        tok = tokens[k]
        if tok.kind != "ident" or tok.text in _KEYWORDS:
            continue
        prev = tokens[k - 1]
        nxt = tokens[k + 1].text
        if (
            prev.kind == "ident"
            and prev.text.endswith(type_suffix)
            and nxt in ("=", ";", ",", ")")
        ):
            names.add(tok.text)
    return names


def parse_java(
    text: str,
    watch_calls: frozenset[str] = frozenset(),
    logger_type_suffix: str = "Logger",
) -> JavaFileIndex:
    """Index one Java compilation unit.

    ``watch_calls`` bounds call recording to the given method names; pass an
    empty set when only methods/types are needed (history mining).
    """
    tokens = tokenize(text)
    walker = _Walker(tokens, watch_calls)
    walker.walk()
    return JavaFileIndex(
        methods=walker.methods,
        types=walker.types,
        calls=walker.calls,
        logger_vars=_collect_logger_vars(tokens, logger_type_suffix),
    )
