"""Parser for the ``.phax`` defeasible-theory text format.

Grammar (statements end with ``.``, ``#`` starts a line comment):

    theory NAME.
    const a, b, c.
    axiom ID: LITERAL [attrs].
    premise ID: LITERAL [attrs].
    strict ID: LIT, LIT -> LITERAL.
    defeasible ID: LIT, LIT => LITERAL [weight=0.9, scheme=expert_opinion].
    pref ID > ID.

Literals are ``pred(a, B)`` with ``~`` for negation; uppercase-initial
names are variables, lowercase constants. Premise attributes: confidence,
jargon, source, text_lay, text_decision_maker, text_professional.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TheoryParseError
from .theory import (
    AXIOM,
    BANDS,
    DEFEASIBLE,
    ORDINARY,
    STRICT,
    Diagnostic,
    Literal,
    Premise,
    Rule,
    Term,
    Theory,
    validate_theory,
)

_KEYWORDS = {"theory", "const", "axiom", "premise", "strict", "defeasible", "pref"}
_PUNCT = {":", ",", "(", ")", "[", "]", ">", "~", "."}


@dataclass
class Token:
    kind: str  # ident, number, string, punct, arrow_strict, arrow_defeasible, eq, eof
    value: str
    line: int
    col: int


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.diagnostics: list[Diagnostic] = []

    def _advance(self, n: int = 1):
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def tokens(self) -> list[Token]:
        out: list[Token] = []
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch in " \t\r\n":
                self._advance()
                continue
            if ch == "#":
                while self.pos < len(text) and text[self.pos] != "\n":
                    self._advance()
                continue
            line, col = self.line, self.col
            if ch.isalpha() or ch == "_":
                start = self.pos
                while self.pos < len(text) and (
                    text[self.pos].isalnum() or text[self.pos] == "_"
                ):
                    self._advance()
                out.append(Token("ident", text[start : self.pos], line, col))
                continue
            if ch.isdigit():
                start = self.pos
                while self.pos < len(text) and text[self.pos].isdigit():
                    self._advance()
                if (
                    self.pos + 1 < len(text)
                    and text[self.pos] == "."
                    and text[self.pos + 1].isdigit()
                ):
                    self._advance()
                    while self.pos < len(text) and text[self.pos].isdigit():
                        self._advance()
                out.append(Token("number", text[start : self.pos], line, col))
                continue
            if ch == '"':
                self._advance()
                chunks: list[str] = []
                closed = False
                while self.pos < len(text):
                    c = text[self.pos]
                    if c == '"':
                        self._advance()
                        closed = True
                        break
                    if c == "\\" and self.pos + 1 < len(text):
                        esc = text[self.pos + 1]
                        chunks.append({"n": "\n", "t": "\t"}.get(esc, esc))
                        self._advance(2)
                        continue
                    if c == "\n":
                        break
                    chunks.append(c)
                    self._advance()
                if not closed:
                    self.diagnostics.append(
                        Diagnostic("unterminated string", line, col)
                    )
                out.append(Token("string", "".join(chunks), line, col))
                continue
            if ch == "=" and text[self.pos : self.pos + 2] == "=>":
                self._advance(2)
                out.append(Token("arrow_defeasible", "=>", line, col))
                continue
            if ch == "-" and text[self.pos : self.pos + 2] == "->":
                self._advance(2)
                out.append(Token("arrow_strict", "->", line, col))
                continue
            if ch == "=":
                self._advance()
                out.append(Token("eq", "=", line, col))
                continue
            if ch in _PUNCT:
                self._advance()
                out.append(Token("punct", ch, line, col))
                continue
            self.diagnostics.append(
                Diagnostic(f"unexpected character {ch!r}", line, col)
            )
            self._advance()
        out.append(Token("eof", "", self.line, self.col))
        return out


@dataclass
class ParseResult:
    theory: Theory | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.theory is not None

    def format_diagnostics(self, filename: str = "<theory>") -> str:
        return "\n".join(d.format(filename) for d in self.diagnostics)


class _StatementError(Exception):
    """Internal: abort the current statement and resynchronize at '.'."""


class _Parser:
    def __init__(self, tokens: list[Token], diagnostics: list[Diagnostic]):
        self.tokens = tokens
        self.i = 0
        self.diagnostics = diagnostics
        self.positions: dict[str, tuple[int, int]] = {}

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def _error(self, message: str, tok: Token | None = None):
        tok = tok or self.cur
        self.diagnostics.append(Diagnostic(message, tok.line, tok.col))
        raise _StatementError()

    def _accept(self, kind: str, value: str | None = None) -> Token | None:
        tok = self.cur
        if tok.kind == kind and (value is None or tok.value == value):
            self.i += 1
            return tok
        return None

    def _expect(self, kind: str, value: str | None = None, what: str = "") -> Token:
        tok = self._accept(kind, value)
        if tok is None:
            want = what or value or kind
            self._error(f"expected {want}, found {self.cur.value!r}")
        return tok

    def _synchronize(self):
        while self.cur.kind != "eof":
            tok = self.cur
            self.i += 1
            if tok.kind == "punct" and tok.value == ".":
                return

    def _ident(self, what: str) -> Token:
        return self._expect("ident", what=what)

    def _literal(self) -> Literal:
        positive = not self._accept("punct", "~")
        pred = self._ident("predicate")
        args: list[Term] = []
        if self._accept("punct", "("):
            if not self._accept("punct", ")"):
                while True:
                    args.append(Term(self._ident("term").value))
                    if self._accept("punct", ")"):
                        break
                    self._expect("punct", ",")
        return Literal(pred.value, tuple(args), positive)

    def _attributes(self) -> dict[str, object]:
        attrs: dict[str, object] = {}
        if not self._accept("punct", "["):
            return attrs
        if self._accept("punct", "]"):
            return attrs
        while True:
            key = self._ident("attribute name")
            self._expect("eq", what="'='")
            tok = self.cur
            if tok.kind == "number":
                self.i += 1
                attrs[key.value] = float(tok.value)
            elif tok.kind == "string":
                self.i += 1
                attrs[key.value] = tok.value
            elif tok.kind == "ident":
                self.i += 1
                attrs[key.value] = tok.value
            else:
                self._error("expected attribute value")
            if self._accept("punct", "]"):
                break
            self._expect("punct", ",")
        return attrs

    def _end(self):
        self._expect("punct", ".", what="'.'")

    def _register(self, tok: Token, what: str) -> str:
        if tok.value in self.positions:
            self.diagnostics.append(
                Diagnostic(f"duplicate id '{tok.value}'", tok.line, tok.col)
            )
        else:
            self.positions[tok.value] = (tok.line, tok.col)
        return tok.value

    def _check_attrs(self, attrs: dict, allowed: set[str], tok: Token):
        for key in attrs:
            if key not in allowed:
                self.diagnostics.append(
                    Diagnostic(f"unknown attribute '{key}'", tok.line, tok.col)
                )

    def parse(self, default_name: str) -> Theory:
        name = default_name
        constants: set[str] = set()
        premises: list[Premise] = []
        rules: list[Rule] = []
        preferences: set[tuple[str, str]] = set()
        first = True

        while self.cur.kind != "eof":
            try:
                tok = self.cur
                if tok.kind != "ident":
                    self._error(f"expected statement keyword, found {tok.value!r}")
                keyword = tok.value
                if keyword == "theory":
                    self.i += 1
                    name_tok = self._ident("theory name")
                    if not first:
                        self.diagnostics.append(
                            Diagnostic(
                                "theory header must be the first statement",
                                tok.line,
                                tok.col,
                            )
                        )
                    name = name_tok.value
                    self._end()
                elif keyword == "const":
                    self.i += 1
                    while True:
                        c = self._ident("constant")
                        if Term(c.value).is_variable:
                            self.diagnostics.append(
                                Diagnostic(
                                    f"constant must be lowercase: '{c.value}'",
                                    c.line,
                                    c.col,
                                )
                            )
                        else:
                            constants.add(c.value)
                        if not self._accept("punct", ","):
                            break
                    self._end()
                elif keyword in ("axiom", "premise"):
                    self.i += 1
                    id_tok = self._ident("premise id")
                    pid = self._register(id_tok, "premise")
                    self._expect("punct", ":")
                    lit = self._literal()
                    attrs = self._attributes()
                    self._end()
                    allowed = {"confidence", "jargon", "source"} | {
                        f"text_{b}" for b in BANDS
                    }
                    self._check_attrs(attrs, allowed, id_tok)
                    display = {
                        b: str(attrs[f"text_{b}"])
                        for b in BANDS
                        if f"text_{b}" in attrs
                    }
                    kind = AXIOM if keyword == "axiom" else ORDINARY
                    confidence = attrs.get("confidence", 1.0)
                    if not isinstance(confidence, float):
                        self.diagnostics.append(
                            Diagnostic("confidence must be a number", id_tok.line, id_tok.col)
                        )
                        confidence = 1.0
                    jargon = attrs.get("jargon", 0.0)
                    if not isinstance(jargon, float):
                        self.diagnostics.append(
                            Diagnostic("jargon must be a number", id_tok.line, id_tok.col)
                        )
                        jargon = 0.0
                    premises.append(
                        Premise(
                            id=pid,
                            literal=lit,
                            kind=kind,
                            confidence=confidence,
                            jargon=jargon,
                            source=str(attrs.get("source", "")),
                            display_text=display,
                        )
                    )
                elif keyword in ("strict", "defeasible"):
                    self.i += 1
                    id_tok = self._ident("rule id")
                    rid = self._register(id_tok, "rule")
                    self._expect("punct", ":")
                    body: list[Literal] = []
                    arrow = self._accept("arrow_strict") or self._accept(
                        "arrow_defeasible"
                    )
                    if arrow is None:
                        while True:
                            body.append(self._literal())
                            if self._accept("punct", ","):
                                continue
                            arrow = self._accept("arrow_strict") or self._accept(
                                "arrow_defeasible"
                            )
                            if arrow is None:
                                self._error("expected '->' or '=>'")
                            break
                    kind = STRICT if arrow.kind == "arrow_strict" else DEFEASIBLE
                    if keyword == "strict" and kind != STRICT:
                        self.diagnostics.append(
                            Diagnostic("strict rules use '->'", arrow.line, arrow.col)
                        )
                        kind = STRICT
                    if keyword == "defeasible" and kind != DEFEASIBLE:
                        self.diagnostics.append(
                            Diagnostic("defeasible rules use '=>'", arrow.line, arrow.col)
                        )
                        kind = DEFEASIBLE
                    head = self._literal()
                    attrs = self._attributes()
                    self._end()
                    self._check_attrs(attrs, {"weight", "scheme"}, id_tok)
                    weight = attrs.get("weight", 1.0)
                    if not isinstance(weight, float):
                        self.diagnostics.append(
                            Diagnostic("weight must be a number", id_tok.line, id_tok.col)
                        )
                        weight = 1.0
                    scheme = attrs.get("scheme")
                    rules.append(
                        Rule(
                            id=rid,
                            kind=kind,
                            body=tuple(body),
                            head=head,
                            weight=weight,
                            scheme_tag=str(scheme) if scheme is not None else None,
                        )
                    )
                elif keyword == "pref":
                    self.i += 1
                    hi = self._ident("id")
                    self._expect("punct", ">", what="'>'")
                    lo = self._ident("id")
                    self._end()
                    preferences.add((hi.value, lo.value))
                else:
                    self._error(f"unknown statement keyword '{keyword}'")
            except _StatementError:
                self._synchronize()
            first = False

        return Theory(
            name=name,
            constants=frozenset(constants),
            premises=tuple(premises),
            rules=tuple(rules),
            preferences=frozenset(preferences),
        )


def parse_theory(text: str, default_name: str = "unnamed") -> ParseResult:
    """Parse DSL source into a validated Theory, or collect diagnostics.

    The result carries a theory only when there are no errors: syntax
    problems and invariant violations (duplicate ids, arity mismatches,
    preference cycles, ...) all surface as diagnostics with positions.
    """
    lexer = _Lexer(text)
    tokens = lexer.tokens()
    diagnostics = list(lexer.diagnostics)
    parser = _Parser(tokens, diagnostics)
    theory = parser.parse(default_name)

    reported = {d.message for d in diagnostics}
    for diag in validate_theory(theory):
        if diag.message in reported:
            continue
        ident = _mentioned_id(diag.message, parser.positions)
        if ident is not None:
            line, col = parser.positions[ident]
            diag = Diagnostic(diag.message, line, col, diag.severity)
        diagnostics.append(diag)

    if any(d.severity == "error" for d in diagnostics):
        return ParseResult(None, diagnostics)
    return ParseResult(theory, diagnostics)


def _mentioned_id(message: str, positions: dict[str, tuple[int, int]]) -> str | None:
    for ident in sorted(positions, key=len, reverse=True):
        if f"'{ident}'" in message or f"(premise {ident})" in message or (
            f"(rule {ident})" in message
        ):
            return ident
    return None


def theory_from_source(text: str, default_name: str = "unnamed") -> Theory:
    """Parse and return the theory, raising TheoryParseError on any diagnostic."""
    result = parse_theory(text, default_name)
    if not result.ok:
        raise TheoryParseError(result.diagnostics)
    return result.theory


def parse_literal(text: str) -> Literal:
    """Parse a single literal such as ``~prefer(heart_attack)``."""
    lexer = _Lexer(text)
    tokens = lexer.tokens()
    if lexer.diagnostics:
        raise TheoryParseError(lexer.diagnostics)
    parser = _Parser(tokens, [])
    try:
        lit = parser._literal()
    except _StatementError:
        raise TheoryParseError(parser.diagnostics) from None
    if parser.cur.kind != "eof":
        raise TheoryParseError(
            [Diagnostic("trailing input after literal", parser.cur.line, parser.cur.col)]
        )
    return lit
