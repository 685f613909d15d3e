"""Text formats: the ``.kmod`` model language and property strings.

.kmod grammar (line oriented, ``#`` starts a comment, blank lines ignored)::

    var NAME : v1 | v2 | ...
    state ID : n1=v1, n2=v2, ...      # every declared variable; `_` = undefined
    init ID
    trans ID -> ID
    label ID : p1, p2

Variables must be declared before states, and states before they are
referenced by ``init``/``trans``/``label``.  Properties are ``AG <pred>`` or
``GF <pred>`` where predicates are built from ``name=value``, ``name=_``,
bare proposition names, ``!``, ``&``, ``|`` and parentheses (``!`` binds
tightest, then ``&``, then ``|``).
"""

from __future__ import annotations

import re

from .model import (
    And,
    Eq,
    KripkeModel,
    Not,
    Or,
    Predicate,
    Prop,
    PropertyFormula,
    State,
    UNDEF_TOKEN,
    Value,
    VariableDecl,
    render_value,
    validate_model,
)


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_ID_RE = re.compile(r"[A-Za-z0-9_]+")


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def parse_model(text: str) -> KripkeModel:
    """Parse ``.kmod`` text; raises ParseError at the first violation."""
    variables: list[VariableDecl] = []
    domains: dict[str, set[str]] = {}
    states: dict[str, State] = {}
    initial: set[str] = set()
    transitions: set[tuple[str, str]] = set()
    labels: dict[str, set[str]] = {}

    def err(lineno: int, col: int, msg: str) -> ParseError:
        return ParseError(lineno, col, msg)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        col0 = indent + 1

        keyword, _, rest = body.partition(" ")
        rest = rest.strip()
        rest_col = col0 + (len(body) - len(rest)) if rest else col0

        if keyword == "var":
            m = re.match(r"([A-Za-z][A-Za-z0-9_]*)\s*:\s*(.+)$", rest)
            if not m:
                raise err(lineno, col0, "expected `var NAME : v1 | v2 | ...`")
            name = m.group(1)
            if name in domains:
                raise err(lineno, rest_col, f"duplicate variable {name!r}")
            values = [v.strip() for v in m.group(2).split("|")]
            for v in values:
                if not _ID_RE.fullmatch(v) or v == UNDEF_TOKEN:
                    raise err(lineno, col0, f"bad domain value {v!r} for {name!r}")
            if len(set(values)) != len(values):
                raise err(lineno, col0, f"duplicate domain value in {name!r}")
            variables.append(VariableDecl(name, tuple(values)))
            domains[name] = set(values)
        elif keyword == "state":
            if not variables:
                raise err(lineno, col0, "no variables declared")
            m = re.match(r"([A-Za-z0-9_]+)\s*:\s*(.+)$", rest)
            if not m:
                raise err(lineno, col0, "expected `state ID : n1=v1, n2=v2, ...`")
            sid = m.group(1)
            if sid == UNDEF_TOKEN:
                raise err(lineno, rest_col, "`_` is not a valid state id")
            if sid in states:
                raise err(lineno, rest_col, f"duplicate state {sid!r}")
            assignment: dict[str, Value] = {}
            for part in m.group(2).split(","):
                part = part.strip()
                am = re.match(r"([A-Za-z][A-Za-z0-9_]*)\s*=\s*([A-Za-z0-9_]+)$", part)
                if not am:
                    raise err(lineno, col0, f"bad assignment {part!r}")
                var, value = am.group(1), am.group(2)
                if var not in domains:
                    raise err(lineno, col0, f"undeclared variable {var!r}")
                if var in assignment:
                    raise err(lineno, col0, f"variable {var!r} assigned twice")
                if value == UNDEF_TOKEN:
                    assignment[var] = None
                elif value in domains[var]:
                    assignment[var] = value
                else:
                    raise err(lineno, col0, f"value {value} not in domain of {var}")
            missing = [v for v in domains if v not in assignment]
            if missing:
                raise err(lineno, col0, f"state {sid!r} does not assign {missing[0]!r}")
            states[sid] = State(sid, assignment)
        elif keyword == "init":
            sid = rest
            if sid not in states:
                raise err(lineno, rest_col, f"unknown state {sid!r}")
            initial.add(sid)
        elif keyword == "trans":
            m = re.match(r"([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)$", rest)
            if not m:
                raise err(lineno, col0, "expected `trans ID -> ID`")
            for sid in (m.group(1), m.group(2)):
                if sid not in states:
                    raise err(lineno, rest_col, f"unknown state {sid!r}")
            transitions.add((m.group(1), m.group(2)))
        elif keyword == "label":
            m = re.match(r"([A-Za-z0-9_]+)\s*:\s*(.+)$", rest)
            if not m:
                raise err(lineno, col0, "expected `label ID : p1, p2`")
            sid = m.group(1)
            if sid not in states:
                raise err(lineno, rest_col, f"unknown state {sid!r}")
            props = [p.strip() for p in m.group(2).split(",")]
            for p in props:
                if not _NAME_RE.fullmatch(p):
                    raise err(lineno, col0, f"bad proposition name {p!r}")
            labels.setdefault(sid, set()).update(props)
        else:
            raise err(lineno, col0, f"unknown directive {keyword!r}")

    if not variables:
        raise ParseError(1, 1, "no variables declared")

    model = KripkeModel(
        variables=variables,
        states=states,
        initial=frozenset(initial),
        transitions=frozenset(transitions),
        labels={sid: frozenset(ps) for sid, ps in labels.items()},
    )
    violations = validate_model(model)
    if violations:  # unreachable given the checks above; belt and braces
        raise ParseError(1, 1, violations[0])
    return model


def render_model(model: KripkeModel) -> str:
    """Pretty-print a model back to .kmod text (inverse of parse_model)."""
    lines: list[str] = []
    for decl in model.variables:
        lines.append(f"var {decl.name} : " + " | ".join(decl.domain))
    for sid in sorted(model.states):
        state = model.states[sid]
        parts = ", ".join(
            f"{d.name}={render_value(state.assignment[d.name])}" for d in model.variables
        )
        lines.append(f"state {sid} : {parts}")
    for sid in sorted(model.initial):
        lines.append(f"init {sid}")
    for a, b in sorted(model.transitions):
        lines.append(f"trans {a} -> {b}")
    for sid in sorted(model.labels):
        if model.labels[sid]:
            lines.append(f"label {sid} : " + ", ".join(sorted(model.labels[sid])))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Property strings
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z0-9_]+)|([=!&|()]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, int]] = []  # (token, 1-based column)
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                col = len(text) - len(stripped) + 1
                raise ParseError(1, col, f"unexpected character {stripped[0]!r}")
            tok = m.group(1) or m.group(2)
            self.tokens.append((tok, m.start(1) + 1 if m.group(1) else m.start(2) + 1))
            pos = m.end()
        self.index = 0

    def peek(self) -> str | None:
        return self.tokens[self.index][0] if self.index < len(self.tokens) else None

    def column(self) -> int:
        if self.index < len(self.tokens):
            return self.tokens[self.index][1]
        return len(self.text) + 1

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(1, self.column(), "unexpected end of input")
        self.index += 1
        return tok


def _parse_pred(ts: _Tokens) -> Predicate:
    return _parse_or(ts)


def _parse_or(ts: _Tokens) -> Predicate:
    parts = [_parse_and(ts)]
    while ts.peek() == "|":
        ts.take()
        parts.append(_parse_and(ts))
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


def _parse_and(ts: _Tokens) -> Predicate:
    parts = [_parse_unary(ts)]
    while ts.peek() == "&":
        ts.take()
        parts.append(_parse_unary(ts))
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def _parse_unary(ts: _Tokens) -> Predicate:
    if ts.peek() == "!":
        ts.take()
        return Not(_parse_unary(ts))
    if ts.peek() == "(":
        ts.take()
        inner = _parse_pred(ts)
        col = ts.column()
        if ts.peek() != ")":
            raise ParseError(1, col, "expected `)`")
        ts.take()
        return inner
    col = ts.column()
    tok = ts.take()
    if not _NAME_RE.fullmatch(tok):
        raise ParseError(1, col, f"expected a name, got {tok!r}")
    if ts.peek() == "=":
        ts.take()
        vcol = ts.column()
        value = ts.take()
        if value == UNDEF_TOKEN:
            return Eq(tok, None)
        if not _ID_RE.fullmatch(value):
            raise ParseError(1, vcol, f"bad value {value!r}")
        return Eq(tok, value)
    return Prop(tok)


def parse_property(text: str) -> PropertyFormula:
    """Parse ``AG <pred>`` or ``GF <pred>``; raises ParseError otherwise."""
    ts = _Tokens(text)
    op = ts.peek()
    if op is None:
        raise ParseError(1, 1, "empty property")
    if op not in ("AG", "GF"):
        raise ParseError(1, ts.column(), f"unsupported temporal operator {op!r}")
    ts.take()
    pred = _parse_pred(ts)
    if ts.peek() is not None:
        raise ParseError(1, ts.column(), f"trailing input {ts.peek()!r}")
    return PropertyFormula(op, pred)


def render_predicate(pred: Predicate, parent: str = "") -> str:
    match pred:
        case Eq(var, value):
            return f"{var}={render_value(value)}"
        case Prop(name):
            return name
        case Not(inner):
            return "!" + render_predicate(inner, "!")
        case And(parts):
            text = " & ".join(render_predicate(p, "&") for p in parts)
            return f"({text})" if parent in ("!",) else text
        case Or(parts):
            text = " | ".join(render_predicate(p, "|") for p in parts)
            return f"({text})" if parent in ("!", "&") else text
    raise TypeError(f"not a predicate: {pred!r}")


def render_property(formula: PropertyFormula) -> str:
    return f"{formula.operator} {render_predicate(formula.predicate)}"
