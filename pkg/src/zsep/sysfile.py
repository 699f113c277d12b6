"""Text formats: polynomial system files, ordering matrices, point sets.

System file (line-oriented, ``#`` starts a comment anywhere):

    field Q          | field F2 [boolean]
    vars x1 x2 x3    | vars x[1..3]
    poly x1*x2^2 - 1/2*x3 + 1
    poly ...

Coefficients are integers or ``a/b`` fractions (fractions only over Q);
factors are variable names with optional ``^E``.  Boolean systems are
square-free normalized as they are read.
"""

from __future__ import annotations

import re

from .poly import FIELD_F2, FIELD_Q, Polynomial, PolySystem, QQ, Ring, format_polynomial


class SysFileError(ValueError):
    """Parse failure with 1-based line and column."""

    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


_RANGE_RE = re.compile(r"^([A-Za-z_]\w*)\[(\d+)\.\.(\d+)\]$")
_NAME_RE = re.compile(r"^[A-Za-z_]\w*$")


def _strip_comment(raw):
    cut = raw.find("#")
    return raw if cut < 0 else raw[:cut]


def _parse_vars(body, lineno, col0):
    m = _RANGE_RE.match(body.strip())
    if m:
        prefix, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
        if hi < lo:
            raise SysFileError("empty variable range", lineno, col0)
        return tuple(f"{prefix}{i}" for i in range(lo, hi + 1))
    names = body.split()
    for nm in names:
        if not _NAME_RE.match(nm):
            raise SysFileError(f"bad variable name {nm!r}", lineno, col0 + body.find(nm) + 1)
    return tuple(names)


class _ExprParser:
    """Recursive-descent parser for poly expressions (flat sums of terms)."""

    _TOKEN_RE = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_]\w*)|(\^)|(\*)|(\+)|(-))")

    def __init__(self, ring, text, lineno, col0):
        self.ring = ring
        self.text = text
        self.lineno = lineno
        self.col0 = col0
        self.pos = 0
        self.tokens = []
        self._tokenize()
        self.i = 0

    def _fail(self, msg, pos):
        raise SysFileError(msg, self.lineno, self.col0 + pos + 1)

    def _tokenize(self):
        pos = 0
        while pos < len(self.text):
            m = self._TOKEN_RE.match(self.text, pos)
            if not m:
                rest = self.text[pos:]
                stripped = rest.lstrip()
                if stripped:
                    self._fail(f"unexpected character {stripped[0]!r}", pos + len(rest) - len(stripped))
                break
            kind = next(k for k, v in enumerate(m.groups()) if v is not None)
            self.tokens.append((kind, m.group(kind + 1), m.start(kind + 1)))
            pos = m.end()

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self):
        terms = []
        sign = 1
        kind, val, pos = self._peek()
        if kind is None:
            self._fail("empty expression", 0)
        if kind in (4, 5):
            sign = 1 if kind == 4 else -1
            self._take()
        while True:
            terms.append(self._term(sign))
            kind, val, pos = self._peek()
            if kind is None:
                break
            if kind == 4:
                sign = 1
            elif kind == 5:
                sign = -1
            else:
                self._fail(f"expected '+' or '-', got {val!r}", pos)
            self._take()
        return Polynomial.from_terms(self.ring, terms)

    def _term(self, sign):
        n = self.ring.nvars
        coeff = QQ(sign)
        exps = [0] * n
        saw_factor = False
        while True:
            kind, val, pos = self._peek()
            if kind == 0:
                self._take()
                if "/" in val:
                    if self.ring.field == FIELD_F2:
                        self._fail("fraction coefficient over F2", pos)
                    coeff = coeff * QQ(*map(int, val.split("/")))
                else:
                    coeff = coeff * int(val)
            elif kind == 1:
                self._take()
                try:
                    k = self.ring.var_index(val)
                except KeyError:
                    self._fail(f"unknown variable {val!r}", pos)
                e = 1
                kind2, _, _ = self._peek()
                if kind2 == 2:
                    self._take()
                    kind3, v3, p3 = self._take()
                    if kind3 != 0 or "/" in v3:
                        self._fail("exponent must be a non-negative integer", p3)
                    e = int(v3)
                exps[k] += e
            else:
                self._fail("expected coefficient or variable", pos)
            saw_factor = True
            kind, val, pos = self._peek()
            if kind == 3:
                self._take()
                continue
            break
        if not saw_factor:
            self._fail("empty term", self._peek()[2])
        return (tuple(exps), coeff)


def parse_system(text):
    """Parse a system file into a PolySystem."""
    ring = None
    field = None
    boolean = False
    gens = []
    saw_field = saw_vars = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        stripped = line.strip()
        head, _, body = stripped.partition(" ")
        body_col = indent + len(head) + 2
        if head == "field":
            if saw_field:
                raise SysFileError("duplicate field line", lineno, indent + 1)
            parts = body.split()
            if not parts or parts[0] not in (FIELD_Q, FIELD_F2):
                raise SysFileError("expected 'field Q' or 'field F2'", lineno, body_col)
            field = parts[0]
            if len(parts) == 2 and parts[1] == "boolean":
                boolean = True
            elif len(parts) > 1:
                raise SysFileError(f"unexpected field option {parts[1]!r}", lineno, body_col)
            if boolean and field != FIELD_F2:
                raise SysFileError("boolean mode requires field F2", lineno, body_col)
            saw_field = True
        elif head == "vars":
            if not saw_field:
                raise SysFileError("vars line before field line", lineno, indent + 1)
            if saw_vars:
                raise SysFileError("duplicate vars line", lineno, indent + 1)
            names = _parse_vars(body, lineno, body_col - 1)
            if not names:
                raise SysFileError("no variables", lineno, body_col)
            ring = Ring(names, field, boolean)
            saw_vars = True
        elif head == "poly":
            if ring is None:
                raise SysFileError("poly line before vars line", lineno, indent + 1)
            g = _ExprParser(ring, body, lineno, body_col - 1).parse()
            if g:
                gens.append(g)
        else:
            raise SysFileError(f"unknown directive {head!r}", lineno, indent + 1)
    if ring is None:
        raise SysFileError("missing field/vars header", 1, 1)
    return PolySystem(ring, gens)


def load_system(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read())


def format_system(system):
    """Render a PolySystem back into the file format (round-trips)."""
    ring = system.ring
    header = f"field {ring.field} boolean" if ring.boolean else f"field {ring.field}"
    lines = [header, "vars " + " ".join(ring.names)]
    for g in system.gens:
        lines.append("poly " + format_polynomial(g))
    return "\n".join(lines) + "\n"


def load_ordering_matrix(path, nvars):
    """Read an ordering matrix: one integer row per line, nvars columns."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = _strip_comment(raw).strip()
            if not line:
                continue
            try:
                row = [int(tok) for tok in line.split()]
            except ValueError:
                raise SysFileError("matrix entries must be integers", lineno, 1) from None
            if len(row) != nvars:
                raise SysFileError(f"expected {nvars} columns, got {len(row)}", lineno, 1)
            rows.append(row)
    if not rows:
        raise SysFileError("empty ordering matrix", 1, 1)
    return rows


def parse_points(text, nvars=None):
    """Parse a point-set file: one bit string per line, '#' comments."""
    pts = []
    width = nvars
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if not all(ch in "01" for ch in line):
            raise SysFileError("point must be a bit string", lineno, 1)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise SysFileError(f"expected {width} bits, got {len(line)}", lineno, 1)
        pts.append(tuple(int(ch) for ch in line))
    if not pts:
        raise SysFileError("empty point set", 1, 1)
    seen = set()
    for p in pts:
        if p in seen:
            raise SysFileError("duplicate point", 1, 1)
        seen.add(p)
    return pts


def load_points(path, nvars=None):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_points(fh.read(), nvars)


def format_points(pts):
    return "\n".join("".join(str(b) for b in p) for p in pts) + "\n"
