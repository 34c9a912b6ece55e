"""Decision functions over basis indices and their concrete sources.

A predicate classifies every basis index of a register as valid (a
solution) or invalid.  Three source forms are supported:

* boolean expressions over qubit variables, grammar::

      expr   := term (('|' | '^') term)*
      term   := factor ('&' factor)*
      factor := '~' factor | '(' expr ')' | 'b' digits | '0' | '1'

  with precedence ``~`` > ``&`` > (``|`` = ``^``, left-associative) and
  variable ``b<k>`` naming qubit ``k`` of the bit convention;

* a DIMACS CNF subset (``c`` comments, one ``p cnf <vars> <clauses>``
  header, 0-terminated clauses), variable ``v`` mapping to qubit ``v-1``;

* an explicit set of valid basis indices.

Each predicate also carries a set of excluded indices: an excluded index
is invalid regardless of the source.  Predicates are immutable; adding
exclusions returns a new predicate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, ParseError, RegisterMismatch, UnboundVariable
from .state import PhaseMask, Register

# Masks materialize as dense 2^m flag arrays; reject registers where that
# array would be unreasonably large.
MASK_COMPILE_CAP = 26


# ---------------------------------------------------------------------------
# Expression AST


class BoolExpr:
    """Base class for boolean expression nodes."""

    precedence = 4

    def truth(self, index: int) -> bool:
        """Evaluate at a single basis index."""
        raise NotImplementedError

    def table(self, indices: np.ndarray) -> np.ndarray:
        """Evaluate over an array of basis indices at once."""
        raise NotImplementedError

    def max_variable(self) -> int:
        """Largest qubit index referenced, or -1 if none."""
        return -1

    def to_text(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Var(BoolExpr):
    index: int

    def truth(self, index):
        return (index >> self.index) & 1 == 1

    def table(self, indices):
        return ((indices >> self.index) & 1).astype(bool)

    def max_variable(self):
        return self.index

    def to_text(self):
        return f"b{self.index}"


@dataclass(frozen=True)
class Const(BoolExpr):
    value: bool

    def truth(self, index):
        return self.value

    def table(self, indices):
        return np.full(indices.shape, self.value, dtype=bool)

    def to_text(self):
        return "1" if self.value else "0"


@dataclass(frozen=True)
class Not(BoolExpr):
    operand: BoolExpr
    precedence = 3

    def truth(self, index):
        return not self.operand.truth(index)

    def table(self, indices):
        return ~self.operand.table(indices)

    def max_variable(self):
        return self.operand.max_variable()

    def to_text(self):
        inner = self.operand.to_text()
        if self.operand.precedence < self.precedence:
            inner = f"({inner})"
        return f"~{inner}"


@dataclass(frozen=True)
class _Binary(BoolExpr):
    lhs: BoolExpr
    rhs: BoolExpr
    symbol = "?"

    @staticmethod
    def _combine(a, b):
        raise NotImplementedError

    def truth(self, index):
        return bool(self._combine(self.lhs.truth(index), self.rhs.truth(index)))

    def table(self, indices):
        return self._combine(self.lhs.table(indices), self.rhs.table(indices))

    def max_variable(self):
        return max(self.lhs.max_variable(), self.rhs.max_variable())

    def to_text(self):
        left = self.lhs.to_text()
        if self.lhs.precedence < self.precedence:
            left = f"({left})"
        right = self.rhs.to_text()
        # Parenthesize equal precedence on the right to keep left association.
        if self.rhs.precedence <= self.precedence:
            right = f"({right})"
        return f"{left} {self.symbol} {right}"


class And(_Binary):
    precedence = 2
    symbol = "&"

    @staticmethod
    def _combine(a, b):
        return a & b


class Or(_Binary):
    precedence = 1
    symbol = "|"

    @staticmethod
    def _combine(a, b):
        return a | b


class Xor(_Binary):
    precedence = 1
    symbol = "^"

    @staticmethod
    def _combine(a, b):
        return a ^ b


# ---------------------------------------------------------------------------
# Expression parser

_SINGLE_CHAR_TOKENS = {"~", "&", "|", "^", "(", ")", "0", "1"}


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    """Produce (kind, value, offset) triples; kind 'var' carries the index."""
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _SINGLE_CHAR_TOKENS:
            tokens.append((ch, 0, pos))
            pos += 1
            continue
        if ch == "b":
            start = pos + 1
            end = start
            while end < len(text) and text[end].isdigit():
                end += 1
            if end == start:
                raise ParseError("expected digits after 'b'", start)
            tokens.append(("var", int(text[start:end]), pos))
            pos = end
            continue
        raise ParseError(
            f"unexpected character {ch!r}; expected '~', '(', ')', '&', '|', "
            "'^', 'b<k>', '0' or '1'",
            pos,
        )
    tokens.append(("end", 0, len(text)))
    return tokens


class _ExprParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> BoolExpr:
        node = self.expr()
        kind, _, offset = self.peek()
        if kind != "end":
            raise ParseError(
                f"unexpected {kind!r}; expected '&', '|', '^' or end of input",
                offset,
            )
        return node

    def expr(self) -> BoolExpr:
        node = self.term()
        while self.peek()[0] in ("|", "^"):
            kind, _, _ = self.advance()
            rhs = self.term()
            node = Or(node, rhs) if kind == "|" else Xor(node, rhs)
        return node

    def term(self) -> BoolExpr:
        node = self.factor()
        while self.peek()[0] == "&":
            self.advance()
            node = And(node, self.factor())
        return node

    def factor(self) -> BoolExpr:
        kind, value, offset = self.peek()
        if kind == "~":
            self.advance()
            return Not(self.factor())
        if kind == "(":
            self.advance()
            node = self.expr()
            kind, _, offset = self.peek()
            if kind != ")":
                raise ParseError("expected ')'", offset)
            self.advance()
            return node
        if kind == "var":
            self.advance()
            return Var(value)
        if kind in ("0", "1"):
            self.advance()
            return Const(kind == "1")
        raise ParseError(
            "expected '~', '(', a variable 'b<k>', '0' or '1'", offset
        )


def parse_expr(text: str) -> BoolExpr:
    """Parse a boolean expression; raises ParseError with a byte offset."""
    return _ExprParser(_tokenize(text)).parse()


# ---------------------------------------------------------------------------
# DIMACS CNF subset


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of signed 1-based variable ids; variable v is qubit v-1."""

    variable_count: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.variable_count < 0:
            raise ValueError("variable_count must be >= 0")
        clauses = tuple(tuple(cl) for cl in self.clauses)
        for clause in clauses:
            if not clause:
                raise ValueError("empty clause")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise ValueError(f"literal {lit} out of range")
        object.__setattr__(self, "clauses", clauses)

    def truth(self, index: int) -> bool:
        for clause in self.clauses:
            if not any(
                ((index >> (abs(lit) - 1)) & 1) == (1 if lit > 0 else 0)
                for lit in clause
            ):
                return False
        return True

    def table(self, indices: np.ndarray) -> np.ndarray:
        result = np.ones(indices.shape, dtype=bool)
        for clause in self.clauses:
            satisfied = np.zeros(indices.shape, dtype=bool)
            for lit in clause:
                bit = ((indices >> (abs(lit) - 1)) & 1).astype(bool)
                satisfied |= bit if lit > 0 else ~bit
            result &= satisfied
        return result

    def max_variable(self) -> int:
        return self.variable_count - 1


def parse_dimacs(text: str) -> CnfFormula:
    """Parse the DIMACS CNF subset; raises ParseError with a byte offset."""
    header = None
    body = []  # (int value, offset) literal stream after the header
    line_start = 0
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if stripped and not stripped.startswith("c"):
            fields = []
            col = 0
            for field in line.split():
                col = line.index(field, col)
                fields.append((field, line_start + col))
                col += len(field)
            if header is None:
                if len(fields) != 4 or fields[0][0] != "p" or fields[1][0] != "cnf":
                    raise ParseError(
                        "expected header 'p cnf <vars> <clauses>'", fields[0][1]
                    )
                try:
                    var_count = int(fields[2][0])
                    clause_count = int(fields[3][0])
                except ValueError:
                    raise ParseError(
                        "expected integer counts in 'p cnf <vars> <clauses>'",
                        fields[2][1],
                    ) from None
                if var_count < 0 or clause_count < 0:
                    raise ParseError("header counts must be non-negative",
                                     fields[2][1])
                header = (var_count, clause_count)
            else:
                for field, offset in fields:
                    try:
                        body.append((int(field), offset))
                    except ValueError:
                        raise ParseError(
                            f"expected a literal or 0, got {field!r}", offset
                        ) from None
        line_start += len(line)
    if header is None:
        raise ParseError("expected header 'p cnf <vars> <clauses>'", len(text))
    var_count, clause_count = header

    clauses = []
    current: list[int] = []
    for lit, offset in body:
        if lit == 0:
            if not current:
                raise ParseError("empty clause", offset)
            clauses.append(tuple(current))
            current = []
        else:
            if abs(lit) > var_count:
                raise ParseError(
                    f"literal {lit} out of range 1..{var_count}", offset
                )
            current.append(lit)
    if current:
        raise ParseError("clause not terminated by 0", len(text))
    if len(clauses) != clause_count:
        raise ParseError(
            f"header declares {clause_count} clauses, found {len(clauses)}",
            len(text),
        )
    return CnfFormula(var_count, tuple(clauses))


# ---------------------------------------------------------------------------
# Predicate


@dataclass(frozen=True)
class Predicate:
    """A total valid/invalid classification of a register's basis indices.

    ``source`` is a BoolExpr, a CnfFormula, or an explicit collection of
    valid indices.  Excluded indices are invalid regardless of the source.
    """

    source: object
    register: Register
    exclusions: frozenset = frozenset()

    def __post_init__(self):
        m = self.register.total_qubits
        dim = self.register.dimension
        src = self.source
        if isinstance(src, (BoolExpr, CnfFormula)):
            top = src.max_variable()
            if top >= m:
                raise UnboundVariable(
                    f"predicate references qubit {top} but the register has "
                    f"only {m} qubits"
                )
        else:
            src = frozenset(int(i) for i in src)
            for i in src:
                if not 0 <= i < dim:
                    raise IndexOutOfRange(f"valid index {i} outside [0, {dim})")
            object.__setattr__(self, "source", src)
        excl = frozenset(int(i) for i in self.exclusions)
        for i in excl:
            if not 0 <= i < dim:
                raise IndexOutOfRange(f"excluded index {i} outside [0, {dim})")
        object.__setattr__(self, "exclusions", excl)


def evaluate(pred: Predicate, index: int, ignore_exclusions: bool = False) -> bool:
    """Truth of the predicate at ``index``; excluded indices read invalid."""
    dim = pred.register.dimension
    if not 0 <= index < dim:
        raise IndexOutOfRange(f"index {index} outside [0, {dim})")
    if not ignore_exclusions and index in pred.exclusions:
        return False
    src = pred.source
    if isinstance(src, (BoolExpr, CnfFormula)):
        return bool(src.truth(index))
    return index in src


def compile_mask(pred: Predicate, register: Register) -> PhaseMask:
    """Materialize the predicate as a dense valid-flag mask."""
    if register != pred.register:
        raise RegisterMismatch(
            f"predicate bound to {pred.register}, asked to compile for {register}"
        )
    m = register.total_qubits
    if m > MASK_COMPILE_CAP:
        raise ValueError(
            f"mask over {m} qubits exceeds the {MASK_COMPILE_CAP}-qubit "
            "materialization cap"
        )
    src = pred.source
    if isinstance(src, (BoolExpr, CnfFormula)):
        flags = src.table(np.arange(register.dimension, dtype=np.int64))
    else:
        flags = np.zeros(register.dimension, dtype=bool)
        flags[list(src)] = True
    if pred.exclusions:
        flags = flags.copy()
        flags[list(pred.exclusions)] = False
    return PhaseMask(register, flags)


def with_exclusions(pred: Predicate, found) -> Predicate:
    """A copy of ``pred`` whose valid set additionally excludes ``found``."""
    return Predicate(pred.source, pred.register,
                     pred.exclusions | frozenset(int(i) for i in found))
