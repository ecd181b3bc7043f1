# This file is part of kappaforge, a toolkit for the kappa-Minkowski star-product algebra.
#
# Copyright 2017-2018 kappaforge contributors
#
# This library is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This library is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public
# along with this library.  If not, see <http://www.gnu.org/licenses/>.
#

"""
Small expression language over the library.

Grammar (statements are separated by newlines or ``;``, ``#`` starts a comment)::

  statement := name '=' expr | expr
  expr      := term (('+' | '-') term)*
  term      := unary (('*' | '/') unary)*
  unary     := '-' unary | factor
  factor    := number | '(' number ',' number ')' | name | call | '(' expr ')'
  call      := name '(' [arg (',' arg)*] ')'
  arg       := expr | name '=' expr

``*`` is always the star product (composition for operators, concatenation for words);
there is no pointwise product. ``/`` divides by scalars only.

Built-in names:

  ``t``, ``x``, ``one``                         symbolic coordinates and unit
  ``i``, ``kappa``                              scalars
  ``E``, ``P``, ``eps``, ``epsinv``, ``N``, ``id``   Hopf generators
  ``dx``, ``psip``, ``psim``                    generating one-forms
  ``bump1``, ``bump2``, ``gauss1``              sampled fixtures on the session box

Functions: ``adj T act d wedge lmul rmul trace gtrace phi comm eval jstar eta word weval
boost bump gauss wave``; fixtures also accept keyword overrides, e.g. ``bump(v0=1.0, w=0.5)``.

Programs are parsed, type checked as a whole and only then evaluated, so a type error on
any line stops the run before anything is computed.
"""

import collections
import logging
import re

from enum import Enum

from .. import calculus
from .. import cocycle
from .. import fixtures
from .. import grid
from .. import hopf
from .. import rieffel
from .. import symbolic
from ..calculus import DifferentialForm, OneForm, SymbolicAlgebra
from ..config import Config
from ..errors import (AlgebraError, DslError, DslSyntaxError, DslTypeError, InvalidValue, NameCollision,
                      UnknownName, UnsupportedGenerator)
from ..grid import GridAlgebra, SpectralGrid

_log = logging.getLogger("kappaforge.dsl")


# Lexer

Token = collections.namedtuple("Token", ["kind", "text", "line", "column"])

_TOKEN_SPEC = [
  ("number", r"(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"),
  ("name", r"[A-Za-z_][A-Za-z_0-9]*"),
  ("op", r"[-+*/=(),;]"),
  ("newline", r"\n"),
  ("skip", r"[ \t\r]+|#[^\n]*"),
  ("error", r"."),
]
_TOKEN_RE = re.compile("|".join("(?P<%s>%s)" % pair for pair in _TOKEN_SPEC))


def tokenize(source, origin="<input>"):
  """
  Split *source* into tokens. Newlines separate statements except inside parentheses;
  ``;`` is an explicit separator. The list always ends with an ``eof`` token.
  """
  tokens = []
  line, line_start, depth = 1, 0, 0
  for match in _TOKEN_RE.finditer(source):
    kind, text = match.lastgroup, match.group()
    column = match.start() - line_start + 1
    if kind == "newline":
      if depth == 0:
        tokens.append(Token("sep", text, line, column))
      line += 1
      line_start = match.end()
      continue
    if kind == "skip":
      continue
    if kind == "error":
      raise DslSyntaxError("unexpected character %r" % text, line, column, origin)
    if text == "(":
      depth += 1
    elif text == ")":
      depth = max(depth - 1, 0)
    elif text == ";":
      kind = "sep"
    tokens.append(Token(kind, text, line, column))
  tokens.append(Token("eof", "", line, len(source) - line_start + 1))
  return tokens


# Syntax tree

class Node(object):
  """
  Base of the syntax tree. Equality compares the structure only, ``line`` and ``column``
  are kept for diagnostics.
  """
  _fields = ()

  def __init__(self, *values, **location):
    if len(values) != len(self._fields):
      raise TypeError("%s takes %d fields" % (type(self).__name__, len(self._fields)))
    for name, value in zip(self._fields, values):
      setattr(self, name, value)
    self.line = location.get("line", 0)
    self.column = location.get("column", 0)

  def fields(self):
    return tuple(getattr(self, name) for name in self._fields)

  def __eq__(self, other):
    return type(self) is type(other) and self.fields() == other.fields()

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash((type(self).__name__,) + self.fields())

  def __repr__(self):
    return "%s(%s)" % (type(self).__name__, ", ".join(repr(v) for v in self.fields()))


class Number(Node):
  _fields = ("value",)


class ComplexLiteral(Node):
  _fields = ("real", "imag")


class Name(Node):
  _fields = ("name",)


class Negate(Node):
  _fields = ("operand",)


class BinaryOp(Node):
  _fields = ("op", "lhs", "rhs")


class Call(Node):
  """
  ``args`` is a tuple of nodes, ``keywords`` a tuple of ``(name, node)`` pairs.
  """
  _fields = ("function", "args", "keywords")


class Assign(Node):
  _fields = ("target", "value")


class Program(Node):
  _fields = ("statements",)


# Parser

class Parser(object):
  """
  Recursive descent parser; one method per grammar rule.
  """

  def __init__(self, source, origin="<input>"):
    self.origin = origin
    self._tokens = tokenize(source, origin)
    self._pos = 0

  def _peek(self, offset=0):
    return self._tokens[min(self._pos + offset, len(self._tokens) - 1)]

  def _is_op(self, text, offset=0):
    token = self._peek(offset)
    return token.kind == "op" and token.text == text

  def _take(self, text=None):
    token = self._peek()
    if text is not None and not self._is_op(text):
      self._fail(token, "expected %r" % text)
    self._pos += 1
    return token

  def _fail(self, token, message):
    if token.kind == "eof":
      found = "end of input"
    elif token.kind == "sep":
      found = "end of statement"
    else:
      found = repr(token.text)
    raise DslSyntaxError("%s, found %s" % (message, found), token.line, token.column, self.origin)

  def parse_program(self):
    statements = []
    while True:
      while self._peek().kind == "sep":
        self._take()
      if self._peek().kind == "eof":
        break
      statements.append(self._statement())
      if self._peek().kind not in ("sep", "eof"):
        self._fail(self._peek(), "expected an operator or the end of the statement")
    return Program(tuple(statements), line=1, column=1)

  def _statement(self):
    token = self._peek()
    if token.kind == "name" and self._is_op("=", 1):
      self._take()
      self._take("=")
      return Assign(token.text, self._expr(), line=token.line, column=token.column)
    return self._expr()

  def _expr(self):
    node = self._term()
    while self._is_op("+") or self._is_op("-"):
      op = self._take()
      node = BinaryOp(op.text, node, self._term(), line=op.line, column=op.column)
    return node

  def _term(self):
    node = self._unary()
    while self._is_op("*") or self._is_op("/"):
      op = self._take()
      node = BinaryOp(op.text, node, self._unary(), line=op.line, column=op.column)
    return node

  def _unary(self):
    if self._is_op("-"):
      op = self._take()
      return Negate(self._unary(), line=op.line, column=op.column)
    return self._factor()

  def _factor(self):
    token = self._peek()
    if token.kind == "number":
      self._take()
      return Number(float(token.text), line=token.line, column=token.column)
    if token.kind == "name":
      self._take()
      if self._is_op("("):
        return self._call(token)
      return Name(token.text, line=token.line, column=token.column)
    if self._is_op("("):
      literal = self._complex_literal()
      if literal is not None:
        return literal
      self._take("(")
      node = self._expr()
      self._take(")")
      return node
    self._fail(token, "expected a number, a name or '('")

  def _number_length(self, offset):
    if self._peek(offset).kind == "number":
      return 1
    if self._is_op("-", offset) and self._peek(offset + 1).kind == "number":
      return 2
    return 0

  def _complex_literal(self):
    length = self._number_length(1)
    if not length or not self._is_op(",", 1 + length):
      return None
    start = self._take("(")
    real = self._signed_number()
    self._take(",")
    imag = self._signed_number()
    self._take(")")
    return ComplexLiteral(real, imag, line=start.line, column=start.column)

  def _signed_number(self):
    sign = 1.
    if self._is_op("-"):
      self._take()
      sign = -1.
    token = self._peek()
    if token.kind != "number":
      self._fail(token, "expected a number in a complex literal")
    self._take()
    return sign * float(token.text)

  def _call(self, name):
    self._take("(")
    args, keywords = [], []
    if not self._is_op(")"):
      while True:
        token = self._peek()
        if token.kind == "name" and self._is_op("=", 1):
          if token.text in [k for k, _ in keywords]:
            self._fail(token, "repeated keyword argument")
          self._take()
          self._take("=")
          keywords.append((token.text, self._expr()))
        else:
          if keywords:
            self._fail(token, "positional argument after keyword arguments")
          args.append(self._expr())
        if not self._is_op(","):
          break
        self._take(",")
    self._take(")")
    return Call(name.text, tuple(args), tuple(keywords), line=name.line, column=name.column)


def parse(source, origin="<input>"):
  """
  Parse a program. Raises :class:`kappaforge.errors.DslSyntaxError` with the location of
  the offending token.
  """
  return Parser(source, origin).parse_program()


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}
_UNARY_PRECEDENCE = 3
_ATOM_PRECEDENCE = 4


def _precedence(node):
  if isinstance(node, BinaryOp):
    return _PRECEDENCE[node.op]
  if isinstance(node, Negate):
    return _UNARY_PRECEDENCE
  return _ATOM_PRECEDENCE


def _wrap(node, needed):
  text = unparse(node)
  return "(%s)" % text if needed else text


def unparse(node):
  """
  Source text for a tree; ``parse(unparse(tree)) == tree``.
  """
  if isinstance(node, Program):
    return "\n".join(unparse(statement) for statement in node.statements)
  if isinstance(node, Assign):
    return "%s = %s" % (node.target, unparse(node.value))
  if isinstance(node, Number):
    return repr(node.value)
  if isinstance(node, ComplexLiteral):
    return "(%r, %r)" % (node.real, node.imag)
  if isinstance(node, Name):
    return node.name
  if isinstance(node, Negate):
    return "-" + _wrap(node.operand, _precedence(node.operand) < _UNARY_PRECEDENCE)
  if isinstance(node, BinaryOp):
    level = _PRECEDENCE[node.op]
    # operators are left associative: an equal-precedence right operand keeps its parentheses
    return "%s %s %s" % (_wrap(node.lhs, _precedence(node.lhs) < level), node.op,
                         _wrap(node.rhs, _precedence(node.rhs) <= level))
  if isinstance(node, Call):
    parts = [unparse(arg) for arg in node.args] + ["%s=%s" % (k, unparse(v)) for k, v in node.keywords]
    return "%s(%s)" % (node.function, ", ".join(parts))
  raise TypeError("not a syntax tree node: %r" % (node,))


# Types

class Kind(Enum):
  SCALAR = "scalar"
  OPERATOR = "operator"
  ELEMENT = "element"
  GRID = "grid"
  FORM = "form"
  GRID_FORM = "grid-form"
  WORD = "word"
  GENERATOR = "generator"


class ExprType(collections.namedtuple("ExprType", ["kind", "degree"])):
  """
  Static type of an expression; *degree* is set for forms only.
  """
  __slots__ = ()

  def __new__(cls, kind, degree=None):
    return super(ExprType, cls).__new__(cls, kind, degree)

  def __str__(self):
    if self.degree is None:
      return self.kind.value
    return "%s of degree %d" % (self.kind.value, self.degree)


SCALAR = ExprType(Kind.SCALAR)
OPERATOR = ExprType(Kind.OPERATOR)
ELEMENT = ExprType(Kind.ELEMENT)
GRID = ExprType(Kind.GRID)
WORD = ExprType(Kind.WORD)
GENERATOR = ExprType(Kind.GENERATOR)

_FORM_KINDS = (Kind.FORM, Kind.GRID_FORM)

_GENERATORS = {"dx": calculus.DX, "psip": calculus.PSI_PLUS, "psim": calculus.PSI_MINUS}
_OPERATORS = {"E": hopf.E, "P": hopf.P, "eps": hopf.EPS, "epsinv": hopf.EPS_INV, "N": hopf.N, "id": hopf.ID}

BUILTIN_TYPES = dict([("t", ELEMENT), ("x", ELEMENT), ("one", ELEMENT), ("i", SCALAR), ("kappa", SCALAR)]
                     + [(name, OPERATOR) for name in _OPERATORS]
                     + [(name, GENERATOR) for name in _GENERATORS]
                     + [(name, GRID) for name in fixtures.GRID_PRESETS])

FIXTURE_FUNCTIONS = ("bump", "gauss") + tuple(fixtures.GRID_PRESETS)
FIXTURE_KEYWORDS = collections.OrderedDict([
  ("v0", "center_v"),
  ("w", "width_v"),
  ("b0", "beta_center"),
  ("bw", "beta_width"),
  ("amp", "amplitude"),
  ("phase", "beta_phase"),
])

FUNCTIONS = ("adj", "T", "act", "d", "wedge", "lmul", "rmul", "trace", "gtrace", "phi", "comm", "eval",
             "jstar", "eta", "word", "weval", "boost", "wave") + FIXTURE_FUNCTIONS

RESERVED = frozenset(BUILTIN_TYPES) | frozenset(FUNCTIONS)


class TypeChecker(object):
  """
  Static checks over a whole program.

  *symbols* maps already defined names to their :class:`ExprType`; assignments inside the
  checked program extend a private copy.
  """

  def __init__(self, symbols=None, origin="<input>"):
    self._symbols = dict(symbols or {})
    self.origin = origin

  def _error(self, node, message, error=DslTypeError):
    raise error(message, node.line, node.column, self.origin)

  def check_program(self, program):
    return [self.check_statement(statement) for statement in program.statements]

  def check_statement(self, node):
    if isinstance(node, Assign):
      if node.target in RESERVED:
        self._error(node, "%r is a built-in name" % node.target, NameCollision)
      if node.target in self._symbols:
        self._error(node, "%r is already defined" % node.target, NameCollision)
      result = self.check(node.value)
      self._symbols[node.target] = result
      return result
    return self.check(node)

  def check(self, node):
    if isinstance(node, (Number, ComplexLiteral)):
      return SCALAR
    if isinstance(node, Name):
      if node.name in BUILTIN_TYPES:
        return BUILTIN_TYPES[node.name]
      if node.name in self._symbols:
        return self._symbols[node.name]
      if node.name in FUNCTIONS:
        self._error(node, "%r is a function and has to be called" % node.name)
      self._error(node, "unknown name %r" % node.name, UnknownName)
    if isinstance(node, Negate):
      operand = self.check(node.operand)
      if operand.kind == Kind.GENERATOR:
        self._error(node, "generating one-forms cannot be negated; use rmul(%s, -one)" % unparse(node.operand))
      return operand
    if isinstance(node, BinaryOp):
      return self._binary(node)
    if isinstance(node, Call):
      return self._call(node)
    raise TypeError("not an expression node: %r" % (node,))

  def _binary(self, node):
    lhs, rhs = self.check(node.lhs), self.check(node.rhs)
    if Kind.GENERATOR in (lhs.kind, rhs.kind):
      self._error(node, "generating one-forms only enter wedge, lmul and rmul")
    if node.op == "/":
      if rhs.kind != Kind.SCALAR:
        self._error(node, "division is only defined by scalars, not by %s" % (rhs,))
      return lhs
    if node.op == "*":
      if lhs.kind == Kind.SCALAR:
        return rhs
      if rhs.kind == Kind.SCALAR:
        return lhs
      if lhs == rhs and lhs.kind in (Kind.ELEMENT, Kind.GRID, Kind.OPERATOR, Kind.WORD):
        return lhs
      self._error(node, "'*' is the star product; it is not defined between %s and %s" % (lhs, rhs))
    if lhs == rhs and lhs.kind != Kind.GENERATOR:
      return lhs
    if lhs.kind == rhs.kind and lhs.kind in _FORM_KINDS:
      self._error(node, "cannot add forms of different degrees (%d and %d)" % (lhs.degree, rhs.degree))
    kinds = set([lhs.kind, rhs.kind])
    if kinds in (set([Kind.SCALAR, Kind.ELEMENT]), set([Kind.SCALAR, Kind.OPERATOR])):
      return lhs if rhs.kind == Kind.SCALAR else rhs
    self._error(node, "cannot combine %s and %s with '%s'" % (lhs, rhs, node.op))

  def _expect_arity(self, node, count):
    if len(node.args) != count:
      self._error(node, "%s takes %d argument%s, got %d" % (node.function, count, "" if count == 1 else "s",
                                                            len(node.args)))

  def _expect(self, node, value, *kinds):
    if value.kind not in kinds:
      self._error(node, "%s does not accept %s" % (node.function, value))

  def _call(self, node):
    name = node.function
    if name not in FUNCTIONS:
      if name in self._symbols or name in BUILTIN_TYPES:
        self._error(node, "%r is not a function" % name)
      self._error(node, "unknown function %r" % name, UnknownName)
    if name in FIXTURE_FUNCTIONS:
      return self._fixture(node)
    if name == "wave":
      for key, value in node.keywords:
        if key not in ("w", "b"):
          self._error(value, "wave does not take the keyword %r" % key)
        self._expect(node, self.check(value), Kind.SCALAR)
    elif node.keywords:
      self._error(node, "%s takes no keyword arguments" % name)
    if name == "word":
      for arg in node.args:
        if not isinstance(arg, Name) or arg.name not in hopf.PolyWord.LETTERS:
          self._error(arg, "word takes the letters t and x")
      return WORD
    args = [self.check(arg) for arg in node.args]
    return getattr(self, "_call_" + name)(node, args)

  def _fixture(self, node):
    if node.args:
      self._error(node, "%s takes keyword arguments only (%s)" % (node.function, ", ".join(FIXTURE_KEYWORDS)))
    for key, value in node.keywords:
      if key not in FIXTURE_KEYWORDS:
        self._error(value, "unknown fixture parameter %r" % key)
      self._expect(node, self.check(value), Kind.SCALAR)
    return GRID

  def _call_adj(self, node, args):
    self._expect_arity(node, 1)
    self._expect(node, args[0], Kind.ELEMENT, Kind.GRID)
    return args[0]

  def _call_T(self, node, args):
    self._expect_arity(node, 2)
    self._expect(node, args[0], Kind.SCALAR)
    self._expect(node, args[1], Kind.ELEMENT, Kind.GRID, Kind.FORM, Kind.GRID_FORM)
    return args[1]

  def _call_act(self, node, args):
    self._expect_arity(node, 2)
    self._expect(node, args[0], Kind.OPERATOR)
    self._expect(node, args[1], Kind.ELEMENT, Kind.GRID, Kind.WORD, Kind.FORM, Kind.GRID_FORM)
    return args[1]

  def _call_d(self, node, args):
    self._expect_arity(node, 1)
    value = args[0]
    if value.kind == Kind.ELEMENT:
      return ExprType(Kind.FORM, 1)
    if value.kind == Kind.GRID:
      return ExprType(Kind.GRID_FORM, 1)
    self._expect(node, value, Kind.FORM, Kind.GRID_FORM)
    return ExprType(value.kind, value.degree + 1)

  def _call_wedge(self, node, args):
    self._expect_arity(node, 2)
    lhs, rhs = args
    if lhs.kind == Kind.GENERATOR and rhs.kind == Kind.GENERATOR:
      return ExprType(Kind.FORM, 2)
    if rhs.kind == Kind.GENERATOR:
      self._expect(node, lhs, *_FORM_KINDS)
      return ExprType(lhs.kind, lhs.degree + 1)
    if lhs.kind == Kind.GENERATOR:
      self._expect(node, rhs, *_FORM_KINDS)
      return ExprType(rhs.kind, rhs.degree + 1)
    self._expect(node, lhs, *_FORM_KINDS)
    self._expect(node, rhs, *_FORM_KINDS)
    if lhs.kind != rhs.kind:
      self._error(node, "cannot wedge a %s with a %s" % (lhs, rhs))
    return ExprType(lhs.kind, lhs.degree + rhs.degree)

  def _module_type(self, node, function, form):
    pairs = {Kind.ELEMENT: Kind.FORM, Kind.GRID: Kind.GRID_FORM}
    if function.kind not in pairs:
      self._error(node, "%s does not accept %s as the function" % (node.function, function))
    if form.kind == Kind.GENERATOR:
      return ExprType(pairs[function.kind], 1)
    if form.kind != pairs[function.kind]:
      self._error(node, "%s cannot combine %s with %s" % (node.function, function, form))
    return form

  def _call_lmul(self, node, args):
    self._expect_arity(node, 2)
    return self._module_type(node, args[0], args[1])

  def _call_rmul(self, node, args):
    self._expect_arity(node, 2)
    return self._module_type(node, args[1], args[0])

  def _call_trace(self, node, args):
    self._expect_arity(node, 1)
    value = args[0]
    if value.kind in (Kind.ELEMENT, Kind.FORM):
      self._error(node, "symbolic elements are not integrable; trace needs a grid operand")
    if value.kind == Kind.GRID:
      return SCALAR
    return self._call_gtrace(node, args)

  def _call_gtrace(self, node, args):
    self._expect_arity(node, 1)
    value = args[0]
    if value.kind != Kind.GRID_FORM or value.degree != calculus.MAX_DEGREE:
      self._error(node, "the graded trace needs a grid three-form, got %s" % (value,))
    return SCALAR

  def _call_phi(self, node, args):
    self._expect_arity(node, 4)
    for value in args:
      self._expect(node, value, Kind.GRID)
    return SCALAR

  def _call_comm(self, node, args):
    self._expect_arity(node, 2)
    self._expect(node, args[0], Kind.ELEMENT, Kind.GRID, Kind.OPERATOR)
    if args[1] != args[0]:
      self._error(node, "comm needs two operands of the same type, got %s and %s" % tuple(args))
    return args[0]

  def _call_eval(self, node, args):
    self._expect_arity(node, 3)
    self._expect(node, args[0], Kind.ELEMENT, Kind.GRID)
    self._expect(node, args[1], Kind.SCALAR)
    self._expect(node, args[2], Kind.SCALAR)
    return SCALAR

  def _call_jstar(self, node, args):
    self._expect_arity(node, 2)
    for value in args:
      self._expect(node, value, Kind.GRID)
    return GRID

  def _call_eta(self, node, args):
    self._expect_arity(node, 3)
    self._expect(node, args[0], Kind.SCALAR)
    self._expect(node, args[1], Kind.SCALAR)
    self._expect(node, args[2], Kind.GRID)
    return GRID

  def _call_weval(self, node, args):
    self._expect_arity(node, 1)
    self._expect(node, args[0], Kind.WORD)
    return ELEMENT

  def _call_boost(self, node, args):
    self._expect_arity(node, 1)
    self._expect(node, args[0], Kind.WORD)
    return WORD

  def _call_wave(self, node, args):
    self._expect_arity(node, 2)
    for value in args:
      self._expect(node, value, Kind.SCALAR)
    return GRID


# Evaluation

Result = collections.namedtuple("Result", ["statement", "type", "value"])


class Session(object):
  """
  Evaluation context: one kappa, one grid box and a table of named values.

  Names cannot be rebound and cannot shadow built-ins.
  """

  def __init__(self, config=None, origin="<input>"):
    self.config = config or Config()
    self.origin = origin
    self.kappa = self.config.kappa
    self.spec = self.config.grid_spec()
    self.symbolic = SymbolicAlgebra(self.kappa)
    self.grid = GridAlgebra(self.kappa, self.spec, strict=self.config.strict, threads=self.config.threads,
                            support_floor=self.config.support_floor)
    self._symbols = collections.OrderedDict()
    self._log = logging.getLogger(type(self).__name__)

  @property
  def names(self):
    return list(self._symbols)

  def lookup(self, name):
    if name not in self._symbols:
      raise UnknownName("unknown name %r" % name, 0, 0, self.origin)
    return self._symbols[name][1]

  def define(self, name, value):
    """
    Bind a Python value (element, grid, form, word, operator or scalar) to a new name.
    """
    if name in RESERVED or name in self._symbols:
      raise NameCollision("%r is already defined" % name, 0, 0, self.origin)
    if not re.match(r"^[A-Za-z_][A-Za-z_0-9]*$", name):
      raise DslSyntaxError("%r is not a valid name" % name, 0, 0, self.origin)
    self._symbols[name] = (self.type_of(value), value)

  def type_of(self, value):
    if isinstance(value, (int, float, complex)):
      return SCALAR
    if isinstance(value, symbolic.Element):
      return ELEMENT
    if isinstance(value, SpectralGrid):
      return GRID
    if isinstance(value, hopf.OperatorExpr):
      return OPERATOR
    if isinstance(value, hopf.PolyWord):
      return WORD
    if isinstance(value, OneForm):
      return GENERATOR
    if isinstance(value, DifferentialForm):
      kind = Kind.FORM if isinstance(value.algebra, SymbolicAlgebra) else Kind.GRID_FORM
      return ExprType(kind, value.degree)
    raise InvalidValue("values of type %s cannot be bound" % type(value).__name__)

  def parse(self, source):
    return parse(source, self.origin)

  def check(self, program):
    """
    Types of the statements of *program*; the session is left unchanged.
    """
    checker = TypeChecker(dict((name, entry[0]) for name, entry in self._symbols.items()), self.origin)
    return checker.check_program(program)

  def run(self, source):
    """
    Parse, check and evaluate *source*. Returns one :class:`Result` per statement.
    """
    program = source if isinstance(source, Program) else self.parse(source)
    types = self.check(program)
    results = []
    for statement, expr_type in zip(program.statements, types):
      if isinstance(statement, Assign):
        value = self._eval(statement.value)
        self._symbols[statement.target] = (expr_type, value)
        self._log.debug("%s := %s", statement.target, expr_type)
      else:
        value = self._eval(statement)
      results.append(Result(statement, expr_type, value))
    return results

  def evaluate(self, source):
    """
    Value of the last statement of *source* (None for an empty program).
    """
    results = self.run(source)
    return results[-1].value if results else None

  def format(self, value):
    k = self.kappa
    if isinstance(value, (int, float, complex)):
      return symbolic.format_scalar(value, k)
    if isinstance(value, symbolic.Element):
      return symbolic.format_element(value, k)
    if isinstance(value, hopf.PolyWord):
      return hopf.format_polyword(value, k)
    if isinstance(value, OneForm):
      return value.label
    if isinstance(value, DifferentialForm):
      if isinstance(value.algebra, SymbolicAlgebra):
        return value.format(lambda c: symbolic.format_element(c, k))
      bases = ", ".join(calculus.basis_label(b) for b, _ in value.items())
      return "%d-form on %r [%s]" % (value.degree, self.spec, bases or "0")
    return str(value) if isinstance(value, hopf.OperatorExpr) else repr(value)

  # evaluation helpers

  def _error(self, node, message, error=DslTypeError):
    raise error(message, node.line, node.column, self.origin)

  def _real(self, node, value):
    value = complex(value)
    if value.imag:
      self._error(node, "expected a real number, got %s" % symbolic.format_scalar(value))
    return value.real

  def _algebra_for(self, value):
    return self.symbolic if isinstance(value, symbolic.Element) else self.grid

  @staticmethod
  def _scale(scalar, value):
    if isinstance(value, DifferentialForm):
      return value.scale(scalar)
    return scalar * value

  def _lookup(self, node):
    name = node.name
    if name == "t":
      return symbolic.T
    if name == "x":
      return symbolic.X
    if name == "one":
      return symbolic.ONE
    if name == "i":
      return 1j
    if name == "kappa":
      return complex(self.kappa)
    if name in _OPERATORS:
      return _OPERATORS[name]
    if name in _GENERATORS:
      return _GENERATORS[name]
    if name in fixtures.GRID_PRESETS:
      return fixtures.preset(name, self.spec)
    return self._symbols[name][1]

  def _eval(self, node):
    if isinstance(node, Number):
      return complex(node.value)
    if isinstance(node, ComplexLiteral):
      return complex(node.real, node.imag)
    if isinstance(node, Name):
      return self._lookup(node)
    if isinstance(node, Negate):
      return self._scale(-1., self._eval(node.operand))
    try:
      if isinstance(node, BinaryOp):
        return self._binary(node)
      return self._call(node)
    except UnsupportedGenerator as e:
      self._error(node, str(e))
    except (AlgebraError, InvalidValue) as e:
      self._error(node, str(e), DslError)

  def _binary(self, node):
    lhs, rhs = self._eval(node.lhs), self._eval(node.rhs)
    if node.op == "+":
      return lhs + rhs
    if node.op == "-":
      return lhs - rhs
    if node.op == "/":
      if rhs == 0:
        self._error(node, "division by zero", DslError)
      return self._scale(1. / rhs, lhs)
    if isinstance(lhs, complex):
      return self._scale(lhs, rhs)
    if isinstance(rhs, complex):
      return self._scale(rhs, lhs)
    if isinstance(lhs, symbolic.Element):
      return symbolic.star_mul(lhs, rhs, self.kappa)
    if isinstance(lhs, SpectralGrid):
      return self.grid.star(lhs, rhs)
    if isinstance(lhs, hopf.PolyWord):
      return lhs.concat(rhs)
    return lhs * rhs

  def _call(self, node):
    name = node.function
    if name in FIXTURE_FUNCTIONS:
      params = dict((FIXTURE_KEYWORDS[k], self._real(v, self._eval(v))) for k, v in node.keywords)
      if name in fixtures.GRID_PRESETS:
        return fixtures.preset(name, self.spec, **params)
      return grid.make_bump(self.spec, shape=name, **params)
    if name == "word":
      return hopf.PolyWord.word("".join(arg.name for arg in node.args))
    args = [self._eval(arg) for arg in node.args]
    return getattr(self, "_eval_" + name)(node, *args)

  def _eval_adj(self, node, f):
    if isinstance(f, symbolic.Element):
      return symbolic.involution(f, self.kappa)
    return self.grid.involution(f)

  def _eval_T(self, node, gamma, f):
    gamma = self._real(node.args[0], gamma)
    if isinstance(f, DifferentialForm):
      return calculus.translate_form(gamma, f)
    if isinstance(f, symbolic.Element):
      return symbolic.translate(gamma, f)
    return grid.grid_translate(gamma, f)

  def _eval_act(self, node, h, f):
    if isinstance(f, DifferentialForm):
      return calculus.act_form(h, f)
    if isinstance(f, hopf.PolyWord):
      return hopf.act_on_words(h, f, self.kappa)
    if isinstance(f, symbolic.Element):
      return hopf.apply_op(h, f, self.kappa)
    return grid.grid_apply_op(h, f, self.kappa)

  def _eval_d(self, node, f):
    if isinstance(f, DifferentialForm):
      return calculus.exterior_d(f)
    return calculus.exterior_d0(f, self._algebra_for(f))

  def _eval_wedge(self, node, lhs, rhs):
    if isinstance(lhs, OneForm) and isinstance(rhs, OneForm):
      return calculus.wedge(DifferentialForm.generator(self.symbolic, lhs), DifferentialForm.generator(self.symbolic, rhs))
    if isinstance(rhs, OneForm):
      return calculus.wedge_generator(lhs, rhs)
    if isinstance(lhs, OneForm):
      return calculus.generator_wedge(lhs, rhs)
    return calculus.wedge(lhs, rhs)

  def _eval_lmul(self, node, f, omega):
    if isinstance(omega, OneForm):
      return calculus.wedge_generator(DifferentialForm.function(self._algebra_for(f), f), omega)
    return calculus.left_mul(f, omega)

  def _eval_rmul(self, node, omega, f):
    if isinstance(omega, OneForm):
      return DifferentialForm.generator(self._algebra_for(f), omega, f)
    return calculus.right_mul(omega, f)

  def _eval_trace(self, node, value):
    if isinstance(value, SpectralGrid):
      return grid.lebesgue_integral(value)
    return cocycle.graded_trace(value)

  def _eval_gtrace(self, node, omega):
    return cocycle.graded_trace(omega)

  def _eval_phi(self, node, *functions):
    return cocycle.cocycle_phi(*(list(functions) + [self.grid]))

  def _eval_comm(self, node, f, g):
    if isinstance(f, symbolic.Element):
      return symbolic.commutator(f, g, self.kappa)
    if isinstance(f, SpectralGrid):
      return self.grid.star(f, g) - self.grid.star(g, f)
    return f * g - g * f

  def _eval_eval(self, node, f, alpha, beta):
    if isinstance(f, symbolic.Element):
      return symbolic.eval_point(f, alpha, beta)
    return grid.grid_eval(f, alpha, self._real(node.args[2], beta))

  def _eval_jstar(self, node, f, g):
    return rieffel.j_star(f, g, self.kappa, strict=self.config.strict, support_floor=self.config.support_floor)

  def _eval_eta(self, node, r, s, f):
    return rieffel.eta_act(self._real(node.args[0], r), self._real(node.args[1], s), f,
                           strict=self.config.strict, support_floor=self.config.support_floor)

  def _eval_weval(self, node, w):
    return hopf.word_eval(w, self.kappa)

  def _eval_boost(self, node, w):
    return hopf.boost_act(w, self.kappa)

  def _eval_wave(self, node, a, sigma):
    options = dict((k, self._real(v, self._eval(v))) for k, v in node.keywords)
    return grid.mollified_plane_wave(self.spec, self._real(node.args[0], a), self._real(node.args[1], sigma),
                                     **options)
