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
kappa-Poincare generators acting on the star-product algebra.

Operators are built from the generators

  - E: d/d alpha (primitive coproduct)
  - P: d/d beta (coproduct P x 1 + EPS x P)
  - EPS, EPS_INV: translations T_{1/kappa}, T_{-1/kappa} (group-like)
  - N: the boost (coproduct N x 1 + EPS x N), realized on star-polynomials only

with scalar multiples, sums and compositions (``a * b`` acts as ``a(b(f))``). Every
expression is normalized to a sum of generator words with complex coefficients before it
is applied, which also makes the counit a simple lookup.
"""

import collections
import itertools
import logging
import re

from enum import Enum

from . import symbolic
from .errors import InvalidValue, UnknownRelation, UnsupportedGenerator
from .symbolic import Element, kappa_value

_log = logging.getLogger("kappaforge.hopf")


class Generator(Enum):
  """
  Hopf algebra generators. Values are the names used in prefix notation.
  """
  E = "E"
  P = "P"
  EPS = "eps"
  EPS_INV = "epsinv"
  N = "N"


_COUNIT = {
  Generator.E: 0.,
  Generator.P: 0.,
  Generator.N: 0.,
  Generator.EPS: 1.,
  Generator.EPS_INV: 1.,
}

_INVERSE = {Generator.EPS: Generator.EPS_INV, Generator.EPS_INV: Generator.EPS}


def _format_number(value):
  value = complex(value)
  if value.imag == 0:
    return repr(value.real)
  return "(%r,%r)" % (value.real, value.imag)


class OperatorExpr(object):
  """
  Immutable expression tree over the Hopf generators.

  Node kinds: ``gen``, ``id``, ``scale``, ``sum``, ``compose``. Use the module level
  constants (:data:`E`, :data:`P`, :data:`EPS`, :data:`EPS_INV`, :data:`N`, :data:`ID`)
  and Python operators to build expressions.
  """
  __slots__ = ("kind", "generator", "scalar", "children")

  def __init__(self, kind, generator=None, scalar=None, children=()):
    if kind not in ("gen", "id", "scale", "sum", "compose"):
      raise InvalidValue("unknown operator node kind %r" % kind)
    object.__setattr__(self, "kind", kind)
    object.__setattr__(self, "generator", generator)
    object.__setattr__(self, "scalar", None if scalar is None else complex(scalar))
    object.__setattr__(self, "children", tuple(children))

  def __setattr__(self, name, value):
    raise AttributeError("OperatorExpr is immutable")

  @classmethod
  def of(cls, generator):
    return cls("gen", generator=Generator(generator))

  @classmethod
  def identity(cls):
    return cls("id")

  @classmethod
  def zero(cls):
    return cls("scale", scalar=0., children=(cls.identity(),))

  def __add__(self, other):
    if isinstance(other, (int, float, complex)):
      other = other * ID
    if not isinstance(other, OperatorExpr):
      return NotImplemented
    return OperatorExpr("sum", children=(self, other))

  def __radd__(self, other):
    if isinstance(other, (int, float, complex)):
      return (other * ID) + self
    return NotImplemented

  def __neg__(self):
    return OperatorExpr("scale", scalar=-1., children=(self,))

  def __sub__(self, other):
    if isinstance(other, (int, float, complex)):
      other = other * ID
    if not isinstance(other, OperatorExpr):
      return NotImplemented
    return self + (-other)

  def __rsub__(self, other):
    return (-self) + other

  def __mul__(self, other):
    if isinstance(other, OperatorExpr):
      return OperatorExpr("compose", children=(self, other))
    if isinstance(other, (int, float, complex)):
      return OperatorExpr("scale", scalar=other, children=(self,))
    return NotImplemented

  def __rmul__(self, other):
    if isinstance(other, (int, float, complex)):
      return OperatorExpr("scale", scalar=other, children=(self,))
    return NotImplemented

  def __pow__(self, exponent):
    if int(exponent) != exponent or exponent < 0:
      raise InvalidValue("operator powers must be non-negative integers")
    result = ID
    for _ in range(int(exponent)):
      result = result * self
    return result

  def __eq__(self, other):
    return (isinstance(other, OperatorExpr) and self.kind == other.kind and self.generator == other.generator
            and self.scalar == other.scalar and self.children == other.children)

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash((self.kind, self.generator, self.scalar, self.children))

  def __repr__(self):
    return "OperatorExpr(%s)" % self

  def __str__(self):
    if self.kind == "gen":
      return self.generator.value
    if self.kind == "id":
      return "id"
    if self.kind == "scale":
      return "scale(%s,%s)" % (_format_number(self.scalar), self.children[0])
    return "%s(%s)" % (self.kind, ",".join(str(c) for c in self.children))

  def normalized(self):
    """
    Sum of generator words: a mapping ``tuple(Generator) -> complex``.

    Words are read left to right as compositions, so the last generator acts first.
    Adjacent EPS/EPS_INV pairs cancel and zero coefficients are dropped.
    """
    if self.kind == "gen":
      result = {(self.generator,): 1. + 0j}
    elif self.kind == "id":
      result = {(): 1. + 0j}
    elif self.kind == "scale":
      result = dict((w, c * self.scalar) for w, c in self.children[0].normalized().items())
    elif self.kind == "sum":
      result = collections.defaultdict(complex)
      for child in self.children:
        for word, coeff in child.normalized().items():
          result[word] += coeff
    else:
      result = {(): 1. + 0j}
      for child in self.children:
        product = collections.defaultdict(complex)
        for (lhs, lc), (rhs, rc) in itertools.product(result.items(), child.normalized().items()):
          product[_cancel_inverses(lhs + rhs)] += lc * rc
        result = product
    return dict((w, c) for w, c in result.items() if c != 0)

  def mentions(self, generator):
    if self.kind == "gen":
      return self.generator == generator
    return any(c.mentions(generator) for c in self.children)

  def to_ds_convention(self):
    """
    Rewrite E -> -iE and P -> -iP (the alternative sign convention for momenta).

    Used for export only; evaluation always uses the native convention.
    """
    if self.kind == "gen":
      if self.generator in (Generator.E, Generator.P):
        return OperatorExpr("scale", scalar=-1j, children=(self,))
      return self
    if not self.children:
      return self
    return OperatorExpr(self.kind, self.generator, self.scalar, [c.to_ds_convention() for c in self.children])


def _cancel_inverses(word):
  stack = []
  for gen in word:
    if stack and _INVERSE.get(stack[-1]) == gen:
      stack.pop()
    else:
      stack.append(gen)
  return tuple(stack)


E = OperatorExpr.of(Generator.E)
P = OperatorExpr.of(Generator.P)
EPS = OperatorExpr.of(Generator.EPS)
EPS_INV = OperatorExpr.of(Generator.EPS_INV)
N = OperatorExpr.of(Generator.N)
ID = OperatorExpr.identity()


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_]+)|(?P<number>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)|(?P<punct>[(),]))")


def parse_operator(text):
  """
  Parse the prefix notation produced by ``str(OperatorExpr)``, e.g. ``compose(epsinv,P)``.
  """
  tokens = []
  pos = 0
  text = text.strip()
  while pos < len(text):
    match = _TOKEN_RE.match(text, pos)
    if not match or match.end() == pos:
      raise InvalidValue("cannot parse operator expression %r at offset %d" % (text, pos))
    tokens.append(match.group("name") or match.group("number") or match.group("punct"))
    pos = match.end()
  tokens.append(None)
  position = [0]

  def peek():
    return tokens[position[0]]

  def take(expected=None):
    token = tokens[position[0]]
    if expected is not None and token != expected:
      raise InvalidValue("expected %r, got %r in operator expression %r" % (expected, token, text))
    position[0] += 1
    return token

  def number():
    if peek() == "(":
      take("(")
      re_part = float(take())
      take(",")
      im_part = float(take())
      take(")")
      return complex(re_part, im_part)
    return float(take())

  def expr():
    name = take()
    if name in ("sum", "compose", "scale"):
      take("(")
      if name == "scale":
        scalar = number()
        take(",")
        child = expr()
        take(")")
        return OperatorExpr("scale", scalar=scalar, children=(child,))
      children = [expr()]
      while peek() == ",":
        take(",")
        children.append(expr())
      take(")")
      return OperatorExpr(name, children=children)
    if name == "id":
      return ID
    try:
      return OperatorExpr.of(Generator(name))
    except ValueError:
      raise InvalidValue("unknown operator name %r in %r" % (name, text))

  result = expr()
  if peek() is not None:
    raise InvalidValue("trailing input in operator expression %r" % text)
  return result


def counit(h):
  """
  Counit: multiplicative over compositions, linear over sums.
  """
  total = 0j
  for word, coeff in h.normalized().items():
    value = coeff
    for gen in word:
      value *= _COUNIT[gen]
    total += value
  return total


def apply_normalized(h, f, act_generator, combine):
  """
  Apply *h* through its normalized form.

  *act_generator(generator, value)* acts with a single generator; *combine(pairs, template)*
  builds the linear combination of ``(scalar, value)`` pairs (``template`` gives the kind
  of zero to return for an empty sum).
  """
  pairs = []
  for word, coeff in sorted(h.normalized().items(), key=lambda item: [g.value for g in item[0]]):
    value = f
    for gen in reversed(word):
      value = act_generator(gen, value)
    pairs.append((coeff, value))
  return combine(pairs, f)


def _act_generator_on_element(kappa):
  def act(generator, f):
    if generator == Generator.E:
      return symbolic.partial_alpha(f)
    if generator == Generator.P:
      return symbolic.partial_beta(f)
    if generator == Generator.EPS:
      return symbolic.translate(1. / kappa, f)
    if generator == Generator.EPS_INV:
      return symbolic.translate(-1. / kappa, f)
    raise UnsupportedGenerator("generator %s has no realization on algebra elements" % generator.value)
  return act


def _combine_elements(pairs, template):
  return symbolic.linear_combine(pairs)


def apply_op(h, f, kappa):
  """
  Act with *h* on a symbolic element: E is d/d alpha, P is d/d beta, EPS^{+-1} is
  T_{+-1/kappa}. The boost has no realization on elements and raises
  :class:`UnsupportedGenerator`.
  """
  if h.mentions(Generator.N):
    raise UnsupportedGenerator("the boost N acts on star-polynomials only")
  k = kappa_value(kappa)
  return apply_normalized(h, f, _act_generator_on_element(k), _combine_elements)


def twisted_product_action(h, f, g, kappa):
  """
  Coproduct-expanded action of a generator on f * g:

    - E: (E f) g + f (E g)
    - P: (P f) g + (EPS f)(P g)
    - EPS: (EPS f)(EPS g)
  """
  generator = h.generator if isinstance(h, OperatorExpr) and h.kind == "gen" else Generator(h)
  k = kappa_value(kappa)
  act = _act_generator_on_element(k)
  star = symbolic.star_mul
  if generator == Generator.E:
    return star(act(generator, f), g, k) + star(f, act(generator, g), k)
  if generator == Generator.P:
    return star(act(Generator.P, f), g, k) + star(act(Generator.EPS, f), act(Generator.P, g), k)
  if generator in (Generator.EPS, Generator.EPS_INV):
    return star(act(generator, f), act(generator, g), k)
  raise UnsupportedGenerator("no coproduct rule for %s on algebra elements" % generator.value)


class PolyWord(object):
  """
  Formal linear combination of words over the letters ``t`` and ``x``.

  The empty word is the unit. Multiplication of words is concatenation; no relation is
  imposed, :func:`word_eval` maps words to the star-product algebra.
  """
  __slots__ = ("_coeffs",)
  LETTERS = "tx"

  def __init__(self, coeffs=None):
    merged = collections.defaultdict(complex)
    for word, coeff in (coeffs or {}).items():
      word = word.lower()
      if any(letter not in self.LETTERS for letter in word):
        raise InvalidValue("words are built from the letters t and x, got %r" % word)
      merged[word] += coeff
    items = sorted(((w, c) for w, c in merged.items() if abs(c) > symbolic.COEFF_EPSILON),
                   key=lambda item: (len(item[0]), item[0]))
    object.__setattr__(self, "_coeffs", tuple(items))

  def __setattr__(self, name, value):
    raise AttributeError("PolyWord is immutable")

  @classmethod
  def word(cls, text, coeff=1.):
    return cls({text: coeff})

  @classmethod
  def unit(cls):
    return cls({"": 1.})

  @classmethod
  def zero(cls):
    return cls()

  def items(self):
    return self._coeffs

  def is_zero(self):
    return not self._coeffs

  def max_abs_coeff(self):
    return max([abs(c) for _, c in self._coeffs] or [0.])

  def __add__(self, other):
    if not isinstance(other, PolyWord):
      return NotImplemented
    merged = collections.defaultdict(complex, self._coeffs)
    for word, coeff in other._coeffs:
      merged[word] += coeff
    return PolyWord(merged)

  def __neg__(self):
    return self * -1.

  def __sub__(self, other):
    return self + (-other)

  def __mul__(self, other):
    if isinstance(other, (int, float, complex)):
      return PolyWord(dict((w, c * other) for w, c in self._coeffs))
    if isinstance(other, PolyWord):
      return self.concat(other)
    return NotImplemented

  def __rmul__(self, other):
    if isinstance(other, (int, float, complex)):
      return self * other
    return NotImplemented

  def concat(self, other):
    merged = collections.defaultdict(complex)
    for (lw, lc), (rw, rc) in itertools.product(self._coeffs, other._coeffs):
      merged[lw + rw] += lc * rc
    return PolyWord(merged)

  def __eq__(self, other):
    return isinstance(other, PolyWord) and self._coeffs == other._coeffs

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash(self._coeffs)

  def __repr__(self):
    return "PolyWord(%r)" % (dict(self._coeffs),)

  def __str__(self):
    return format_polyword(self)

  def to_json(self):
    return [{"coeff": [c.real, c.imag], "word": w} for w, c in self._coeffs]

  @classmethod
  def from_json(cls, data):
    merged = collections.defaultdict(complex)
    for item in data:
      merged[item["word"]] += complex(*item["coeff"])
    return cls(merged)


def format_polyword(w, kappa=None):
  if w.is_zero():
    return "0"
  parts = []
  for word, coeff in w.items():
    body = "·".join(word)
    coeff_text = symbolic.format_scalar(coeff, kappa)
    if not body:
      parts.append(coeff_text)
    elif coeff_text == "1":
      parts.append(body)
    elif coeff_text == "-1":
      parts.append("-" + body)
    else:
      if any(ch in coeff_text[1:] for ch in "/+-·"):
        coeff_text = "(" + coeff_text + ")"
      parts.append(coeff_text + "·" + body)
  text = parts[0]
  for part in parts[1:]:
    text += (" - " + part[1:]) if part.startswith("-") else (" + " + part)
  return text


def words_up_to(length):
  """
  All single words over {t, x} of length 0..length, shortest first.
  """
  result = []
  for size in range(length + 1):
    for letters in itertools.product(PolyWord.LETTERS, repeat=size):
      result.append(PolyWord.word("".join(letters)))
  return result


def _letter_action(generator, letter, kappa):
  if generator == Generator.E:
    return PolyWord.unit() if letter == "t" else PolyWord.zero()
  if generator == Generator.P:
    return PolyWord.unit() if letter == "x" else PolyWord.zero()
  if generator == Generator.N:
    return PolyWord.word("x", -1.) if letter == "t" else PolyWord.word("t", -1.)
  shift = 1j / kappa if generator == Generator.EPS else -1j / kappa
  if letter == "t":
    return PolyWord({"t": 1., "": shift})
  return PolyWord.word("x")


def _word_action(generator, word, kappa, cache):
  key = (generator, word)
  if key in cache:
    return cache[key]
  if not word:
    result = PolyWord.unit() * _COUNIT[generator]
  else:
    head, tail = word[0], word[1:]
    head_action = _letter_action(generator, head, kappa)
    if generator in (Generator.EPS, Generator.EPS_INV):
      result = head_action.concat(_word_action(generator, tail, kappa, cache))
    elif generator == Generator.E:
      result = (head_action.concat(PolyWord.word(tail))
                + PolyWord.word(head).concat(_word_action(generator, tail, kappa, cache)))
    else:
      # P and N share the coproduct shape X x 1 + EPS x X
      result = (head_action.concat(PolyWord.word(tail))
                + _letter_action(Generator.EPS, head, kappa).concat(_word_action(generator, tail, kappa, cache)))
  cache[key] = result
  return result


def act_on_words(h, w, kappa):
  """
  Act with an operator expression (the boost included) on a star-polynomial.
  """
  k = kappa_value(kappa)
  cache = {}

  def act(generator, value):
    result = PolyWord.zero()
    for word, coeff in value.items():
      result = result + _word_action(generator, word, k, cache) * coeff
    return result

  def combine(pairs, template):
    result = PolyWord.zero()
    for coeff, value in pairs:
      result = result + value * coeff
    return result

  return apply_normalized(h, w, act, combine)


def boost_act(w, kappa):
  """
  N acting through N(y w) = (N y) w + (EPS y)(N w), N(1) = 0.
  """
  return act_on_words(N, w, kappa)


def word_eval(w, kappa):
  """
  Map a star-polynomial to the algebra: ``t`` is alpha, ``x`` is beta, words are star products.
  """
  k = kappa_value(kappa)
  letters = {"t": symbolic.T, "x": symbolic.X}
  pairs = [(coeff, symbolic.star_chain([letters[l] for l in word], k)) for word, coeff in w.items()]
  return symbolic.linear_combine(pairs)


def relation_catalog(kappa):
  """
  Named commutation relations (lhs, rhs) of the kappa-Poincare algebra.
  """
  k = kappa_value(kappa)
  return collections.OrderedDict([
    ("[P,E]", (P * E - E * P, OperatorExpr.zero())),
    ("[N,E]", (N * E - E * N, P)),
    ("[N,EPS]", (N * EPS - EPS * N, (1j / k) * (EPS * P))),
    ("[N,P]", (N * P - P * N, (0.5j * k) * (ID - EPS * EPS) + (0.5j / k) * (P * P))),
    ("[P,EPS]", (P * EPS - EPS * P, OperatorExpr.zero())),
    ("[E,EPS]", (E * EPS - EPS * E, OperatorExpr.zero())),
  ])


CORE_RELATIONS = ("[P,E]", "[N,E]", "[N,EPS]", "[N,P]")

RelationReport = collections.namedtuple("RelationReport", ["relation", "residuals", "max_residual"])


def _relation_key(name):
  key = re.sub(r"\s+", "", name).replace("ℰ", "EPS")
  key = re.sub(r"(?i)eps", "EPS", key)
  return key


def relation_check(rel, samples, kappa):
  """
  Evaluate both sides of a catalog relation on each sample star-polynomial and report the
  largest coefficient residual of the evaluated difference.
  """
  catalog = relation_catalog(kappa)
  key = _relation_key(rel)
  if key not in catalog:
    raise UnknownRelation("unknown relation %r (known: %s)" % (rel, ", ".join(catalog)))
  lhs, rhs = catalog[key]
  residuals = []
  for sample in samples:
    difference = act_on_words(lhs, sample, kappa) - act_on_words(rhs, sample, kappa)
    value = word_eval(difference, kappa).max_abs_coeff()
    residuals.append((str(sample), value))
  _log.debug("relation %s checked on %d samples", key, len(residuals))
  return RelationReport(key, residuals, max([r for _, r in residuals] or [0.]))
