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
Three-dimensional covariant differential calculus over the star-product algebra.

Forms are sums ``basis * f`` with the coefficient written to the right of an ordered basis
monomial in the generating one-forms dx < psi+ < psi-. Functions are moved to the right
of a generator with the bimodule rules

  f dx   = dx f + psi- (i/kappa)(P f)
  f psi+ = psi+ (EPS^-1 f) + dx (2i/kappa)(EPS^-1 P f) - psi- (1/kappa^2)(EPS^-1 P^2 f)
  f psi- = psi- (EPS f)

and the exterior derivative of a function is

  d f = dx (EPS^-1 P f) - i(kappa/2) psi+ ((EPS^-1 - 1) f)
        + 1/2 psi- (((i/kappa) EPS^-1 P^2 + i kappa (EPS - 1)) f)

The module is written against :class:`CoefficientAlgebra`, so the same code runs on exact
symbolic coefficients (:class:`SymbolicAlgebra`) and on sampled spectral grids
(:class:`kappaforge.grid.GridAlgebra`).
"""

import abc
import collections
import logging

from enum import Enum
from sympy.combinatorics import Permutation

from . import hopf
from . import symbolic
from .errors import BackendMismatch, DegreeOverflow, InvalidValue, WrongDegree
from .hopf import EPS, EPS_INV, ID, P
from .symbolic import kappa_value

_log = logging.getLogger("kappaforge.calculus")

MAX_DEGREE = 3


class OneForm(Enum):
  """
  Generating one-forms, in canonical order.
  """
  DX = 0
  PSI_PLUS = 1
  PSI_MINUS = 2

  @property
  def label(self):
    return _LABELS[self]


_LABELS = {OneForm.DX: "dx", OneForm.PSI_PLUS: "psi+", OneForm.PSI_MINUS: "psi-"}
_BY_LABEL = dict((v, k) for k, v in _LABELS.items())

DX, PSI_PLUS, PSI_MINUS = OneForm.DX, OneForm.PSI_PLUS, OneForm.PSI_MINUS


class CoefficientAlgebra(metaclass=abc.ABCMeta):
  """
  Contract a coefficient backend has to provide to the calculus.

  Concrete backends:

    *SymbolicAlgebra* - exact :class:`kappaforge.symbolic.Element` coefficients

    *kappaforge.grid.GridAlgebra* - :class:`kappaforge.grid.SpectralGrid` coefficients
  """

  def __init__(self, kappa):
    self.kappa = kappa_value(kappa)
    self._log = logging.getLogger(type(self).__name__)

  @abc.abstractmethod
  def owns(self, value):
    """
    True if *value* is a coefficient of this backend.
    """
    raise NotImplementedError()

  @abc.abstractmethod
  def star(self, f, g):
    raise NotImplementedError()

  @abc.abstractmethod
  def act(self, h, f):
    """
    Act with an operator expression (E, P, EPS, EPS_INV) on a coefficient.
    """
    raise NotImplementedError()

  @abc.abstractmethod
  def combine(self, pairs):
    """
    Linear combination of ``(scalar, coefficient)`` pairs; an empty list gives zero.
    """
    raise NotImplementedError()

  @abc.abstractmethod
  def translate(self, gamma, f):
    raise NotImplementedError()

  @abc.abstractmethod
  def one(self):
    raise NotImplementedError()

  @abc.abstractmethod
  def is_zero(self, f):
    raise NotImplementedError()

  @abc.abstractmethod
  def norm(self, f):
    """
    Size of a coefficient, used to scale tolerances.
    """
    raise NotImplementedError()

  @abc.abstractmethod
  def encode(self, f):
    raise NotImplementedError()

  @abc.abstractmethod
  def decode(self, data):
    raise NotImplementedError()

  def zero(self):
    return self.combine([])

  def check(self, value):
    if not self.owns(value):
      raise BackendMismatch("%s does not accept coefficients of type %s" % (type(self).__name__, type(value).__name__))
    return value


class SymbolicAlgebra(CoefficientAlgebra):
  """
  Exact backend over :class:`kappaforge.symbolic.Element`.
  """

  def owns(self, value):
    return isinstance(value, symbolic.Element)

  def star(self, f, g):
    return symbolic.star_mul(f, g, self.kappa)

  def act(self, h, f):
    return hopf.apply_op(h, f, self.kappa)

  def combine(self, pairs):
    return symbolic.linear_combine(pairs)

  def translate(self, gamma, f):
    return symbolic.translate(gamma, f)

  def one(self):
    return symbolic.ONE

  def is_zero(self, f):
    return f.is_zero()

  def norm(self, f):
    return sum(abs(t.coeff) for t in f)

  def encode(self, f):
    return f.to_json()

  def decode(self, data):
    return symbolic.Element.from_json(data)


def normalize_basis(generators):
  """
  Sort a sequence of one-form generators into canonical order.

  Returns ``(sign, basis)``; a repeated generator gives ``(0, None)``.
  """
  indices = [g.value for g in generators]
  if len(set(indices)) != len(indices):
    return 0, None
  ranks = sorted(range(len(indices)), key=lambda i: indices[i])
  parity = Permutation(ranks).parity() if len(ranks) > 1 else 0
  return (-1 if parity else 1), tuple(sorted(generators, key=lambda g: g.value))


def basis_label(basis):
  return "^".join(g.label for g in basis) if basis else "1"


def parse_basis(label):
  if label in ("", "1"):
    return ()
  try:
    generators = [_BY_LABEL[part] for part in label.split("^")]
  except KeyError:
    raise InvalidValue("unknown basis monomial %r" % label)
  sign, basis = normalize_basis(generators)
  if sign != 1:
    raise InvalidValue("basis monomial %r is not in canonical order" % label)
  return basis


class DifferentialForm(object):
  """
  Degree-k form stored as ``{basis: coefficient}`` with coefficients on the right.

  All coefficients belong to one :class:`CoefficientAlgebra`.
  """

  def __init__(self, algebra, degree, coeffs=None):
    if degree < 0:
      raise InvalidValue("form degree must be non-negative")
    self.algebra = algebra
    self.degree = degree
    self._coeffs = collections.OrderedDict()
    merged = collections.defaultdict(list)
    for basis, coeff in (coeffs or {}).items():
      basis = tuple(basis)
      if len(basis) != degree:
        raise WrongDegree("basis %s does not have degree %d" % (basis_label(basis), degree))
      sign, canonical = normalize_basis(basis)
      if sign:
        merged[canonical].append((sign, algebra.check(coeff)))
    for basis in sorted(merged, key=lambda b: [g.value for g in b]):
      pairs = merged[basis]
      value = pairs[0][1] if len(pairs) == 1 and pairs[0][0] == 1 else algebra.combine(pairs)
      if not algebra.is_zero(value):
        self._coeffs[basis] = value

  @classmethod
  def function(cls, algebra, f):
    return cls(algebra, 0, {(): f})

  @classmethod
  def zero(cls, algebra, degree):
    return cls(algebra, degree)

  @classmethod
  def generator(cls, algebra, one_form, coeff=None):
    """
    ``one_form * coeff`` (coefficient defaults to 1).
    """
    if not isinstance(one_form, OneForm):
      one_form = _BY_LABEL[one_form]
    return cls(algebra, 1, {(one_form,): algebra.one() if coeff is None else coeff})

  def items(self):
    return list(self._coeffs.items())

  def coefficient(self, basis):
    if isinstance(basis, str):
      basis = parse_basis(basis)
    return self._coeffs.get(tuple(basis), self.algebra.zero())

  def is_zero(self):
    return not self._coeffs

  def _check_compatible(self, other):
    if not isinstance(other, DifferentialForm):
      raise BackendMismatch("expected a differential form, got %s" % type(other).__name__)
    if other.algebra is not self.algebra and type(other.algebra) is not type(self.algebra):
      raise BackendMismatch("forms use different coefficient backends")

  def __add__(self, other):
    self._check_compatible(other)
    if other.degree != self.degree:
      raise WrongDegree("cannot add forms of degree %d and %d" % (self.degree, other.degree))
    pairs = collections.defaultdict(list)
    for basis, coeff in self.items() + other.items():
      pairs[basis].append((1., coeff))
    return DifferentialForm(self.algebra, self.degree,
                            dict((b, self.algebra.combine(p)) for b, p in pairs.items()))

  def __neg__(self):
    return self.scale(-1.)

  def __sub__(self, other):
    return self + (-other)

  def scale(self, scalar):
    return DifferentialForm(self.algebra, self.degree,
                            dict((b, self.algebra.combine([(scalar, c)])) for b, c in self.items()))

  def map_coefficients(self, function):
    return DifferentialForm(self.algebra, self.degree, dict((b, function(c)) for b, c in self.items()))

  def norm(self):
    return sum(self.algebra.norm(c) for _, c in self.items())

  def to_json(self):
    return {"degree": self.degree,
            "coeffs": collections.OrderedDict((basis_label(b), self.algebra.encode(c)) for b, c in self.items())}

  @classmethod
  def from_json(cls, algebra, data):
    return cls(algebra, data["degree"],
               dict((parse_basis(label), algebra.decode(payload)) for label, payload in data["coeffs"].items()))

  def __repr__(self):
    return "DifferentialForm(degree=%d, %s)" % (self.degree, ", ".join(basis_label(b) for b in self._coeffs))

  def format(self, formatter=str):
    if self.is_zero():
      return "0"
    parts = []
    for basis, coeff in self.items():
      label = basis_label(basis) if basis else ""
      text = formatter(coeff)
      if not label:
        parts.append(text)
      elif " " in text:
        parts.append("%s·(%s)" % (label, text))
      else:
        parts.append("%s·%s" % (label, text))
    return " + ".join(parts)

  def __str__(self):
    return self.format()


def derivative_operators(kappa):
  """
  Coefficient operators of d in the dx, psi+, psi- directions.
  """
  k = kappa_value(kappa)
  return collections.OrderedDict([
    (DX, EPS_INV * P),
    (PSI_PLUS, (-0.5j * k) * (EPS_INV - ID)),
    (PSI_MINUS, 0.5 * ((1j / k) * (EPS_INV * P * P) + (1j * k) * (EPS - ID))),
  ])


def bimodule_rules(kappa):
  """
  For each generator theta, the list of (theta', h) with f theta = sum theta' (h f).
  """
  k = kappa_value(kappa)
  return {
    DX: [(DX, ID), (PSI_MINUS, (1j / k) * P)],
    PSI_PLUS: [(PSI_PLUS, EPS_INV), (DX, (2j / k) * (EPS_INV * P)), (PSI_MINUS, (-1. / k ** 2) * (EPS_INV * P * P))],
    PSI_MINUS: [(PSI_MINUS, EPS)],
  }


def _push(algebra, f, basis, rules):
  """
  Move a function from the left of a basis monomial to its right.

  Returns a list of ``(generators, coefficient)`` with generators not yet normalized.
  """
  if not basis:
    return [((), f)]
  result = []
  head, tail = basis[0], basis[1:]
  for generator, op in rules[head]:
    h = f if op is ID else algebra.act(op, f)
    if algebra.is_zero(h):
      continue
    for generators, coeff in _push(algebra, h, tail, rules):
      result.append(((generator,) + generators, coeff))
  return result


def _collect(algebra, degree, pieces):
  grouped = collections.defaultdict(list)
  for generators, scalar, coeff in pieces:
    sign, basis = normalize_basis(generators)
    if sign:
      grouped[basis].append((sign * scalar, coeff))
  return DifferentialForm(algebra, degree, dict((b, algebra.combine(p)) for b, p in grouped.items()))


def exterior_d0(f, algebra):
  """
  d of a function, a degree-1 form.
  """
  algebra.check(f)
  coeffs = {}
  for generator, op in derivative_operators(algebra.kappa).items():
    coeffs[(generator,)] = algebra.act(op, f)
  return DifferentialForm(algebra, 1, coeffs)


def left_mul(f, omega, algebra=None):
  """
  f . omega, pushing f to the right through each generator with the bimodule rules.
  """
  algebra = algebra or omega.algebra
  algebra.check(f)
  rules = bimodule_rules(algebra.kappa)
  pieces = []
  for basis, g in omega.items():
    for generators, h in _push(algebra, f, basis, rules):
      pieces.append((generators, 1., algebra.star(h, g)))
  return _collect(algebra, omega.degree, pieces)


def right_mul(omega, f, algebra=None):
  algebra = algebra or omega.algebra
  algebra.check(f)
  return omega.map_coefficients(lambda g: algebra.star(g, f))


def wedge(lhs, rhs, strict=False):
  """
  Wedge product. Degrees summing above three give the zero form (or
  :class:`DegreeOverflow` in strict mode).
  """
  lhs._check_compatible(rhs)
  algebra = lhs.algebra
  degree = lhs.degree + rhs.degree
  if degree > MAX_DEGREE:
    if strict:
      raise DegreeOverflow("wedge of degree %d and %d exceeds %d" % (lhs.degree, rhs.degree, MAX_DEGREE))
    _log.debug("wedge of degree %d and %d vanishes", lhs.degree, rhs.degree)
    return DifferentialForm.zero(algebra, degree)
  rules = bimodule_rules(algebra.kappa)
  pieces = []
  for left_basis, f in lhs.items():
    for right_basis, g in rhs.items():
      for generators, h in _push(algebra, f, right_basis, rules):
        if len(set(left_basis + generators)) < degree:
          continue
        pieces.append((left_basis + generators, 1., algebra.star(h, g)))
  return _collect(algebra, degree, pieces)


def wedge_generator(omega, one_form, strict=False):
  """
  omega ^ (one_form . 1); needs no product of coefficients, so it also works on backends
  without a sampled unit.
  """
  algebra = omega.algebra
  degree = omega.degree + 1
  if degree > MAX_DEGREE:
    if strict:
      raise DegreeOverflow("wedge of degree %d and 1 exceeds %d" % (omega.degree, MAX_DEGREE))
    return DifferentialForm.zero(algebra, degree)
  rules = bimodule_rules(algebra.kappa)
  pieces = []
  for basis, f in omega.items():
    for generators, h in _push(algebra, f, (one_form,), rules):
      pieces.append((basis + generators, 1., h))
  return _collect(algebra, degree, pieces)


def generator_wedge(one_form, omega, strict=False):
  """
  (one_form . 1) ^ omega.
  """
  algebra = omega.algebra
  degree = omega.degree + 1
  if degree > MAX_DEGREE:
    if strict:
      raise DegreeOverflow("wedge of degree 1 and %d exceeds %d" % (omega.degree, MAX_DEGREE))
    return DifferentialForm.zero(algebra, degree)
  return _collect(algebra, degree, [((one_form,) + basis, 1., f) for basis, f in omega.items()])


def exterior_d(omega):
  """
  d(basis . f) = (-1)^deg basis ^ d f; the generators themselves are closed.
  """
  algebra = omega.algebra
  if omega.degree >= MAX_DEGREE:
    return DifferentialForm.zero(algebra, omega.degree + 1)
  sign = -1. if omega.degree % 2 else 1.
  operators = derivative_operators(algebra.kappa)
  pieces = []
  for basis, f in omega.items():
    for generator, op in operators.items():
      if generator in basis:
        continue
      pieces.append((basis + (generator,), sign, algebra.act(op, f)))
  return _collect(algebra, omega.degree + 1, pieces)


def d(value, algebra):
  """
  Exterior derivative of a function or of a form.
  """
  if isinstance(value, DifferentialForm):
    return exterior_d(value)
  return exterior_d0(value, algebra)


def translate_form(gamma, omega):
  """
  T_gamma acts trivially on dx, psi+, psi-; only the coefficients move.
  """
  return omega.map_coefficients(lambda f: omega.algebra.translate(gamma, f))


def act_form(h, omega):
  return omega.map_coefficients(lambda f: omega.algebra.act(h, f))


def inverse_bimodule_rules(kappa):
  """
  For each generator theta, the list of (theta', h) with theta g = sum (h g) theta'.
  """
  k = kappa_value(kappa)
  return {
    DX: [(DX, ID), (PSI_MINUS, (-1j / k) * (EPS_INV * P))],
    PSI_PLUS: [(PSI_PLUS, EPS), (DX, (-2j / k) * P), (PSI_MINUS, (-1. / k ** 2) * (EPS_INV * P * P))],
    PSI_MINUS: [(PSI_MINUS, EPS_INV)],
  }


def pull_left(omega):
  """
  Rewrite a one-form ``sum theta . g`` as ``sum g' . theta`` (functions on the left).

  Returns an ordered mapping generator -> left coefficient.
  """
  if omega.degree != 1:
    raise WrongDegree("pull_left expects a one-form, got degree %d" % omega.degree)
  algebra = omega.algebra
  left = collections.defaultdict(list)
  rules = inverse_bimodule_rules(algebra.kappa)
  for basis, g in omega.items():
    for generator, op in rules[basis[0]]:
      left[generator].append((1., g if op is ID else algebra.act(op, g)))
  combined = [(g, algebra.combine(left[g])) for g in (DX, PSI_PLUS, PSI_MINUS)]
  return collections.OrderedDict((g, c) for g, c in combined if not algebra.is_zero(c))


def volume_coefficient(omega):
  if omega.degree != MAX_DEGREE:
    raise WrongDegree("expected a three-form, got degree %d" % omega.degree)
  return omega.coefficient((DX, PSI_PLUS, PSI_MINUS))
