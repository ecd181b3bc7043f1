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
Exact closed-form arithmetic for the kappa-Minkowski star-product algebra.

Elements are finite sums of terms

  c * alpha^m * exp(i a alpha) * beta^n * exp(i b beta) * exp(-w beta^2)

This class contains the coordinate functions (``t`` is alpha, ``x`` is beta), plane waves
and Gaussian profiles, and it is closed under the star product, the involution and the
translations T_gamma.

The star product is evaluated on the delta-derivative spectrum of each left factor:
the spectrum of alpha^m exp(i a alpha) is a derivative of a Dirac delta at v = a, so

  (f * g)(alpha, beta) = c h(beta) (-i d/da)^m [exp(i a alpha) g(alpha, exp(-a/kappa) beta)]

at a = a_1, where the beta-profile of g is rescaled by lambda = exp(-a/kappa). The
derivative is expanded in closed form (see :func:`_expand_parameter_derivative`).

Coefficients are complex floating point numbers; real keys (a, b, w) are merged with an
absolute tolerance of :data:`KEY_TOLERANCE`.
"""

import cmath
import collections
import logging
import math

from fractions import Fraction

import numpy
import scipy.special

from .errors import InvalidValue

KEY_TOLERANCE = 1e-12
COEFF_EPSILON = 1e-15

_log = logging.getLogger("kappaforge.symbolic")


class Kappa(object):
  """
  Deformation parameter. Strictly positive.
  """
  __slots__ = ("value",)

  def __init__(self, value):
    value = float(value)
    if not value > 0 or math.isinf(value):
      raise InvalidValue("kappa must be a finite positive number, got %r" % value)
    self.value = value

  def __float__(self):
    return self.value

  def __eq__(self, other):
    return isinstance(other, Kappa) and other.value == self.value

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash(self.value)

  def __repr__(self):
    return "Kappa(%r)" % self.value


def kappa_value(kappa):
  """
  Accept either a :class:`Kappa` or a plain number and return a validated float.
  """
  if isinstance(kappa, Kappa):
    return kappa.value
  return Kappa(kappa).value


class Term(object):
  """
  Single term c * alpha^m * exp(i a alpha) * beta^n * exp(i b beta) * exp(-w beta^2).

  Immutable. ``key`` is the (m, a, n, b, w) quintuple used for ordering and merging.
  """
  __slots__ = ("coeff", "m", "a", "n", "b", "w")

  def __init__(self, coeff, m=0, a=0., n=0, b=0., w=0.):
    if int(m) != m or m < 0 or int(n) != n or n < 0:
      raise InvalidValue("term powers must be non-negative integers, got m=%r, n=%r" % (m, n))
    if w < 0:
      raise InvalidValue("beta width must be non-negative, got %r" % w)
    object.__setattr__(self, "coeff", complex(coeff))
    object.__setattr__(self, "m", int(m))
    object.__setattr__(self, "a", float(a))
    object.__setattr__(self, "n", int(n))
    object.__setattr__(self, "b", float(b))
    object.__setattr__(self, "w", float(w))

  def __setattr__(self, name, value):
    raise AttributeError("Term is immutable")

  @property
  def key(self):
    return (self.m, self.a, self.n, self.b, self.w)

  def with_coeff(self, coeff):
    return Term(coeff, self.m, self.a, self.n, self.b, self.w)

  def value(self, alpha, beta):
    return (self.coeff * alpha ** self.m * numpy.exp(1j * self.a * alpha)
            * beta ** self.n * numpy.exp(1j * self.b * beta) * numpy.exp(-self.w * beta * beta))

  def __eq__(self, other):
    return isinstance(other, Term) and self.coeff == other.coeff and self.key == other.key

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash((self.coeff, self.key))

  def __repr__(self):
    return "Term(%r, m=%d, a=%r, n=%d, b=%r, w=%r)" % (self.coeff, self.m, self.a, self.n, self.b, self.w)


def _same_key(lhs, rhs, tolerance):
  return (lhs.m == rhs.m and lhs.n == rhs.n and abs(lhs.a - rhs.a) <= tolerance
          and abs(lhs.b - rhs.b) <= tolerance and abs(lhs.w - rhs.w) <= tolerance)


def canonicalize(terms, key_tolerance=KEY_TOLERANCE, epsilon=COEFF_EPSILON):
  """
  Merge terms with equal keys, drop negligible coefficients and sort lexicographically.

  Integer keys are compared exactly, real keys within *key_tolerance*; the merged term
  keeps the key of its first (lowest) representative.
  """
  buckets = collections.defaultdict(list)
  for term in sorted(terms, key=lambda t: t.key):
    bucket = buckets[(term.m, term.n)]
    for idx, existing in enumerate(bucket):
      if _same_key(existing, term, key_tolerance):
        bucket[idx] = existing.with_coeff(existing.coeff + term.coeff)
        break
    else:
      bucket.append(term)
  merged = [t for bucket in buckets.values() for t in bucket if abs(t.coeff) > epsilon]
  return tuple(sorted(merged, key=lambda t: t.key))


class Element(object):
  """
  Canonical finite sum of :class:`Term` objects.

  The empty sum is zero; ``Element.unit()`` is the constant function 1. Elements are
  immutable and support ``+``, ``-`` and multiplication by scalars. The star product is
  :func:`star_mul`; ``*`` between two elements is intentionally not defined.
  """
  __slots__ = ("_terms",)

  def __init__(self, terms=()):
    object.__setattr__(self, "_terms", canonicalize(terms))

  def __setattr__(self, name, value):
    raise AttributeError("Element is immutable")

  @classmethod
  def unit(cls):
    return cls([Term(1.)])

  @classmethod
  def zero(cls):
    return cls()

  @classmethod
  def scalar(cls, value):
    return cls([Term(value)])

  @property
  def terms(self):
    return self._terms

  def is_zero(self):
    return not self._terms

  def max_abs_coeff(self):
    return max([abs(t.coeff) for t in self._terms] or [0.])

  def __iter__(self):
    return iter(self._terms)

  def __len__(self):
    return len(self._terms)

  def __add__(self, other):
    if isinstance(other, Element):
      return Element(self._terms + other._terms)
    if isinstance(other, (int, float, complex)):
      return self + Element.scalar(other)
    return NotImplemented

  __radd__ = __add__

  def __neg__(self):
    return Element([t.with_coeff(-t.coeff) for t in self._terms])

  def __sub__(self, other):
    if isinstance(other, (Element, int, float, complex)):
      return self + (-other)
    return NotImplemented

  def __rsub__(self, other):
    return (-self) + other

  def __mul__(self, scalar):
    if isinstance(scalar, (int, float, complex)):
      return Element([t.with_coeff(t.coeff * scalar) for t in self._terms])
    return NotImplemented

  __rmul__ = __mul__

  def __eq__(self, other):
    return isinstance(other, Element) and self._terms == other._terms

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash(self._terms)

  def __repr__(self):
    return "Element(%r)" % (list(self._terms),)

  def __str__(self):
    return format_element(self)

  def to_json(self):
    return [{"coeff": [t.coeff.real, t.coeff.imag], "m": t.m, "a": t.a, "n": t.n, "b": t.b, "w": t.w}
            for t in self._terms]

  @classmethod
  def from_json(cls, data):
    return cls([Term(complex(*item["coeff"]), item["m"], item["a"], item["n"], item["b"], item["w"])
                for item in data])


T = Element([Term(1., m=1)])
X = Element([Term(1., n=1)])
ONE = Element.unit()


def plane_wave(a, n=0, b=0., w=0., coeff=1.):
  """
  Shortcut for coeff * exp(i a alpha) * beta^n * exp(i b beta - w beta^2).
  """
  return Element([Term(coeff, 0, a, n, b, w)])


def linear_combine(pairs):
  """
  Canonical sum of ``scalar * element`` over *pairs*.
  """
  terms = []
  for scalar, element in pairs:
    terms.extend(t.with_coeff(t.coeff * scalar) for t in element)
  return Element(terms)


def _expand_parameter_derivative(monomials, steps, phase, rate, beta_freq, width, prefactor):
  """
  Apply ``(prefactor * d/da)^steps`` to

    sum_{p,q,r} c * alpha^p * beta^q * lambda^r * E(a)

  where ``E(a) = exp(i phase a alpha) exp(i beta_freq lambda beta) exp(-width lambda^2 beta^2)``
  and ``d lambda/da = rate * lambda``. Monomials are a mapping (p, q, r) -> c.
  """
  for _ in range(steps):
    result = collections.defaultdict(complex)
    for (p, q, r), c in monomials.items():
      c = prefactor * c
      if r:
        result[(p, q, r)] += c * rate * r
      result[(p + 1, q, r)] += c * 1j * phase
      if beta_freq:
        result[(p, q + 1, r + 1)] += c * 1j * beta_freq * rate
      if width:
        result[(p, q + 2, r + 2)] += c * -2. * width * rate
    monomials = result
  return monomials


def _star_terms(lhs, rhs, kappa):
  lam = math.exp(-lhs.a / kappa)
  start = {(rhs.m, rhs.n, rhs.n): rhs.coeff}
  expanded = _expand_parameter_derivative(start, lhs.m, 1., -1. / kappa, rhs.b, rhs.w, -1j)
  b = lhs.b + rhs.b * lam
  w = lhs.w + rhs.w * lam * lam
  return [Term(lhs.coeff * c * lam ** r, p, lhs.a + rhs.a, lhs.n + q, b, w)
          for (p, q, r), c in expanded.items() if c != 0]


def star_mul(f, g, kappa):
  """
  Star product f * g, extended bilinearly over terms.

  Example:
    ``star_mul(T, X, k)`` is ``alpha beta + (i/k) beta`` while ``star_mul(X, T, k)`` is
    ``alpha beta``.
  """
  k = kappa_value(kappa)
  terms = []
  for lhs in f:
    for rhs in g:
      terms.extend(_star_terms(lhs, rhs, k))
  return Element(terms)


def star_chain(elements, kappa):
  """
  Left-to-right star product of a sequence; the empty sequence gives the unit.
  """
  result = ONE
  for element in elements:
    result = star_mul(result, element, kappa)
  return result


def commutator(f, g, kappa):
  return star_mul(f, g, kappa) - star_mul(g, f, kappa)


def _involution_terms(term, kappa):
  lam = math.exp(term.a / kappa)
  start = {(0, term.n, term.n): term.coeff.conjugate()}
  expanded = _expand_parameter_derivative(start, term.m, -1., 1. / kappa, -term.b, term.w, 1j)
  return [Term(c * lam ** r, p, -term.a, q, -term.b * lam, term.w * lam * lam)
          for (p, q, r), c in expanded.items() if c != 0]


def involution(f, kappa):
  """
  Antilinear anti-automorphism f -> f*.

  A plane wave exp(i a alpha) h(beta) maps to exp(-i a alpha) conj(h)(exp(a/kappa) beta);
  powers of alpha are produced by ``(+i d/da)^m`` of that result.
  """
  k = kappa_value(kappa)
  terms = []
  for term in f:
    terms.extend(_involution_terms(term, k))
  return Element(terms)


def translate(gamma, f):
  """
  T_gamma: formally f(alpha + i gamma, beta). A term picks up exp(-a gamma) and its alpha
  power is expanded binomially.
  """
  terms = []
  for term in f:
    scale = term.coeff * math.exp(-term.a * gamma)
    for k in range(term.m + 1):
      coeff = scale * scipy.special.comb(term.m, k, exact=True) * (1j * gamma) ** (term.m - k)
      terms.append(Term(coeff, k, term.a, term.n, term.b, term.w))
  return Element(terms)


def partial_alpha(f):
  terms = []
  for t in f:
    if t.m:
      terms.append(Term(t.coeff * t.m, t.m - 1, t.a, t.n, t.b, t.w))
    if t.a:
      terms.append(t.with_coeff(1j * t.a * t.coeff))
  return Element(terms)


def partial_beta(f):
  """
  d/d beta; the Gaussian factor raises the beta power by one.
  """
  terms = []
  for t in f:
    if t.n:
      terms.append(Term(t.coeff * t.n, t.m, t.a, t.n - 1, t.b, t.w))
    if t.b:
      terms.append(t.with_coeff(1j * t.b * t.coeff))
    if t.w:
      terms.append(Term(-2. * t.w * t.coeff, t.m, t.a, t.n + 1, t.b, t.w))
  return Element(terms)


def eval_point(f, alpha, beta):
  """
  Pointwise value; complex arguments are admitted.
  """
  alpha = complex(alpha)
  beta = complex(beta)
  total = 0j
  for t in f:
    total += (t.coeff * alpha ** t.m * cmath.exp(1j * t.a * alpha)
              * beta ** t.n * cmath.exp(1j * t.b * beta - t.w * beta * beta))
  return total


def equals_within(f, g, tol):
  """
  True when f - g, jointly canonicalized, has no coefficient above *tol* in modulus.
  """
  if tol < 0:
    raise InvalidValue("tolerance must be non-negative")
  difference = Element(f.terms + tuple(t.with_coeff(-t.coeff) for t in g))
  return all(abs(t.coeff) <= tol for t in difference)


def residual(f, g):
  """
  Largest coefficient modulus of f - g.
  """
  return (f - g).max_abs_coeff()


# Pretty printing
#
# Coefficients are rendered as small rationals when possible, optionally as rational
# multiples of a power of kappa (only when kappa != 1, otherwise powers are invisible).

_MAX_DENOMINATOR = 16


def _rational_text(value):
  if abs(value) < 1e-300:
    return "0", 0
  fraction = Fraction(value).limit_denominator(_MAX_DENOMINATOR)
  if abs(float(fraction) - value) > 1e-9 * max(1., abs(value)):
    return None, None
  if fraction.denominator == 1:
    return str(fraction.numerator), abs(fraction.numerator)
  return "%d/%d" % (fraction.numerator, fraction.denominator), abs(fraction.numerator) + fraction.denominator


def _complex_text(value):
  re_text, re_cost = _rational_text(value.real)
  im_text, im_cost = _rational_text(value.imag)
  if re_text is None or im_text is None:
    return "%.12g%+.12gi" % (value.real, value.imag) if value.imag else "%.12g" % value.real, 1000
  if value.imag == 0 or im_text == "0":
    return re_text, re_cost
  if im_text in ("1", "-1"):
    imag = im_text.replace("1", "i")
  elif "/" in im_text:
    num, den = im_text.split("/")
    imag = ("-i" if num == "-1" else "i" if num == "1" else num + "i") + "/" + den
  else:
    imag = im_text + "i"
  if value.real == 0 or re_text == "0":
    return imag, im_cost
  sign = "" if imag.startswith("-") else "+"
  return re_text + sign + imag, re_cost + im_cost + 1


_KAPPA_SUFFIX = {1: "κ", 2: "κ²"}


def format_scalar(value, kappa=None):
  value = complex(value)
  text, cost = _complex_text(value)
  if kappa is None or kappa == 1.:
    return text
  for power in (-1, 1, -2, 2):
    candidate, candidate_cost = _complex_text(value / kappa ** power)
    if candidate_cost + 1 >= cost:
      continue
    suffix = _KAPPA_SUFFIX[abs(power)]
    compound = "+" in candidate[1:] or "-" in candidate[1:]
    if power < 0 and "/" in candidate and not compound:
      num, den = candidate.split("/")
      candidate = "%s/(%s%s)" % (num, den, suffix)
    elif power < 0:
      candidate = "%s/%s" % ("(%s)" % candidate if compound else candidate, suffix)
    else:
      candidate = "%s·%s" % ("(%s)" % candidate if compound or "/" in candidate else candidate, suffix)
    text, cost = candidate, candidate_cost + 1
  return text


def _format_term(term, kappa):
  factors = []
  if term.m:
    factors.append("t" if term.m == 1 else "t^%d" % term.m)
  if term.a:
    factors.append("exp(%s·i·t)" % format_scalar(term.a))
  if term.n:
    factors.append("x" if term.n == 1 else "x^%d" % term.n)
  if term.b:
    factors.append("exp(%s·i·x)" % format_scalar(term.b))
  if term.w:
    factors.append("exp(-%s·x^2)" % format_scalar(term.w))
  coeff = format_scalar(term.coeff, kappa)
  if not factors:
    return coeff
  body = "·".join(factors)
  if coeff == "1":
    return body
  if coeff == "-1":
    return "-" + body
  if any(ch in coeff[1:] for ch in "/+-·"):
    coeff = "(" + coeff + ")"
  return coeff + "·" + body


def format_element(f, kappa=None):
  """
  Human readable rendering in canonical order, alpha shown as ``t`` and beta as ``x``.
  """
  if f.is_zero():
    return "0"
  parts = [_format_term(term, kappa) for term in f]
  text = parts[0]
  for part in parts[1:]:
    if part.startswith("-"):
      text += " - " + part[1:]
    else:
      text += " + " + part
  return text
