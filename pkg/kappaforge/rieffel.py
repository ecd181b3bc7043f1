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
Rieffel-deformation form of the star product.

The plane acts on the algebra by

  eta_{(r,s)}(f)(alpha, beta) = f(alpha + r, exp(-s) beta)

and the product is deformed along eta with the nilpotent map J(r, s) = (s/kappa, 0).
Both the J-product and the involution are computed from their delta-reduced
two-variable forms: the u-integral is done exactly in the v representation and only the
remaining integral over the s-direction of the action is a quadrature.
:func:`j_star_point` evaluates the same product in position space, without the
v representation, as an oracle for the grid versions.
"""

import logging
import math

import numpy
import scipy.integrate

from .errors import InterpolationOutOfRange, SupportOverflow
from .grid import DEFAULT_SUPPORT_FLOOR, SQRT_2PI, SpectralGrid, rescale_beta, simpson_weights
from .symbolic import kappa_value

_log = logging.getLogger("kappaforge.rieffel")


class JMap(object):
  """
  (r, s) -> (s/kappa, 0); kappa = 1 is the plain (s, 0).
  """

  def __init__(self, kappa):
    self.kappa = kappa_value(kappa)

  def __call__(self, r, s):
    return (s / self.kappa, 0.)

  def squared(self, r, s):
    return self(*self(r, s))

  def twist_rate(self):
    """
    Rate of the beta rescaling per unit of the dual variable.
    """
    return self(0., 1.)[0]

  def __repr__(self):
    return "JMap(kappa=%g)" % self.kappa


def eta_act(r, s, f, check_support=True, strict=False, support_floor=DEFAULT_SUPPORT_FLOOR):
  """
  eta_{(r,s)} on a grid: rows pick up exp(i r v), profiles are resampled at exp(-s) beta.

  Contracting the beta axis (s > 0) drops the part of f beyond exp(-s) times the box;
  with *check_support* that raises :class:`SupportOverflow` unless it is negligible.
  Otherwise the loss goes to ``result.leakage``, and to :class:`InterpolationOutOfRange`
  in *strict* mode.
  """
  spec = f.spec
  rescaled = rescale_beta(spec, f.values, math.exp(-s))
  floor = support_floor * max(f.max_abs(), 1e-300)
  if check_support and rescaled.dropped_peak > floor:
    raise SupportOverflow("eta_(%g, %g) pushes the beta profile out of [%g, %g]" % (r, s, spec.bmin, spec.bmax))
  if strict and rescaled.peak > floor:
    raise InterpolationOutOfRange("eta_(%g, %g) resamples beyond [%g, %g] where f does not vanish"
                                  % (r, s, spec.bmin, spec.bmax))
  leakage = float(numpy.dot(simpson_weights(spec.nv, spec.dv), rescaled.lost)) / SQRT_2PI
  values = rescaled.values
  if r:
    values = values * numpy.exp(1j * r * spec.vs)[:, None]
  return SpectralGrid(spec, values, f.leakage + leakage)


def _shift_rows(values, offset):
  """
  Multiplication by exp(i alpha v_offset): rows move by *offset* grid steps.
  """
  out = numpy.zeros_like(values)
  if offset >= 0:
    out[offset:] = values[:values.shape[0] - offset]
  else:
    out[:offset] = values[-offset:]
  return out


def j_star(f, g, kappa, jmap=None, strict=False, support_floor=DEFAULT_SUPPORT_FLOOR):
  """
  J-product of two grids from its reduced form

    (1/2 pi) int du dv eta_{(u, 0)}(f) eta_{(0, c v)}(g) exp(-i u v),   c = J(0, 1)_1

  The u-integral gives f~(v, beta) exp(i alpha v), leaving one quadrature over the
  nodes v_j of the support of f~ with g rescaled by eta_{(0, c v_j)}. Leakage and
  *strict* follow :func:`kappaforge.grid.grid_star`.
  """
  f._check_spec(g)
  spec = f.spec
  jmap = jmap or JMap(kappa)
  rate = jmap.twist_rate()
  support = f.support_rows(support_floor)
  g_support = g.support_rows(support_floor)
  if support is None or g_support is None:
    return SpectralGrid.zeros(spec)
  z, n = spec.zero_index, spec.nv
  if support[0] + g_support[0] - z < 0 or support[1] + g_support[1] - z > n:
    raise SupportOverflow("J-product support leaves the v range [%g, %g]" % (spec.vmin, spec.vmax))
  weights = simpson_weights(n, spec.dv)
  f_floor, g_floor = support_floor * f.max_abs(), support_floor * g.max_abs()
  out = numpy.zeros(spec.shape, dtype=numpy.complex128)
  leakage, lost = 0., False
  for j in range(support[0], support[1] + 1):
    rescaled = rescale_beta(spec, g.values, math.exp(-spec.vs[j] * rate))
    out += weights[j] * f.values[j][None, :] * _shift_rows(rescaled.values, j - z)
    if rescaled.outside.any():
      mass = numpy.abs(f.values[j, rescaled.outside])
      edge = float(rescaled.edge.max())
      leakage += weights[j] * mass.sum() * edge * spec.dbeta
      lost = lost or (edge > g_floor and bool(numpy.any(mass > f_floor)))
  leakage /= SQRT_2PI
  if strict and lost:
    raise InterpolationOutOfRange("J-product resamples g beyond [%g, %g] where it does not vanish"
                                  " (leakage %.3g)" % (spec.bmin, spec.bmax, leakage))
  _log.debug("j_star over %d nodes, leakage %.3g", support[1] - support[0] + 1, leakage)
  return SpectralGrid(spec, out / SQRT_2PI, leakage)


def j_star_point(f, g, alpha, beta, kappa, v_support, jmap=None, ns=400, u_max=30., nu=3000):
  """
  Value of the J-product at one point, straight from

    (1/2 pi) int du int ds eta_{J(0, u)}(f)(alpha, beta) eta_{(0, s)}(g)(alpha, beta) exp(-i u s)

  for position-space callables *f*, *g*. The u-integral runs over [-u_max, u_max]; the
  s-integral over ``c * v_support`` with c = J(0, 1)_1, where *v_support* bounds the
  spectrum of *f*.
  """
  jmap = jmap or JMap(kappa)
  rate = jmap.twist_rate()
  us = numpy.linspace(-u_max, u_max, nu + 1)
  ss = numpy.linspace(v_support[0], v_support[1], ns + 1) * rate
  shifted = numpy.asarray(f(alpha + rate * us, beta), dtype=complex)
  inner = scipy.integrate.simpson(numpy.exp(-1j * numpy.outer(ss, us)) * shifted[None, :], x=us, axis=1)
  rescaled = numpy.asarray(g(alpha, numpy.exp(-ss) * beta), dtype=complex)
  return complex(scipy.integrate.simpson(inner * rescaled, x=ss) / (2. * math.pi))


def rieffel_involution(f, kappa, strict=False, support_floor=DEFAULT_SUPPORT_FLOOR):
  """
  f* from the Rieffel form

    (kappa / 2 pi) int du1 du2 eta_{(u1, u2)}(conj f) exp(-i kappa u1 u2)

  The u1-integral picks the spectrum of conj f at v = kappa u2, that is conj f~(-v); the
  remaining integral over u2 = v/kappa is read off row by row. Lost beta mass is handled
  as in :func:`kappaforge.grid.grid_involution`.
  """
  spec = f.spec
  k = kappa_value(kappa)
  support = f.support_rows(support_floor)
  out = numpy.zeros(spec.shape, dtype=numpy.complex128)
  if support is None:
    return SpectralGrid(spec, out)
  z, n = spec.zero_index, spec.nv
  if 2 * z - support[1] < 0 or 2 * z - support[0] > n:
    raise SupportOverflow("reflected support leaves the v range [%g, %g]" % (spec.vmin, spec.vmax))
  weights = simpson_weights(n, spec.dv)
  leakage, peak = 0., 0.
  for row in range(2 * z - support[1], 2 * z - support[0] + 1):
    conjugate = numpy.conj(f.values[2 * z - row])[None, :]
    rescaled = rescale_beta(spec, conjugate, math.exp(-spec.vs[row] / k))
    out[row] = rescaled.values[0]
    leakage += weights[row] * rescaled.lost[0]
    peak = max(peak, rescaled.peak)
  leakage /= SQRT_2PI
  if strict and peak > support_floor * f.max_abs():
    raise InterpolationOutOfRange("involution pushes the beta profile out of [%g, %g]" % (spec.bmin, spec.bmax))
  return SpectralGrid(spec, out, f.leakage + leakage)
