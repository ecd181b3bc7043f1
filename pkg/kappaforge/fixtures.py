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
Named grid presets and reproducible random inputs for the property suites.
"""

import collections

import numpy

from . import grid
from . import symbolic
from .errors import InvalidValue

GRID_PRESETS = collections.OrderedDict([
  ("bump1", dict(center_v=0.25, width_v=0.8, profile="gauss", beta_center=0.2, beta_width=0.7)),
  ("bump2", dict(center_v=-0.3, width_v=0.7, profile="gauss", beta_center=-0.1, beta_width=0.6, beta_phase=0.5)),
  ("gauss1", dict(center_v=0., width_v=0.35, profile="gauss", beta_width=0.8, shape="gauss")),
])


def preset(name, spec, **overrides):
  """
  Sample a named preset; keyword arguments override its parameters
  (``v0`` and ``w`` are accepted as short names for ``center_v`` and ``width_v``).
  """
  if name not in GRID_PRESETS:
    raise InvalidValue("unknown fixture %r (known: %s)" % (name, ", ".join(GRID_PRESETS)))
  params = dict(GRID_PRESETS[name])
  aliases = {"v0": "center_v", "w": "width_v", "b0": "beta_center", "bw": "beta_width"}
  for key, value in overrides.items():
    params[aliases.get(key, key)] = value
  return grid.make_bump(spec, **params)


class GaussianFixture(object):
  """
  Fixture with Gaussian spectrum in v, known in closed form on both sides:

    f~(v, beta) = A exp(-(v - c)^2 / (2 s^2)) h(beta)
    f(alpha, beta) = A s exp(i c alpha - s^2 alpha^2 / 2) h(beta)

  with h(beta) = exp(-(beta - b)^2 / (2 w^2) + i p beta).
  """

  def __init__(self, center_v=0., width_v=0.5, beta_center=0., beta_width=1., amplitude=1., beta_phase=0.):
    if width_v <= 0 or beta_width <= 0:
      raise InvalidValue("fixture widths must be positive")
    self.center_v = center_v
    self.width_v = width_v
    self.beta_center = beta_center
    self.beta_width = beta_width
    self.amplitude = amplitude
    self.beta_phase = beta_phase

  def profile(self, beta):
    beta = numpy.asarray(beta)
    return numpy.exp(-0.5 * ((beta - self.beta_center) / self.beta_width) ** 2 + 1j * self.beta_phase * beta)

  def spectrum(self, v, beta):
    v = numpy.asarray(v)
    return self.amplitude * numpy.exp(-0.5 * ((v - self.center_v) / self.width_v) ** 2) * self.profile(beta)

  def position(self, alpha, beta):
    alpha = numpy.asarray(alpha, dtype=complex)
    s = self.width_v
    return self.amplitude * s * numpy.exp(1j * self.center_v * alpha - 0.5 * s * s * alpha * alpha) * self.profile(beta)

  def v_support(self, sigmas=9.):
    return (self.center_v - sigmas * self.width_v, self.center_v + sigmas * self.width_v)

  def sample(self, spec):
    return grid.SpectralGrid.from_function(spec, self.spectrum)

  def __repr__(self):
    return "GaussianFixture(c=%.3g, s=%.3g, b=%.3g, w=%.3g)" % (self.center_v, self.width_v, self.beta_center, self.beta_width)


def gaussian_fixtures(count, seed=1234):
  """
  Random Gaussian fixtures that keep pairwise products inside the default box.
  """
  rng = numpy.random.RandomState(seed)
  return [GaussianFixture(center_v=rng.uniform(-0.5, 0.5), width_v=rng.uniform(0.3, 0.4),
                          beta_center=rng.uniform(-0.3, 0.3), beta_width=rng.uniform(0.6, 0.9),
                          amplitude=rng.uniform(0.5, 1.5), beta_phase=rng.uniform(-0.5, 0.5))
          for _ in range(count)]


def bump_fixtures(spec, count, seed=1234):
  """
  Random compactly supported grids; supports of five factors still fit the default box.
  """
  rng = numpy.random.RandomState(seed)
  return [grid.make_bump(spec, center_v=rng.uniform(-0.2, 0.2), width_v=rng.uniform(0.6, 0.8),
                         profile="gauss", beta_center=rng.uniform(-0.2, 0.2), beta_width=rng.uniform(0.7, 0.9),
                         amplitude=rng.uniform(0.5, 1.5), beta_phase=rng.uniform(-0.3, 0.3))
          for _ in range(count)]


def random_element(rng, terms=3, max_power=2, gaussian=True):
  """
  Random symbolic element with coefficients and frequencies on a coarse lattice, so that
  products keep a manageable number of distinct keys.
  """
  result = []
  for _ in range(terms):
    coeff = complex(rng.randint(-4, 5), rng.randint(-4, 5)) / 4.
    a = rng.randint(-2, 3) / 4.
    b = rng.randint(-2, 3) / 4.
    w = rng.randint(0, 3) / 8. if gaussian else 0.
    result.append(symbolic.Term(coeff, int(rng.randint(0, max_power + 1)), a, int(rng.randint(0, max_power + 1)), b, w))
  return symbolic.Element(result)


def random_elements(count, seed=1234, **kwargs):
  rng = numpy.random.RandomState(seed)
  return [random_element(rng, **kwargs) for _ in range(count)]
