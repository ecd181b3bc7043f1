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
Sampled elements of the star-product algebra.

An element is stored through its Fourier transform in the first variable,

  f(alpha, beta) = (2 pi)^(-1/2) int dv f~(v, beta) exp(i alpha v),

sampled on a uniform (v, beta) box. In this representation E, EPS and T_gamma are
diagonal and the star product is a single twisted convolution in v:

  (f * g)~(w, beta) = (2 pi)^(-1/2) int dv f~(v, beta) g~(w - v, exp(-v/kappa) beta)

All quadratures are composite Simpson; g~ at rescaled beta comes from cubic splines
extended by zero outside the box.
"""

import base64
import collections
import json
import logging
import math
import time

from multiprocessing.pool import ThreadPool

import numpy
import scipy.integrate
import scipy.interpolate

from . import hopf
from .calculus import CoefficientAlgebra
from .config import MAX_INTERVALS, MIN_INTERVALS
from .errors import (BackendMismatch, InterpolationOutOfRange, InvalidValue, OutOfRange,
                     SupportOverflow, UnsupportedGenerator)
from .hopf import Generator
from .symbolic import kappa_value

_log = logging.getLogger("kappaforge.grid")

SQRT_2PI = math.sqrt(2. * math.pi)
DEFAULT_SUPPORT_FLOOR = 1e-13
GRID_FORMAT = "kappa-forge-grid/1"


class GridSpec(object):
  """
  Uniform box ``[vmin, vmax] x [bmin, bmax]`` with *nv* x *nbeta* intervals.

  Both interval counts are even (composite Simpson) and v = 0 has to be a node.
  """

  def __init__(self, vmin, vmax, nv, bmin, bmax, nbeta):
    vmin, vmax, bmin, bmax = float(vmin), float(vmax), float(bmin), float(bmax)
    nv, nbeta = int(nv), int(nbeta)
    if not vmin < 0 < vmax:
      raise InvalidValue("v range must contain 0 in its interior, got [%g, %g]" % (vmin, vmax))
    if not bmin < bmax:
      raise InvalidValue("empty beta range [%g, %g]" % (bmin, bmax))
    for name, count in (("nv", nv), ("nbeta", nbeta)):
      if count < MIN_INTERVALS or count > MAX_INTERVALS or count % 2:
        raise InvalidValue("%s must be an even number in [%d, %d], got %d" % (name, MIN_INTERVALS, MAX_INTERVALS, count))
    zero = -vmin * nv / (vmax - vmin)
    if abs(zero - round(zero)) > 1e-9:
      raise InvalidValue("v = 0 is not a node of the grid [%g, %g] / %d" % (vmin, vmax, nv))
    self.vmin, self.vmax, self.nv = vmin, vmax, nv
    self.bmin, self.bmax, self.nbeta = bmin, bmax, nbeta
    self.zero_index = int(round(zero))
    self.vs = numpy.linspace(vmin, vmax, nv + 1)
    self.vs[self.zero_index] = 0.
    self.betas = numpy.linspace(bmin, bmax, nbeta + 1)
    self.vs.setflags(write=False)
    self.betas.setflags(write=False)

  @property
  def dv(self):
    return (self.vmax - self.vmin) / self.nv

  @property
  def dbeta(self):
    return (self.bmax - self.bmin) / self.nbeta

  @property
  def shape(self):
    return (self.nv + 1, self.nbeta + 1)

  def refined(self, factor=2):
    return GridSpec(self.vmin, self.vmax, self.nv * factor, self.bmin, self.bmax, self.nbeta * factor)

  def _key(self):
    return (self.vmin, self.vmax, self.nv, self.bmin, self.bmax, self.nbeta)

  def __eq__(self, other):
    return isinstance(other, GridSpec) and self._key() == other._key()

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash(self._key())

  def __repr__(self):
    return "GridSpec(v=[%g, %g]/%d, beta=[%g, %g]/%d)" % self._key()

  def to_json(self):
    return collections.OrderedDict(zip(("vmin", "vmax", "nv", "bmin", "bmax", "nbeta"), self._key()))

  @classmethod
  def from_json(cls, data):
    return cls(data["vmin"], data["vmax"], data["nv"], data["bmin"], data["bmax"], data["nbeta"])


class SpectralGrid(object):
  """
  Samples of f~(v_j, beta_k) on a :class:`GridSpec`.

  Instances are immutable; *leakage* records the interpolation mass lost outside the
  beta box by the operation that produced the grid.
  """

  def __init__(self, spec, values, leakage=0.):
    values = numpy.array(values, dtype=numpy.complex128)
    if values.shape != spec.shape:
      raise InvalidValue("grid values have shape %s, expected %s" % (values.shape, spec.shape))
    values.setflags(write=False)
    self.spec = spec
    self.values = values
    self.leakage = float(leakage)

  @classmethod
  def zeros(cls, spec):
    return cls(spec, numpy.zeros(spec.shape, dtype=numpy.complex128))

  @classmethod
  def from_function(cls, spec, function):
    """
    Sample ``function(v, beta)`` (broadcasting over a v column and a beta row).
    """
    return cls(spec, function(spec.vs[:, None], spec.betas[None, :]) * numpy.ones(spec.shape))

  def _check_spec(self, other):
    if not isinstance(other, SpectralGrid):
      raise BackendMismatch("expected a SpectralGrid, got %s" % type(other).__name__)
    if other.spec != self.spec:
      raise BackendMismatch("grids live on different boxes: %r and %r" % (self.spec, other.spec))

  def __add__(self, other):
    self._check_spec(other)
    return SpectralGrid(self.spec, self.values + other.values, self.leakage + other.leakage)

  def __neg__(self):
    return SpectralGrid(self.spec, -self.values, self.leakage)

  def __sub__(self, other):
    return self + (-other)

  def __mul__(self, scalar):
    if isinstance(scalar, SpectralGrid):
      raise TypeError("use grid_star for products of grids")
    return SpectralGrid(self.spec, complex(scalar) * self.values, abs(scalar) * self.leakage)

  __rmul__ = __mul__

  def max_abs(self):
    return float(numpy.abs(self.values).max())

  def norm(self):
    """
    l1 norm of the samples, scaled by the cell area.
    """
    return float(numpy.abs(self.values).sum() * self.spec.dv * self.spec.dbeta)

  def is_zero(self):
    return not numpy.any(self.values)

  def support_rows(self, floor=DEFAULT_SUPPORT_FLOOR):
    """
    First and last v row holding a sample above *floor* relative to the maximum, or None.
    """
    magnitude = numpy.abs(self.values).max(axis=1)
    peak = magnitude.max()
    if peak == 0.:
      return None
    rows = numpy.nonzero(magnitude > floor * peak)[0]
    return int(rows[0]), int(rows[-1])

  def to_json(self):
    return collections.OrderedDict([
      ("spec", self.spec.to_json()),
      ("byteorder", "little"),
      ("dtype", "complex128"),
      ("data", base64.b64encode(self.values.astype("<c16").tobytes()).decode("ascii")),
    ])

  @classmethod
  def from_json(cls, data):
    spec = GridSpec.from_json(data["spec"])
    if data.get("dtype", "complex128") != "complex128" or data.get("byteorder", "little") != "little":
      raise InvalidValue("unsupported grid encoding %s/%s" % (data.get("dtype"), data.get("byteorder")))
    raw = numpy.frombuffer(base64.b64decode(data["data"]), dtype="<c16")
    return cls(spec, raw.reshape(spec.shape))

  def __repr__(self):
    return "SpectralGrid(%r, max=%.3g)" % (self.spec, self.max_abs())


def save_grid(path, f, kappa=None):
  """
  Write a grid document: JSON header fields plus little-endian interleaved (re, im) doubles,
  row-major in v then beta, base64 encoded.
  """
  document = collections.OrderedDict([("format", GRID_FORMAT), ("kappa", kappa)])
  document.update(f.to_json())
  with open(path, "w") as stream:
    json.dump(document, stream)


def load_grid(path):
  """
  Returns ``(grid, kappa)``; kappa is None when the file does not record one.
  """
  with open(path) as stream:
    document = json.load(stream)
  if document.get("format") != GRID_FORMAT:
    raise InvalidValue("%s is not a %s document" % (path, GRID_FORMAT))
  return SpectralGrid.from_json(document), document.get("kappa")


def simpson_weights(count, step):
  """
  Composite Simpson weights for *count* (even) intervals of width *step*.
  """
  weights = numpy.ones(count + 1)
  weights[1:-1:2] = 4.
  weights[2:-1:2] = 2.
  return weights * step / 3.


def _shared_spec(*grids):
  spec = grids[0].spec
  for grid in grids[1:]:
    grids[0]._check_spec(grid)
  return spec


def _splines(spec, rows):
  return scipy.interpolate.CubicSpline(spec.betas, rows, axis=1, extrapolate=False)


def _check_beta(spec, betas):
  betas = numpy.atleast_1d(numpy.asarray(betas))
  if numpy.iscomplexobj(betas):
    if numpy.any(betas.imag != 0):
      raise InvalidValue("beta has to be real on the grid engine")
    betas = betas.real
  if numpy.any(betas < spec.bmin) or numpy.any(betas > spec.bmax):
    raise OutOfRange("beta outside the grid range [%g, %g]" % (spec.bmin, spec.bmax))
  return betas


class Rescaled(collections.namedtuple("Rescaled", "values outside edge dropped dropped_peak step")):
  """
  Result of :func:`rescale_beta`.

  *outside* masks the output columns sampled beyond the box, *edge* is the per-row
  magnitude at the box edges (what the zero extension misses there), *dropped* the per-row
  l1 mass whose image leaves the box and *dropped_peak* the largest such sample.
  """
  __slots__ = ()

  @property
  def lost(self):
    """
    Per-row estimate of the mass the resampled rows do not carry.
    """
    return self.edge * (numpy.count_nonzero(self.outside) * self.step) + self.dropped

  @property
  def peak(self):
    edge = float(self.edge.max()) if self.outside.any() else 0.
    return max(edge, self.dropped_peak)


def rescale_beta(spec, block, factor):
  """
  Rows of *block* resampled at ``factor * beta`` by cubic splines, zero outside the box.

  Shrinking (*factor* < 1) pushes the part of a row beyond ``factor * [bmin, bmax]`` out of
  the box; stretching samples beyond the box, where the rows are taken to vanish. Both
  losses are measured in the output beta and returned with the values.
  """
  block = numpy.asarray(block)
  rows, h = block.shape[0], spec.dbeta
  if factor == 1.:
    return Rescaled(numpy.array(block), numpy.zeros(spec.nbeta + 1, dtype=bool), numpy.zeros(rows),
                    numpy.zeros(rows), 0., h)
  sampled = _splines(spec, block)(spec.betas * factor)
  outside = numpy.isnan(sampled[0])
  sampled[:, outside] = 0.
  edge = numpy.maximum(numpy.abs(block[:, 0]), numpy.abs(block[:, -1]))
  beyond = (spec.betas > factor * spec.bmax) | (spec.betas < factor * spec.bmin)
  magnitude = numpy.abs(block[:, beyond])
  dropped = magnitude.sum(axis=1) * h / factor
  return Rescaled(sampled, outside, edge, dropped, float(magnitude.max(initial=0.)), h)


def make_bump(spec, center_v=0., width_v=1., profile="gauss", beta_center=0., beta_width=1.,
              shape="bump", amplitude=1., beta_phase=0.):
  """
  Sampled fixture ``amplitude * a(v) * b(beta)``.

  *shape* selects ``a``: ``"bump"`` is exp(1 - 1/(1 - s^2)) on |s| < 1 with
  s = (v - center_v)/width_v (peak 1), ``"gauss"`` is exp(-s^2/2).
  *profile* selects ``b``: ``"gauss"``, ``"bump"`` (same formulas in beta) or ``"flat"``,
  a smooth plateau equal to 1 on |beta - beta_center| <= 0.6 beta_width vanishing beyond
  beta_width. ``beta_phase`` multiplies b by exp(i beta_phase beta).
  """
  if width_v <= 0 or beta_width <= 0:
    raise InvalidValue("fixture widths must be positive")
  if shape not in _SHAPES:
    raise InvalidValue("unknown v shape %r (known: %s)" % (shape, ", ".join(sorted(_SHAPES))))
  reach = width_v if shape == "bump" else 8. * width_v
  if center_v - reach <= spec.vmin or center_v + reach >= spec.vmax:
    raise SupportOverflow("fixture support [%g, %g] leaves the v range [%g, %g]"
                          % (center_v - reach, center_v + reach, spec.vmin, spec.vmax))
  v_part = _SHAPES[shape]((spec.vs - center_v) / width_v)
  b_part = beta_profile(profile, spec.betas, beta_center, beta_width)
  if beta_phase:
    b_part = b_part * numpy.exp(1j * beta_phase * spec.betas)
  return SpectralGrid(spec, amplitude * numpy.outer(v_part, b_part))


def _bump(s):
  s = numpy.asarray(s, dtype=float)
  result = numpy.zeros_like(s)
  inside = numpy.abs(s) < 1.
  result[inside] = numpy.exp(1. - 1. / (1. - s[inside] ** 2))
  return result


def _gauss(s):
  return numpy.exp(-0.5 * numpy.asarray(s, dtype=float) ** 2)


def _smooth_step(s):
  """
  C-infinity step, 1 for s <= 0 and 0 for s >= 1.
  """
  s = numpy.clip(numpy.asarray(s, dtype=float), 0., 1.)
  def psi(x):
    out = numpy.zeros_like(x)
    positive = x > 0
    out[positive] = numpy.exp(-1. / x[positive])
    return out
  return psi(1. - s) / (psi(1. - s) + psi(s))


def _flat(s):
  return _smooth_step((numpy.abs(s) - 0.6) / 0.4)


_SHAPES = {"bump": _bump, "gauss": _gauss}
_PROFILES = {"bump": _bump, "gauss": _gauss, "flat": _flat}


def beta_profile(kind, betas, center=0., width=1.):
  if kind not in _PROFILES:
    raise InvalidValue("unknown beta profile %r (known: %s)" % (kind, ", ".join(sorted(_PROFILES))))
  return _PROFILES[kind]((numpy.asarray(betas, dtype=float) - center) / width)


def mollified_plane_wave(spec, a, sigma, w=0.5, b=0., coeff=1.):
  """
  Grid approximant of ``coeff * exp(i a alpha) exp(i b beta - w beta^2)``.

  The spectrum is a normalized Gaussian of width *sigma* around v = a, so the position
  function is the plane wave damped by exp(-sigma^2 alpha^2 / 2).
  """
  if sigma <= 0:
    raise InvalidValue("mollifier width must be positive")
  if a - 8. * sigma <= spec.vmin or a + 8. * sigma >= spec.vmax:
    raise SupportOverflow("mollified plane wave at v = %g does not fit the v range" % a)
  density = numpy.exp(-0.5 * ((spec.vs - a) / sigma) ** 2) / (sigma * SQRT_2PI)
  profile = numpy.exp(1j * b * spec.betas - w * spec.betas ** 2)
  return SpectralGrid(spec, coeff * SQRT_2PI * numpy.outer(density, profile))


def grid_star(f, g, kappa, strict=False, threads=1, support_floor=DEFAULT_SUPPORT_FLOOR):
  """
  Star product by twisted convolution over the v support of *f*.

  Output v rows are the sums of the input rows, so the product has to fit the box,
  otherwise :class:`SupportOverflow` is raised. Rescaled beta points falling out of
  the box contribute zero; the lost mass is estimated in ``result.leakage`` and raises
  :class:`InterpolationOutOfRange` in *strict* mode. Work is split over beta columns
  across *threads*; each column is accumulated in the same order, so the result does
  not depend on the thread count.
  """
  spec = _shared_spec(f, g)
  k = kappa_value(kappa)
  f_rows = f.support_rows(support_floor)
  g_rows = g.support_rows(support_floor)
  if f_rows is None or g_rows is None:
    return SpectralGrid.zeros(spec)
  (lo_f, hi_f), (lo_g, hi_g) = f_rows, g_rows
  z, n = spec.zero_index, spec.nv
  if lo_f + lo_g - z < 0 or hi_f + hi_g - z > n:
    raise SupportOverflow("product support v in [%g, %g] leaves the box [%g, %g]"
                          % (spec.vs[lo_f] + spec.vs[lo_g], spec.vs[hi_f] + spec.vs[hi_g], spec.vmin, spec.vmax))
  start = time.time()
  weights = simpson_weights(n, spec.dv)
  g_block = g.values[lo_g:hi_g + 1]
  spline = _splines(spec, g_block)
  edge = max(numpy.abs(g_block[:, 0]).max(), numpy.abs(g_block[:, -1]).max())
  f_floor = support_floor * f.max_abs()
  rows = list(range(lo_f, hi_f + 1))
  scales = numpy.exp(-spec.vs[lo_f:hi_f + 1] / k)

  def work(columns):
    out = numpy.zeros((n + 1, len(columns)), dtype=numpy.complex128)
    leakage = 0.
    lost = False
    for j, scale in zip(rows, scales):
      f_row = f.values[j, columns]
      sampled = spline(spec.betas[columns] * scale)
      outside = numpy.isnan(sampled[0])
      if outside.any():
        sampled[:, outside] = 0.
        mass = numpy.abs(f_row[outside])
        leakage += weights[j] * mass.sum() * edge * spec.dbeta
        lost = lost or bool(numpy.any(mass > f_floor))
      first = j - z + lo_g
      out[first:first + len(g_block)] += (weights[j] * f_row) * sampled
    return out, leakage, lost

  chunks = [c for c in numpy.array_split(numpy.arange(spec.nbeta + 1), max(1, int(threads))) if len(c)]
  if len(chunks) > 1:
    pool = ThreadPool(len(chunks))
    try:
      results = pool.map(work, chunks)
    finally:
      pool.close()
      pool.join()
  else:
    results = [work(chunks[0])]
  values = numpy.hstack([r[0] for r in results]) / SQRT_2PI
  leakage = sum(r[1] for r in results) / SQRT_2PI
  if strict and edge > support_floor * g.max_abs() and any(r[2] for r in results):
    raise InterpolationOutOfRange("rescaled beta left the box where the right factor does not vanish"
                                  " (edge magnitude %.3g, leakage %.3g)" % (edge, leakage))
  _log.debug("grid_star: rows %d x %d, leakage %.3g, %.3f s", hi_f - lo_f + 1, hi_g - lo_g + 1,
             leakage, time.time() - start)
  return SpectralGrid(spec, values, leakage)


def grid_translate(gamma, f):
  """
  T_gamma f = f(alpha + i gamma, beta): the spectrum picks up exp(-gamma v).
  """
  if gamma == 0:
    return f
  return SpectralGrid(f.spec, f.values * numpy.exp(-gamma * f.spec.vs)[:, None], f.leakage)


def beta_derivative(f, method="spectral"):
  """
  d/d beta along each v row.

  ``"spectral"`` differentiates the trigonometric interpolant of the row (the profiles
  vanish at the beta edges); ``"fd"`` uses fourth-order central differences with
  second-order one-sided stencils on the two outer columns at each side.
  """
  h = f.spec.dbeta
  values = f.values
  if method == "spectral":
    count = values.shape[1]
    wavenumbers = 2. * math.pi * numpy.fft.fftfreq(count, d=h)
    out = numpy.fft.ifft(1j * wavenumbers[None, :] * numpy.fft.fft(values, axis=1), axis=1)
  elif method == "fd":
    out = numpy.empty_like(values)
    out[:, 2:-2] = (values[:, :-4] - 8. * values[:, 1:-3] + 8. * values[:, 3:-1] - values[:, 4:]) / (12. * h)
    edge = numpy.gradient(values, h, axis=1, edge_order=2)
    out[:, :2] = edge[:, :2]
    out[:, -2:] = edge[:, -2:]
  else:
    raise InvalidValue("unknown derivative method %r" % method)
  return SpectralGrid(f.spec, out, f.leakage)


def _act_generator_on_grid(kappa):
  def act(generator, f):
    if generator == Generator.E:
      return SpectralGrid(f.spec, f.values * (1j * f.spec.vs)[:, None], f.leakage)
    if generator == Generator.P:
      return beta_derivative(f)
    if generator == Generator.EPS:
      return grid_translate(1. / kappa, f)
    if generator == Generator.EPS_INV:
      return grid_translate(-1. / kappa, f)
    raise UnsupportedGenerator("generator %s has no realization on grids" % generator.value)
  return act


def combine_grids(pairs, template):
  """
  Linear combination of ``(scalar, grid)`` pairs on the box of *template*.
  """
  values = numpy.zeros(template.spec.shape, dtype=numpy.complex128)
  leakage = 0.
  for scalar, grid in pairs:
    template._check_spec(grid)
    values += complex(scalar) * grid.values
    leakage += abs(scalar) * grid.leakage
  return SpectralGrid(template.spec, values, leakage)


def grid_apply_op(h, f, kappa):
  """
  E multiplies by i v, EPS^{+-1} is T_{+-1/kappa}, P differentiates in beta.
  """
  if h.mentions(Generator.N):
    raise UnsupportedGenerator("the boost N acts on star-polynomials only")
  return hopf.apply_normalized(h, f, _act_generator_on_grid(kappa_value(kappa)), combine_grids)


def grid_eval(f, alpha, beta):
  """
  Pointwise value at real beta inside the box; alpha may be complex.
  """
  spec = f.spec
  beta = _check_beta(spec, beta)
  column = _splines(spec, f.values)(beta)[:, 0]
  phases = numpy.exp(1j * complex(alpha) * spec.vs)
  return complex(numpy.sum(simpson_weights(spec.nv, spec.dv) * column * phases) / SQRT_2PI)


def grid_sample(f, alphas, betas):
  """
  Values on the tensor grid ``alphas x betas`` as an array of shape (len(alphas), len(betas)).
  """
  spec = f.spec
  betas = _check_beta(spec, betas)
  alphas = numpy.atleast_1d(numpy.asarray(alphas, dtype=complex))
  rows = _splines(spec, f.values)(betas)
  phases = numpy.exp(1j * numpy.outer(alphas, spec.vs)) * simpson_weights(spec.nv, spec.dv)
  return phases.dot(rows) / SQRT_2PI


def position_function(f):
  """
  Vectorized ``(alpha, beta) -> f(alpha, beta)`` for broadcastable arrays; beta outside
  the box evaluates to zero.
  """
  spec = f.spec
  spline = _splines(spec, f.values)
  weights = simpson_weights(spec.nv, spec.dv)

  def evaluate(alpha, beta):
    alpha, beta = numpy.broadcast_arrays(numpy.asarray(alpha, dtype=complex), numpy.asarray(beta, dtype=float))
    rows = numpy.nan_to_num(spline(beta.ravel()))
    phases = numpy.exp(1j * numpy.outer(spec.vs, alpha.ravel())) * weights[:, None]
    return (phases * rows).sum(axis=0).reshape(alpha.shape) / SQRT_2PI
  return evaluate


def grid_involution(f, kappa, strict=False, support_floor=DEFAULT_SUPPORT_FLOOR):
  """
  (f*)~(v, beta) = conj f~(-v, exp(-v/kappa) beta).

  Rows with v > 0 shrink the beta profile of their source; what it pushes out of the box
  is dropped, estimated in ``result.leakage`` and raises :class:`InterpolationOutOfRange`
  in *strict* mode, as for :func:`grid_star`.
  """
  spec = f.spec
  k = kappa_value(kappa)
  support = f.support_rows(support_floor)
  out = numpy.zeros(spec.shape, dtype=numpy.complex128)
  if support is None:
    return SpectralGrid(spec, out)
  z, n = spec.zero_index, spec.nv
  weights = simpson_weights(n, spec.dv)
  leakage, peak = 0., 0.
  for source in range(support[0], support[1] + 1):
    target = 2 * z - source
    if target < 0 or target > n:
      raise SupportOverflow("reflected support row v = %g leaves the box" % -spec.vs[source])
    rescaled = rescale_beta(spec, f.values[source:source + 1], math.exp(-spec.vs[target] / k))
    out[target] = numpy.conj(rescaled.values[0])
    leakage += weights[target] * rescaled.lost[0]
    peak = max(peak, rescaled.peak)
  leakage /= SQRT_2PI
  if strict and peak > support_floor * f.max_abs():
    raise InterpolationOutOfRange("involution pushes the beta profile out of [%g, %g]"
                                  " (largest lost sample %.3g, leakage %.3g)" % (spec.bmin, spec.bmax, peak, leakage))
  if leakage:
    _log.debug("grid_involution: leakage %.3g", leakage)
  return SpectralGrid(spec, out, f.leakage + leakage)


def lebesgue_integral(f):
  """
  int f dalpha dbeta = sqrt(2 pi) int f~(0, beta) dbeta.
  """
  spec = f.spec
  return complex(SQRT_2PI * scipy.integrate.simpson(f.values[spec.zero_index], x=spec.betas))


def direct_integral(f, alpha_max=40., n_alpha=1600):
  """
  Reference value of the integral from position-space samples on
  ``[-alpha_max, alpha_max] x [bmin, bmax]``.
  """
  spec = f.spec
  alphas = numpy.linspace(-alpha_max, alpha_max, n_alpha + 1)
  samples = grid_sample(f, alphas, spec.betas)
  inner = scipy.integrate.simpson(samples, x=spec.betas, axis=1)
  return complex(scipy.integrate.simpson(inner, x=alphas))


def _oracle_point(f, g, alpha, beta, u_scale, v_scale, v_support, nv, u_max, nu):
  offsets = numpy.linspace(-u_max, u_max, nu + 1)
  sampled = numpy.asarray(f(alpha + offsets, beta), dtype=complex)
  vs = numpy.linspace(v_support[0], v_support[1], nv + 1) * u_scale
  kernel = numpy.exp(-1j * numpy.outer(vs, offsets) / u_scale)
  inner = scipy.integrate.simpson(kernel * sampled[None, :], x=offsets, axis=1) / u_scale
  outer = numpy.asarray(g(alpha, numpy.exp(-vs * v_scale) * beta), dtype=complex)
  return complex(scipy.integrate.simpson(inner * outer, x=vs) / (2. * math.pi))


def star3_oracle_point(f, g, alpha, beta, kappa, v_support, nv=400, u_max=30., nu=3000):
  """
  Direct double quadrature of

    (1/2 pi) int dv int du f(alpha + u, beta) g(alpha, exp(-v/kappa) beta) exp(-i u v)

  for position-space callables *f*, *g*. *v_support* bounds the spectrum of *f*.
  """
  k = kappa_value(kappa)
  return _oracle_point(f, g, alpha, beta, 1., 1. / k, v_support, nv, u_max, nu)


def star2_oracle_point(f, g, alpha, beta, kappa, v_support, nv=400, u_max=30., nu=3000):
  """
  Same product through the form with f(alpha + u/kappa, beta) g(alpha, exp(-v) beta).
  """
  k = kappa_value(kappa)
  return _oracle_point(f, g, alpha, beta, 1. / k, 1., v_support, nv, u_max, nu)


class GridAlgebra(CoefficientAlgebra):
  """
  Grid backend for :mod:`kappaforge.calculus`, bound to one box.

  The unit has no sampled representation; forms with unit coefficients are handled by
  :func:`kappaforge.calculus.wedge_generator` and friends.
  """

  def __init__(self, kappa, spec, strict=False, threads=1, support_floor=DEFAULT_SUPPORT_FLOOR):
    super(GridAlgebra, self).__init__(kappa)
    self.spec = spec
    self.strict = strict
    self.threads = threads
    self.support_floor = support_floor

  def owns(self, value):
    return isinstance(value, SpectralGrid) and value.spec == self.spec

  def star(self, f, g):
    return grid_star(f, g, self.kappa, strict=self.strict, threads=self.threads, support_floor=self.support_floor)

  def act(self, h, f):
    return grid_apply_op(h, f, self.kappa)

  def combine(self, pairs):
    return combine_grids(pairs, SpectralGrid.zeros(self.spec))

  def translate(self, gamma, f):
    return grid_translate(gamma, f)

  def involution(self, f):
    return grid_involution(f, self.kappa, strict=self.strict, support_floor=self.support_floor)

  def one(self):
    raise InvalidValue("the unit is not a sampled grid element")

  def is_zero(self, f):
    return f.is_zero()

  def norm(self, f):
    return f.norm()

  def encode(self, f):
    return f.to_json()

  def decode(self, data):
    return SpectralGrid.from_json(data)
