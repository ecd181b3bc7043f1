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
Twisted trace on three-forms and the cyclic three-cocycle

  phi(f0, f1, f2, f3) = int f0 df1 ^ df2 ^ df3

The graded trace of ``(dx ^ psi+ ^ psi-) f`` is the Lebesgue integral of f, so everything
here runs on the grid backend only. The twist is T_{1/kappa}; the cyclic sign was fixed
with :func:`pin_cyclic_sign` and is kept as :data:`CYCLIC_SIGN`.
"""

import collections
import hashlib
import logging

from . import calculus
from .calculus import DX, PSI_MINUS, PSI_PLUS, DifferentialForm
from .errors import BackendMismatch, InvalidValue, WrongDegree
from .grid import GridAlgebra, SpectralGrid, grid_translate, lebesgue_integral

_log = logging.getLogger("kappaforge.cocycle")

CYCLIC_SIGN = -1

GradedTraceReport = collections.namedtuple("GradedTraceReport", ["value", "closedness_residual", "digest"])
CocycleReport = collections.namedtuple("CocycleReport", ["phi", "cyclicity_defect", "hochschild_defect", "scale"])


def _require_grid(omega):
  if not isinstance(omega.algebra, GridAlgebra):
    raise BackendMismatch("the trace is defined on sampled grid elements only")


def graded_trace(omega):
  """
  int (dx ^ psi+ ^ psi-) f = int f.
  """
  if not isinstance(omega, DifferentialForm):
    raise BackendMismatch("graded_trace expects a differential form")
  _require_grid(omega)
  if omega.degree != calculus.MAX_DEGREE:
    raise WrongDegree("graded trace is defined on three-forms, got degree %d" % omega.degree)
  return lebesgue_integral(calculus.volume_coefficient(omega))


def form_digest(omega):
  digest = hashlib.sha1()
  for basis, coeff in omega.items():
    digest.update(calculus.basis_label(basis).encode("ascii"))
    digest.update(coeff.values.tobytes())
  return digest.hexdigest()


def closedness_residuals(rho):
  """
  |int d rho| for a two-form, together with the traces of d applied to each component
  separately (each one vanishes on its own).
  """
  _require_grid(rho)
  if rho.degree != 2:
    raise WrongDegree("closedness is checked on two-forms, got degree %d" % rho.degree)
  components = collections.OrderedDict()
  for basis, f in rho.items():
    single = DifferentialForm(rho.algebra, 2, {basis: f})
    components[calculus.basis_label(basis)] = abs(graded_trace(calculus.exterior_d(single)))
  return abs(graded_trace(calculus.exterior_d(rho))), components


def graded_trace_report(omega, primitive=None):
  """
  Trace of a three-form; *primitive*, a two-form, adds the closedness residual |int d primitive|.
  """
  residual = closedness_residuals(primitive)[0] if primitive is not None else 0.
  return GradedTraceReport(graded_trace(omega), residual, form_digest(omega))


def three_form_trace_defect(omega, f):
  """
  |int omega f - int T_{1/kappa}(f) omega| for a three-form and a function.
  """
  _require_grid(omega)
  algebra = omega.algebra
  lhs = graded_trace(calculus.right_mul(omega, f))
  rhs = graded_trace(calculus.left_mul(grid_translate(1. / algebra.kappa, f), omega))
  return abs(lhs - rhs)


def _constant_one_form(theta):
  coefficients = collections.OrderedDict()
  for key, scalar in theta.items():
    generator = key if isinstance(key, calculus.OneForm) else calculus.parse_basis(key)[0]
    coefficients[generator] = complex(scalar)
  return coefficients


def graded_cyclicity_residuals(rho, theta=None):
  """
  |int rho ^ theta - int T_{1/kappa}(theta) ^ rho| for the three generating one-forms and,
  when given, for *theta*: either a one-form on the same grid or a constant one-form
  (a mapping generator -> scalar). T_gamma acts trivially on constant one-forms, so the
  twist drops out for them.
  """
  _require_grid(rho)
  if rho.degree != 2:
    raise WrongDegree("expected a two-form, got degree %d" % rho.degree)
  left = collections.OrderedDict()
  right = collections.OrderedDict()
  for generator in (DX, PSI_PLUS, PSI_MINUS):
    left[generator] = graded_trace(calculus.wedge_generator(rho, generator))
    right[generator] = graded_trace(calculus.generator_wedge(generator, rho))
  residuals = collections.OrderedDict((g.label, abs(left[g] - right[g])) for g in left)
  if isinstance(theta, DifferentialForm):
    if theta.degree != 1:
      raise WrongDegree("expected a one-form, got degree %d" % theta.degree)
    lhs = graded_trace(calculus.wedge(rho, theta))
    rhs = graded_trace(calculus.wedge(calculus.translate_form(1. / rho.algebra.kappa, theta), rho))
    residuals["theta"] = abs(lhs - rhs)
  elif theta:
    combination = _constant_one_form(theta)
    lhs = sum(c * left[g] for g, c in combination.items())
    rhs = sum(c * right[g] for g, c in combination.items())
    residuals["theta"] = abs(lhs - rhs)
  return residuals


def twisted_graded_cyclicity_check(rho, theta=None):
  """
  Largest residual of :func:`graded_cyclicity_residuals`; zero for the zero form.
  """
  return max(graded_cyclicity_residuals(rho, theta).values())


def _check_inputs(algebra, functions):
  for f in functions:
    if not isinstance(f, SpectralGrid):
      raise BackendMismatch("cocycle arguments have to be grids, got %s" % type(f).__name__)
    algebra.check(f)


def cocycle_phi(f0, f1, f2, f3, algebra):
  """
  phi(f0, f1, f2, f3) = int f0 . (df1 ^ df2 ^ df3).
  """
  _check_inputs(algebra, (f0, f1, f2, f3))
  if any(f.is_zero() for f in (f0, f1, f2, f3)):
    return 0j
  differentials = [calculus.exterior_d0(f, algebra) for f in (f1, f2, f3)]
  omega = calculus.wedge(calculus.wedge(differentials[0], differentials[1]), differentials[2])
  return graded_trace(calculus.left_mul(f0, omega))


def cocycle_scale(*functions):
  scale = 1.
  for f in functions:
    scale *= max(f.norm(), 1e-300)
  return scale


def cyclicity_defect(f0, f1, f2, f3, algebra, sign=CYCLIC_SIGN):
  """
  |phi(f0, f1, f2, f3) - sign phi(T_{1/kappa} f3, f0, f1, f2)|.
  """
  direct = cocycle_phi(f0, f1, f2, f3, algebra)
  rotated = cocycle_phi(grid_translate(1. / algebra.kappa, f3), f0, f1, f2, algebra)
  return abs(direct - sign * rotated)


def hochschild_defect(f0, f1, f2, f3, f4, algebra):
  """
  Twisted Hochschild coboundary of phi:

    sum_{j=0..3} (-1)^j phi(.., f_j f_{j+1}, ..) + phi(T_{1/kappa}(f4) f0, f1, f2, f3)
  """
  _check_inputs(algebra, (f0, f1, f2, f3, f4))
  fs = [f0, f1, f2, f3, f4]
  if any(f.is_zero() for f in fs):
    return 0.
  total = 0j
  for j in range(4):
    merged = fs[:j] + [algebra.star(fs[j], fs[j + 1])] + fs[j + 2:]
    total += (-1) ** j * cocycle_phi(*(merged + [algebra]))
  wrapped = algebra.star(grid_translate(1. / algebra.kappa, f4), f0)
  total += cocycle_phi(wrapped, f1, f2, f3, algebra)
  return abs(total)


def pin_cyclic_sign(quadruples, algebra):
  """
  Evaluate both candidate signs on the quadruples and keep the one with the smaller
  worst defect. Returns ``(sign, {sign: worst_defect})``.
  """
  if not quadruples:
    raise InvalidValue("pin_cyclic_sign needs at least one quadruple")
  worst = {1: 0., -1: 0.}
  for quadruple in quadruples:
    direct = cocycle_phi(*(list(quadruple) + [algebra]))
    rotated = cocycle_phi(grid_translate(1. / algebra.kappa, quadruple[3]), quadruple[0], quadruple[1],
                          quadruple[2], algebra)
    scale = cocycle_scale(*quadruple)
    for sign in worst:
      worst[sign] = max(worst[sign], abs(direct - sign * rotated) / scale)
  sign = min(worst, key=lambda s: worst[s])
  _log.info("cyclic sign %+d (defects: +1 -> %.3g, -1 -> %.3g)", sign, worst[1], worst[-1])
  return sign, worst


def cocycle_report(functions, algebra):
  """
  phi on the first four functions, its cyclicity defect and, with a fifth function, the
  Hochschild defect.
  """
  if len(functions) not in (4, 5):
    raise InvalidValue("cocycle_report takes four or five functions")
  quadruple = functions[:4]
  phi = cocycle_phi(*(list(quadruple) + [algebra]))
  cyclic = cyclicity_defect(*(list(quadruple) + [algebra]))
  hochschild = hochschild_defect(*(list(functions) + [algebra])) if len(functions) == 5 else None
  return CocycleReport(phi, cyclic, hochschild, cocycle_scale(*functions))


def two_form(algebra, functions):
  """
  Two-form with the three given grids as dx^psi+, dx^psi- and psi+^psi- coefficients.
  """
  if len(functions) != 3:
    raise InvalidValue("a two-form needs three coefficients")
  bases = ((DX, PSI_PLUS), (DX, PSI_MINUS), (PSI_PLUS, PSI_MINUS))
  return DifferentialForm(algebra, 2, dict(zip(bases, functions)))
