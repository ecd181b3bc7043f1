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

import unittest

from kappaforge import calculus, cocycle, grid
from kappaforge.calculus import DX, PSI_MINUS, PSI_PLUS, DifferentialForm, SymbolicAlgebra
from kappaforge.errors import BackendMismatch, InvalidValue, WrongDegree
from kappaforge.fixtures import bump_fixtures
from kappaforge.grid import GridAlgebra, GridSpec, SpectralGrid
from kappaforge.symbolic import ONE


class TestGradedTrace(unittest.TestCase):
  def setUp(self):
    self.kappa = 1.
    self.spec = GridSpec(-8., 8., 128, -12., 12., 512)
    self.algebra = GridAlgebra(self.kappa, self.spec)
    self.bumps = bump_fixtures(self.spec, 12, seed=21)

  def volume(self, f):
    return DifferentialForm(self.algebra, 3, {(DX, PSI_PLUS, PSI_MINUS): f})

  def test_trace(self):
    """
    The graded trace integrates the volume coefficient; other inputs are rejected.
    """
    f = self.bumps[0]
    self.assertEqual(cocycle.graded_trace(self.volume(f)), grid.lebesgue_integral(f))
    with self.assertRaises(WrongDegree):
      cocycle.graded_trace(DifferentialForm(self.algebra, 1, {(DX,): f}))
    symbolic_volume = DifferentialForm(SymbolicAlgebra(1.), 3, {(DX, PSI_PLUS, PSI_MINUS): ONE})
    with self.assertRaises(BackendMismatch):
      cocycle.graded_trace(symbolic_volume)
    with self.assertRaises(BackendMismatch):
      cocycle.graded_trace(f)
    report = cocycle.graded_trace_report(self.volume(f))
    self.assertEqual(report.closedness_residual, 0.)
    self.assertEqual(report.digest, cocycle.form_digest(self.volume(f)))
    self.assertNotEqual(report.digest, cocycle.form_digest(self.volume(self.bumps[1])))

  def test_closedness(self):
    """
    The trace vanishes on exact three-forms, component by component.
    """
    for j in range(2):
      rho = cocycle.two_form(self.algebra, self.bumps[3 * j:3 * j + 3])
      total, components = cocycle.closedness_residuals(rho)
      self.assertEqual(list(components), ["dx^psi+", "dx^psi-", "psi+^psi-"])
      self.assertLess(total, 1e-8 * rho.norm())
      self.assertLess(max(components.values()), 1e-8 * rho.norm())
    with self.assertRaises(InvalidValue):
      cocycle.two_form(self.algebra, self.bumps[:2])

  def test_graded_cyclicity(self):
    """
    int rho ^ theta = int theta ^ rho for constant one-forms theta.
    """
    rho = cocycle.two_form(self.algebra, self.bumps[:3])
    residuals = cocycle.graded_cyclicity_residuals(rho, {"dx": 1., "psi+": 0.5j, "psi-": -0.25})
    self.assertEqual(list(residuals), ["dx", "psi+", "psi-", "theta"])
    self.assertLess(max(residuals.values()), 1e-8 * rho.norm())
    zero = DifferentialForm.zero(self.algebra, 2)
    self.assertEqual(cocycle.twisted_graded_cyclicity_check(zero), 0.)

  def test_graded_cyclicity_one_form(self):
    """
    int rho ^ theta = int T_{1/kappa}(theta) ^ rho for one-forms theta on the grid.
    """
    rho = cocycle.two_form(self.algebra, self.bumps[:3])
    theta = DifferentialForm(self.algebra, 1, {(DX,): self.bumps[6], (PSI_PLUS,): self.bumps[7],
                                               (PSI_MINUS,): self.bumps[8]})
    residuals = cocycle.graded_cyclicity_residuals(rho, theta)
    self.assertEqual(list(residuals), ["dx", "psi+", "psi-", "theta"])
    self.assertLess(residuals["theta"], 1e-5 * rho.norm() * theta.norm())
    with self.assertRaises(WrongDegree):
      cocycle.graded_cyclicity_residuals(rho, rho)

  def test_three_form_twist(self):
    """
    int omega f = int T_{1/kappa}(f) omega on three-forms.
    """
    for a, b in zip(self.bumps[:3], self.bumps[3:6]):
      omega = self.volume(a)
      self.assertLess(cocycle.three_form_trace_defect(omega, b), 1e-5 * omega.norm() * b.norm())


class TestCocycle(unittest.TestCase):
  def setUp(self):
    self.kappa = 1.
    self.spec = GridSpec(-8., 8., 256, -12., 12., 512)
    self.algebra = GridAlgebra(self.kappa, self.spec)
    self.bumps = bump_fixtures(self.spec, 10, seed=33)

  def test_phi(self):
    """
    phi vanishes as soon as an argument does and only accepts grids.
    """
    zero = SpectralGrid.zeros(self.spec)
    self.assertEqual(cocycle.cocycle_phi(zero, *(self.bumps[:3] + [self.algebra])), 0.)
    with self.assertRaises(BackendMismatch):
      cocycle.cocycle_phi(ONE, *(self.bumps[:3] + [self.algebra]))

  def test_cyclicity(self):
    """
    phi(f0, f1, f2, f3) = -phi(T_{1/kappa} f3, f0, f1, f2).
    """
    fs = self.bumps[:4]
    defect = cocycle.cyclicity_defect(*(fs + [self.algebra]))
    self.assertLess(defect, 1e-4 * cocycle.cocycle_scale(*fs))
    sign, worst = cocycle.pin_cyclic_sign([fs], self.algebra)
    self.assertIn(sign, (1, -1))
    self.assertEqual(sorted(worst), [-1, 1])
    self.assertLess(worst[cocycle.CYCLIC_SIGN], 1e-4)
    with self.assertRaises(InvalidValue):
      cocycle.pin_cyclic_sign([], self.algebra)

  def test_hochschild(self):
    """
    phi is a twisted Hochschild cocycle.
    """
    fs = self.bumps[:5]
    report = cocycle.cocycle_report(fs, self.algebra)
    self.assertLess(report.hochschild_defect, 1e-4 * report.scale)
    self.assertLess(report.cyclicity_defect, 1e-4 * cocycle.cocycle_scale(*fs[:4]))
    self.assertIsNone(cocycle.cocycle_report(fs[:4], self.algebra).hochschild_defect)
    with self.assertRaises(InvalidValue):
      cocycle.cocycle_report(fs[:3], self.algebra)


if __name__ == '__main__':
  unittest.main()
