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

import cmath
import math
import os
import shutil
import tempfile
import unittest

import numpy

from kappaforge import grid, hopf
from kappaforge.errors import BackendMismatch, InterpolationOutOfRange, InvalidValue, OutOfRange, SupportOverflow
from kappaforge.fixtures import GaussianFixture, bump_fixtures, gaussian_fixtures, preset
from kappaforge.grid import GridAlgebra, GridSpec, SpectralGrid


def relative_error(lhs, rhs):
  return float(numpy.abs(lhs.values - rhs.values).max()) / max(lhs.max_abs(), rhs.max_abs())


class TestGridSpec(unittest.TestCase):
  def test_validation(self):
    """
    Interval counts are even and v = 0 is a node.
    """
    spec = GridSpec(-8., 8., 256, -12., 12., 256)
    self.assertEqual(spec.shape, (257, 257))
    self.assertEqual(spec.vs[spec.zero_index], 0.)
    self.assertAlmostEqual(spec.dv, 0.0625)
    with self.assertRaises(InvalidValue):
      GridSpec(-8., 8., 255, -12., 12., 256)
    with self.assertRaises(InvalidValue):
      GridSpec(-1., 2., 16, -1., 1., 16)
    with self.assertRaises(InvalidValue):
      GridSpec(0., 2., 16, -1., 1., 16)
    self.assertEqual(spec.refined().nv, 512)
    self.assertEqual(GridSpec.from_json(spec.to_json()), spec)

  def test_simpson(self):
    """
    Simpson weights integrate cubics exactly.
    """
    xs = numpy.linspace(0., 2., 17)
    weights = grid.simpson_weights(16, 0.125)
    self.assertAlmostEqual(float(numpy.sum(weights * xs ** 3)), 4.)


class TestSamples(unittest.TestCase):
  def setUp(self):
    self.spec = GridSpec(-8., 8., 256, -12., 12., 256)

  def test_fixtures(self):
    """
    Bumps are validated and have to fit the box.
    """
    f = grid.make_bump(self.spec, center_v=0.5, width_v=1.)
    self.assertAlmostEqual(f.max_abs(), 1., places=2)
    self.assertEqual(f.support_rows(), (self.spec.zero_index - 7, self.spec.zero_index + 23))
    with self.assertRaises(InvalidValue):
      grid.make_bump(self.spec, width_v=-1.)
    with self.assertRaises(InvalidValue):
      grid.make_bump(self.spec, shape="square")
    with self.assertRaises(SupportOverflow):
      grid.make_bump(self.spec, center_v=7.5)
    with self.assertRaises(InvalidValue):
      preset("bump9", self.spec)
    self.assertEqual(preset("bump1", self.spec, v0=0.).support_rows(), preset("bump1", self.spec, center_v=0.).support_rows())

  def test_arithmetic(self):
    """
    Grids form a vector space on one box.
    """
    f = preset("bump1", self.spec)
    self.assertTrue((f - f).is_zero())
    self.assertTrue(numpy.allclose((2. * f).values, (f + f).values))
    other = SpectralGrid.zeros(GridSpec(-4., 4., 64, -4., 4., 64))
    with self.assertRaises(BackendMismatch):
      f + other
    with self.assertRaises(TypeError):
      f * f
    with self.assertRaises(InvalidValue):
      SpectralGrid(self.spec, numpy.zeros((3, 3)))

  def test_evaluation(self):
    """
    Position values of a Gaussian fixture match its closed form.
    """
    fixture = GaussianFixture(center_v=0.3, width_v=0.4, beta_center=0.1, beta_width=0.8, beta_phase=0.2)
    f = fixture.sample(self.spec)
    for alpha in (0., 0.7, -1.3):
      exact = complex(fixture.position(alpha, 0.))
      self.assertLess(abs(grid.grid_eval(f, alpha, 0.) - exact), 1e-6)
    samples = grid.grid_sample(f, [0., 0.7], self.spec.betas[100:103])
    self.assertEqual(samples.shape, (2, 3))
    evaluate = grid.position_function(f)
    self.assertLess(abs(evaluate(0.7, 0.) - fixture.position(0.7, 0.)), 1e-6)
    with self.assertRaises(OutOfRange):
      grid.grid_eval(f, 0., 20.)
    with self.assertRaises(InvalidValue):
      grid.grid_eval(f, 0., 1j)

  def test_complex_alpha(self):
    """
    Evaluation at alpha + i gamma agrees with the translated grid.
    """
    f = GaussianFixture(center_v=0.3, width_v=0.4, beta_center=0.1, beta_width=0.8, beta_phase=0.2).sample(self.spec)
    for gamma in (0.3, -0.2, 1.):
      shifted = grid.grid_translate(gamma, f)
      for alpha, beta in ((0., 0.), (0.7, 0.3), (-1.3, -0.5)):
        expected = grid.grid_eval(shifted, alpha, beta)
        self.assertLess(abs(grid.grid_eval(f, alpha + 1j * gamma, beta) - expected), 1e-6 * max(1., abs(expected)))

  def test_e_action(self):
    """
    E acts as the alpha derivative of the position function.
    """
    f = GaussianFixture(center_v=0.2, width_v=0.5, beta_center=-0.1, beta_width=0.7, beta_phase=0.4).sample(self.spec)
    derivative = grid.grid_apply_op(hopf.E, f, 1.)
    h = 1e-4
    for alpha, beta in ((0.3, 0.2), (-0.8, 0.5), (1.5, -0.4)):
      difference = (grid.grid_eval(f, alpha + h, beta) - grid.grid_eval(f, alpha - h, beta)) / (2. * h)
      self.assertLess(abs(grid.grid_eval(derivative, alpha, beta) - difference), 1e-6)

  def test_integral(self):
    """
    The Lebesgue integral reads the v = 0 row and agrees with position space quadrature.
    """
    fixture = GaussianFixture(center_v=0.2, width_v=0.5, beta_center=0.1, beta_width=0.7, amplitude=1.3, beta_phase=0.4)
    f = fixture.sample(self.spec)
    s, w, p, b = 0.5, 0.7, 0.4, 0.1
    exact = (1.3 * math.sqrt(2. * math.pi) * math.exp(-0.5 * (0.2 / s) ** 2)
             * w * math.sqrt(2. * math.pi) * math.exp(-0.5 * (p * w) ** 2) * cmath.exp(1j * p * b))
    self.assertLess(abs(grid.lebesgue_integral(f) - exact), 1e-8 * abs(exact))
    self.assertLess(abs(grid.direct_integral(f) - exact), 1e-4 * abs(exact))

  def test_derivative(self):
    """
    Beta derivatives: spectral and finite difference.
    """
    fixture = GaussianFixture(width_v=0.5, beta_width=0.7, beta_phase=0.3)
    f = fixture.sample(self.spec)
    exact = f.values * (-(self.spec.betas / 0.49) + 0.3j)[None, :]
    scale = numpy.abs(exact).max()
    self.assertLess(numpy.abs(grid.beta_derivative(f).values - exact).max(), 1e-8 * scale)
    self.assertLess(numpy.abs(grid.beta_derivative(f, method="fd").values - exact).max(), 1e-3 * scale)
    with self.assertRaises(InvalidValue):
      grid.beta_derivative(f, method="euler")

  def test_files(self):
    """
    Grid documents store kappa next to the samples.
    """
    f = preset("bump2", self.spec)
    directory = tempfile.mkdtemp()
    try:
      path = os.path.join(directory, "f.json")
      grid.save_grid(path, f, kappa=1.5)
      loaded, kappa = grid.load_grid(path)
      self.assertEqual(kappa, 1.5)
      self.assertEqual(loaded.spec, f.spec)
      self.assertTrue(numpy.array_equal(loaded.values, f.values))
      with open(path, "w") as stream:
        stream.write("{}")
      with self.assertRaises(InvalidValue):
        grid.load_grid(path)
    finally:
      shutil.rmtree(directory)


class TestGridStar(unittest.TestCase):
  def setUp(self):
    self.kappa = 1.
    self.spec = GridSpec(-8., 8., 256, -12., 12., 256)
    self.algebra = GridAlgebra(self.kappa, self.spec)
    self.f = GaussianFixture(center_v=0.2, width_v=0.4, beta_center=0.1, beta_width=0.8, beta_phase=0.2)
    self.g = GaussianFixture(center_v=-0.3, width_v=0.35, beta_center=-0.2, beta_width=0.7, amplitude=1.2)

  def test_oracle(self):
    """
    The grid product agrees with direct quadrature of the integral formula.
    """
    product = self.algebra.star(self.f.sample(self.spec), self.g.sample(self.spec))
    for alpha, beta in ((0.3, 0.2), (-0.5, 0.4)):
      exact = grid.star3_oracle_point(self.f.position, self.g.position, alpha, beta, self.kappa, self.f.v_support())
      other = grid.star2_oracle_point(self.f.position, self.g.position, alpha, beta, self.kappa, self.f.v_support())
      self.assertLess(abs(exact - other), 1e-8 * abs(exact))
      self.assertLess(abs(grid.grid_eval(product, alpha, beta) - exact), 1e-3 * abs(exact))

  def test_threads(self):
    """
    The thread count does not change the result.
    """
    f, g = self.f.sample(self.spec), self.g.sample(self.spec)
    single = grid.grid_star(f, g, self.kappa)
    split = grid.grid_star(f, g, self.kappa, threads=3)
    self.assertTrue(numpy.array_equal(single.values, split.values))

  def test_overflow(self):
    """
    Products whose support leaves the box are rejected.
    """
    spec = GridSpec(-2., 2., 32, -4., 4., 32)
    f = grid.make_bump(spec, center_v=1., width_v=0.8)
    with self.assertRaises(SupportOverflow):
      grid.grid_star(f, f, self.kappa)
    self.assertTrue(grid.grid_star(SpectralGrid.zeros(spec), f, self.kappa).is_zero())

  def test_translation(self):
    """
    Translations are automorphisms of the grid product.
    """
    f, g = self.f.sample(self.spec), self.g.sample(self.spec)
    lhs = grid.grid_translate(0.3, self.algebra.star(f, g))
    rhs = self.algebra.star(grid.grid_translate(0.3, f), grid.grid_translate(0.3, g))
    self.assertLess(relative_error(lhs, rhs), 1e-10)

  def test_twisted_trace(self):
    """
    int f*g = int T_{1/kappa}(g)*f.
    """
    others = [fixture.sample(self.spec) for fixture in gaussian_fixtures(4, seed=7)]
    pairs = [(self.f.sample(self.spec), self.g.sample(self.spec))] + list(zip(others[:2], others[2:]))
    for f, g in pairs:
      lhs = grid.lebesgue_integral(self.algebra.star(f, g))
      rhs = grid.lebesgue_integral(self.algebra.star(grid.grid_translate(1. / self.kappa, g), f))
      self.assertLess(abs(lhs - rhs), 1e-5 * f.norm() * g.norm())

  def test_associativity(self):
    """
    (f*g)*h = f*(g*h).
    """
    spec = GridSpec(-8., 8., 256, -12., 12., 512)
    algebra = GridAlgebra(self.kappa, spec)
    f, g, h = [fixture.sample(spec) for fixture in (
      GaussianFixture(center_v=0.1, width_v=0.2, beta_width=1.5),
      GaussianFixture(center_v=-0.1, width_v=0.25, beta_center=0.2, beta_width=1.4, beta_phase=0.3),
      GaussianFixture(center_v=0.05, width_v=0.2, beta_center=-0.1, beta_width=1.2))]
    lhs = algebra.star(algebra.star(f, g), h)
    rhs = algebra.star(f, algebra.star(g, h))
    self.assertLess(relative_error(lhs, rhs), 1e-4)

  def test_counit(self):
    """
    int (h f) = counit(h) int f.
    """
    for f in bump_fixtures(self.spec, 3, seed=2):
      integral = grid.lebesgue_integral(f)
      for h in (hopf.E, hopf.P, hopf.EPS, 2. * hopf.EPS_INV + hopf.E):
        value = grid.lebesgue_integral(self.algebra.act(h, f))
        self.assertLess(abs(value - hopf.counit(h) * integral), 1e-8 * abs(integral))
    with self.assertRaises(InvalidValue):
      self.algebra.one()

  def test_involution(self):
    """
    The involution reverses products and squares to the identity.
    """
    wide = [GaussianFixture(center_v=0.1, width_v=0.2, beta_width=1.5).sample(self.spec),
            GaussianFixture(center_v=-0.1, width_v=0.25, beta_width=1.5).sample(self.spec)]
    adj = self.algebra.involution
    self.assertLess(relative_error(adj(adj(wide[0])), wide[0]), 1e-4)
    lhs = adj(self.algebra.star(wide[0], wide[1]))
    rhs = self.algebra.star(adj(wide[1]), adj(wide[0]))
    self.assertLess(relative_error(lhs, rhs), 1e-4)

  def test_involution_integral(self):
    """
    int f* = conj(int f).
    """
    for f in bump_fixtures(self.spec, 3, seed=4) + [self.f.sample(self.spec)]:
      integral = grid.lebesgue_integral(f)
      self.assertLess(abs(grid.lebesgue_integral(grid.grid_involution(f, self.kappa)) - integral.conjugate()),
                      1e-12 * abs(integral))

  def test_involution_leakage(self):
    """
    A beta profile pushed out of the box is reported as leakage, or rejected in strict mode.
    """
    spec = GridSpec(-2., 2., 64, -6., 6., 128)
    f = grid.make_bump(spec, center_v=-1.2, width_v=0.6, beta_center=3.5)
    adjoint = grid.grid_involution(f, 0.5)
    self.assertGreater(adjoint.leakage, 0.1 * f.norm())
    with self.assertRaises(InterpolationOutOfRange):
      grid.grid_involution(f, 0.5, strict=True)
    with self.assertRaises(InterpolationOutOfRange):
      GridAlgebra(0.5, spec, strict=True).involution(f)
    centered = grid.make_bump(spec, center_v=0.2, width_v=0.6, profile="bump")
    self.assertLess(grid.grid_involution(centered, 0.5, strict=True).leakage, 1e-12 * centered.norm())


if __name__ == '__main__':
  unittest.main()
