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

import numpy

from kappaforge import grid, rieffel
from kappaforge.errors import InterpolationOutOfRange, SupportOverflow
from kappaforge.fixtures import GaussianFixture, gaussian_fixtures
from kappaforge.grid import GridSpec, SpectralGrid


def relative(f, g):
  return float(numpy.abs(f.values - g.values).max()) / max(f.max_abs(), g.max_abs())


class TestEta(unittest.TestCase):
  def setUp(self):
    self.spec = GridSpec(-8., 8., 128, -12., 12., 256)
    self.grids = [f.sample(self.spec) for f in gaussian_fixtures(4, seed=5)]

  def test_jmap(self):
    """
    J is nilpotent and rescales with kappa.
    """
    for kappa in (1., 2.5):
      jmap = rieffel.JMap(kappa)
      for r, s in ((1., 0.), (0., 1.), (0.3, -2.5)):
        self.assertEqual(jmap.squared(r, s), (0., 0.))
      self.assertAlmostEqual(jmap.twist_rate(), 1. / kappa)
    self.assertEqual(rieffel.JMap(2.)(3., 4.), (2., 0.))

  def test_translation(self):
    """
    eta_{(r, 0)} multiplies the spectrum by exp(i r v) and composes exactly.
    """
    f = self.grids[0]
    shifted = rieffel.eta_act(0.4, 0., f)
    expected = f.values * numpy.exp(0.4j * self.spec.vs)[:, None]
    self.assertTrue(numpy.allclose(shifted.values, expected, rtol=0., atol=1e-14))
    twice = rieffel.eta_act(0.3, 0., rieffel.eta_act(0.1, 0., f))
    self.assertLess(relative(twice, shifted), 1e-13)
    self.assertTrue(numpy.array_equal(rieffel.eta_act(0., 0., f).values, f.values))

  def test_group_law(self):
    """
    eta_a eta_b = eta_{a+b}.
    """
    for f in self.grids:
      lhs = rieffel.eta_act(0.3, 0.2, rieffel.eta_act(-0.1, 0.15, f))
      self.assertLess(relative(lhs, rieffel.eta_act(0.2, 0.35, f)), 1e-3)

  def test_automorphism(self):
    """
    eta acts by automorphisms of the star product.
    """
    kappa = 4.
    f, g = self.grids[:2]
    lhs = rieffel.eta_act(0.4, 0.3, grid.grid_star(f, g, kappa))
    rhs = grid.grid_star(rieffel.eta_act(0.4, 0.3, f), rieffel.eta_act(0.4, 0.3, g), kappa)
    self.assertLess(relative(lhs, rhs), 1e-3)

  def test_support(self):
    """
    Contracting beta by too much is reported unless the check is disabled.
    """
    wide = GaussianFixture(beta_width=3.).sample(self.spec)
    with self.assertRaises(SupportOverflow):
      rieffel.eta_act(0., 1., wide)
    rieffel.eta_act(0., 1., wide, check_support=False)
    rieffel.eta_act(0., -1., wide)

  def test_leakage(self):
    """
    Without the support check the dropped beta mass is reported, or rejected in strict mode.
    """
    spec = GridSpec(-2., 2., 64, -6., 6., 128)
    f = grid.make_bump(spec, center_v=-1.2, width_v=0.6, beta_center=3.5)
    self.assertGreater(rieffel.eta_act(0., 1., f, check_support=False).leakage, 0.1 * f.norm())
    with self.assertRaises(InterpolationOutOfRange):
      rieffel.eta_act(0., 1., f, check_support=False, strict=True)
    self.assertEqual(rieffel.eta_act(0.5, 0., f, strict=True).leakage, 0.)


class TestDeformedProduct(unittest.TestCase):
  def setUp(self):
    self.spec = GridSpec(-8., 8., 128, -12., 12., 256)
    self.grids = [f.sample(self.spec) for f in gaussian_fixtures(6, seed=8)]

  def test_j_star(self):
    """
    The J-product reproduces the grid star product.
    """
    for kappa in (1., 2.):
      for f, g in zip(self.grids[:3], self.grids[3:]):
        self.assertLess(relative(rieffel.j_star(f, g, kappa), grid.grid_star(f, g, kappa)), 1e-9)
    zero = SpectralGrid.zeros(self.spec)
    self.assertTrue(rieffel.j_star(zero, self.grids[0], 1.).is_zero())

  def test_j_star_overflow(self):
    """
    Products whose v support leaves the box are rejected.
    """
    far = GaussianFixture(center_v=5., width_v=0.3).sample(self.spec)
    with self.assertRaises(SupportOverflow):
      rieffel.j_star(far, far, 1.)

  def test_j_star_pointwise(self):
    """
    The J-product agrees with direct quadrature of its defining integral.
    """
    fixtures = gaussian_fixtures(6, seed=8)
    for kappa in (1., 2.):
      for f, g in zip(fixtures[:2], fixtures[3:5]):
        product = rieffel.j_star(f.sample(self.spec), g.sample(self.spec), kappa)
        for alpha, beta in ((0.3, 0.2), (-0.5, 0.4), (0.8, -0.3)):
          exact = rieffel.j_star_point(f.position, g.position, alpha, beta, kappa, f.v_support())
          self.assertLess(abs(grid.grid_eval(product, alpha, beta) - exact), 1e-3 * max(abs(exact), 1e-2))

  def test_j_star_leakage(self):
    """
    Rescaling g beyond the beta box under f is reported as leakage, or rejected in strict mode.
    """
    spec = GridSpec(-2., 2., 64, -6., 6., 128)
    f = grid.make_bump(spec, center_v=-1.2, width_v=0.6, beta_center=3.5)
    g = grid.make_bump(spec, center_v=0.6, width_v=0.6, beta_center=3.5)
    self.assertGreater(rieffel.j_star(f, g, 0.5).leakage, 0.)
    with self.assertRaises(InterpolationOutOfRange):
      rieffel.j_star(f, g, 0.5, strict=True)

  def test_involution(self):
    """
    The Rieffel form of the involution matches the direct one.
    """
    for kappa in (1., 3.):
      for f in self.grids[:3]:
        self.assertLess(relative(rieffel.rieffel_involution(f, kappa), grid.grid_involution(f, kappa)), 1e-12)
    self.assertTrue(rieffel.rieffel_involution(SpectralGrid.zeros(self.spec), 1.).is_zero())

  def test_involution_leakage(self):
    """
    The Rieffel form loses the same beta mass as the direct involution.
    """
    spec = GridSpec(-2., 2., 64, -6., 6., 128)
    f = grid.make_bump(spec, center_v=-1.2, width_v=0.6, beta_center=3.5)
    direct = grid.grid_involution(f, 0.5)
    self.assertGreater(direct.leakage, 0.1 * f.norm())
    self.assertLess(abs(rieffel.rieffel_involution(f, 0.5).leakage - direct.leakage), 1e-12 * direct.leakage)
    with self.assertRaises(InterpolationOutOfRange):
      rieffel.rieffel_involution(f, 0.5, strict=True)


if __name__ == '__main__':
  unittest.main()
