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

from kappaforge import calculus, hopf, symbolic
from kappaforge.calculus import DX, PSI_MINUS, PSI_PLUS, DifferentialForm, SymbolicAlgebra
from kappaforge.errors import BackendMismatch, DegreeOverflow, InvalidValue, WrongDegree
from kappaforge.fixtures import random_elements
from kappaforge.symbolic import ONE, T, X, Element


class CalculusTestCase(unittest.TestCase):
  kappa = 2.

  def setUp(self):
    self.algebra = SymbolicAlgebra(self.kappa)

  def gen(self, one_form, coeff=ONE):
    if not isinstance(coeff, Element):
      coeff = Element.scalar(coeff)
    return DifferentialForm.generator(self.algebra, one_form, coeff)

  def d(self, f):
    return calculus.exterior_d0(f, self.algebra)

  def assertFormsClose(self, lhs, rhs, tol=1e-10):
    scale = max(1., lhs.norm(), rhs.norm())
    self.assertLessEqual((lhs - rhs).norm(), tol * scale, "%s != %s" % (lhs, rhs))


class TestBimodule(CalculusTestCase):
  def test_generator_relations(self):
    """
    Commutation of the coordinates with dx, psi+ and psi-.
    """
    k = self.kappa
    cases = [
      (X, DX, self.gen(DX, X) + self.gen(PSI_MINUS, 1j / k)),
      (T, DX, self.gen(DX, T)),
      (X, PSI_PLUS, self.gen(PSI_PLUS, X) + self.gen(DX, 2j / k)),
      (T, PSI_PLUS, self.gen(PSI_PLUS, T - 1j / k)),
      (X, PSI_MINUS, self.gen(PSI_MINUS, X)),
      (T, PSI_MINUS, self.gen(PSI_MINUS, T + 1j / k)),
    ]
    for f, one_form, expected in cases:
      self.assertFormsClose(calculus.left_mul(f, self.gen(one_form)), expected)

  def test_inverse_rules(self):
    """
    Pulling coefficients back to the left undoes the bimodule rules.
    """
    for f in (T, X, symbolic.star_mul(X, T, self.kappa)):
      for one_form in (DX, PSI_PLUS, PSI_MINUS):
        omega = calculus.left_mul(f, self.gen(one_form))
        left = calculus.pull_left(omega)
        self.assertEqual(list(left), [one_form])
        self.assertTrue(symbolic.equals_within(left[one_form], f, 1e-10))

  def test_associativity(self):
    """
    Left and right module actions are associative and commute.
    """
    k = self.kappa
    f, g, h = random_elements(3, seed=5, terms=2)
    omega = calculus.left_mul(h, self.d(X))
    self.assertFormsClose(calculus.left_mul(symbolic.star_mul(f, g, k), omega),
                          calculus.left_mul(f, calculus.left_mul(g, omega)))
    self.assertFormsClose(calculus.right_mul(calculus.left_mul(f, omega), g),
                          calculus.left_mul(f, calculus.right_mul(omega, g)))


class TestExteriorDerivative(CalculusTestCase):
  def test_examples(self):
    """
    d of x, t and x*t.
    """
    k = self.kappa
    self.assertFormsClose(self.d(X), self.gen(DX))
    self.assertFormsClose(self.d(T), self.gen(PSI_PLUS, -0.5) + self.gen(PSI_MINUS, -0.5))
    xt = symbolic.star_mul(X, T, k)
    expected = self.gen(DX, T - 1j / k) + self.gen(PSI_PLUS, X * -0.5) + self.gen(PSI_MINUS, X * -0.5)
    self.assertFormsClose(self.d(xt), expected)
    self.assertTrue(self.d(ONE).is_zero())

  def test_leibniz(self):
    """
    d(f*g) = (df) g + f (dg).
    """
    elements = random_elements(8, seed=9, terms=2)
    for f, g in zip(elements[:4], elements[4:]):
      lhs = self.d(symbolic.star_mul(f, g, self.kappa))
      rhs = calculus.right_mul(self.d(f), g) + calculus.left_mul(f, self.d(g))
      self.assertFormsClose(lhs, rhs)

  def test_nilpotent(self):
    """
    d squares to zero on functions and one-forms; it vanishes above degree three.
    """
    elements = random_elements(4, seed=13, terms=2)
    for f in elements + [T, X]:
      self.assertTrue(calculus.exterior_d(self.d(f)).norm() < 1e-10 * max(1., f.max_abs_coeff()))
    omega = calculus.left_mul(elements[0], self.d(elements[1]))
    self.assertLess(calculus.exterior_d(calculus.exterior_d(omega)).norm(), 1e-10 * max(1., omega.norm()))
    volume = calculus.wedge(calculus.wedge(self.gen(DX), self.gen(PSI_PLUS)), self.gen(PSI_MINUS))
    self.assertTrue(calculus.exterior_d(volume).is_zero())
    self.assertEqual(calculus.d(volume, self.algebra).degree, 4)

  def test_translation(self):
    """
    Translations commute with d.
    """
    for f in random_elements(4, seed=17, terms=2):
      self.assertFormsClose(calculus.translate_form(0.4, self.d(f)), self.d(symbolic.translate(0.4, f)))

  def test_covariance(self):
    """
    d commutes with the action of E, P and the translation EPS.
    """
    for f in random_elements(3, seed=19, terms=2) + [T, X]:
      for h in (hopf.E, hopf.P, hopf.EPS):
        self.assertFormsClose(calculus.act_form(h, self.d(f)), self.d(self.algebra.act(h, f)))

  def test_one_form(self):
    """
    d(psi+ t) = 1/2 psi+ ^ psi-.
    """
    omega = self.gen(PSI_PLUS, T)
    self.assertFormsClose(calculus.exterior_d(omega), calculus.wedge(self.gen(PSI_PLUS), self.gen(PSI_MINUS, 0.5)))


class TestWedge(CalculusTestCase):
  def test_basis(self):
    """
    Canonical ordering of basis monomials and their labels.
    """
    self.assertEqual(calculus.normalize_basis((PSI_PLUS, DX)), (-1, (DX, PSI_PLUS)))
    self.assertEqual(calculus.normalize_basis((PSI_MINUS, DX, PSI_PLUS)), (1, (DX, PSI_PLUS, PSI_MINUS)))
    self.assertEqual(calculus.normalize_basis((DX, DX)), (0, None))
    self.assertEqual(calculus.basis_label((DX, PSI_MINUS)), "dx^psi-")
    self.assertEqual(calculus.parse_basis("dx^psi+"), (DX, PSI_PLUS))
    with self.assertRaises(InvalidValue):
      calculus.parse_basis("psi+^dx")

  def test_antisymmetry(self):
    """
    Generators anticommute and square to zero.
    """
    dx, psip = self.gen(DX), self.gen(PSI_PLUS)
    self.assertTrue(calculus.wedge(dx, dx).is_zero())
    self.assertFormsClose(calculus.wedge(dx, psip), -calculus.wedge(psip, dx))
    self.assertFormsClose(calculus.wedge_generator(dx, PSI_PLUS), calculus.wedge(dx, psip))
    self.assertFormsClose(calculus.generator_wedge(PSI_PLUS, dx), calculus.wedge(psip, dx))

  def test_volume(self):
    """
    dx^psi+^psi- has unit coefficient; higher degrees vanish or raise in strict mode.
    """
    volume = calculus.wedge(calculus.wedge(self.gen(DX), self.gen(PSI_PLUS)), self.gen(PSI_MINUS))
    self.assertEqual(volume.degree, 3)
    self.assertEqual(calculus.volume_coefficient(volume), ONE)
    self.assertTrue(calculus.wedge(volume, self.gen(DX)).is_zero())
    with self.assertRaises(DegreeOverflow):
      calculus.wedge(volume, self.gen(DX), strict=True)
    with self.assertRaises(WrongDegree):
      calculus.volume_coefficient(self.gen(DX))

  def test_general_two_form(self):
    """
    rho ^ dx, rho ^ psi+ and rho ^ psi- for a two-form with all three coefficients.
    """
    k = self.kappa
    act = self.algebra.act
    fp, fm, fpm = random_elements(3, seed=23, terms=2)
    rho = DifferentialForm(self.algebra, 2, {(DX, PSI_PLUS): fp, (DX, PSI_MINUS): fm, (PSI_PLUS, PSI_MINUS): fpm})
    volume = lambda pairs: DifferentialForm(self.algebra, 3, {(DX, PSI_PLUS, PSI_MINUS): self.algebra.combine(pairs)})
    self.assertFormsClose(calculus.wedge(rho, self.gen(DX)), volume([(1., fpm), (1j / k, act(hopf.P, fp))]))
    self.assertFormsClose(calculus.wedge(rho, self.gen(PSI_PLUS)),
                          volume([(-1., act(hopf.EPS_INV, fm)),
                                  (-1. / k ** 2, act(hopf.EPS_INV, act(hopf.P, act(hopf.P, fp)))),
                                  (2j / k, act(hopf.EPS_INV, act(hopf.P, fpm)))]))
    self.assertFormsClose(calculus.wedge(rho, self.gen(PSI_MINUS)), volume([(1., act(hopf.EPS, fp))]))

  def test_degrees(self):
    """
    Adding forms of different degrees fails.
    """
    with self.assertRaises(WrongDegree):
      self.gen(DX) + DifferentialForm.function(self.algebra, T)
    with self.assertRaises(BackendMismatch):
      self.gen(DX) + 1.

  def test_format(self):
    """
    Forms print as generator times right coefficient.
    """
    self.assertEqual(self.d(X).format(lambda c: symbolic.format_element(c, self.kappa)), "dx·1")
    self.assertEqual(DifferentialForm.zero(self.algebra, 2).format(), "0")


if __name__ == '__main__':
  unittest.main()
