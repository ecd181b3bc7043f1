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

from kappaforge import hopf, symbolic
from kappaforge.errors import InvalidValue, UnknownRelation, UnsupportedGenerator
from kappaforge.fixtures import random_elements
from kappaforge.hopf import E, EPS, EPS_INV, ID, N, P, PolyWord
from kappaforge.symbolic import ONE, T, X, Element, Term


class TestOperators(unittest.TestCase):
  def setUp(self):
    self.kappa = 1.5

  def assertClose(self, f, g, tol=1e-10):
    scale = max(1., f.max_abs_coeff(), g.max_abs_coeff())
    self.assertLessEqual(symbolic.residual(f, g), tol * scale, "%s != %s" % (f, g))

  def test_generators(self):
    """
    E and P differentiate, EPS translates by i/kappa.
    """
    k = self.kappa
    self.assertEqual(hopf.apply_op(E, T, k), ONE)
    self.assertEqual(hopf.apply_op(P, X, k), ONE)
    self.assertTrue(hopf.apply_op(P, T, k).is_zero())
    self.assertClose(hopf.apply_op(EPS, T, k), T + 1j / k)
    self.assertClose(hopf.apply_op(EPS_INV * EPS, T, k), T)
    self.assertClose(hopf.apply_op(2. * E + ID, T, k), T + 2.)

  def test_boost_on_elements(self):
    """
    The boost has no realization on elements.
    """
    with self.assertRaises(UnsupportedGenerator):
      hopf.apply_op(N, T, self.kappa)
    with self.assertRaises(UnsupportedGenerator):
      hopf.apply_op(E + N * P, T, self.kappa)

  def test_counit(self):
    """
    The counit is multiplicative and linear.
    """
    self.assertEqual(hopf.counit(E), 0.)
    self.assertEqual(hopf.counit(EPS), 1.)
    self.assertEqual(hopf.counit(EPS * EPS_INV + 2. * ID), 3.)
    self.assertEqual(hopf.counit(E * P - P), 0.)

  def test_module_algebra(self):
    """
    h(f*g) follows the coproduct for E, P and EPS.
    """
    k = self.kappa
    elements = random_elements(12, seed=3)
    for h in (E, P, EPS):
      for f, g in zip(elements[:6], elements[6:]):
        self.assertClose(hopf.apply_op(h, symbolic.star_mul(f, g, k), k), hopf.twisted_product_action(h, f, g, k))

  def test_parse(self):
    """
    Operator expressions parse from text.
    """
    op = 2. * EPS + E * P
    self.assertEqual(hopf.parse_operator(str(op)), op)
    self.assertEqual(hopf.counit(hopf.parse_operator("sum(scale(2,eps),E)")), 2.)
    self.assertTrue(hopf.parse_operator("compose(epsinv,P)").mentions(hopf.Generator.P))
    with self.assertRaises(InvalidValue):
      hopf.parse_operator("Q")
    with self.assertRaises(InvalidValue):
      E ** -1


class TestWords(unittest.TestCase):
  def setUp(self):
    self.kappa = 2.

  def assertClose(self, f, g, tol=1e-10):
    scale = max(1., f.max_abs_coeff(), g.max_abs_coeff())
    self.assertLessEqual(symbolic.residual(f, g), tol * scale, "%s != %s" % (f, g))

  def test_words(self):
    """
    Words concatenate; only t and x are letters.
    """
    self.assertEqual(PolyWord.word("t").concat(PolyWord.word("x")), PolyWord.word("tx"))
    self.assertEqual(len(hopf.words_up_to(2)), 7)
    self.assertTrue((PolyWord.word("tx") - PolyWord.word("tx")).is_zero())
    with self.assertRaises(InvalidValue):
      PolyWord.word("ty")

  def test_word_eval(self):
    """
    Words evaluate to star products of the coordinates.
    """
    k = self.kappa
    self.assertClose(hopf.word_eval(PolyWord.word("tx"), k), symbolic.star_mul(T, X, k))
    self.assertEqual(hopf.word_eval(PolyWord.unit(), k), ONE)

  def test_relations(self):
    """
    Every catalog relation holds on all words up to length three.
    """
    samples = hopf.words_up_to(3)
    for name in hopf.relation_catalog(self.kappa):
      report = hopf.relation_check(name, samples, self.kappa)
      self.assertEqual(report.relation, name)
      self.assertEqual(len(report.residuals), len(samples))
      self.assertLess(report.max_residual, 1e-10, name)
    self.assertEqual(hopf.relation_check("[N, eps]", samples[:3], self.kappa).relation, "[N,EPS]")
    with self.assertRaises(UnknownRelation):
      hopf.relation_check("[E,N,P]", samples, self.kappa)

  def test_boost(self):
    """
    N(t x) = -x x - t t - (i/kappa) t, consistently with t*x - x*t = (i/kappa) x.
    """
    k = self.kappa
    boosted = hopf.boost_act(PolyWord.word("tx"), k)
    self.assertEqual(boosted, PolyWord({"xx": -1., "tt": -1., "t": -1j / k}))
    expected = Element([Term(-1., n=2), Term(-1., m=2), Term(-1j / k, m=1)])
    self.assertClose(hopf.word_eval(boosted, k), expected)
    other = hopf.boost_act(PolyWord.word("xt") + PolyWord.word("x", 1j / k), k)
    self.assertClose(hopf.word_eval(other, k), hopf.word_eval(boosted, k))

  def test_format(self):
    """
    Word combinations print with kappa-aware coefficients.
    """
    self.assertEqual(hopf.format_polyword(PolyWord.zero()), "0")
    self.assertEqual(hopf.format_polyword(PolyWord.word("tx")), "t·x")
    self.assertEqual(hopf.format_polyword(PolyWord.word("t", 0.5j), 2.), "(i/κ)·t")


if __name__ == '__main__':
  unittest.main()
