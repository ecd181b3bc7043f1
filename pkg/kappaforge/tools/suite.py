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
Property suites: each one evaluates a list of named checks against a configuration and
returns a deterministic report document.

A check is a mapping with ``name``, ``residual``, ``tolerance`` and ``passed`` (plus
optional extra fields); a suite passes when all of its checks do.
"""

import collections
import csv
import datetime
import io
import logging
import math
import multiprocessing
import time

import numpy

from .. import calculus
from .. import cocycle
from .. import fixtures
from .. import grid
from .. import hopf
from .. import rieffel
from .. import symbolic
from ..calculus import DX, PSI_MINUS, PSI_PLUS, DifferentialForm, SymbolicAlgebra
from ..config import Config
from ..errors import ConfigError
from ..grid import GridAlgebra
from ..symbolic import ONE, T, X, Element, Term
from .._version import report_schema

SCHEMA = report_schema
SUITES = ("symbolic", "hopf", "calculus", "grid", "trace", "rieffel")

_LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
_LOG_FORMAT = "[%(name)s] [%(levelname)5s] [%(asctime)s] %(message)s"

_log = logging.getLogger("kappaforge.suite")


def make_check(name, residual, tolerance, passed=None, **extra):
  """
  Build one report entry; *passed* defaults to ``residual <= tolerance``.
  """
  residual = float(residual)
  if passed is None:
    passed = residual <= tolerance
  entry = collections.OrderedDict([
    ("name", name),
    ("residual", residual),
    ("tolerance", float(tolerance)),
    ("passed", bool(passed)),
  ])
  entry.update(sorted(extra.items()))
  return entry


def _relative(value, *scales):
  return value / max([1.] + [float(s) for s in scales])


def _element_residual(f, g):
  return _relative(symbolic.residual(f, g), f.max_abs_coeff(), g.max_abs_coeff())


def _grid_residual(f, g):
  return float(numpy.abs(f.values - g.values).max()) / max(f.max_abs(), g.max_abs(), 1e-300)


# symbolic

def symbolic_checks(config):
  k = config.kappa
  tol = config.tol_symbolic
  star = lambda f, g: symbolic.star_mul(f, g, k)
  checks = [
    make_check("symbolic.t*x", _element_residual(star(T, X), Element([Term(1., m=1, n=1), Term(1j / k, n=1)])), tol),
    make_check("symbolic.x*t", _element_residual(star(X, T), Element([Term(1., m=1, n=1)])), tol),
    make_check("symbolic.commutator", _element_residual(symbolic.commutator(T, X, k), X * (1j / k)), tol),
  ]

  elements = fixtures.random_elements(150, seed=config.seed)
  triples = [elements[3 * j:3 * j + 3] for j in range(50)]
  checks.append(make_check("symbolic.associativity",
                           max(_element_residual(star(star(f, g), h), star(f, star(g, h))) for f, g, h in triples),
                           tol, samples=len(triples)))

  gamma, delta = 0.3, -0.7
  pairs = [(f, g) for f, g, _ in triples[:20]]
  checks.append(make_check("symbolic.translation-automorphism",
                           max(_element_residual(symbolic.translate(gamma, star(f, g)),
                                                 star(symbolic.translate(gamma, f), symbolic.translate(gamma, g)))
                               for f, g in pairs), tol))
  checks.append(make_check("symbolic.translation-group",
                           max(_element_residual(symbolic.translate(gamma, symbolic.translate(delta, f)),
                                                 symbolic.translate(gamma + delta, f))
                               for f, _ in pairs), tol))

  adj = lambda f: symbolic.involution(f, k)
  checks.append(make_check("symbolic.involution-antihomomorphism",
                           max(_element_residual(adj(star(f, g)), star(adj(g), adj(f))) for f, g in pairs), tol))
  checks.append(make_check("symbolic.involution-square",
                           max(_element_residual(adj(adj(f)), f) for f, _ in pairs), tol))
  checks.append(make_check("symbolic.unit",
                           max(max(_element_residual(star(ONE, f), f), _element_residual(star(f, ONE), f))
                               for f, _ in pairs), tol))
  return checks


# hopf

def hopf_checks(config):
  k = config.kappa
  tol = config.tol_symbolic
  checks = []
  elements = fixtures.random_elements(40, seed=config.seed + 1)
  pairs = list(zip(elements[::2], elements[1::2]))
  for name, h in (("E", hopf.E), ("P", hopf.P), ("eps", hopf.EPS)):
    worst = max(_element_residual(hopf.apply_op(h, symbolic.star_mul(f, g, k), k),
                                  hopf.twisted_product_action(h, f, g, k)) for f, g in pairs)
    checks.append(make_check("hopf.module-algebra.%s" % name, worst, tol, samples=len(pairs)))

  samples = hopf.words_up_to(3)
  for relation in hopf.relation_catalog(k):
    report = hopf.relation_check(relation, samples, k)
    checks.append(make_check("hopf.relation.%s" % relation, report.max_residual, tol, samples=len(samples)))

  word = hopf.PolyWord.word
  boosted = lambda w: hopf.word_eval(hopf.boost_act(w, k), k)
  checks.append(make_check("hopf.boost-well-defined",
                           _element_residual(boosted(word("tx")), boosted(word("xt") + word("x", 1j / k))), tol))
  expected = Element([Term(-1., n=2), Term(-1., m=2), Term(-1j / k, m=1)])
  checks.append(make_check("hopf.boost-example", _element_residual(boosted(word("tx")), expected), tol))

  operators = list(calculus.derivative_operators(k).values()) + [hopf.E * hopf.P, hopf.EPS * hopf.EPS_INV,
                                                                   hopf.EPS ** 3 - 2. * hopf.ID]
  worst = max(_element_residual(hopf.apply_op(h, ONE, k), ONE * hopf.counit(h)) for h in operators)
  checks.append(make_check("hopf.counit", worst, tol, samples=len(operators)))
  return checks


# calculus

def _generator(algebra, one_form, coeff):
  if isinstance(coeff, (int, float, complex)):
    coeff = Element.scalar(coeff)
  return DifferentialForm.generator(algebra, one_form, coeff)


def _form_residual(lhs, rhs):
  return _relative((lhs - rhs).norm(), lhs.norm(), rhs.norm())


def calculus_checks(config):
  k = config.kappa
  tol = config.tol_symbolic
  algebra = SymbolicAlgebra(k)
  gen = lambda one_form, coeff: _generator(algebra, one_form, coeff)
  checks = []

  relations = [
    ("x.dx", X, DX, gen(DX, X) + gen(PSI_MINUS, 1j / k)),
    ("t.dx", T, DX, gen(DX, T)),
    ("x.psi+", X, PSI_PLUS, gen(PSI_PLUS, X) + gen(DX, 2j / k)),
    ("t.psi+", T, PSI_PLUS, gen(PSI_PLUS, T - 1j / k)),
    ("x.psi-", X, PSI_MINUS, gen(PSI_MINUS, X)),
    ("t.psi-", T, PSI_MINUS, gen(PSI_MINUS, T + 1j / k)),
  ]
  for name, f, one_form, expected in relations:
    lhs = calculus.left_mul(f, gen(one_form, ONE))
    checks.append(make_check("calculus.relation.%s" % name, _form_residual(lhs, expected), tol))

  xt = symbolic.star_mul(X, T, k)
  examples = [
    ("d(x)", X, gen(DX, ONE)),
    ("d(t)", T, gen(PSI_PLUS, -0.5) + gen(PSI_MINUS, -0.5)),
    ("d(x*t)", xt, gen(DX, T - 1j / k) + gen(PSI_PLUS, X * -0.5) + gen(PSI_MINUS, X * -0.5)),
  ]
  for name, f, expected in examples:
    checks.append(make_check("calculus.example.%s" % name, _form_residual(calculus.exterior_d0(f, algebra), expected),
                             tol))

  elements = fixtures.random_elements(30, seed=config.seed + 2, terms=2)
  pairs = list(zip(elements[:10], elements[10:20]))
  d0 = lambda f: calculus.exterior_d0(f, algebra)
  leibniz = max(_form_residual(d0(algebra.star(f, g)), calculus.right_mul(d0(f), g) + calculus.left_mul(f, d0(g)))
                for f, g in pairs)
  checks.append(make_check("calculus.leibniz", leibniz, tol, samples=len(pairs)))

  square = max(_relative(calculus.exterior_d(d0(f)).norm(), f.max_abs_coeff()) for f in elements[:10])
  checks.append(make_check("calculus.d-squared.functions", square, tol))
  one_forms = [calculus.left_mul(f, d0(g)) for f, g in pairs[:5]]
  square = max(_relative(calculus.exterior_d(calculus.exterior_d(omega)).norm(), omega.norm()) for omega in one_forms)
  checks.append(make_check("calculus.d-squared.one-forms", square, tol))

  triples = list(zip(elements[:5], elements[5:10], one_forms))
  bimodule = max(max(_form_residual(calculus.left_mul(algebra.star(f, g), omega),
                                    calculus.left_mul(f, calculus.left_mul(g, omega))),
                     _form_residual(calculus.right_mul(calculus.left_mul(f, omega), g),
                                    calculus.left_mul(f, calculus.right_mul(omega, g))))
                 for f, g, omega in triples)
  checks.append(make_check("calculus.bimodule-associativity", bimodule, tol))

  gamma = 0.4
  translated = max(_form_residual(calculus.translate_form(gamma, d0(f)), d0(symbolic.translate(gamma, f)))
                   for f in elements[20:30])
  checks.append(make_check("calculus.translation-commutes-with-d", translated, tol))
  return checks


# grid

_ORACLE_POINTS = ((0.3, 0.2), (-0.5, 0.4), (0.8, -0.3))
_CONVERGENCE_SIZES = (64, 128, 256)
MIN_ORDER = 2.
# relative accuracy of the direct-quadrature oracle itself
ORACLE_FLOOR = 1e-8
# broad beta profiles keep rescaled factors resolved by the spline
_WIDE_FIXTURES = (fixtures.GaussianFixture(center_v=0.1, width_v=0.2, beta_width=1.5),
                  fixtures.GaussianFixture(center_v=-0.1, width_v=0.25, beta_width=1.5),
                  fixtures.GaussianFixture(center_v=0.05, width_v=0.2, beta_center=0.2, beta_width=1.4, beta_phase=0.3))


def _oracle_error(f, g, spec, k):
  product = grid.grid_star(f.sample(spec), g.sample(spec), k)
  errors, scale = [], 0.
  for alpha, beta in _ORACLE_POINTS:
    exact = grid.star3_oracle_point(f.position, g.position, alpha, beta, k, f.v_support())
    errors.append(abs(grid.grid_eval(product, alpha, beta) - exact))
    scale = max(scale, abs(exact))
  return max(errors) / max(scale, 1e-300)


def _wave_error(spec, k, sigma):
  waves = ((0.5, 0.5), (-0.3, 0.5))
  grids = [grid.mollified_plane_wave(spec, a, sigma, w=w) for a, w in waves]
  exact = symbolic.star_mul(*([symbolic.plane_wave(a, w=w) for a, w in waves] + [k]))
  product = grid.grid_star(grids[0], grids[1], k)
  return max(abs(grid.grid_eval(product, alpha, beta) - symbolic.eval_point(exact, alpha, beta))
             for alpha, beta in ((0.5, 0.3), (-0.4, -0.6)))


def grid_checks(config):
  k = config.kappa
  tol = config.tol_grid
  spec = config.grid_spec()
  algebra = GridAlgebra(k, spec, strict=config.strict, threads=config.threads, support_floor=config.support_floor)
  checks = []

  f, g = fixtures.gaussian_fixtures(2, seed=config.seed)
  checks.append(make_check("grid.oracle", _oracle_error(f, g, spec, k), tol, points=len(_ORACLE_POINTS)))
  alpha, beta = _ORACLE_POINTS[0]
  star3 = grid.star3_oracle_point(f.position, g.position, alpha, beta, k, f.v_support())
  star2 = grid.star2_oracle_point(f.position, g.position, alpha, beta, k, f.v_support())
  checks.append(make_check("grid.oracle-forms", abs(star3 - star2) / max(abs(star3), 1e-300), tol))

  errors = [_oracle_error(f, g, config.grid_spec(nv=n, nbeta=n), k) for n in _CONVERGENCE_SIZES]
  orders = [math.log(errors[j] / max(errors[j + 1], 1e-300), 2.) for j in range(len(errors) - 1)]
  # a refinement whose finer error is already at the oracle's own accuracy shows no order
  resolved = [order for order, fine in zip(orders, errors[1:]) if fine > ORACLE_FLOOR]
  checks.append(make_check("grid.convergence", errors[-1], tol,
                           passed=errors[-1] <= tol and min(resolved + [MIN_ORDER]) >= MIN_ORDER,
                           errors=errors, orders=orders, floor=ORACLE_FLOOR, resolved=len(resolved)))

  bumps = fixtures.bump_fixtures(spec, 20, seed=config.seed)
  pairs = list(zip(bumps[:10], bumps[10:]))
  twisted = max(abs(grid.lebesgue_integral(algebra.star(a, b))
                    - grid.lebesgue_integral(algebra.star(grid.grid_translate(1. / k, b), a))) / (a.norm() * b.norm())
                for a, b in pairs)
  checks.append(make_check("grid.twisted-trace", twisted, config.tol_trace, samples=len(pairs)))

  counit = 0.
  for h in (hopf.E, hopf.P, hopf.EPS, hopf.EPS_INV * hopf.P):
    for a in bumps[:3]:
      integral = grid.lebesgue_integral(a)
      counit = max(counit, abs(grid.lebesgue_integral(algebra.act(h, a)) - hopf.counit(h) * integral)
                   / max(abs(integral), a.norm()))
  checks.append(make_check("grid.integral-counit", counit, tol))

  wide = [fixture.sample(spec) for fixture in _WIDE_FIXTURES]
  adj = algebra.involution
  checks.append(make_check("grid.involution-antihomomorphism",
                           _grid_residual(adj(algebra.star(wide[0], wide[1])), algebra.star(adj(wide[1]), adj(wide[0]))),
                           tol))
  a, b, c = wide
  checks.append(make_check("grid.associativity",
                           _grid_residual(algebra.star(algebra.star(a, b), c), algebra.star(a, algebra.star(b, c))), tol))

  gamma = 0.3
  a, b = bumps[0], bumps[1]
  checks.append(make_check("grid.translation-automorphism",
                           _grid_residual(grid.grid_translate(gamma, algebra.star(a, b)),
                                          algebra.star(grid.grid_translate(gamma, a), grid.grid_translate(gamma, b))),
                           tol))

  wave_spec = grid.GridSpec(-8., 8., 1024, spec.bmin, spec.bmax, spec.nbeta)
  errors = [_wave_error(wave_spec, k, sigma) for sigma in (0.4, 0.2, 0.1)]
  orders = [math.log(errors[j] / max(errors[j + 1], 1e-300), 2.) for j in range(2)]
  checks.append(make_check("grid.cross-engine", errors[-1], max(errors[0], tol), passed=min(orders) >= 1.,
                           orders=orders))
  return checks


# trace

def trace_checks(config):
  k = config.kappa
  spec = config.grid_spec()
  algebra = GridAlgebra(k, spec, strict=config.strict, threads=config.threads, support_floor=config.support_floor)
  bumps = fixtures.bump_fixtures(spec, 30, seed=config.seed)
  checks = []

  forms = [cocycle.two_form(algebra, bumps[3 * j:3 * j + 3]) for j in range(10)]
  closed, parts = 0., 0.
  for rho in forms:
    total, components = cocycle.closedness_residuals(rho)
    closed = max(closed, total / rho.norm())
    parts = max([parts] + [value / rho.norm() for value in components.values()])
  checks.append(make_check("trace.closedness", closed, config.tol_trace, passed=max(closed, parts) <= config.tol_trace,
                           components=parts, samples=len(forms)))

  theta = {"dx": 1., "psi+": 0.5j, "psi-": -0.25}
  cyclic = max(cocycle.twisted_graded_cyclicity_check(rho, theta) / rho.norm() for rho in forms)
  checks.append(make_check("trace.graded-cyclicity", cyclic, config.tol_trace, samples=len(forms)))
  one_forms = [DifferentialForm(algebra, 1, {(DX,): a, (PSI_PLUS,): b, (PSI_MINUS,): c})
               for a, b, c in (bumps[9:12], bumps[12:15], bumps[15:18])]
  cyclic = max(cocycle.graded_cyclicity_residuals(rho, omega)["theta"] / (rho.norm() * omega.norm())
               for rho, omega in zip(forms, one_forms))
  checks.append(make_check("trace.graded-cyclicity.one-form", cyclic, config.tol_trace, samples=len(one_forms)))

  three_forms = [(DifferentialForm(algebra, 3, {(DX, PSI_PLUS, PSI_MINUS): a}), b) for a, b in zip(bumps[:5], bumps[5:10])]
  defect = max(cocycle.three_form_trace_defect(omega, b) / (omega.norm() * b.norm()) for omega, b in three_forms)
  checks.append(make_check("trace.three-form-twist", defect, config.tol_trace))

  quadruples = [bumps[4 * j:4 * j + 4] for j in range(5)]
  sign, worst = cocycle.pin_cyclic_sign(quadruples, algebra)
  checks.append(make_check("trace.cyclic-sign", worst[cocycle.CYCLIC_SIGN], config.tol_grid,
                           passed=sign == cocycle.CYCLIC_SIGN and worst[cocycle.CYCLIC_SIGN] <= config.tol_grid,
                           sign=sign, other=worst[-cocycle.CYCLIC_SIGN]))

  quintuples = [bumps[5 * j:5 * j + 5] for j in range(5)]
  hochschild = max(cocycle.hochschild_defect(*(list(fs) + [algebra])) / cocycle.cocycle_scale(*fs) for fs in quintuples)
  checks.append(make_check("trace.hochschild", hochschild, config.tol_grid, samples=len(quintuples)))
  return checks


# rieffel

def rieffel_checks(config):
  k = config.kappa
  tol = config.tol_grid
  floor = config.support_floor
  strict = config.strict
  spec = config.grid_spec()
  algebra = GridAlgebra(k, spec, strict=strict, threads=config.threads, support_floor=floor)
  gaussians = fixtures.gaussian_fixtures(20, seed=config.seed)
  grids = [f.sample(spec) for f in gaussians]
  pairs = list(zip(grids[:10], grids[10:]))
  checks = []

  checks.append(make_check("rieffel.j-product",
                           max(_grid_residual(rieffel.j_star(f, g, k, strict=strict, support_floor=floor),
                                              algebra.star(f, g))
                               for f, g in pairs), tol, samples=len(pairs)))

  f, g = gaussians[0], gaussians[10]
  product = rieffel.j_star(grids[0], grids[10], k, strict=strict, support_floor=floor)
  errors, scale = [], 0.
  for alpha, beta in _ORACLE_POINTS:
    exact = rieffel.j_star_point(f.position, g.position, alpha, beta, k, f.v_support())
    errors.append(abs(grid.grid_eval(product, alpha, beta) - exact))
    scale = max(scale, abs(exact))
  checks.append(make_check("rieffel.j-oracle", max(errors) / max(scale, 1e-300), tol, points=len(_ORACLE_POINTS)))

  eta = lambda r, s, f: rieffel.eta_act(r, s, f, check_support=False)
  r, s = 0.4, 0.3
  checks.append(make_check("rieffel.eta-automorphism",
                           max(_grid_residual(eta(r, s, algebra.star(f, g)), algebra.star(eta(r, s, f), eta(r, s, g)))
                               for f, g in pairs[:3]), tol))
  checks.append(make_check("rieffel.eta-group",
                           max(_grid_residual(eta(0.3, 0.2, eta(-0.1, 0.15, f)), eta(0.2, 0.35, f)) for f in grids[:5]),
                           tol))

  jmap = rieffel.JMap(k)
  nilpotent = max(max(abs(c) for c in jmap.squared(u, v)) for u, v in ((1., 0.), (0., 1.), (0.3, -2.5)))
  checks.append(make_check("rieffel.j-nilpotent", nilpotent, 0., passed=nilpotent == 0.))

  wide = [fixture.sample(spec) for fixture in _WIDE_FIXTURES[:2]]
  checks.append(make_check("rieffel.involution",
                           max(_grid_residual(rieffel.rieffel_involution(f, k, strict=strict, support_floor=floor),
                                              algebra.involution(f))
                               for f in wide), tol))
  return checks


_SUITE_CHECKS = {
  "symbolic": symbolic_checks,
  "hopf": hopf_checks,
  "calculus": calculus_checks,
  "grid": grid_checks,
  "trace": trace_checks,
  "rieffel": rieffel_checks,
}


def _report(name, config, checks):
  return collections.OrderedDict([
    ("schema", SCHEMA),
    ("suite", name),
    ("config", config.to_dict()),
    ("checks", checks),
    ("passed", all(check["passed"] for check in checks)),
  ])


def _run_single(name, config):
  logger = logging.getLogger("kappaforge.suite.%s" % name)
  logger.debug("Starting suite %s (kappa=%g)", name, config.kappa)
  checks = _SUITE_CHECKS[name](config)
  for check in checks:
    if not check["passed"]:
      logger.warning("%s failed: residual %.3g > %.3g", check["name"], check["residual"], check["tolerance"])
  return _report(name, config, checks)


def _run_suite_job(job):
  name, values, log_level = job
  logging.basicConfig(level=log_level, format=_LOG_FORMAT, datefmt=_LOG_DATE_FORMAT)
  return _run_single(name, Config(values, environ={}))


def progress_reporter(iterable, length, logger):
  start_time = last_result_timestamp = time.time()
  average_time = 0.
  for idx, element in enumerate(iterable):
    current = time.time()
    elapsed = current - last_result_timestamp
    last_result_timestamp = current
    count = idx + 1
    average_time = average_time * (count - 1) / float(count) + elapsed / count
    remaining = (length - idx) * average_time
    eta_string = (" [ETA: %s]" % datetime.timedelta(seconds=remaining)) if idx > 10 else ""
    logger.info("%d/%d%s", idx + 1, length, eta_string)
    yield element
  logger.info("Finished. %d suites in %f seconds", length, time.time() - start_time)


def run_suite(name, config=None):
  """
  Run one suite, or every suite for ``"all"``; the result for ``"all"`` nests the suite
  reports under ``suites``. With ``config.jobs > 1`` the suites run in separate processes.
  """
  config = config or Config()
  if name != "all":
    if name not in _SUITE_CHECKS:
      raise ConfigError("suite", "unknown suite %r (known: %s, all)" % (name, ", ".join(SUITES)))
    return _run_single(name, config)

  jobs = [(suite, config.to_dict(), logging.getLogger().getEffectiveLevel()) for suite in SUITES]
  if config.jobs > 1:
    with multiprocessing.get_context("spawn").Pool(min(config.jobs, len(jobs))) as pool:
      reports = list(progress_reporter(pool.imap_unordered(_run_suite_job, jobs, 1), len(jobs), _log))
  else:
    reports = list(progress_reporter((_run_single(job[0], config) for job in jobs), len(jobs), _log))
  by_name = dict((report["suite"], report) for report in reports)
  ordered = [by_name[suite] for suite in SUITES]
  return collections.OrderedDict([
    ("schema", SCHEMA),
    ("suite", "all"),
    ("config", config.to_dict()),
    ("suites", ordered),
    ("checks", [check for report in ordered for check in report["checks"]]),
    ("passed", all(report["passed"] for report in ordered)),
  ])


def report_to_csv(report):
  """
  One row per check: suite, name, residual, tolerance, passed.
  """
  output = io.StringIO()
  writer = csv.writer(output, lineterminator="\n")
  writer.writerow(["suite", "name", "residual", "tolerance", "passed"])
  for check in report["checks"]:
    writer.writerow([check["name"].split(".")[0], check["name"], repr(check["residual"]), repr(check["tolerance"]),
                     "true" if check["passed"] else "false"])
  return output.getvalue()
