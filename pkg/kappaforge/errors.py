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
Exception hierarchy.

All errors raised by the library derive from :class:`KappaForgeError`. The command line
tool maps the three families below onto its exit codes:

  - :class:`NumericError` - quadrature or grid range problems (exit code 3)
  - :class:`ConfigError` - invalid configuration (exit code 2)
  - :class:`DslError` - expression language diagnostics (exit code 2)

:class:`InvalidValue` and algebraic misuse (:class:`AlgebraError`) that reach the command line
tool are reported as invalid input (exit code 2).
"""


class KappaForgeError(Exception):
  pass


class InvalidValue(KappaForgeError, ValueError):
  pass


class NumericError(KappaForgeError):
  pass


class SupportOverflow(NumericError):
  """
  Raised when the v-support of a result (or a rescaled beta-support) leaves the grid box.
  """
  pass


class InterpolationOutOfRange(NumericError):
  """
  Raised in strict mode when a rescaled beta query falls outside the box where the
  sampled profile is above the support floor.
  """
  pass


class OutOfRange(NumericError):
  pass


class AlgebraError(KappaForgeError):
  pass


class UnsupportedGenerator(AlgebraError):
  pass


class UnknownRelation(AlgebraError):
  pass


class DegreeOverflow(AlgebraError):
  pass


class WrongDegree(AlgebraError):
  pass


class BackendMismatch(AlgebraError):
  pass


class ConfigError(KappaForgeError):
  def __init__(self, key, message):
    super(ConfigError, self).__init__("invalid configuration value for '%s': %s" % (key, message))
    self.key = key


class DslError(KappaForgeError):
  """
  Expression language diagnostic.

  Always carries the source location of the offending token.
  """
  def __init__(self, message, line, column, source="<input>"):
    super(DslError, self).__init__("%s line %d column %d: %s" % (source, line, column, message))
    self.message = message
    self.line = line
    self.column = column
    self.source = source


class DslSyntaxError(DslError):
  pass


class DslTypeError(DslError):
  pass


class UnknownName(DslError):
  pass


class NameCollision(DslError):
  pass
