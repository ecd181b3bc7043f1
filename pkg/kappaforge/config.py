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
Session configuration.

Values are layered, later sources winning:

  1. built-in defaults (:attr:`Config._DEFAULT_CONFIG`)
  2. ``KAPPAFORGE_<KEY>`` environment variables (e.g. ``KAPPAFORGE_NV=128``)
  3. JSON configuration file
  4. explicit overrides (command line flags)
"""

import json
import logging
import os

from .errors import ConfigError, InvalidValue

# interval bounds of a grid axis
MIN_INTERVALS = 16
MAX_INTERVALS = 1 << 14


def _parse_bool(value):
  if isinstance(value, bool):
    return value
  text = str(value).strip().lower()
  if text in ("1", "true", "yes", "on"):
    return True
  if text in ("0", "false", "no", "off"):
    return False
  raise ValueError("not a boolean: %r" % value)


class Config(object):
  """
  Validated key/value configuration shared by the command line tool and the property suites.
  """

  ENV_PREFIX = "KAPPAFORGE_"
  OUTPUT_FORMATS = ("json", "csv")

  _DEFAULT_CONFIG = {
    "kappa": 1.0,
    "nv": 256,
    "nbeta": 256,
    "vmax": 8.0,
    "bmax": 12.0,
    "tol_symbolic": 1e-10,
    "tol_grid": 1e-4,
    "tol_trace": 1e-5,
    "strict": False,
    "threads": 1,
    "jobs": 1,
    "seed": 1234,
    "support_floor": 1e-13,
    "out": "json",
  }

  _CONVERTERS = {
    "kappa": float,
    "nv": int,
    "nbeta": int,
    "vmax": float,
    "bmax": float,
    "tol_symbolic": float,
    "tol_grid": float,
    "tol_trace": float,
    "strict": _parse_bool,
    "threads": int,
    "jobs": int,
    "seed": int,
    "support_floor": float,
    "out": str,
  }

  def __init__(self, overrides=None, config_file=None, environ=None):
    self._log = logging.getLogger(type(self).__name__)
    self._values = dict(self._DEFAULT_CONFIG)
    self._update(self._from_environment(os.environ if environ is None else environ), "environment")
    if config_file:
      self._update(self._from_file(config_file), config_file)
    if overrides:
      self._update(dict((k, v) for k, v in overrides.items() if v is not None), "overrides")
    self.validate()

  def _from_environment(self, environ):
    result = {}
    for key in self._DEFAULT_CONFIG:
      name = self.ENV_PREFIX + key.upper()
      if name in environ:
        result[key] = environ[name]
    return result

  def _from_file(self, path):
    if not os.path.isfile(path):
      raise ConfigError("config", "file %s does not exist" % path)
    with open(path, "r") as config_file:
      try:
        data = json.load(config_file)
      except ValueError as e:
        raise ConfigError("config", "%s is not valid JSON (%s)" % (path, e))
    if not isinstance(data, dict):
      raise ConfigError("config", "%s must contain a JSON object" % path)
    return data

  def _update(self, values, origin):
    for key, value in values.items():
      if key not in self._CONVERTERS:
        raise ConfigError(key, "unknown key (from %s)" % origin)
      try:
        self._values[key] = self._CONVERTERS[key](value)
      except (TypeError, ValueError) as e:
        raise ConfigError(key, str(e))
      self._log.debug("%s = %r (from %s)", key, self._values[key], origin)

  def validate(self):
    v = self._values
    if not v["kappa"] > 0:
      raise ConfigError("kappa", "must be strictly positive")
    for key in ("nv", "nbeta"):
      if not MIN_INTERVALS <= v[key] <= MAX_INTERVALS or v[key] % 2:
        raise ConfigError(key, "must be an even number of intervals in [%d, %d]" % (MIN_INTERVALS, MAX_INTERVALS))
    for key in ("vmax", "bmax", "support_floor"):
      if not v[key] > 0:
        raise ConfigError(key, "must be positive")
    for key in ("tol_symbolic", "tol_grid", "tol_trace"):
      if v[key] < 0:
        raise ConfigError(key, "must be non-negative")
    for key in ("threads", "jobs"):
      if v[key] < 1:
        raise ConfigError(key, "must be at least 1")
    if v["out"] not in self.OUTPUT_FORMATS:
      raise ConfigError("out", "must be one of %s" % ", ".join(self.OUTPUT_FORMATS))
    self.grid_spec()

  def __getitem__(self, key):
    return self._values[key]

  def __getattr__(self, key):
    if key.startswith("_"):
      raise AttributeError(key)
    try:
      return self._values[key]
    except KeyError:
      raise AttributeError(key)

  def replace(self, **overrides):
    """
    Return a new configuration with some keys replaced.
    """
    result = Config.__new__(Config)
    result._log = self._log
    result._values = dict(self._values)
    result._update(overrides, "replace")
    result.validate()
    return result

  def grid_spec(self, nv=None, nbeta=None):
    """
    Build the symmetric default box ``[-vmax, vmax] x [-bmax, bmax]``.
    """
    from .grid import GridSpec
    try:
      return GridSpec(-self["vmax"], self["vmax"], nv or self["nv"],
                      -self["bmax"], self["bmax"], nbeta or self["nbeta"])
    except InvalidValue as e:
      raise ConfigError("grid", str(e))

  def to_dict(self):
    return dict(self._values)
