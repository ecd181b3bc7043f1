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

from . import symbolic
from . import hopf
from . import calculus
from . import grid
from . import cocycle
from . import rieffel

from .errors import KappaForgeError
from .symbolic import Kappa, Term, Element
from .grid import GridSpec, SpectralGrid

from . import _version
__version__ = _version.version
