from __future__ import print_function

import os
import re
from setuptools import setup


def local_path(*components):
  project_root = os.path.dirname(os.path.realpath(__file__))
  return os.path.normpath(os.path.join(project_root, *components))


def read_version():
  with open(local_path("kappaforge", "_version.py")) as version_file:
    match = re.search(r'^version = "([^"]+)"', version_file.read(), re.M)
  return match.group(1)


# scipy >= 1.6 provides integrate.simpson
setup(name="kappaforge",
      version=read_version(),
      author="kappaforge contributors",
      description="Star products, Hopf actions and differential calculus on kappa-Minkowski space",
      license="LGPLv3",
      packages=["kappaforge", "kappaforge.tools"],
      install_requires=["numpy", "scipy>=1.6", "sympy"],
      entry_points={"console_scripts": ["kappaforge = kappaforge.tools.cli:main"]})
