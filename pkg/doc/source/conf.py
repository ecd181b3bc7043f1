#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# kappaforge documentation build configuration file.
#

import os
import sys
sys.path.insert(0, os.path.abspath("../.."))

from kappaforge import _version

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.autosummary',
              'sphinx.ext.napoleon',
              'sphinx.ext.mathjax']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'kappaforge'
copyright = '2017-2018, kappaforge contributors'
author = 'kappaforge contributors'
version = _version.version
release = _version.version

exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False

html_theme = 'alabaster'
html_show_sourcelink = False
htmlhelp_basename = 'kappaforgedoc'

man_pages = [
    (master_doc, 'kappaforge', 'kappaforge Documentation', [author], 1)
]
