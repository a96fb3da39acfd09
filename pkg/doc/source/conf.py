#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# GEGENpypes documentation build configuration file.
#
# Only the settings that differ from the Sphinx defaults are listed.

import sys
import os

# the project root, two levels up from doc/source
cwd = os.getcwd()
documentation_root = os.path.dirname(cwd)
project_root = os.path.dirname(documentation_root)
sys.path.insert(0, project_root)

import gegenpypes

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.todo',
    'sphinx.ext.viewcode',
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    ]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'GEGENpypes'
copyright = u'2026, Joel Bender'

version = gegenpypes.__version__
release = gegenpypes.__version__

exclude_patterns = []
pygments_style = 'sphinx'

# members in source order
autodoc_member_order = 'bysource'

# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_static_path = ['_static']
htmlhelp_basename = 'gegenpypesdoc'

# -- Options for other builders -------------------------------------------

latex_documents = [
    ('index', 'gegenpypes.tex', u'GEGENpypes Documentation',
     u'Joel Bender', 'manual'),
    ]

man_pages = [
    ('index', 'gegenpypes', u'GEGENpypes Documentation',
     [u'Joel Bender'], 1),
    ]

texinfo_documents = [
    ('index', 'gegenpypes', u'GEGENpypes Documentation',
     u'Joel Bender', 'GEGENpypes', 'Wavelet packet bases for Gegenbauer processes',
     'Miscellaneous'),
    ]
