# -*- coding: utf-8 -*-
#
# spherex documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
sys.path.insert(0, os.path.abspath(os.path.join('..', '..', 'src')))

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.mathjax']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'spherex'
copyright = u'2026, spherex developers'
author = u'spherex developers'

RELEASE = '0.3.0'
try:
    import spherex
    RELEASE = spherex.__version__
except ImportError:
    pass

# The short X.Y version.
version = u'0.3'
# The full version, including alpha/beta/rc tags.
release = RELEASE

language = 'en'

exclude_patterns = ['_build']

pygments_style = 'sphinx'

todo_include_todos = False

autodoc_member_order = 'bysource'

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_theme_options = {'collapse_navigation': False}

html_static_path = ['_static']

htmlhelp_basename = 'spherexdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'spherex.tex', u'spherex Documentation',
     u'spherex developers', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'spherex', u'spherex Documentation',
     [author], 1)
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
