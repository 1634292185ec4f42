# Configuration file for the Sphinx documentation builder.
#
# http://www.sphinx-doc.org/en/master/config

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))
from cubewalk import version


# -- Project information -----------------------------------------------------

project = 'cubewalk'
copyright = '2021, cubewalk developers'
author = 'cubewalk developers'
release = version


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx_autodoc_typehints',
    'sphinx.ext.intersphinx',
]

templates_path = ['_templates']
exclude_patterns = []


# -- Options for HTML output -------------------------------------------------

html_theme = 'classic'
html_static_path = ['_static']

# napoleon specific configuration
napoleon_numpy_docstring = False
napoleon_include_special_with_doc = False
# must be set to True or param types get stripped from the documentation
napoleon_use_param = True

# autodoc specific configuration
set_type_checking_flag = True
autoclass_content = 'both'
autodoc_member_order = 'groupwise'

intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable', None)}
