# Sphinx configuration for the Prosodic Similarity Toolkit API docs.
#
# Build with:  sphinx-build -b html docs docs/_build

# -- Path setup --------------------------------------------------------------

import os
import sys

# repo root, so ``src.<package>`` resolves for autodoc
sys.path.insert(0, os.path.abspath('..'))

# -- Project information -----------------------------------------------------

project = 'Prosodic_Similarity_Toolkit'
copyright = '2025, Tamara_Fakih_&_Lynn_Ariss'
author = 'Tamara_Fakih_&_Lynn_Ariss'
release = '0.1.0'

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
]

# docstrings are numpydoc style throughout
napoleon_google_docstring = False
napoleon_numpy_docstring = True

autodoc_default_options = {
    'members': True,
    'undoc-members': True,
    'show-inheritance': True,
    'member-order': 'bysource',
}

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
