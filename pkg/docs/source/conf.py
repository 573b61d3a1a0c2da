# Sphinx configuration for the smpleak documentation.
# Build with: sphinx-build -b html docs/source docs/build

import os
import sys

sys.path.insert(0, os.path.abspath('../..'))  # root of the project

import smpleak  # noqa: E402

# -- Project information -----------------------------------------------------

project = 'smpleak'
copyright = '2026, smpleak developers'
author = 'smpleak developers'
version = smpleak.__version__
release = smpleak.__version__

# -- General configuration ---------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinx.ext.intersphinx',
              'sphinx.ext.viewcode',
              ]

autodoc_member_order = 'bysource'
autodoc_mock_imports = ['scipy']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = []
pygments_style = 'sphinx'

# -- Options for HTML output -------------------------------------------------

html_theme = 'alabaster'
html_static_path = ['_static']
htmlhelp_basename = 'smpleakdoc'

# -- Options for other outputs -----------------------------------------------

latex_documents = [
    (master_doc, 'smpleak.tex', 'smpleak Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'smpleak', 'smpleak Documentation', [author], 1)
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
}
