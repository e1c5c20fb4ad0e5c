# coding: utf-8
#
# pmodulus documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinxcontrib.programoutput',
              ]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

on_rtd = os.environ.get('READTHEDOCS') == 'True'

project = u'pmodulus'
try:
    import pmodulus
    project_dir = os.path.abspath(os.path.join(__file__, "..", "..", ".."))
    build_dir = os.path.abspath(pmodulus.__file__)
    if on_rtd:
        print("On Read The Docs")
        print("build_dir", build_dir)
        print("project_dir", project_dir)
    elif not build_dir.startswith(project_dir):
        raise RuntimeError("%s looks to come from the system. Fix your PYTHONPATH and restart sphinx." % project)
except ImportError:
    raise RuntimeError("%s is not on the path. Fix your PYTHONPATH and restart sphinx." % project)

from pmodulus._version import strictversion, version, __date__ as pmodulus_date
year = pmodulus_date.split("/")[-1]
copyright = u'%s, the pmodulus developers' % year

# The full version, including alpha/beta/rc tags.
release = strictversion

exclude_patterns = []
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'
html_static_path = []
htmlhelp_basename = 'pmodulusdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_elements = {'papersize': 'a4paper',
                  'pointsize': '10pt'}

latex_documents = [
    ('index', 'pmodulus.tex', u'pmodulus Documentation', u'the pmodulus developers', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('man/pmodulus', 'pmodulus', u'p-modulus of families of objects on graphs',
     [u'the pmodulus developers'], 1)
]
