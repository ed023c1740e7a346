"""
This package has the following modules:

``lattice``

``configuration``

``sums``

``features``

``microgen``

``conductivity``

``classification``

``irregularity``

``manifest``
"""
__version__ = '1.0.0'
