"""Exact enumeration of non-intersecting lattice-path models and the
numerical extraction of their arctic curves from tangent-line families.

The package is layered: exact combinatorics (`combinat`), exact rational
linear algebra (`linalg`), the concrete path models with their closed
forms (`models`), independent brute-force enumerators (`oracle`), the
saddle-point / tangent machinery (`tangent`), the closed-form limit
curves (`curves`), and a command-line front end (`cli`).
"""

__version__ = "0.1.0"
