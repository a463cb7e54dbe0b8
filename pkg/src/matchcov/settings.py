"""Process-wide limits for the exhaustive routines.

Exhaustive routines raise :class:`~matchcov.graph.CapExceeded` rather than
truncate when a graph is larger than the relevant cap. The CLI ``--cap`` flag
overrides ``VERTEX_CAP``.
"""

VERTEX_CAP = 16
CONFORMAL_CAP = 14
