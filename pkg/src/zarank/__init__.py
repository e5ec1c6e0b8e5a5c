"""zarank: exact laboratory for Zarankiewicz-type extremal problems on
geometric hypergraphs.

Subpackages:
  bounds      exact bound calculus and identity checks
  hypergraph  k-partite hypergraphs, pattern detection, set systems
  geometry    exact rational constructions (minors, areas, spheres)
  partition   desk-scale polynomial partitioning
  experiments sweeps, exponent fits, reports
  cli         the `zarank` command line tool
"""

__version__ = "0.1.0"
