"""
Exchange graphs
===============

For B0 = [[0, -1], [1, 0]] the standard pattern (R = I) has a pentagon as
exchange graph.  Raising r_1 to 2 or 3 gives the B2 and G2 shapes.  The graphs
of the generalized pattern, its principal companion and the integer D-matrix
pattern all match under the map t -> [seed at t].
"""

import sys

from gencluster import MutationKit, with_trivial_coefficients
from gencluster.dmat import DMatrixPattern
from gencluster.xgraph import (adjacency_iff_common_variables, enumerate_exchange_graph, graphs_agree,
                               seed_determined_by_cluster)

B0 = [[0, -1], [1, 0]]
for R in [(1, 1), (2, 1), (3, 1)]:
    p = with_trivial_coefficients(B0, MutationKit.formal(R))
    g = enumerate_exchange_graph(p, budget=100)
    gw = enumerate_exchange_graph(DMatrixPattern(B0, R), budget=100)
    agree = graphs_agree(p, 100)
    print(f"R = {R}: {len(g)} seeds, {len(g.edges)} edges, D-matrix graph {len(gw)} vertices,"
          f" agree={bool(agree)}, cluster determines seed={bool(seed_determined_by_cluster(g))},"
          f" adjacency={bool(adjacency_iff_common_variables(g))}")

# Infinite type stops at the budget and says so.
wild = enumerate_exchange_graph(DMatrixPattern(B0, (2, 2)), budget=25)
print("R = (2, 2):", len(wild), "vertices, complete =", wild.complete)

# DOT export of the last finite graph.
sys.stdout.write(g.to_dot("g2"))
