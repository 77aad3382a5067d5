"""
Split topology and edge distance
================================

Lay out 20 node labels, split them recursively at the midpoint until a
segment holds fewer than four labels, and measure how related a pair of
nodes is by how much of their root-to-leaf split chain they share.
"""

from hmnet import Graph, average_edge_distance, build_topology, edge_distance

t = build_topology(20, ts=4)
print("split labels (pre-order):", t.splits)

# each node's chain of splits from the root down
for u in (1, 4, 5, 17):
    print(f"path of node {u:2d}:", " > ".join(f"{x}i" for x in t.paths[u]))

# pairs in the same quarter share two internal edges, pairs in different halves none
for u, v in [(1, 4), (5, 4), (4, 17)]:
    print(f"ed({u}, {v}) = {edge_distance(t, u, v)}")

# average edge distance of two small 8-node graphs with equal degree sequences
t8 = build_topology(8, ts=2)
g1 = Graph(8, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 6), (4, 5), (4, 7)])
g2 = Graph(8, [(0, 1), (0, 2), (0, 4), (2, 3), (4, 5), (4, 6), (6, 7)])
print("aed star-like :", average_edge_distance(g1, t8))
print("aed chain-like:", average_edge_distance(g2, t8))
