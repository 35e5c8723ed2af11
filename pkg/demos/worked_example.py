"""Walk through the smallest interesting case: two tiny trees, their optimal
strategy, and the distance it computes.

    python3 demos/worked_example.py
"""

from rted import build_index, gted, opt_strategy, parse_bracket, strategy_cost, tree_edit_distance
from rted.strategy import fixed_strategy

F = build_index(parse_bracket("{c{a}{b}}"))
G = build_index(parse_bracket("{b{a}}"))

res = opt_strategy(F, G)
print(f"F = {{c{{a}}{{b}}}} ({F.n} nodes), G = {{b{{a}}}} ({G.n} nodes)")
print(f"optimal strategy cost: {res.cost} relevant subproblems")
print("candidate costs at the root pair:", res.root_candidates)
print("chosen at the root pair:", res.matrix[F.root, G.root])
print()
print("strategy matrix (1-based postorder ids):")
print(res.matrix.to_csv(), end="")
print()

# The executed run must compute exactly as many subproblems as predicted.
D, stats = gted(F, G, res.matrix)
print(f"distance {D[F.root, G.root]:g}, executed subproblems {stats.subproblems}")

# The fixed strategies on the same pair, for comparison.
for kind in ("zhang-l", "zhang-r", "klein-h", "demaine-h"):
    print(f"  {kind:10s} cost {strategy_cost(F, G, fixed_strategy(kind, F, G))}")

# Distances between every pair of subtrees come for free.
print()
print("all subtree distances (rows: F, columns: G):")
print(D.d)

d, _ = tree_edit_distance(parse_bracket("{f{a}{b}}"), parse_bracket("{f{a}}"))
print(f"\n{{f{{a}}{{b}}}} vs {{f{{a}}}}: {d:g} (delete b)")
