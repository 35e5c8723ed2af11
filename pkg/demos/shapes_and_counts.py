"""How many subproblems each algorithm needs on the synthetic shapes.

The fixed strategies each have a shape they handle badly. The optimal one
adapts per subtree pair, so it is never worse and often much better.

    python3 demos/shapes_and_counts.py [size]
"""

import sys

from rted import Shape, build_index, gen_shape, serialize_bracket
from rted.experiments import count_subproblems

size = int(sys.argv[1]) if len(sys.argv) > 1 else 201
algos = ("rted", "zhang-l", "zhang-r", "klein-h", "demaine-h")

print("left-branch of 7 nodes:", serialize_bracket(gen_shape("lb", 7)))
print("zigzag of 7 nodes:     ", serialize_bracket(gen_shape("zz", 7)))
print()
print(f"identical pairs, n={size}")
print(f"{'shape':13s}" + "".join(f"{a:>13s}" for a in algos))
for shape in Shape:
    F = build_index(gen_shape(shape, size, seed=1))
    counts = [count_subproblems(a, F, F) for a in algos]
    print(f"{shape.value:13s}" + "".join(f"{c:13d}" for c in counts))

# The left-branch case is where Zhang-R degenerates.
print()
for n in (101, 501, 1001):
    F = build_index(gen_shape("lb", n))
    ratio = count_subproblems("zhang-r", F, F) / count_subproblems("rted", F, F)
    print(f"left-branch n={n}: zhang-r needs {ratio:,.0f}x the subproblems of rted")
