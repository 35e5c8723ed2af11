"""Self join over a small collection of trees with a distance threshold.

Every algorithm finds the same pairs; they differ in how much work it takes.

    python3 demos/similarity_join.py
"""

import math

from rted import gen_shape, ingest_xml
from rted.experiments import similarity_join

trees = {f"random-{s}": gen_shape("random", 120, seed=s, alphabet="abcd") for s in range(4)}
trees["doc-1"] = ingest_xml("<a><b><c/><d/></b><e/></a>")
trees["doc-2"] = ingest_xml("<a><b><c/></b><e/><f/></a>")
trees["lb"] = gen_shape("lb", 121)
trees["zz"] = gen_shape("zz", 121)

algos = ("rted", "zhang-l", "zhang-r", "klein-h", "demaine-h")
# the first call loads the compiled kernels; keep that out of the timings
similarity_join({"a": trees["doc-1"], "b": trees["doc-2"]}, math.inf, algos)
res = similarity_join(trees, math.inf, algos, threads=2)

print("closest pairs:")
for a, b, d in sorted(res.pairs, key=lambda p: p[2])[:5]:
    print(f"  {a:9s} {b:9s} {d:g}")

tau = 60
matched = similarity_join(trees, tau).pairs
print(f"\n{len(matched)} of {len(res.pairs)} pairs have distance < {tau}")

print("\nsubproblems over all pairs:")
for algo in algos:
    print(f"  {algo:10s} {res.subproblems[algo]:>12,d}  {res.seconds[algo]:.3f} s")
