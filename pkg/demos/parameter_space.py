"""Classify parameters t and grow the parameter tree around t = 1.

Run: python3 demos/parameter_space.py
"""
from collections import Counter

from dydy import Rational2, classify_parameter, mandel_tree, pcf_parameter

for t in ("4", "2/3", "1/4", "3", "1", "321"):
    print(f"t = {t:>4}:", classify_parameter(Rational2(t))["label"])

# parameters whose critical point 1 is periodic of period n sit at distance 2^-(2n-4) from 1
for n in range(2, 6):
    p = pcf_parameter(n)
    print(f"period {n}: v2(t - 1) = {p.s_valuation}, orbit valuations",
          [z.val for z in p.critical_orbit][:n + 1])

tree = mandel_tree(8)
print("depth 8 mandel tree labels:", dict(Counter(node.label for node in tree.nodes())))
