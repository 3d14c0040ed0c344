"""Follow a few orbits of f_1 and show the two-cycle trap that catches them.

Run: python3 demos/orbits_and_traps.py
"""
from dydy import Disk, Rational2, certify_trap_cycle, classify_disk, classify_point_orbit, family

f1 = family(1)

# the critical point 1 lands on the fixed point -1/2 after one step
print("orbit of 1:", classify_point_orbit(f1, 1).to_json()["tag"])

# 5/2 escapes at once: f_1(5/2) = 79/4 has absolute value 4
res = classify_point_orbit(f1, Rational2(5, 2))
print("orbit of 5/2:", res.tag, "at iterate", res.at_iterate, "log", [str(x) for x in res.log])

# 19/2 sits in a disk that maps onto D(3, 2^-2) and back
res = classify_point_orbit(f1, Rational2(19, 2))
print("orbit of 19/2:", res.tag, "trap", res.trap_id)

cert = certify_trap_cycle(f1, [Disk(Rational2(19, 2), 4), Disk(3, 2)])
for proof in cert.proofs:
    doc = proof.to_json()
    print("  residue map", doc["source_disk"], "->", doc["target_disk"], "verdict", doc["verdict"])

# whole disks get one label each
for d in (Disk(Rational2(1, 2), 1), Disk(Rational2(19, 2), 4), Disk(Rational2(-1, 2), 6)):
    print("disk", d, "->", classify_disk(f1, d).label)
