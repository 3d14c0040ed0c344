"""Check the repeating disk patterns for a range of n and print the traces' summaries.

Run: python3 demos/patterns.py
"""
from dydy import verify_prop_julia, verify_thm_bdd, verify_thm_q2bdd, verify_thm_unbdd

for n in range(1, 6):
    tr = verify_thm_unbdd(n)
    print("escaping parameter disk", n, tr.verdict, tr.summary)

for n in range(3, 7):
    tr = verify_thm_q2bdd(n, "a")
    print("trapped parameter disk", n, tr.verdict, len(tr.steps), "steps")
    tr = verify_thm_bdd(n)
    print("bounded critical orbit", n, tr.verdict, tr.summary)

for n in range(0, 4):
    print("julia unbounded", n, verify_prop_julia("unbounded", n).verdict,
          "bounded", verify_prop_julia("bounded", n).verdict)
