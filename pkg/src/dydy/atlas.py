"""Instance verifiers for the disk patterns near t = 1 and z = -1/2, and the
classification trees built from them.

Each verifier checks one concrete ``n`` with exact disk arithmetic and
returns a ``VerifierTrace``: every step names the operation, its inputs and
the congruence or absolute value it certified, so the trace can be replayed.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .dyadic import DEFAULT_PRECISION, INF, ONE, Rational2, pow2, rational, residue
from .dynamics import (
    TWO_CYCLE_DISKS,
    TWO_CYCLE_ENTRY,
    certify_trap_cycle,
    classify_disk,
    classify_parameter_disk,
    classify_point_orbit,
    escape_certified,
    family_disk_image,
    family_residue_map,
    pcf_parameter,
)
from .errors import DomainError, VerificationFailure
from .geometry import Disk, disk_image, disk_sup_val, residue_disk_map
from .poly import family, shape_poly

HALF = Rational2(1, 2)
NEG_HALF = Rational2(-1, 2)


@dataclass
class VerifierTrace:
    """Audit trail of one verified instance."""

    theorem_id: str
    params: dict
    steps: list = field(default_factory=list)
    verdict: bool = False
    summary: dict = field(default_factory=dict)

    def step(self, operation: str, inputs: dict, claim: str, ok: bool = True, **extra) -> None:
        entry = {"operation": operation, "inputs": inputs, "claim": claim, "ok": ok}
        entry.update(extra)
        self.steps.append(entry)
        if not ok:
            raise VerificationFailure(f"{self.theorem_id} {self.params}: {claim}", self)

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "params": self.params,
            "steps": self.steps,
            "verdict": self.verdict,
            "summary": self.summary,
        }


def _disk_json(D) -> dict:
    return D.to_json() if isinstance(D, Disk) else {"point": str(D)}


def _require(n, lo: int, name: str) -> None:
    if not isinstance(n, int) or n < lo:
        raise DomainError(f"{name} is stated for n >= {lo}, got {n!r}")


# --- parameters escaping near t = 1 ------------------------------------------


def unbdd_disk(n: int) -> Disk:
    return Disk(1 + pow2(2 * n - 1), 2 * n)


def verify_thm_unbdd(n: int) -> VerifierTrace:
    """For ``t ∈ D(1 + 2^(2n-1), 2^-2n)`` certify ``|f_t^m(1) + 1/2| = 2^(2m-2n)``
    for ``m <= n + 1`` and escape of the critical orbit at iterate ``n + 1``."""
    _require(n, 1, "the escaping parameter pattern")
    T = unbdd_disk(n)
    tr = VerifierTrace("thm-unbdd", {"n": n, "parameter_disk": T.to_json()})
    S = ONE
    radii = []
    for m in range(1, n + 2):
        S = family_disk_image(T, S)
        d = S.center - NEG_HALF
        expect = 2 * n - 2 * m
        ok = d.val == expect and S.rexp > expect
        radii.append(f"2^{-expect}")
        tr.step("family_disk_image", {"iterate": m, "image": S.to_json()},
                f"|f_t^{m}(1) + 1/2| = 2^{-expect} for all t in the disk", ok)
    v = S.point_valuation()
    ok = escape_certified(T.point_valuation(), v)
    tr.step("escape_rule", {"iterate": n + 1, "valuation": v},
            f"|f_t^{n + 1}(1)| = 2^{-v} > 2, so the critical orbit escapes", ok)
    tr.verdict = True
    tr.summary = {"escape_iterate": n + 1, "radii": radii}
    return tr


# --- Q_2 parameters with bounded critical orbit ------------------------------

_Q2_RES = {"a": 5, "b": 7}
_BASE_CHAINS = {
    "a": [(Rational2(-961, 2), 8), (Rational2(111, 2), 6), (Rational2(19, 2), 4)],
    "b": [(Rational2(-1345, 2), 8), (Rational2(79, 2), 6), (Rational2(27, 2), 4)],
}
_OTHER = {"a": "b", "b": "a"}


def q2bdd_disk(family_name: str, n: int) -> Disk:
    return Disk(1 + _Q2_RES[family_name] * pow2(2 * n), 2 * n + 3)


def _q2_chain(family_name: str, n: int) -> list[tuple[Rational2, int]]:
    if n == 3:
        return _BASE_CHAINS[family_name]
    if family_name == "a":
        c1, c2, c3 = 1, 7, 5
    else:
        c1, c2, c3 = 3, 5, 7
    return [
        (NEG_HALF + c1 * pow2(2 * n - 1), 2 * n + 2),
        (NEG_HALF + c2 * pow2(2 * n - 3), 2 * n),
        (NEG_HALF + c3 * pow2(2 * n - 5), 2 * n - 2),
    ]


@lru_cache(maxsize=None)
def _q2bdd_one(family_name: str, n: int) -> VerifierTrace:
    T = q2bdd_disk(family_name, n)
    tr = VerifierTrace("thm-q2bdd", {"n": n, "family": family_name, "parameter_disk": T.to_json()})
    src = ONE
    for i, (c, r) in enumerate(_q2_chain(family_name, n), start=1):
        tgt = Disk(c, r)
        cert = family_residue_map(T, src, tgt)
        tr.step("family_residue_map", {"iterate": i, "source": _disk_json(src), "target": tgt.to_json()},
                f"f_t^{i}(1) ≡ {c} (mod 2^{r}) for all Q_2 t in the disk", cert.valid,
                certificate=cert.to_json())
        src = tgt
    if n == 3:
        trap = certify_trap_cycle(None, list(TWO_CYCLE_ENTRY) + [TWO_CYCLE_DISKS[1], TWO_CYCLE_DISKS[0],
                                                                 TWO_CYCLE_DISKS[1]],
                                  parameter=Disk(1, 5))
        ok = Disk(1, 5).contains_disk(T) and any(D == src for D in trap.all_disks)
        tr.step("trap", {"disk": src.to_json(), "trap": trap.id},
                f"{src} lies in the 2-cycle trap valid for t ≡ 1 (mod 32)", ok)
        tr.verdict = True
        tr.summary = {"landing_disk": src.to_json(), "iterate": 3}
        return tr
    # compare with the opposite family one level up
    other = _OTHER[family_name]
    T0 = q2bdd_disk(other, n - 1)
    t0 = T0.center
    prev = _q2bdd_one(other, n - 1)
    tr.step("recursion", {"family": other, "n": n - 1, "parameter_disk": T0.to_json()},
            f"Q_2 parameters of {T0} have bounded critical orbit", prev.verdict)
    dist = (T.center - t0).val
    ok = dist == 2 * n - 2 and T.rexp > dist
    tr.step("distance", {"t0": str(t0)}, f"|t - t0| = 2^-{2 * n - 2} on the whole disk", ok)
    f0 = family(t0)
    beta = f0(f0(ONE))
    ok = (src.center - beta).val >= 2 * n - 2
    tr.step("congruence", {"t0": str(t0), "f_t0^2(1)": str(beta)},
            f"f_t^3(1) ≡ f_t0^2(1) (mod 2^{2 * n - 2})", ok)
    wide = Disk(t0, 2 * n - 2)
    for m in range(3, n):
        e = 2 * n - 2 * m + 4
        G = Disk(beta, e)
        sv = disk_sup_val(shape_poly(), G)
        tr.step("disk_sup_norm", {"disk": G.to_json()}, "|-2z^3 + 3z^2| <= 2 on the disk", sv >= -1)
        img = family_disk_image(wide, G)
        beta = residue(f0(beta), e - 2)
        nxt = Disk(beta, e - 2)
        tr.step("family_disk_image", {"iterate": m, "disk": G.to_json(), "image": img.to_json()},
                f"f_t({G}) ⊆ {nxt} for all |t - t0| <= 2^-{2 * n - 2}", nxt.contains_disk(img))
    landing = Disk(beta, 4)
    hit = next((D for D in (TWO_CYCLE_DISKS[0], TWO_CYCLE_ENTRY[0]) if D == landing), None)
    tr.step("trap", {"disk": landing.to_json()},
            f"f_t^{n}(1) lands in {hit} like f_t0^{n - 1}(1)", hit is not None)
    tr.step("trap_scope", {"parameter_disk": T.to_json()},
            "the 2-cycle trap applies since t ≡ 1 (mod 32)", Disk(1, 5).contains_disk(T))
    tr.verdict = True
    tr.summary = {"landing_disk": landing.to_json(), "iterate": n, "t0": str(t0)}
    return tr


def verify_thm_q2bdd(n: int, family_name: str | None = None) -> VerifierTrace:
    """For Q_2 parameters in ``D(1 + 5*2^2n, 2^-(2n+3))`` (family ``a``) and
    ``D(1 + 7*2^2n, 2^-(2n+3))`` (family ``b``) certify that ``f_t^n(1)``
    enters the 2-cycle trap.  ``family_name=None`` checks both."""
    _require(n, 3, "the bounded Q_2 parameter pattern")
    names = [family_name] if family_name else ["a", "b"]
    for nm in names:
        if nm not in _Q2_RES:
            raise DomainError(f"unknown family {nm!r}; expected 'a' or 'b'")
    if len(names) == 1:
        return _q2bdd_one(names[0], n)
    parts = [_q2bdd_one(nm, n) for nm in names]
    tr = VerifierTrace("thm-q2bdd", {"n": n, "family": "both"})
    for p in parts:
        tr.steps.append({"operation": "family", "inputs": p.params, "claim": "verified",
                         "ok": p.verdict, "trace": p.to_json()})
    tr.verdict = all(p.verdict for p in parts)
    tr.summary = {p.params["family"]: p.summary for p in parts}
    return tr


# --- disks around the PCF parameters t_n -------------------------------------


def pcf_radius_exponent(n: int) -> int:
    return math.ceil(Rational2(8 * n, 3).to_fraction()) + 2


def _bdd_chain(T: Disk, k: int, n: int) -> list[Disk]:
    S = Disk(0, k)
    out = []
    for _ in range(n):
        S = family_disk_image(T, S)
        out.append(S)
    return out


def verify_thm_bdd(n: int, precision: int = DEFAULT_PRECISION) -> VerifierTrace:
    """Certify ``f_t^n(D(0, 2^-k)) ⊆ D(0, 2^-k)`` for every ``t`` with
    ``|t - t_n| <= 2^-(ceil(8n/3) + 2)``, ``k`` the integer nearest ``2n/3``.

    Holds over C_2, so every such ``f_t`` is post-critically bounded.  The
    summary also reports the smallest radius exponent the same check
    certifies.
    """
    _require(n, 3, "the PCF neighbourhood pattern")
    m = pcf_radius_exponent(n)
    p = pcf_parameter(n, max(precision, m + 8 * n))
    k = (2 * n + 1) // 3  # nearest integer to 2n/3 (never a tie)
    rep = residue(p.representative, m)
    T = Disk(rep, m)
    tr = VerifierTrace("thm-bdd", {"n": n, "k": k, "parameter_disk": T.to_json()})
    tr.step("pcf_parameter", {"n": n, "t_n": str(p.t)},
            f"f_t_n^{n}(0) ≡ 0 (mod 2^{p.verified_exponent})", True)
    chain = _bdd_chain(T, k, n)
    for j, S in enumerate(chain, start=1):
        tr.step("family_disk_image", {"iterate": j, "image": S.to_json()},
                f"f_t^{j}(D(0, 2^-{k})) ⊆ D({S.center}, 2^-{S.rexp})", True)
    home = Disk(0, k)
    ok = home.contains_disk(chain[-1])
    tr.step("containment", {"final": chain[-1].to_json(), "home": home.to_json()},
            f"f_t^{n}(D(0, 2^-{k})) ⊆ D(0, 2^-{k})", ok)
    best = m
    for mm in range(m - 1, -1, -1):
        Tm = Disk(rep, mm)
        try:
            last = _bdd_chain(Tm, k, n)[-1]
        except DomainError:
            break
        if not home.contains_disk(last):
            break
        best = mm
    tr.verdict = True
    tr.summary = {
        "k": k,
        "radius_exponent": m,
        "image_exponents": [S.rexp for S in chain],
        "final_exponent": chain[-1].rexp,
        "smallest_certified_exponent": best,
    }
    return tr


# --- the Julia set of f_1 near -1/2 ------------------------------------------


def julia_unbdd_disk(n: int) -> Disk:
    return Disk(NEG_HALF + pow2(2 * n), 2 * n + 1)


def julia_bdd_disk(family_name: str, n: int) -> Disk:
    return Disk(NEG_HALF + _Q2_RES[family_name] * pow2(2 * n + 1), 2 * n + 4)


def verify_prop_julia(which: str, n: int) -> VerifierTrace:
    """``unbounded``: ``f_1`` maps ``D(-1/2 + 2^2n, 2^-(2n+1))`` into the
    previous disk, down to a disk sent to absolute value 4.
    ``bounded``: the disks ``D(-1/2 + 5*2^(2n+1), 2^-(2n+4))`` and
    ``D(-1/2 + 7*2^(2n+1), 2^-(2n+4))`` map into each other's predecessor
    down to the 2-cycle trap (Q_2 points)."""
    _require(n, 0, "the Julia disk pattern")
    f = family(1)
    if which == "unbounded":
        tr = VerifierTrace("prop-julia-unbdd", {"n": n, "disk": julia_unbdd_disk(n).to_json()})
        for j in range(n, 0, -1):
            D, tgt = julia_unbdd_disk(j), julia_unbdd_disk(j - 1)
            img = disk_image(f.poly, D)
            tr.step("disk_image", {"disk": D.to_json(), "image": img.to_json()},
                    f"f_1({D}) ⊆ {tgt}", tgt.contains_disk(img))
        D0 = julia_unbdd_disk(0)
        img = disk_image(f.poly, D0)
        v = img.point_valuation()
        tr.step("disk_image", {"disk": D0.to_json(), "image": img.to_json()},
                "f_1 sends every point of the disk to absolute value 4", v == -2)
        tr.step("escape_rule", {"valuation": v}, "absolute value 4 > 2 escapes", escape_certified(0, v))
        tr.verdict = True
        tr.summary = {"escape_iterate": n + 1}
        return tr
    if which != "bounded":
        raise DomainError(f"unknown proposition variant {which!r}")
    tr = VerifierTrace("prop-julia-bdd", {"n": n})
    for j in range(n, 0, -1):
        for nm in ("a", "b"):
            D, tgt = julia_bdd_disk(nm, j), julia_bdd_disk(_OTHER[nm], j - 1)
            cert = residue_disk_map(f.poly, D, tgt)
            tr.step("residue_disk_map", {"source": D.to_json(), "target": tgt.to_json()},
                    f"f_1 maps the Q_2 points of {D} into {tgt}", cert.valid,
                    certificate=cert.to_json())
    trap = certify_trap_cycle(f, list(TWO_CYCLE_ENTRY) + [TWO_CYCLE_DISKS[1], TWO_CYCLE_DISKS[0],
                                                         TWO_CYCLE_DISKS[1]])
    tr.step("trap", {"trap": trap.to_json()},
            f"{julia_bdd_disk('a', 0)} and {julia_bdd_disk('b', 0)} lie in the 2-cycle trap", trap.valid)
    tr.verdict = True
    tr.summary = {"landing_iterate": n}
    return tr


VERIFIERS = {
    "thm-unbdd": lambda n, **kw: verify_thm_unbdd(n),
    "thm-q2bdd": lambda n, **kw: verify_thm_q2bdd(n, kw.get("family")),
    "thm-bdd": lambda n, **kw: verify_thm_bdd(n, kw.get("precision", DEFAULT_PRECISION)),
    "prop-julia-unbdd": lambda n, **kw: verify_prop_julia("unbounded", n),
    "prop-julia-bdd": lambda n, **kw: verify_prop_julia("bounded", n),
}


def verify(theorem_id: str, n: int, **kw) -> VerifierTrace:
    try:
        fn = VERIFIERS[theorem_id]
    except KeyError:
        raise DomainError(f"unknown theorem id {theorem_id!r}; choose from {sorted(VERIFIERS)}") from None
    return fn(n, **kw)


# --- classification trees ----------------------------------------------------

LABELS = ("Escape", "TrappedQ2", "PCF", "Boundary", "Unknown")
RESOLVED = frozenset({"Escape", "TrappedQ2", "PCF"})
DOT_SHAPES = {"Escape": "oval", "TrappedQ2": "box", "PCF": "box", "Boundary": "diamond",
              "Unknown": "plaintext"}


@dataclass
class TreeNode:
    disk: Disk
    label: str
    evidence_id: str | None
    children: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "center": str(self.disk.center),
            "rexp": self.disk.rexp,
            "label": self.label,
            "evidence_id": self.evidence_id,
            "children": [c.to_json() for c in self.children],
        }

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass
class ClassifiedTree:
    kind: str  # "mandel" or "julia"
    root: TreeNode
    depth: int
    evidence: dict = field(default_factory=dict)

    def nodes(self):
        return self.root.walk()

    def find(self, disk: Disk) -> TreeNode | None:
        """Deepest node whose disk contains ``disk``."""
        node = self.root
        if not node.disk.contains_disk(disk):
            return None
        while True:
            nxt = next((c for c in node.children if c.disk.contains_disk(disk)), None)
            if nxt is None:
                return node
            node = nxt

    def label_of(self, disk: Disk) -> str | None:
        """Label that the tree assigns to every point of ``disk``: the label
        of the node equal to it, or of a resolved ancestor."""
        node = self.find(disk)
        if node is None:
            return None
        if node.disk == disk or node.label in RESOLVED:
            return node.label
        return "Unknown"

    def to_json(self) -> dict:
        return {"kind": self.kind, "depth": self.depth, "tree": self.root.to_json(),
                "evidence": {k: self.evidence[k] for k in sorted(self.evidence)}}

    def to_dot(self) -> str:
        lines = [f"digraph {self.kind}_tree {{"]
        ids = {}
        for i, node in enumerate(self.nodes()):
            ids[id(node)] = f"n{i}"
            text = f"{node.disk.center} mod 2^{node.disk.rexp}\\n{node.label}"
            lines.append(f'  n{i} [shape={DOT_SHAPES[node.label]}, label="{text}"];')
        for node in self.nodes():
            for c in node.children:
                lines.append(f"  {ids[id(node)]} -> {ids[id(c)]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def check_consistency(self) -> list[str]:
        """Structural invariants; returns a list of violations (empty if fine)."""
        problems = []
        for node in self.nodes():
            if node.children:
                kids = node.disk.children()
                if [c.disk for c in node.children] != list(kids):
                    problems.append(f"{node.disk}: children are not its residue sub-disks")
            if node.label in RESOLVED and node.children:
                problems.append(f"{node.disk}: resolved node has children")
            if node.label in ("Escape", "TrappedQ2", "PCF") and node.evidence_id is None:
                problems.append(f"{node.disk}: {node.label} without evidence")
            if node.label == "Boundary" and not node.disk.contains(_DISTINGUISHED[self.kind]):
                if node.evidence_id is None:
                    problems.append(f"{node.disk}: Boundary away from the distinguished point")
        return problems


_DISTINGUISHED = {"mandel": ONE, "julia": NEG_HALF}
_ROOTS = {"mandel": Disk(1, 0), "julia": Disk(NEG_HALF, 0)}


def _match_mandel(D: Disk) -> tuple[str, str] | None:
    r = D.rexp
    if r >= 2 and r % 2 == 0:
        n = r // 2
        if D == unbdd_disk(n):
            return "Escape", f"thm-unbdd:{n}"
    if r >= 9 and r % 2 == 1:
        n = (r - 3) // 2
        for nm in ("a", "b"):
            if D == q2bdd_disk(nm, n):
                return "TrappedQ2", f"thm-q2bdd:{n}:{nm}"
    return None


def _match_julia(D: Disk) -> tuple[str, str] | None:
    r = D.rexp
    if r >= 1 and r % 2 == 1:
        n = (r - 1) // 2
        if D == julia_unbdd_disk(n):
            return "Escape", f"prop-julia-unbdd:{n}"
    if r >= 4 and r % 2 == 0:
        n = (r - 4) // 2
        for nm in ("a", "b"):
            if D == julia_bdd_disk(nm, n):
                return "TrappedQ2", f"prop-julia-bdd:{n}"
    return None


@lru_cache(maxsize=None)
def _pcf_center(n: int) -> Rational2:
    return pcf_parameter(n).representative


def _pcf_disks(rexp: int) -> list[tuple[int, Rational2]]:
    """PCF parameters ``t_n`` whose certified neighbourhood allows ``rexp``."""
    out = []
    n = 3
    while pcf_radius_exponent(n) <= rexp:
        out.append((n, _pcf_center(n)))
        n += 1
    return out


def _boundary_evidence(kind: str, D: Disk) -> str:
    return f"boundary:{kind}:{D.rexp}"


def classify_node(kind: str, center: str, rexp: int) -> tuple[str, str | None]:
    """Label of one tree node and the id of its evidence."""
    D = Disk(Rational2(center), rexp)
    if D.contains(_DISTINGUISHED[kind]):
        return "Boundary", _boundary_evidence(kind, D)
    hit = (_match_mandel if kind == "mandel" else _match_julia)(D)
    if hit:
        return hit
    if kind == "mandel":
        for n, t_n in _pcf_disks(D.rexp):
            if D.contains(t_n):
                return "PCF", f"thm-bdd:{n}"
        res = classify_parameter_disk(D)
    else:
        res = classify_disk(family(1), D, boundary_depth=0)
    if res.label == "AllEscape":
        return "Escape", f"{kind}-disk:{D.center}:{D.rexp}"
    if res.label == "TrappedQ2":
        return "TrappedQ2", f"{kind}-disk:{D.center}:{D.rexp}"
    return "Unknown", None


def replay_evidence(evidence_id: str):
    """Recompute the certificate behind ``evidence_id``; returns it (a trace or
    a ``DiskClass``), raising ``VerificationFailure`` if it no longer holds."""
    kind, _, rest = evidence_id.partition(":")
    if kind == "thm-unbdd":
        return verify_thm_unbdd(int(rest))
    if kind == "thm-q2bdd":
        n, nm = rest.split(":")
        return verify_thm_q2bdd(int(n), nm)
    if kind == "thm-bdd":
        return verify_thm_bdd(int(rest))
    if kind == "prop-julia-unbdd":
        return verify_prop_julia("unbounded", int(rest))
    if kind == "prop-julia-bdd":
        return verify_prop_julia("bounded", int(rest))
    if kind in ("mandel-disk", "julia-disk"):
        c, r = rest.rsplit(":", 1)
        D = Disk(Rational2(c), int(r))
        res = classify_parameter_disk(D) if kind == "mandel-disk" else classify_disk(
            family(1), D, boundary_depth=0)
        if res.label not in ("AllEscape", "TrappedQ2"):
            raise VerificationFailure(f"{evidence_id} no longer certifies", res)
        return res
    if kind == "boundary":
        which, r = rest.split(":")
        return boundary_certificate(which, int(r))
    raise DomainError(f"unknown evidence id {evidence_id!r}")


def boundary_certificate(kind: str, rexp: int) -> VerifierTrace:
    """Why every disk ``D(p, 2^-rexp)`` around the distinguished point ``p``
    contains both bounded and escaping behaviour."""
    tr = VerifierTrace("boundary", {"kind": kind, "rexp": rexp})
    if kind == "mandel":
        orbit = classify_point_orbit(family(1), ONE)
        tr.step("classify_point_orbit", {"t": "1", "z": "1"},
                "the critical orbit of f_1 is finite", orbit.tag == "Preperiodic")
        n = max(1, (rexp + 2) // 2)
        sub = verify_thm_unbdd(n)
        tr.step("verify", {"theorem": "thm-unbdd", "n": n},
                f"{unbdd_disk(n)} ⊆ D(1, 2^-{rexp}) escapes",
                sub.verdict and Disk(1, rexp).contains_disk(unbdd_disk(n)))
    else:
        orbit = classify_point_orbit(family(1), NEG_HALF)
        tr.step("classify_point_orbit", {"t": "1", "z": "-1/2"},
                "-1/2 is a fixed point of f_1", orbit.tag == "Preperiodic")
        n = max(0, (rexp + 1) // 2)
        sub = verify_prop_julia("unbounded", n)
        tr.step("verify", {"theorem": "prop-julia-unbdd", "n": n},
                f"{julia_unbdd_disk(n)} ⊆ D(-1/2, 2^-{rexp}) escapes",
                sub.verdict and Disk(NEG_HALF, rexp).contains_disk(julia_unbdd_disk(n)))
    tr.verdict = True
    return tr


def _classify_batch(args):
    return classify_node(*args)


def build_tree(kind: str, depth: int, jobs: int = 1, root: Disk | None = None) -> ClassifiedTree:
    """Classify residue disks level by level from the root down to radius
    exponent ``depth``; resolved nodes are leaves, Boundary and Unknown
    nodes split.  ``root`` defaults to the whole disk around the
    distinguished point; any sub-disk gives the same labels as the full
    tree below it."""
    if kind not in _ROOTS:
        raise DomainError(f"unknown tree kind {kind!r}")
    if not isinstance(depth, int) or depth < 1:
        raise DomainError("tree depth must be >= 1")
    root_disk = (root or _ROOTS[kind]).canonical()
    if kind == "mandel":
        _pcf_disks(depth)  # warm the cache before any fork
    label, ev = classify_node(kind, str(root_disk.center), root_disk.rexp)
    root = TreeNode(root_disk, label, ev)
    evidence = {}
    if ev:
        evidence[ev] = _evidence_summary(ev)
    frontier = [root]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs and jobs > 1 else None
    try:
        while frontier:
            todo = []
            for node in frontier:
                if node.label in RESOLVED or node.disk.rexp >= depth:
                    continue
                for child in node.disk.children():
                    todo.append((node, child.canonical()))
            args = [(kind, str(d.center), d.rexp) for _, d in todo]
            results = list(pool.map(_classify_batch, args, chunksize=16)) if pool else [
                classify_node(*a) for a in args]
            frontier = []
            for (parent, d), (label, ev) in zip(todo, results):
                child = TreeNode(d, label, ev)
                parent.children.append(child)
                if ev and ev not in evidence:
                    evidence[ev] = _evidence_summary(ev)
                frontier.append(child)
    finally:
        if pool:
            pool.shutdown()
    return ClassifiedTree(kind, root, depth, evidence)


def _evidence_summary(evidence_id: str) -> dict:
    kind = evidence_id.split(":", 1)[0]
    source = {
        "thm-unbdd": "parameter disk image chain to escape",
        "thm-q2bdd": "residue maps of the critical orbit into the 2-cycle trap",
        "thm-bdd": "disk around 0 mapped into itself by f_t^n",
        "prop-julia-unbdd": "disk image chain to absolute value 4",
        "prop-julia-bdd": "residue maps into the 2-cycle trap",
        "mandel-disk": "generic parametric disk iteration",
        "julia-disk": "generic disk iteration",
        "boundary": "bounded distinguished point plus an escaping sub-disk",
    }[kind]
    return {"id": evidence_id, "method": source}


def mandel_tree(depth: int, jobs: int = 1) -> ClassifiedTree:
    """Parameter disks around ``t = 1``."""
    return build_tree("mandel", depth, jobs)


def julia_tree(depth: int, jobs: int = 1) -> ClassifiedTree:
    """Disks of ``z`` around ``-1/2`` for ``f_1``."""
    return build_tree("julia", depth, jobs)


def subtree_pattern(tree: ClassifiedTree, disk: Disk, levels: int) -> list[list[str]]:
    """Labels below ``disk`` by relative position, ``levels`` levels deep,
    with Boundary and Unknown merged (both mean "not resolved here")."""
    rows = []
    current = [disk]
    for _ in range(levels + 1):
        row = []
        for D in current:
            lab = tree.label_of(D) or "Unknown"
            row.append("Unresolved" if lab in ("Boundary", "Unknown") else lab)
        rows.append(row)
        current = [c for D in current for c in D.children()]
    return rows
