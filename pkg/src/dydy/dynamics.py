"""Orbits of the family f_t: classification, traps, periodic cycles.

Everything that claims boundedness or escape does so with a certificate:

* escape -- an iterate ``z`` with ``v(z) < -1`` and ``v(t) + 2 v(z) < 0``;
  from there ``|f_t(z)| = |t| |z|^3 > |z|`` forever.
* Q_2 traps -- a cycle of residue disks each mapped into the next by a
  ``residue_disk_map`` certificate (possibly uniformly in ``t`` over a
  parameter disk).
* preperiodicity -- exact rational repetition.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .dyadic import (
    DEFAULT_PRECISION,
    INF,
    ONE,
    Padic2,
    PrecisionError,
    Rational2,
    absval,
    pow2,
    rational,
    trunc,
    val2,
)
from .errors import CertificationError, DomainError, NoConvergence, StructuralError, WrongPeriod
from .geometry import (
    CongruenceCheck,
    DiskMapCertificate,
    Disk,
    NewtonPolygon,
    check_differences,
    disk_image,
    disk_sup_val,
    mahler_differences,
    newton_polygon,
)
from .poly import FamilyMember, Poly, build_gn, compose, family, shape_poly

Param = Union[Rational2, Disk]

DEFAULT_MAX_ITERS = 10_000
HEIGHT_CAP = 4096
LOG_LIMIT = 64

_THREE_HALVES = Rational2(3, 2)


# --- escape rule -------------------------------------------------------------


def _max_param_val(param) -> int | float | None:
    """Largest ``v(t)`` over the parameter domain, ``None`` if unbounded."""
    if isinstance(param, Disk):
        return param.point_valuation()
    if isinstance(param, Padic2):
        try:
            return val2(param)
        except PrecisionError:
            return None
    return rational(param).val


def escape_certified(t_val, z_val) -> bool:
    """``True`` when an iterate of valuation ``z_val`` provably escapes for a
    parameter of valuation at most ``t_val``."""
    if t_val is None or z_val is None or t_val == INF:
        return False
    return z_val < -1 and t_val + 2 * z_val < 0


# --- parametric images and residue maps --------------------------------------


def _as_member(param) -> FamilyMember:
    return param if isinstance(param, FamilyMember) else family(param)


def family_disk_image(param, src):
    """Image of ``src`` (a Disk or an exact point) under ``f_t`` for every
    ``t`` in ``param`` (an exact parameter or a parameter Disk), over C_2.

    Returns a Disk with canonical centre, or an exact ``Rational2`` when the
    image is a point.
    """
    t_exact = param.center if isinstance(param, Disk) else rational(param)
    f = family(t_exact)
    if isinstance(src, Disk):
        base = disk_image(f.poly, src)
        center, e = base.center, base.rexp
        shape_val = disk_sup_val(shape_poly(), src)
    else:
        z = rational(src)
        center, e = f(z), INF
        shape_val = shape_poly()(z).val
    if isinstance(param, Disk):
        # f_t - f_c = -(3/2)(t - c)(-2z^3 + 3z^2)
        pert = -1 + param.rexp + shape_val
        e = min(e, pert)
    if e == INF:
        return center
    return Disk(center, int(e)).canonical()


def family_residue_map(param, src, tgt: Disk) -> DiskMapCertificate:
    """Certify ``f_t(z) ∈ tgt`` for all Q_2 points ``z ∈ src`` and all Q_2
    parameters ``t ∈ param`` at once, through the two-variable Mahler
    expansion of ``(k, j) -> f_{c + 2^s j}(a + 2^r k) - b``."""
    if isinstance(param, Disk):
        tc, ts, dj = param.center, pow2(param.rexp), 1
    else:
        tc, ts, dj = rational(param), Rational2(0), 0
    if isinstance(src, Disk):
        zc, zs, dk = src.center, pow2(src.rexp), 3
    else:
        zc, zs, dk = rational(src), Rational2(0), 0
    b = tgt.center

    def h(k, j):
        t = tc + ts * j
        z = zc + zs * k
        return t * (z * z) * (3 * z - Rational2(9, 2)) + 1 - b

    diffs = mahler_differences(h, (dk, dj))
    return DiskMapCertificate(src, tgt, check_differences(diffs, tgt.rexp), parameter=param)


# --- traps -------------------------------------------------------------------


@dataclass
class TrapCertificate:
    """Residue disks whose Q_2 points have bounded forward orbits.

    ``disks`` is the cycle, ``entry`` an optional path leading into it; every
    consecutive pair (and the closing edge of the cycle) carries a valid
    residue-map certificate.  ``parameter`` is the exact ``t`` or the
    parameter disk the proof is uniform over.
    """

    parameter: object
    disks: list[Disk]
    entry: list[Disk] = field(default_factory=list)
    proofs: list[DiskMapCertificate] = field(default_factory=list)
    field_scope: str = "Q2"
    name: str | None = None

    @property
    def id(self) -> str:
        if self.name:
            return self.name
        blob = json.dumps(
            [str(self.parameter), [d.to_json() for d in self.entry], [d.to_json() for d in self.disks]]
        )
        return "trap-" + hashlib.sha1(blob.encode()).hexdigest()[:10]

    @property
    def valid(self) -> bool:
        return bool(self.proofs) and all(p.valid for p in self.proofs)

    @property
    def all_disks(self) -> list[Disk]:
        return list(self.entry) + list(self.disks)

    def applies_to(self, param) -> bool:
        """Is the certificate's parameter scope a superset of ``param``?"""
        scope = self.parameter
        if isinstance(scope, Disk):
            if isinstance(param, Disk):
                return scope.contains_disk(param)
            if isinstance(param, Padic2):
                try:
                    return scope.contains(param)
                except PrecisionError:
                    return False
            return scope.contains(rational(param))
        if isinstance(param, Disk) or isinstance(param, Padic2):
            return False
        return rational(param) == scope

    def locate(self, z) -> Disk | None:
        for d in self.all_disks:
            if d.contains(z):
                return d
        return None

    def to_json(self) -> dict:
        p = self.parameter
        return {
            "id": self.id,
            "parameter": p.to_json() if isinstance(p, Disk) else str(p),
            "field_scope": self.field_scope,
            "entry": [d.to_json() for d in self.entry],
            "disks": [d.to_json() for d in self.disks],
            "proofs": [c.to_json() for c in self.proofs],
            "valid": self.valid,
        }


def certify_trap_cycle(f, disks: Sequence[Disk], parameter=None) -> TrapCertificate:
    """Certify a cycle of residue disks for ``f`` (Q_2 points only).

    If the last disk repeats an earlier one the sequence is read as an entry
    path followed by a cycle, e.g. ``[27/2, 2, 3, 19/2, 3]``; otherwise the
    cycle closes from the last disk back to the first.  ``parameter`` (a
    parameter Disk) makes the proof uniform over all Q_2 ``t`` in it.

    Raises ``CertificationError`` carrying the first failing edge.
    """
    disks = list(disks)
    if not disks:
        raise DomainError("empty trap cycle")
    param = parameter if parameter is not None else _as_member(f).t
    if isinstance(param, Padic2):
        raise DomainError("trap certification needs an exact parameter or a parameter disk")
    last = disks[-1]
    loop_at = next((i for i, d in enumerate(disks[:-1]) if d == last), None)
    if loop_at is not None:
        entry, cycle = disks[:loop_at], disks[loop_at:-1]
        edges = list(zip(disks, disks[1:]))
    else:
        entry, cycle = [], disks
        edges = list(zip(disks, disks[1:])) + [(disks[-1], disks[0])]
    proofs = []
    for src, tgt in edges:
        cert = family_residue_map(param, src, tgt)
        proofs.append(cert)
        if not cert.valid:
            raise CertificationError(
                f"{src} does not map into {tgt} (witness index {cert.witness})", cert
            )
    return TrapCertificate(param, cycle, entry, proofs)


class TrapLibrary:
    """Append-only store of trap certificates.

    Readers take a snapshot (an immutable tuple); publishing swaps the tuple
    under a lock, so a classification never sees a half-added entry.
    """

    def __init__(self, traps: Iterable[TrapCertificate] = ()):
        self._lock = threading.Lock()
        self._traps: tuple[TrapCertificate, ...] = tuple(traps)

    def snapshot(self) -> tuple[TrapCertificate, ...]:
        return self._traps

    def publish(self, trap: TrapCertificate) -> None:
        if not trap.valid:
            raise CertificationError("refusing to publish an invalid trap")
        with self._lock:
            if all(t.id != trap.id for t in self._traps):
                self._traps = self._traps + (trap,)

    def for_parameter(self, param) -> list[TrapCertificate]:
        return [t for t in self.snapshot() if t.applies_to(param)]

    def __len__(self) -> int:
        return len(self._traps)


# Lemma-style 2-cycle trap, uniform over Q_2 parameters t ≡ 1 (mod 32).
TWO_CYCLE_DISKS = (Disk(Rational2(19, 2), 4), Disk(3, 2))
TWO_CYCLE_ENTRY = (Disk(Rational2(27, 2), 4), Disk(2, 2))
TWO_CYCLE_PARAMETERS = Disk(1, 5)


def two_cycle_trap(parameter=TWO_CYCLE_PARAMETERS) -> TrapCertificate:
    chain = list(TWO_CYCLE_ENTRY) + [TWO_CYCLE_DISKS[1], TWO_CYCLE_DISKS[0], TWO_CYCLE_DISKS[1]]
    cert = certify_trap_cycle(None if isinstance(parameter, Disk) else family(parameter), chain,
                              parameter=parameter if isinstance(parameter, Disk) else None)
    cert.name = "two-cycle" if parameter == TWO_CYCLE_PARAMETERS else None
    return cert


_default_library: TrapLibrary | None = None
_default_lock = threading.Lock()


def default_library() -> TrapLibrary:
    global _default_library
    with _default_lock:
        if _default_library is None:
            _default_library = TrapLibrary([two_cycle_trap()])
    return _default_library


# --- point orbits ------------------------------------------------------------


@dataclass
class OrbitClass:
    """Result of ``classify_point_orbit``; ``tag`` is one of Escapes,
    Preperiodic, TrappedQ2, Unknown."""

    tag: str
    at_iterate: int | None = None
    preperiod: int | None = None
    period: int | None = None
    trap_id: str | None = None
    entry_iterate: int | None = None
    max_iterates_used: int | None = None
    diagnostic: str | None = None
    log: list = field(default_factory=list)

    @property
    def bounded(self) -> bool | None:
        if self.tag in ("Preperiodic", "TrappedQ2"):
            return True
        if self.tag == "Escapes":
            return False
        return None

    def to_json(self) -> dict:
        out = {"tag": self.tag}
        for k in ("at_iterate", "preperiod", "period", "trap_id", "entry_iterate",
                  "max_iterates_used", "diagnostic"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        out["log"] = [str(x) for x in self.log[:LOG_LIMIT]]
        return out


def classify_point_orbit(
    f,
    z,
    max_iters: int = DEFAULT_MAX_ITERS,
    precision: int = DEFAULT_PRECISION,
    traps: Sequence[TrapCertificate] | None = None,
    height_cap: int = HEIGHT_CAP,
) -> OrbitClass:
    """Iterate ``z`` under ``f`` until a certificate settles its fate.

    Exact arithmetic is used until the iterate's height exceeds
    ``height_cap`` bits, then ``Padic2`` at ``precision`` bits (which can no
    longer prove preperiodicity but still proves escape and trapping).
    """
    f = _as_member(f)
    if not f.exact:
        raise DomainError("classify_point_orbit needs an exact parameter")
    t_val = f.t.val
    if traps is None:
        traps = default_library().for_parameter(f.t)
    else:
        traps = [tr for tr in traps if tr.applies_to(f.t)]
    x = rational(z)
    exact = True
    seen = {x: 0}
    log = []
    for i in range(max_iters + 1):
        if len(log) < LOG_LIMIT:
            log.append(x)
        if isinstance(x, Padic2) and x.is_zero_to_prec and x.val != INF:
            return OrbitClass("Unknown", max_iterates_used=i, log=log,
                              diagnostic=f"precision exhausted at iterate {i}")
        xv = val2(x) if not (isinstance(x, Padic2) and x.is_zero_to_prec) else INF
        if escape_certified(t_val, xv):
            return OrbitClass("Escapes", at_iterate=i, log=log)
        for trap in traps:
            try:
                hit = trap.locate(x)
            except PrecisionError:
                hit = None
            if hit is not None:
                return OrbitClass("TrappedQ2", trap_id=trap.id, entry_iterate=i, log=log)
        if i == max_iters:
            break
        x = f(x)
        if exact:
            if x in seen:
                j = seen[x]
                return OrbitClass("Preperiodic", preperiod=j, period=i + 1 - j, log=log + [x])
            seen[x] = i + 1
            if x.height() > height_cap:
                x = trunc(x, precision)
                exact = False
                seen = None
    return OrbitClass("Unknown", max_iterates_used=max_iters, log=log,
                      diagnostic="iteration budget exhausted")


# --- disk orbits -------------------------------------------------------------


@dataclass
class DiskClass:
    """Result of classifying a disk of points (or of parameters)."""

    label: str  # AllEscape | TrappedQ2 | Boundary | Unknown
    disk: Disk
    steps: int = 0
    chain: list = field(default_factory=list)
    certificate: object = None
    trap_id: str | None = None
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"label": self.label, "disk": self.disk.to_json(), "steps": self.steps,
               "chain": [d.to_json() if isinstance(d, Disk) else str(d) for d in self.chain[:LOG_LIMIT]]}
        if self.trap_id:
            out["trap_id"] = self.trap_id
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.evidence:
            out["evidence"] = self.evidence
        return out


def _disk_orbit(param, start, label_disk: Disk, traps, max_steps: int) -> DiskClass:
    """Push ``start`` forward under ``f_param`` by certified disk images,
    watching for escape or entry into a trap."""
    t_val = _max_param_val(param)
    f_c = family(param.center if isinstance(param, Disk) else param)
    S = start
    chain = []
    for step in range(max_steps + 1):
        if not isinstance(S, Disk):
            # an exact point: image disks of points are points
            S_disk = None
            pv = rational(S).val
        else:
            S = S.canonical()
            S_disk = S
            pv = S.point_valuation()
        chain.append(S)
        if escape_certified(t_val, pv):
            return DiskClass("AllEscape", label_disk, step, chain)
        for trap in traps:
            for T in trap.all_disks:
                if (S_disk is not None and T.contains_disk(S_disk)) or (
                    S_disk is None and T.contains(S)
                ):
                    return DiskClass("TrappedQ2", label_disk, step, chain, trap_id=trap.id)
            # the centre is a Q_2 point of S, so its image must land in T
            c_img = f_c(S_disk.center if S_disk is not None else S)
            for T in trap.all_disks:
                if not T.contains(c_img):
                    continue
                cert = family_residue_map(param, S, T)
                if cert.valid:
                    return DiskClass("TrappedQ2", label_disk, step + 1, chain + [T],
                                     certificate=cert, trap_id=trap.id)
        if step == max_steps:
            break
        if S_disk is not None and S_disk.rexp < -1 and pv is None:
            break  # contains both small and large points; no further progress
        S = family_disk_image(param, S)
    return DiskClass("Unknown", label_disk, len(chain), chain)


def classify_disk(
    f,
    D: Disk,
    max_steps: int = 64,
    traps: Sequence[TrapCertificate] | None = None,
    boundary_depth: int = 6,
    point_iters: int = 256,
) -> DiskClass:
    """Classify all points of ``D`` under ``f``.

    ``AllEscape`` holds for every C_2 point; ``TrappedQ2`` for every Q_2
    point.  ``Boundary`` means ``D`` contains a point with certified bounded
    orbit *and* a sub-disk certified to escape.
    """
    f = _as_member(f)
    traps = default_library().for_parameter(f.t) if traps is None else [
        tr for tr in traps if tr.applies_to(f.t)]
    res = _disk_orbit(f.t, D, D, traps, max_steps)
    if res.label != "Unknown" or boundary_depth <= 0:
        return res
    bounded, point = None, None
    for cand in (D.center, D.canonical().center):
        orbit = classify_point_orbit(f, cand, max_iters=point_iters, traps=traps)
        if orbit.bounded is True:
            bounded, point = orbit, cand
            break
    if bounded is None:
        return res
    frontier = [D]
    for _ in range(boundary_depth):
        nxt = []
        for S in frontier:
            for child in S.children():
                sub = _disk_orbit(f.t, child, child, [], max_steps)
                if sub.label == "AllEscape":
                    ev = {"bounded_point": str(point),
                          "bounded_orbit": bounded.to_json(),
                          "escaping_subdisk": child.to_json(),
                          "escape_steps": sub.steps}
                    return DiskClass("Boundary", D, res.steps, res.chain, evidence=ev)
                nxt.append(child)
        frontier = nxt
    return res


def classify_parameter_disk(
    T: Disk,
    max_steps: int = 64,
    traps: Sequence[TrapCertificate] | None = None,
) -> DiskClass:
    """Classify the critical orbit of ``f_t`` uniformly for ``t ∈ T``.

    Fast paths: ``|t| <= 1/2`` on all of ``T`` is bounded for every C_2
    parameter; ``|t| > 1`` escapes.  Otherwise the critical value disk
    ``f_T(1)`` is pushed forward with parametric disk images.
    """
    pv = T.point_valuation()
    if T.rexp >= 1 and T.center.val >= 1:
        return DiskClass("TrappedQ2", T, 0, evidence={"fast_path": "|t| <= 1/2"})
    if pv is not None and pv < 0:
        return DiskClass("AllEscape", T, 1, evidence={"fast_path": "|t| > 1"})
    traps = default_library().for_parameter(T) if traps is None else [
        tr for tr in traps if tr.applies_to(T)]
    res = _disk_orbit(T, family_disk_image(T, ONE), T, traps, max_steps)
    res.steps += 1  # the first image f_t(1) is iterate 1 of the critical point 1
    return res


# --- cycles, multipliers -----------------------------------------------------


@dataclass
class CycleRecord:
    period: int
    points: list
    multiplier: object
    multiplier_abs: Fraction
    nature: str
    exact: bool = False

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "points": [str(p) for p in self.points],
            "representatives": [str(p.to_rational() if isinstance(p, Padic2) else p) for p in self.points],
            "multiplier": str(self.multiplier),
            "multiplier_abs": str(self.multiplier_abs),
            "nature": self.nature,
            "exact": self.exact,
        }


def _nature(a: Fraction) -> str:
    if a < 1:
        return "attracting"
    if a > 1:
        return "repelling"
    return "neutral"


def _is_zero_at_precision(d) -> bool:
    if isinstance(d, Padic2):
        return d.is_zero_to_prec
    return rational(d).numerator == 0


def multiplier(f, cycle_points: Sequence) -> tuple[object, Fraction, str]:
    """``λ = Π f'(p_i)`` around a verified cycle, with ``|λ|`` and its nature."""
    f = _as_member(f)
    pts = list(cycle_points)
    if not pts:
        raise DomainError("empty cycle")
    for i, p in enumerate(pts):
        if not _is_zero_at_precision(f(p) - pts[(i + 1) % len(pts)]):
            raise DomainError(f"point {i} does not map to point {(i + 1) % len(pts)}")
    lam = Rational2(1)
    lam_abs = Fraction(1)
    for p in pts:
        d = f.derivative(p)
        lam = d * lam
        if _is_zero_at_precision(d):
            if isinstance(d, Padic2) and d.val != INF:
                raise PrecisionError("derivative indistinguishable from zero at working precision")
            lam_abs = Fraction(0)
        else:
            lam_abs *= absval(d)
    return lam, lam_abs, _nature(lam_abs)


def _hensel_root(P: Poly, a: Rational2, precision: int, seed_rexp: int | None = None) -> tuple[Padic2, bool]:
    """Lift a simple root of ``P`` near ``a`` to relative precision ``precision``.

    Returns ``(root, exact)``; ``exact`` when ``a`` is itself a root.
    """
    if P(a).numerator == 0:
        return trunc(a, precision), True
    dP = P.derivative()
    p0, d0 = P(a), dP(a)
    if d0.numerator == 0 or p0.val <= 2 * d0.val:
        raise NoConvergence(
            f"Hensel criterion fails at {a}: v(P) = {p0.val}, v(P') = {d0.val}"
        )
    delta = d0.val
    if seed_rexp is not None and p0.val - delta < seed_rexp:
        raise NoConvergence(f"root near {a} is not isolated inside the seed residue class")
    root_val = a.val if p0.val - delta > a.val else None
    guard = 2 * abs(delta) + (abs(root_val) if root_val is not None else 0) + 16
    work = precision + guard
    for _ in range(4):
        z = trunc(a, work)
        last = None
        for _it in range(2 * work.bit_length() + 8):
            Pz = P(z)
            if Pz.is_zero_to_prec:
                break
            if last is not None and Pz.val <= last:
                raise NoConvergence("Newton iteration is not converging quadratically")
            last = Pz.val
            step = Pz / dP(z)
            z = trunc((z - step).to_rational(), work)
        else:
            raise NoConvergence("Newton iteration did not reach working precision")
        abs_known = Pz.val - delta
        root = trunc(z.to_rational(), work).with_abs_prec(abs_known)
        if not root.is_zero_to_prec and root.prec >= precision:
            return root.reduce(precision), False
        work *= 2
    raise NoConvergence("could not reach requested precision")


def _proper_divisors(n: int) -> list[int]:
    return [d for d in range(n - 1, 0, -1) if n % d == 0]


def _iterate_poly(f: Poly, n: int) -> Poly:
    g = Poly.x()
    for _ in range(n):
        g = compose(f, g)
    return g


def period_polynomial(f, period: int) -> Poly:
    """``f^period(z) - z`` with lower-period factors divided out where the
    division is exact."""
    f = _as_member(f)
    P = _iterate_poly(f.poly, period) - Poly.x()
    for d in _proper_divisors(period):
        Q = _iterate_poly(f.poly, d) - Poly.x()
        q, r = divmod(P, Q)
        if r.is_zero():
            P = q
    return P


def find_cycle_hensel(f, period: int, seed, precision: int = DEFAULT_PRECISION) -> CycleRecord:
    """Hensel-lift a periodic point of exact period ``period`` from ``seed``.

    ``seed`` is an exact value or a residue class given as a ``Disk``
    (``Disk(7, 4)`` is 7 mod 16).  The root is refined in ``Padic2`` to
    ``precision`` bits, the exact period is checked at that precision and the
    multiplier is computed around the cycle.
    """
    f = _as_member(f)
    if period < 1:
        raise DomainError("period must be positive")
    if isinstance(seed, Disk):
        a, seed_rexp = seed.center, seed.rexp
    else:
        a, seed_rexp = rational(seed), None
    P = period_polynomial(f, period)
    alpha, exact = _hensel_root(P, a, precision, seed_rexp)
    if exact:
        pts = [a]
        for _ in range(period - 1):
            pts.append(f(pts[-1]))
        for m in range(1, period):
            if pts[m] == a:
                raise WrongPeriod(f"{a} has exact period {m}")
    else:
        pts = [alpha]
        for _ in range(period - 1):
            pts.append(f(pts[-1]))
        for m in range(1, period):
            if _is_zero_at_precision(pts[m] - alpha):
                raise WrongPeriod(f"lifted point has period dividing {m} at working precision")
    lam, lam_abs, nature = multiplier(f, pts)
    return CycleRecord(period, pts, lam, lam_abs, nature, exact)


# --- PCF parameters ----------------------------------------------------------


@dataclass
class PCFParameter:
    """A parameter ``t_n = 1 + s_n`` whose critical point 0 has exact period ``n``."""

    n: int
    t: object  # Padic2 (or exact Rational2 for n = 2)
    s_valuation: int
    polygon: NewtonPolygon
    critical_orbit: list
    verified_exponent: int

    def __iter__(self):
        return iter((self.t, self.s_valuation))

    @property
    def cycle_multiplier(self):
        """Multiplier of the critical cycle; 0 because the cycle contains 0."""
        f = family(self.t)
        lam = Rational2(1)
        for z in self.critical_orbit[: self.n]:
            lam = f.derivative(z) * lam
        return lam

    @property
    def representative(self) -> Rational2:
        return self.t.to_rational() if isinstance(self.t, Padic2) else self.t

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": str(self.t),
            "t_representative": str(self.representative),
            "s_valuation": self.s_valuation,
            "newton_polygon": self.polygon.to_json(),
            "critical_orbit": [str(c) for c in self.critical_orbit],
            "verified_exponent": self.verified_exponent,
        }


def pcf_parameter(n: int, precision: int = DEFAULT_PRECISION) -> PCFParameter:
    """Find ``t_n`` near 1 with ``f_{t_n}^n(0) = 0`` from the unique root of
    ``g_n`` on the leftmost Newton polygon segment."""
    if not isinstance(n, int) or n < 2:
        raise DomainError("pcf_parameter needs n >= 2")
    g = build_gn(n)
    poly = newton_polygon(g)
    slope, length = poly.segments[0]
    if n == 2:
        s = -g[0] / g[1]
        t = 1 + s
        orbit = _critical_orbit(t, n)
        return PCFParameter(n, t, s.val, poly, orbit, INF)
    if length != 1 or slope != 4 - 2 * n:
        raise StructuralError(
            f"g_{n}: expected leftmost segment of slope {4 - 2 * n} and length 1, got {poly.segments[0]}",
            poly,
        )
    e = int(-slope)
    h = g.scale_var(pow2(e))
    m = min(c.val for c in h.coeffs if c.numerator)
    h = h * pow2(-m)
    w, _ = _hensel_root(h, Rational2(1), precision + 8)
    s = w * pow2(e)
    t = (s + 1).reduce(precision)
    orbit = _critical_orbit(t, n)
    bound = precision - 4 * n
    last = orbit[-1]
    if last.val < bound:
        raise NoConvergence(f"f^{n}(0) is not 0 mod 2^{bound}")
    for m_, c in enumerate(orbit[1:-1], start=1):
        if c.val >= bound:
            raise WrongPeriod(f"critical orbit returns to 0 after {m_} < {n} steps")
    return PCFParameter(n, t, e, poly, orbit, int(min(last.val, precision)))


def _critical_orbit(t, n: int) -> list:
    f = family(t)
    z = Rational2(0) if isinstance(t, Rational2) else Padic2.zero()
    out = [z]
    for _ in range(n):
        z = f(z)
        out.append(z)
    return out


def classify_parameter(t, max_iters: int = DEFAULT_MAX_ITERS,
                       precision: int = DEFAULT_PRECISION) -> dict:
    """Is the critical orbit of ``f_t`` bounded?  Returns a JSON-able verdict
    with label InMandelbrot / NotInMandelbrot / Unknown."""
    t = rational(t)
    if t.val >= 1:
        return {"t": str(t), "label": "InMandelbrot", "reason": "fast path |t| <= 1/2"}
    if t.val < 0:
        return {"t": str(t), "label": "NotInMandelbrot", "reason": "fast path |t| > 1",
                "critical_value_abs": str(absval(1 - _THREE_HALVES * t))}
    orbit = classify_point_orbit(family(t), ONE, max_iters=max_iters, precision=precision)
    label = {True: "InMandelbrot", False: "NotInMandelbrot", None: "Unknown"}[orbit.bounded]
    return {"t": str(t), "label": label, "reason": "critical orbit of 1", "orbit": orbit.to_json()}
