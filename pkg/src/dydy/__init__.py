"""Exact 2-adic dynamics of the cubic family f_t(z) = -(3/2) t (-2z^3 + 3z^2) + 1."""

__version__ = "0.1.0"

from .dyadic import (
    DEFAULT_PRECISION,
    INF,
    Padic2,
    Rational2,
    absval,
    congruent,
    pow2,
    rational,
    residue,
    trunc,
    val2,
)
from .errors import (
    CertificationError,
    DomainError,
    NoConvergence,
    PrecisionError,
    StructuralError,
    VerificationFailure,
    WrongPeriod,
)
from .poly import FamilyMember, Poly, build_gn, compose, family, gauss_valuations, taylor_shift
from .geometry import (
    CongruenceCheck,
    Disk,
    DiskMapCertificate,
    NewtonPolygon,
    disk_image,
    disk_sup_norm,
    newton_polygon,
    residue_disk_map,
    z2_congruence_check,
)
from .dynamics import (
    CycleRecord,
    DiskClass,
    OrbitClass,
    PCFParameter,
    TrapCertificate,
    TrapLibrary,
    certify_trap_cycle,
    classify_disk,
    classify_parameter,
    classify_parameter_disk,
    classify_point_orbit,
    default_library,
    family_disk_image,
    family_residue_map,
    find_cycle_hensel,
    multiplier,
    pcf_parameter,
)
from .atlas import (
    ClassifiedTree,
    VerifierTrace,
    build_tree,
    julia_tree,
    mandel_tree,
    verify_prop_julia,
    verify_thm_bdd,
    verify_thm_q2bdd,
    verify_thm_unbdd,
)
