"""Exact tools around Gaussian binomial coefficients: coefficient
expansion, strict unimodality classification, Littlewood-Richardson and
Kronecker coefficients, and machine-checkable additivity certificates.
"""

from .certify import (
    AddNode,
    BaseNode,
    BaseRegistry,
    Certificate,
    CertificateFormatError,
    NotCertifiableError,
    VerificationResult,
    build_base_registry,
    certificate_from_obj,
    certificate_to_obj,
    certify,
    cross_validate,
    default_registry,
    parse_certificate,
    serialize_certificate,
    verify,
)
from .kronecker import (
    CharacterTable,
    InternalConsistencyError,
    KroneckerValue,
    Lemma12Result,
    Route,
    SemigroupViolation,
    a_k,
    character_table,
    g_oracle,
    g_two_row,
    lemma12_check,
    routes_check,
    semigroup_check,
    two_row,
)
from .lr import LRQuery, lr, lr_rectangle
from .partitions import (
    Box,
    Partition,
    add,
    complement_in_box,
    enumerate_in_box,
    fits_in_box,
    format_partition,
    parse_partition,
    partitions_of,
    rectangle,
)
from .qbinomial import QPolynomial, gaussian, gaussian_by_enumeration
from .unimodality import (
    EXCEPTION_PAIRS,
    PairClass,
    UnimodalityReport,
    check_strict,
    classify,
    scan,
)

__version__ = "0.1.0"

__all__ = [
    "AddNode",
    "BaseNode",
    "BaseRegistry",
    "Box",
    "Certificate",
    "CertificateFormatError",
    "CharacterTable",
    "EXCEPTION_PAIRS",
    "InternalConsistencyError",
    "KroneckerValue",
    "LRQuery",
    "Lemma12Result",
    "NotCertifiableError",
    "PairClass",
    "Partition",
    "QPolynomial",
    "Route",
    "SemigroupViolation",
    "UnimodalityReport",
    "VerificationResult",
    "a_k",
    "add",
    "build_base_registry",
    "certificate_from_obj",
    "certificate_to_obj",
    "certify",
    "character_table",
    "check_strict",
    "classify",
    "complement_in_box",
    "cross_validate",
    "default_registry",
    "enumerate_in_box",
    "fits_in_box",
    "format_partition",
    "g_oracle",
    "g_two_row",
    "gaussian",
    "gaussian_by_enumeration",
    "lemma12_check",
    "lr",
    "lr_rectangle",
    "parse_certificate",
    "parse_partition",
    "partitions_of",
    "rectangle",
    "routes_check",
    "scan",
    "semigroup_check",
    "serialize_certificate",
    "two_row",
    "verify",
]
