"""Pushing surface maps off a subcomplex, with replayable certificates."""

from .hypotheses import FAIL, OK, UNKNOWN, HypothesisReport, Status, check_hypotheses
from .problem import (AuxDisk, Move, PushoffCertificate, PushoffProblem,
                      ReachabilitySequence, SurfaceComplex)
from .steps import (PushoffResult, find_reachability_sequence, punctured_link, pushoff,
                    step1_clear_triangles, step2_clear_bad_edges, step3_clear_vertices)
from .verify import Verification, verify_certificate

__all__ = [
    "AuxDisk", "FAIL", "HypothesisReport", "Move", "OK", "PushoffCertificate",
    "PushoffProblem", "PushoffResult", "ReachabilitySequence", "Status",
    "SurfaceComplex", "UNKNOWN", "Verification", "check_hypotheses",
    "find_reachability_sequence", "punctured_link", "pushoff",
    "step1_clear_triangles", "step2_clear_bad_edges", "step3_clear_vertices",
    "verify_certificate",
]
