"""Exception hierarchy shared by every module.

Each error carries a stable ``code`` so the CLI can emit machine-readable
failures.
"""

from __future__ import annotations


class FlowError(Exception):
    """Base class for domain errors."""

    code = "DOMAIN_ERROR"

    def to_dict(self) -> dict[str, str]:
        return {"error": self.code, "message": str(self)}


class ParseError(FlowError):
    code = "PARSE_ERROR"


class EmptyInput(ParseError):
    code = "EMPTY_INPUT"


class MixedDimension(ParseError):
    code = "MIXED_DIMENSION"


class DuplicateVertexInFacet(ParseError):
    code = "DUPLICATE_VERTEX_IN_FACET"


class UnknownVertex(FlowError):
    code = "UNKNOWN_VERTEX"


class ConeApex(FlowError):
    code = "CONE_APEX"


class NotMaxVertex(FlowError):
    code = "NOT_MAX_VERTEX"


class NotPrime(FlowError):
    code = "NOT_PRIME"


class LabelMismatch(FlowError):
    code = "LABEL_MISMATCH"


class UnknownElement(FlowError):
    code = "UNKNOWN_ELEMENT"


class LoopContraction(FlowError):
    code = "LOOP_CONTRACTION"


class GroundSetTooLarge(FlowError):
    code = "GROUND_SET_TOO_LARGE"


class ZeroSigmaTau(FlowError):
    code = "ZERO_SIGMA_TAU"


class IndexMismatch(FlowError):
    code = "INDEX_MISMATCH"


class WorkLimitExceeded(FlowError):
    code = "WORK_LIMIT_EXCEEDED"


class InsufficientData(FlowError):
    code = "INSUFFICIENT_DATA"


class NoFit(FlowError):
    code = "NO_FIT"


class MethodDisagreement(FlowError):
    code = "METHOD_DISAGREEMENT"
