from enum import Enum


class KernelKind(str, Enum):
    FORWARD_GREEN = "ForwardGreen"
    Q = "Q"
    TWO_SIDED_GREEN = "TwoSidedGreen"
    Z = "Z"
    COMPRESSED_FORWARD = "CompressedForward"
    COMPRESSED_TWO_SIDED = "CompressedTwoSided"

    @property
    def is_forward(self) -> bool:
        return self in (
            KernelKind.FORWARD_GREEN,
            KernelKind.Q,
            KernelKind.COMPRESSED_FORWARD,
        )

    @property
    def is_compressed(self) -> bool:
        return self in (
            KernelKind.COMPRESSED_FORWARD,
            KernelKind.COMPRESSED_TWO_SIDED,
        )

    @property
    def is_two_sided(self) -> bool:
        return not self.is_forward

    @property
    def is_green(self) -> bool:
        return self not in (KernelKind.Q, KernelKind.Z)


class NormKind(str, Enum):
    Q = "Q"
    Z = "Z"


class NormMethod(str, Enum):
    DISTANCE_CLOSED_FORM = "distance_closed_form"
    MULTIPLIER_SUP = "multiplier_sup"
    DISCRETIZED_SVD = "discretized_svd"


class Region(str, Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


class InequalityKind(str, Enum):
    ESTIMA = "estima"
    RELLICH = "rellich"
    HARDY = "hardy"
    KATO_BOUND = "kato_bound"


class DomainClass(str, Enum):
    MIN_DOMAIN = "min_domain"
    HM_ONLY = "Hm_only"
    MAX_ONLY = "max_only"
    OUTSIDE = "outside"


class Realization(str, Enum):
    MIN = "min"
    MAX = "max"


class FactorSign(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
