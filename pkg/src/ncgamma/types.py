"""Small value types shared by the distribution routines."""

import enum
from dataclasses import dataclass
from typing import NamedTuple


class DomainError(ValueError):
    """Argument outside the domain of a function."""


class PoleError(DomainError):
    """Argument sits on a pole of the gamma function."""


class SubcomputationError(ArithmeticError):
    """An inner iteration (continued fraction, root finder) did not converge."""


class DistributionKind(enum.Enum):
    """Parameterisation of a (non)central distribution call.

    ``GAMMA`` takes (a, x) or (mu, x, y) as given; ``CHI_SQUARE`` takes
    degrees of freedom, noncentrality and abscissa of the chi-square law and
    halves each of them before any computation.
    """

    GAMMA = 1
    CHI_SQUARE = 2


class InversionTarget(enum.Enum):
    """Which variable of P_mu(x, y) / Q_mu(x, y) is solved for."""

    NONCENTRALITY_X = 1
    QUANTILE_Y = 2


class ProbabilityPair(NamedTuple):
    p: float
    q: float


class Status(enum.Enum):
    OK = "ok"
    OVERFLOW_UNDERFLOW = "overflow_underflow"
    OUT_OF_RANGE = "out_of_range"
    MAX_ITERATIONS = "max_iterations"
    INFEASIBLE = "infeasible"
    SUBCOMPUTATION_FAILURE = "subcomputation_failure"


# integer error flags per routine family
_IERR = {
    "cdf": {
        Status.OK: 0,
        Status.OVERFLOW_UNDERFLOW: 1,
        Status.OUT_OF_RANGE: 2,
    },
    "inv_central": {
        Status.OK: 0,
        Status.OVERFLOW_UNDERFLOW: 1,
        Status.MAX_ITERATIONS: 2,
        Status.OUT_OF_RANGE: 3,
    },
    "inv_noncentral": {
        Status.OK: 0,
        Status.INFEASIBLE: 1,
        Status.SUBCOMPUTATION_FAILURE: 2,
        Status.MAX_ITERATIONS: 3,
        Status.OUT_OF_RANGE: 4,
    },
}


@dataclass(frozen=True)
class ComputationStatus:
    """Outcome of a distribution routine.

    ``routine`` is one of ``"cdf"``, ``"inv_central"`` or
    ``"inv_noncentral"`` and fixes how :attr:`code` maps onto the integer
    flag returned by :attr:`ierr`.
    """

    code: Status = Status.OK
    detail: str = ""
    routine: str = "cdf"

    @property
    def ok(self) -> bool:
        return self.code is Status.OK

    @property
    def ierr(self) -> int:
        table = _IERR[self.routine]
        try:
            return table[self.code]
        except KeyError:
            raise ValueError(
                f"status {self.code.value} has no flag for routine {self.routine}"
            ) from None


def to_target(target) -> InversionTarget:
    """Accept an :class:`InversionTarget`, ``"x"``/``"y"`` or the flag 1/2."""
    if isinstance(target, InversionTarget):
        return target
    if isinstance(target, int):
        return InversionTarget(target)
    name = str(target).strip().lower()
    if name in ("x", "noncentrality", "noncentrality_x", "1"):
        return InversionTarget.NONCENTRALITY_X
    if name in ("y", "quantile", "quantile_y", "2"):
        return InversionTarget.QUANTILE_Y
    raise ValueError(f"unknown inversion target {target!r}")


def to_kind(kind) -> DistributionKind:
    """Accept a :class:`DistributionKind`, its name or the integer flag 1/2."""
    if isinstance(kind, DistributionKind):
        return kind
    if isinstance(kind, int):
        return DistributionKind(kind)
    name = str(kind).strip().lower().replace("-", "_")
    if name in ("gamma", "1"):
        return DistributionKind.GAMMA
    if name in ("chi_square", "chi2", "chisquare", "2"):
        return DistributionKind.CHI_SQUARE
    raise ValueError(f"unknown distribution kind {kind!r}")
