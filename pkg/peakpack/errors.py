# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

from typing import Any, Optional, Sequence


class PeakpackError(Exception):
    exit_code = 1


class InvalidInput(PeakpackError):
    exit_code = 2


class UnknownJob(InvalidInput):
    def __init__(self, job_id: str) -> None:
        super().__init__("unknown job {!r}".format(job_id))
        self.job_id = job_id


class InfeasibleSchedule(PeakpackError):
    """
    Raised when an operation needs a feasible schedule and the one it
    got fails validation.  The violations are kept on the exception.
    """
    exit_code = 3

    def __init__(self, violations: Sequence[Any]) -> None:
        shown = ", ".join(str(v) for v in violations[:5])
        more = len(violations) - 5
        if more > 0:
            shown += " and {} more".format(more)
        super().__init__("infeasible schedule: {}".format(shown))
        self.violations = list(violations)


class PreconditionFailed(PeakpackError):
    exit_code = 3


class Infeasible(PeakpackError):
    exit_code = 3


class ResourceExceeded(PeakpackError):
    """
    Raised when a search runs out of nodes or time.  The best schedule
    found so far, if any, travels with the exception.
    """
    exit_code = 3

    def __init__(
            self,
            message: str,
            incumbent: Optional[Any] = None,
            peak: Optional[int] = None,
    ) -> None:
        super().__init__(message)
        self.incumbent = incumbent
        self.peak = peak


class ConditionViolated(PeakpackError):
    exit_code = 4


class InternalInvariant(PeakpackError):
    exit_code = 4
