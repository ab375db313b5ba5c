"""Self-verifying teachers for L*."""

from .adder import AdderTeacher, learn_adder
from .base import Check, PredicateTeacher, Verdict
from .eqfac import EqFacTeacher, direct_eqfac
from .eqrevfac import EqRevFacTeacher
from .period import PeriodTeacher

__all__ = [
    "AdderTeacher", "Check", "EqFacTeacher", "EqRevFacTeacher", "PeriodTeacher",
    "PredicateTeacher", "Verdict", "direct_eqfac", "learn_adder",
]
