"""Learning automatic-sequence predicates with L* and self-verifying teachers."""

__version__ = "0.1.0"
