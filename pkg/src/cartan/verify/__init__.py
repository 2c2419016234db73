"""Randomized property suites and the ``verify`` command."""

from .random import random_measure, random_spd, random_symplectic, trial_rng
from .suites import SUITES, Check, InstanceConfig, SuiteReport, run_suite

__all__ = [
    "SUITES",
    "Check",
    "InstanceConfig",
    "SuiteReport",
    "random_measure",
    "random_spd",
    "random_symplectic",
    "run_suite",
    "trial_rng",
]
