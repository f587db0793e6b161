# File: config.py
# Description: Configuration constants for QCenter

import os


class QCenterConfig:
    VERSION = "1.0.0"
    SCHEMA_VERSION = 1

    # Exit codes are a stable contract of the command line
    EXIT_OK = 0
    EXIT_FAILURE = 1
    EXIT_INPUT_ERROR = 2

    # Oracle tolerances
    NUMERIC_RESIDUAL = 1e-9
    NUMERIC_ZERO = 1e-9
    AMBIGUITY_LOW = 1e-12
    AMBIGUITY_HIGH = 1e-6
    RATIONAL_DENOMINATOR_LIMIT = 10**6
    NEWTON_STEPS = 3

    # Common-point sign evaluation re-checks the chosen signs on this many extra points
    CONSISTENCY_SAMPLES = 3

    DEFAULT_SEED = 0
    DEFAULT_CORPUS_COUNT = 25
    FAMILIES = ("canonical", "hamiltonian", "reversible", "placed-points", "random")

    @staticmethod
    def default_jobs():
        return os.cpu_count() or 1

