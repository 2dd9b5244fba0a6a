"""Numerical constants shared by every strategy and the CLI.

Nothing else in the package may hard-code these values.
"""

import math

#: Non-factors fall below this magnitude once enough terms are summed.
GHOST_THRESHOLD = 1.0 / math.sqrt(2.0)

#: A grid point is a unity peak when |A| >= 1 - PEAK_TOLERANCE.
PEAK_TOLERANCE = 1e-9

# Range caps for exact phase arithmetic. With these, every staged modular
# product stays below 2**128.
MAX_N = 10**18
MAX_NUMERATOR = 10**18
MAX_DENOMINATOR = 10**9
MAX_M = 10**6
MAX_M_HIGH_POWER = 10**4
MAX_STANDARD_N = 10**7
MAX_DIVISOR_N = 10**12

#: Environment variable naming the default output directory of the CLI.
OUTPUT_DIR_ENV = "GAUSSFACTOR_OUTPUT_DIR"
