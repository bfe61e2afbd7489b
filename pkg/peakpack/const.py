# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

from fractions import Fraction
from pathlib import Path

import appdirs

from . import __project__

CONFIG = Path(appdirs.user_config_dir(__project__)).joinpath("config.ini")

EPSILON = Fraction(1, 3)
MAX_NODES = 2000000
TIMEOUT = 60.0
WORKERS = 1

# Node budget of the backtracking step inside the rectangle packer.
PACKING_NODES = 200000

# Constant c of the gap sequence rho_{i+1} = c * rho_i * eps^3.
GAP_FACTOR = 1

# Largest configuration LP built before giving up.
MAX_CONFIGURATIONS = 5000

# Instances up to this size get an exact reference schedule in the
# AEPTAS pipeline and the repack branch of solve; larger ones use FFDH.
EXACT_JOBS = 10
EXACT_DEADLINE = 16

CSV_COLUMNS = [
    "instance",
    "algorithm",
    "peak",
    "lower_bound",
    "opt",
    "ratio",
    "wall_time",
]
