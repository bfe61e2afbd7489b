# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

__version__ = "0.1.0"
__project__ = "peakpack"
