# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

import tempfile
from pathlib import Path
from typing import Any, Tuple
from unittest import TestCase
from unittest.mock import patch

from hypothesis import strategies as st

from peakpack import formats
from peakpack.core import Instance, Job


def instance(deadline: int, *jobs: Tuple[int, int]) -> Instance:
    return Instance(
        deadline,
        [Job("j{}".format(n + 1), p, e) for n, (p, e) in enumerate(jobs)],
    )


FIX_A = instance(10, (10, 5))
FIX_B = instance(10, (6, 3), (6, 4))
FIX_C = instance(10, (4, 9), (4, 9), (4, 9))
FIX_D = instance(10, (2, 10), (10, 4))
FIX_E = instance(10, (2, 10), (9, 4), (9, 4))
FIXTURES = {"a": FIX_A, "b": FIX_B, "c": FIX_C, "d": FIX_D, "e": FIX_E}


@st.composite
def instances(
        draw: Any,
        max_jobs: int = 6,
        max_deadline: int = 10,
        max_energy: int = 8,
) -> Instance:
    deadline = draw(st.integers(1, max_deadline))
    jobs = draw(
        st.lists(
            st.tuples(st.integers(1, deadline), st.integers(1, max_energy)),
            min_size=1,
            max_size=max_jobs,
        )
    )
    return instance(deadline, *jobs)


class PatchedTestCase(TestCase):
    def setUp(self) -> None:
        self.tmpdir = tempfile.TemporaryDirectory()
        self.path = Path(self.tmpdir.name)

        self.config = patch(
            "peakpack.const.CONFIG",
            self.path.joinpath("config.ini"),
        )
        self.config.start()

    def tearDown(self) -> None:
        self.config.stop()
        self.tmpdir.cleanup()

    def write_instance(self, name: str, problem: Instance) -> str:
        path = self.path.joinpath(name)
        with path.open("w") as fh:
            formats.write_instance(problem, fh)
        return str(path)

    def write_text(self, name: str, text: str) -> str:
        path = self.path.joinpath(name)
        path.write_text(text)
        return str(path)
