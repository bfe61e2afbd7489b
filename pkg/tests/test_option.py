# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

from fractions import Fraction
from typing import Any, Tuple
from unittest import TestCase

import click
from click.testing import CliRunner

from peakpack import __project__, option


class TestOption(TestCase):
    def test_without_config(self) -> None:
        @click.command()
        @option.add("--algorithm")
        def fun(**kwargs: Any) -> None:
            self.assertIsNone(kwargs["algorithm"])

        runner = CliRunner()
        result = runner.invoke(fun)
        self.assertEqual(result.exit_code, 0)

    def test_missing_config(self) -> None:
        @click.command()
        @option.add_config("--config", default="x")
        @option.add("--algorithm", default="auto")
        def fun(**kwargs: Any) -> None:
            self.assertEqual(kwargs["algorithm"], "auto")

        runner = CliRunner()
        with runner.isolated_filesystem():
            result = runner.invoke(fun)
            self.assertEqual(result.exit_code, 0)

    def test_invalid_config(self) -> None:
        @click.command()
        @option.add_config("--config")
        def fun(**_kwargs: Any) -> None:
            pass

        runner = CliRunner()
        with runner.isolated_filesystem():
            with open("x.ini", "w") as f:
                f.write("epsilon=1/4")

            result = runner.invoke(fun, ["--config", "x.ini"])
            self.assertEqual(result.exc_info[0], SystemExit)  # type: ignore
            self.assertNotEqual(result.exit_code, 0)

    def test_with_config(self) -> None:
        @click.command()
        @option.add_config("--config")
        @option.add("--algorithm")
        @option.add("--reference", default="auto")
        @option.add("--epsilon", type=option.RATIONAL)
        @option.add("--max-nodes", type=int)
        @option.add("--timeout", type=float)
        @option.add("--workers", type=int)
        @option.add("--certificate", is_flag=True)
        @option.add("--kinds", multiple=True)
        @option.add("--seeds", type=int, multiple=True)
        @option.add("--instances", type=click.File(), multiple=True)
        def fun(**kwargs: Any) -> None:
            self.assertEqual(kwargs["algorithm"], "lshape")
            self.assertEqual(kwargs["reference"], "auto")
            self.assertEqual(kwargs["epsilon"], Fraction(1, 4))
            self.assertEqual(kwargs["max_nodes"], 1000)
            self.assertEqual(kwargs["timeout"], 2.5)
            self.assertIsNone(kwargs["workers"])
            self.assertTrue(kwargs["certificate"])
            self.assertEqual(kwargs["kinds"], ("balanced", "many wide"))
            self.assertEqual(kwargs["seeds"], (1, 2, 3))
            self.assertEqual(kwargs["instances"][1].read(), "b")

        runner = CliRunner()
        with runner.isolated_filesystem():
            with open("x.ini", "w") as f:
                f.write(
                    """
                    [{}]
                    algorithm =    lshape
                    epsilon = 1/4
                    max-nodes = 1000
                    timeout = 2.5
                    certificate = true
                    kinds = balanced,

                        many wide
                    seeds = 1,  2,   3
                    instances = a, b
                    """.format(__project__)
                )
            for name in ["a", "b"]:
                with open(name, "w") as f:
                    f.write(name)

            result = runner.invoke(fun, ["--config", "x.ini"])
            self.assertEqual(result.exit_code, 0)

    def test_command_section(self) -> None:
        @click.group()
        @option.add_config("--config")
        def group() -> None:
            pass

        @group.command()
        @option.add("--epsilon", type=option.RATIONAL)
        @option.add("--algorithm")
        def solve(**kwargs: Any) -> None:
            click.echo("{epsilon} {algorithm}".format(**kwargs))

        @group.command()
        @option.add("--epsilon", type=option.RATIONAL)
        def aeptas(**kwargs: Any) -> None:
            click.echo("{epsilon}".format(**kwargs))

        runner = CliRunner()
        with runner.isolated_filesystem():
            with open("x.ini", "w") as f:
                f.write(
                    """
                    [{0}]
                    epsilon = 1/3
                    algorithm = ffdh

                    [{0}:aeptas]
                    epsilon = 1/10
                    """.format(__project__)
                )

            result = runner.invoke(group, ["--config", "x.ini", "solve"])
            self.assertEqual(result.output, "1/3 ffdh\n")

            result = runner.invoke(group, ["--config", "x.ini", "aeptas"])
            self.assertEqual(result.output, "1/10\n")

    def test_with_config_and_overrides(self) -> None:
        @click.command()
        @option.add_config("--config")
        @option.add("--from-cfg")
        @option.add("--from-cfg-and-cli")
        @option.add("--from-cfg-and-env")
        @option.add("--from-cfg-and-env-and-cli")
        def fun(**kwargs: Any) -> None:
            self.assertEqual(kwargs["from_cfg"], "xyz")
            self.assertEqual(kwargs["from_cfg_and_cli"], "cli")
            self.assertEqual(kwargs["from_cfg_and_env"], "env")
            self.assertEqual(kwargs["from_cfg_and_env_and_cli"], "cli")

        runner = CliRunner()
        with runner.isolated_filesystem():
            with open("x.ini", "w") as f:
                f.write(
                    """
                    [{}]
                    from-cfg = xyz
                    from-cfg-and-cli = xyz
                    from-cfg-and-env = xyz
                    from-cfg-and-env-and-cli = xyz
                    """.format(__project__)
                )

            args = [
                "--from-cfg-and-cli",
                "cli",
                "--from-cfg-and-env-and-cli",
                "cli",
            ]
            env = {
                "FUN_CONFIG": "x.ini",
                "FUN_FROM_CFG_AND_ENV": "env",
                "FUN_FROM_CFG_AND_ENV_AND_CLI": "env",
            }

            result = runner.invoke(
                fun,
                args=args,
                env=env,
                auto_envvar_prefix="FUN",
            )
            self.assertEqual(result.exit_code, 0)


class TestRationalType(TestCase):
    def test_convert(self) -> None:
        @click.command()
        @option.add("--epsilon", type=option.RATIONAL, multiple=True)
        def fun(epsilon: Tuple[Fraction, ...]) -> None:
            self.assertEqual(
                epsilon, (Fraction(1, 4), Fraction(1, 10), Fraction(2))
            )

        runner = CliRunner()
        result = runner.invoke(
            fun, ["--epsilon", "1/4", "--epsilon", "0.1", "--epsilon", "2"]
        )
        self.assertEqual(result.exit_code, 0)

    def test_invalid(self) -> None:
        @click.command()
        @option.add("--epsilon", type=option.RATIONAL)
        def fun(**_kwargs: Any) -> None:
            pass

        runner = CliRunner()
        result = runner.invoke(fun, ["--epsilon", "a third"])
        self.assertEqual(result.exit_code, 2)
        self.assertIn("Invalid value", result.output)


class TestAdd(TestCase):
    def test_add(self) -> None:
        @click.command()
        @option.add("-n", type=int)
        @option.add("-c", is_flag=True)
        @option.add("-a", multiple=True)
        def fun(n: int, c: bool, a: Tuple[str]) -> None:
            self.assertEqual(n, 5)
            self.assertEqual(c, True)
            self.assertEqual(a, ("ffdh", "nfdh"))

        runner = CliRunner()
        result = runner.invoke(fun, ["-n", "5", "-c", "-a", "ffdh", "-a",
                                     "nfdh"])
        self.assertEqual(result.exit_code, 0)
