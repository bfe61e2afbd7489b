# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

import configparser
import re
from fractions import Fraction
from typing import Any, Callable, Optional

import click

from . import __project__, const, formats
from .errors import InvalidInput


class Option(click.Option):
    sep = re.compile(r"[\n\r,]")

    def full_process_value(self, ctx: click.Context, value: Any) -> Any:
        """
        Process a value.

        Resolution order:

        1. From command-line arguments.
        2. From `default_map`.
        3. From environment variables.
        4. From the `[peakpack:<command>]` section of the configuration.
        5. From the `[peakpack]` section of the configuration.
        6. From the `default` keyword argument.
        """
        if not value:
            value = self.config_value(ctx)
            if value and self.multiple:
                value = tuple(v.strip() for v in self.sep.split(value) if v)
        return super().full_process_value(ctx, value)

    def config_value(self, ctx: click.Context) -> Optional[str]:
        config = config_of(ctx)
        if config is None:
            return None
        name = self.name.replace("_", "-")
        for section in ("{}:{}".format(__project__, ctx.info_name),
                        __project__):
            value = config.get(section, name, fallback=None)
            if value:
                return str(value)
        return None


class RationalType(click.ParamType):
    """
    An exact rational given as "p/q", an integer or a decimal.
    """
    name = "rational"

    def convert(
            self,
            value: Any,
            param: Optional[click.Parameter],
            ctx: Optional[click.Context],
    ) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return formats.parse_rational(str(value).strip())
        except InvalidInput as e:
            self.fail(str(e), param, ctx)
            raise


RATIONAL = RationalType()


def config_of(ctx: click.Context) -> Optional[configparser.ConfigParser]:
    """
    The configuration read by `add_config`, looked up through the parent
    contexts.
    """
    current = ctx  # type: Optional[click.Context]
    while current is not None:
        if isinstance(current.obj, dict):
            config = current.obj.get("config")
            if isinstance(config, configparser.ConfigParser):
                return config
        current = current.parent
    return None


def add(*param_decls: str, **attrs: Any) -> Callable:
    """
    Add an option with the extended `Option` class.
    """
    return click.option(*param_decls, **attrs, cls=Option)  # type: ignore


def add_config(*param_decls: str, **attrs: Any) -> Callable:
    """
    Add an unexposed option that initializes the configuration.
    """

    def cb(ctx: click.Context, _param: Option, value: Optional[str]) -> None:
        value = value or str(const.CONFIG)
        ctx.obj = ctx.obj or {}
        ctx.obj["config"] = configparser.ConfigParser()
        try:
            ctx.obj["config"].read(value)
        except configparser.Error as e:
            raise click.ClickException(str(e))

    attrs["callback"] = cb
    attrs["expose_value"] = False
    attrs["is_eager"] = True

    return add(*param_decls, **attrs)
