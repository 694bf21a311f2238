import unittest

import pytest

from beidepth.config import (
    DEFAULT_SETTINGS,
    ENV_LOG_LEVEL,
    ENV_ORACLE_MAX_N,
    ENV_ORACLE_VAR_LIMIT,
    ENV_SWEEP_BUDGET,
    Settings,
    load_settings,
)

__doctests__ = ["beidepth.config"]  # for trial support


class LoadSettingsTest(unittest.TestCase):
    def test_defaults(self):
        self.assertEqual(load_settings({}), DEFAULT_SETTINGS)
        self.assertEqual(DEFAULT_SETTINGS, Settings(16, None, 6, "WARNING"))

    def test_all_variables(self):
        settings = load_settings(
            {
                ENV_ORACLE_VAR_LIMIT: "14",
                ENV_SWEEP_BUDGET: "2.5",
                ENV_ORACLE_MAX_N: "5",
                ENV_LOG_LEVEL: "debug",
            }
        )
        self.assertEqual(settings, Settings(14, 2.5, 5, "DEBUG"))

    def test_blank_values_fall_back(self):
        settings = load_settings({ENV_ORACLE_VAR_LIMIT: " ", ENV_SWEEP_BUDGET: ""})
        self.assertEqual(settings.oracle_var_limit, 16)
        self.assertIsNone(settings.sweep_budget)

    def test_override(self):
        settings = load_settings({})._replace(oracle_var_limit=8)
        self.assertEqual(settings.oracle_var_limit, 8)


@pytest.mark.parametrize(
    "environ",
    [
        {ENV_ORACLE_VAR_LIMIT: "many"},
        {ENV_ORACLE_VAR_LIMIT: "0"},
        {ENV_ORACLE_MAX_N: "-3"},
        {ENV_SWEEP_BUDGET: "soon"},
        {ENV_SWEEP_BUDGET: "0"},
        {ENV_LOG_LEVEL: "LOUD"},
    ],
)
def test_malformed(environ):
    (name,) = environ
    with pytest.raises(ValueError, match=name):
        load_settings(environ)
