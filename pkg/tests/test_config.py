"""Tests for the 'config' module."""

import json
import textwrap
import unittest
from pathlib import Path

from ginv.config import CliConfig, ConfigBuilder, OutputFormat, SuiteConfig, Tolerances


# pylint: disable=too-few-public-methods
class ConfigFile:
    """A configuration file."""

    SEED = 7
    TRIALS = 3
    TOL_RES = 1e-6

    def __str__(self) -> str:
        return textwrap.dedent(
            f"""\
            {{
              "tolerances": {{"tol_res": {self.TOL_RES}, "n_oracle": 16}},
              "seed": {self.SEED},
              "trials": {self.TRIALS},
              "sizes": [2, 3],
              "k_max": 2,
              "format": "markdown",
              "timing": true
            }}
            """
        )


def config_reader(_config_path: Path) -> str:
    """A test configuration file reader."""
    return str(ConfigFile())


class TestTolerances(unittest.TestCase):
    """Tests for the 'Tolerances' class."""

    def test_defaults(self) -> None:
        """Tests the default thresholds."""
        tol = Tolerances()
        self.assertEqual(tol.tol_rank, 1e-10)
        self.assertEqual(tol.tol_res, 1e-8)
        self.assertEqual(tol.n_max_unity, 64)
        self.assertEqual(tol.to_dict()["n_oracle"], 32)

    def test_invalid(self) -> None:
        """Tests that out-of-range thresholds are rejected."""
        test_cases = {
            "negative rank tolerance": {"tol_rank": -1.0},
            "zero residual tolerance": {"tol_res": 0.0},
            "infinite eigenvalue tolerance": {"tol_eig": float("inf")},
            "string tolerance": {"tol_res": "small"},
            "wide unity tolerance": {"tol_unity": 0.7},
            "unity tolerance above the root gap": {"tol_unity": 1e-3},
            "wide cluster radius": {"tol_cluster": 0.5},
            "zero oracle bound": {"n_oracle": 0},
            "boolean order bound": {"n_max_unity": True},
        }

        for name, kwargs in test_cases.items():
            with self.subTest(name=name):
                self.assertRaises(ValueError, Tolerances, **kwargs)

    def test_unity_bound_follows_max_order(self) -> None:
        """Tests that a small order bound admits a wider unity tolerance."""
        self.assertEqual(Tolerances(tol_unity=1e-3, n_max_unity=6).tol_unity, 1e-3)


class TestSuiteConfig(unittest.TestCase):
    """Tests for the 'SuiteConfig' class."""

    def test_invalid(self) -> None:
        """Tests that out-of-range suite parameters are rejected."""
        test_cases = {
            "negative trials": {"trials": -1},
            "no sizes": {"sizes": ()},
            "order too small": {"sizes": (1, 2)},
            "order too large": {"sizes": (9,)},
            "negative seed": {"seed": -1},
            "k too large": {"k_max": 5},
            "no workers": {"jobs": 0},
        }

        for name, kwargs in test_cases.items():
            with self.subTest(name=name):
                self.assertRaises(ValueError, SuiteConfig, **kwargs)


class TestOutputFormat(unittest.TestCase):
    """Tests for the 'OutputFormat' enum."""

    def test_from_str(self) -> None:
        """Tests the 'from_str' method."""
        self.assertEqual(OutputFormat.from_str("json"), OutputFormat.JSON)
        self.assertEqual(OutputFormat.from_str("markdown"), OutputFormat.MARKDOWN)

    def test_from_str_with_invalid_format(self) -> None:
        """Tests the 'from_str' method with an invalid format."""
        self.assertRaises(ValueError, OutputFormat.from_str, "yaml")

    def test_str(self) -> None:
        """Tests the '__str__' method."""
        self.assertEqual(str(OutputFormat.JSON), "json")
        self.assertEqual(str(OutputFormat.MARKDOWN), "markdown")


class TestConfigBuilder(unittest.TestCase):
    """Tests for the 'ConfigBuilder' class."""

    def test_build_without_defaults(self) -> None:
        """Tests the 'build' method with nothing set."""
        self.assertRaises(ValueError, ConfigBuilder().build)

    def test_build_with_defaults(self) -> None:
        """Tests the 'build' method with defaults."""
        test_config = ConfigBuilder().with_defaults().build()

        self.assertEqual(test_config.tolerances, Tolerances())
        self.assertEqual(test_config.suite, SuiteConfig())
        self.assertIsNone(test_config.output)
        self.assertEqual(test_config.output_format, OutputFormat.JSON)
        self.assertFalse(test_config.timing)

    def test_build_with_config_file(self) -> None:
        """Tests the 'build' method with a configuration file."""
        test_config = ConfigBuilder().with_defaults().with_config(Path("ginv.json"), config_reader).build()

        self.assertEqual(test_config.tolerances.tol_res, ConfigFile.TOL_RES)
        self.assertEqual(test_config.tolerances.n_oracle, 16)
        self.assertEqual(test_config.tolerances.tol_rank, Tolerances().tol_rank)
        self.assertEqual(test_config.suite.seed, ConfigFile.SEED)
        self.assertEqual(test_config.suite.trials, ConfigFile.TRIALS)
        self.assertEqual(test_config.suite.sizes, (2, 3))
        self.assertEqual(test_config.suite.k_max, 2)
        self.assertEqual(test_config.output_format, OutputFormat.MARKDOWN)
        self.assertTrue(test_config.timing)

    def test_build_with_config_file_with_args(self) -> None:
        """Tests that command-line arguments override the configuration file."""
        args = {
            "tol_res": 1e-9,
            "tol_cond_max": 1e6,
            "tol_eig": None,
            "seed": 99,
            "sizes": [4],
            "format": "json",
            "output": "report.json",
            "timing": False,
        }

        test_config = (
            ConfigBuilder().with_defaults().with_config(Path("ginv.json"), config_reader).with_args(args).build()
        )

        self.assertEqual(test_config.tolerances.tol_res, 1e-9)
        self.assertEqual(test_config.tolerances.cond_max, 1e6)
        self.assertEqual(test_config.tolerances.n_oracle, 16)
        self.assertEqual(test_config.tolerances.tol_eig, Tolerances().tol_eig)
        self.assertEqual(test_config.suite.seed, 99)
        self.assertEqual(test_config.suite.trials, ConfigFile.TRIALS)
        self.assertEqual(test_config.suite.sizes, (4,))
        self.assertEqual(test_config.output, Path("report.json"))
        self.assertEqual(test_config.output_format, OutputFormat.JSON)
        self.assertTrue(test_config.timing)

    def test_with_config_rejects_bad_files(self) -> None:
        """Tests that unreadable or unexpected configuration is rejected."""
        test_cases = {
            "invalid json": "{seed: 1}",
            "not an object": "[1, 2]",
            "unknown key": json.dumps({"colour": "blue"}),
            "unknown tolerance": json.dumps({"tolerances": {"tol_magic": 1.0}}),
            "invalid tolerance": json.dumps({"tolerances": {"tol_unity": 0.7}}),
            "string seed": json.dumps({"seed": "7"}),
            "boolean trials": json.dumps({"trials": True}),
            "scalar sizes": json.dumps({"sizes": 3}),
            "unknown format": json.dumps({"format": "yaml"}),
            "string timing": json.dumps({"timing": "yes"}),
        }

        for name, content in test_cases.items():
            with self.subTest(name=name):
                builder = ConfigBuilder().with_defaults()
                self.assertRaises(ValueError, builder.with_config, Path("ginv.json"), lambda _, text=content: text)

    def test_with_config_missing_file(self) -> None:
        """Tests that a missing configuration file is reported."""
        builder = ConfigBuilder().with_defaults()
        self.assertRaises(FileNotFoundError, builder.with_config, Path("/nonexistent/ginv.json"))

    def test_out_of_range_suite_is_rejected_at_build(self) -> None:
        """Tests that suite parameters are validated when the configuration is built."""
        builder = ConfigBuilder().with_defaults().with_args({"k_max": 9})
        self.assertRaises(ValueError, builder.build)


class TestCliConfig(unittest.TestCase):
    """Tests for the 'CliConfig' class."""

    def test_pretty_print(self) -> None:
        """Tests the 'pretty_print' method."""
        test_config = CliConfig(
            tolerances=Tolerances(),
            suite=SuiteConfig(trials=2, sizes=(2, 3), seed=5),
            output=None,
            output_format=OutputFormat.MARKDOWN,
            timing=False,
        )

        lines = test_config.pretty_print().splitlines()

        self.assertIn("tol_res = 1e-08", lines)
        self.assertIn("seed = 5", lines)
        self.assertIn("sizes = 2,3", lines)
        self.assertIn("output = -", lines)
        self.assertIn("format = markdown", lines)
        self.assertIn("timing = false", lines)


if __name__ == "__main__":
    unittest.main()
