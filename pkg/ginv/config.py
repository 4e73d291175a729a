"""Configuration."""

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple


@dataclass(frozen=True)
class Tolerances:
    """Every numeric threshold used to turn an exact condition into a decision.

    Attributes:
        tol_rank: Relative singular-value threshold for numeric rank.
        tol_eig: Relative eigenvalue accuracy target, used by the spectral quasinilpotency test.
        tol_res: Relative residual threshold for identity checks.
        tol_unity: Root-of-unity matching threshold.
        tol_cluster: Relative radius within which eigenvalue estimates are merged into one multiple eigenvalue.
        cond_max: Largest accepted condition number of a core-nilpotent similarity.
        n_max_unity: Largest root-of-unity order searched.
        n_oracle: Largest exponent tried by brute-force searches.
    """

    tol_rank: float = 1e-10
    tol_eig: float = 1e-8
    tol_res: float = 1e-8
    tol_unity: float = 1e-6
    tol_cluster: float = 1e-2
    cond_max: float = 1e8
    n_max_unity: int = 64
    n_oracle: int = 32

    def __post_init__(self) -> None:
        for name in ("tol_rank", "tol_eig", "tol_res", "tol_unity", "tol_cluster", "cond_max"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"{name} must be a number, got {value!r}")
            if not math.isfinite(value) or value <= 0:
                raise ValueError(f"{name} must be finite and positive, got {value}")
        for name in ("n_max_unity", "n_oracle"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise ValueError(f"{name} must be at least 1, got {value}")
        if self.tol_unity >= 0.5:
            raise ValueError(f"tol_unity must be below 0.5, got {self.tol_unity}")
        if self.tol_cluster >= 0.5:
            raise ValueError(f"tol_cluster must be below 0.5, got {self.tol_cluster}")
        if self.n_max_unity >= 2:
            # half the smallest gap between distinct roots of unity of order <= n_max_unity
            bound = math.pi / (self.n_max_unity * (self.n_max_unity - 1))
            if self.tol_unity >= bound:
                raise ValueError(
                    f"tol_unity {self.tol_unity} must be below {bound:.3g} to separate roots of unity "
                    f"of order up to {self.n_max_unity}"
                )

    def to_dict(self) -> Dict[str, Any]:
        """Returns the tolerances as a JSON-ready dictionary."""
        return asdict(self)


# Command-line flag destinations and the Tolerances field each one overrides.
TOLERANCE_FLAGS: Dict[str, str] = {
    "tol_rank": "tol_rank",
    "tol_eig": "tol_eig",
    "tol_res": "tol_res",
    "tol_unity": "tol_unity",
    "tol_cluster": "tol_cluster",
    "tol_cond_max": "cond_max",
    "tol_n_max_unity": "n_max_unity",
    "tol_n_oracle": "n_oracle",
}


@dataclass(frozen=True)
class SuiteConfig:
    """Parameters of a seeded property-suite run.

    Attributes:
        trials: Trials per theorem.
        sizes: Matrix orders the generators draw from.
        k_max: Largest word length used by the word-condition generators.
        seed: The global seed; trial i runs with seed ^ i.
        jobs: Worker processes used to run trials.
    """

    trials: int = 10
    sizes: Tuple[int, ...] = (2, 3, 4, 5, 6)
    k_max: int = 3
    seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise ValueError(f"trials must be non-negative, got {self.trials}")
        if not self.sizes:
            raise ValueError("sizes must not be empty")
        if any(size < 2 or size > 8 for size in self.sizes):
            raise ValueError(f"sizes must lie in 2..8, got {list(self.sizes)}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if not 1 <= self.k_max <= 4:
            raise ValueError(f"k_max must lie in 1..4, got {self.k_max}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")


class OutputFormat(Enum):
    """The format of a written report."""

    JSON = 1
    MARKDOWN = 2

    @classmethod
    def from_str(cls, format_str: str) -> "OutputFormat":
        """Creates an OutputFormat from a string.

        Args:
            format_str: The string to create the OutputFormat from.

        Returns:
            The created OutputFormat.
        """
        match format_str:
            case "json":
                return cls.JSON
            case "markdown":
                return cls.MARKDOWN
            case _:
                raise ValueError(f"Invalid OutputFormat string: {format_str}")

    def __str__(self) -> str:
        match self:
            case OutputFormat.JSON:
                return "json"
            case OutputFormat.MARKDOWN:
                return "markdown"


@dataclass(frozen=True)
class CliConfig:
    """A configuration object.

    Attributes:
        tolerances: The numeric thresholds.
        suite: Parameters for the 'verify' command.
        output: Where reports are written; None means stdout.
        output_format: The report format.
        timing: Whether suite reports include wall time.
    """

    tolerances: Tolerances
    suite: SuiteConfig
    output: Optional[Path]
    output_format: OutputFormat
    timing: bool

    def pretty_print(self) -> str:
        """Returns a pretty-printed string."""
        lines = [f"{key} = {value}" for key, value in self.tolerances.to_dict().items()]
        lines.extend(
            [
                f"seed = {self.suite.seed}",
                f"trials = {self.suite.trials}",
                f"sizes = {','.join(str(size) for size in self.suite.sizes)}",
                f"k_max = {self.suite.k_max}",
                f"jobs = {self.suite.jobs}",
                f"output = {self.output if self.output is not None else '-'}",
                f"format = {self.output_format}",
                f"timing = {str(self.timing).lower()}",
            ]
        )
        return "\n".join(lines)


def _file_reader(path: Path) -> str:
    if not path.exists():
        raise FileNotFoundError(f"File '{path}' does not exist")
    return path.read_text(encoding="utf-8")


_TOLERANCE_FIELDS = frozenset(field.name for field in fields(Tolerances))
_CONFIG_KEYS = frozenset({"tolerances", "seed", "trials", "sizes", "k_max", "jobs", "output", "format", "timing"})


def _expect_int(key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"Invalid {key}: expected an integer, got {value!r}")
    return value


def _expect_number(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"Invalid {key}: expected a number, got {value!r}")
    return float(value)


class ConfigBuilder:
    """A configuration builder.

    Sources are layered in call order: defaults, then a JSON config file, then command-line arguments.
    """

    tolerances: Optional[Tolerances]
    trials: Optional[int]
    sizes: Optional[Tuple[int, ...]]
    k_max: Optional[int]
    seed: Optional[int]
    jobs: Optional[int]
    output: Optional[Path]
    output_format: Optional[OutputFormat]
    timing: Optional[bool]

    def __init__(
        self,
        tolerances: Optional[Tolerances] = None,
        trials: Optional[int] = None,
        sizes: Optional[Tuple[int, ...]] = None,
        k_max: Optional[int] = None,
        seed: Optional[int] = None,
        jobs: Optional[int] = None,
        output: Optional[Path] = None,
        output_format: Optional[OutputFormat] = None,
        timing: Optional[bool] = None,
    ) -> None:
        self.tolerances = tolerances
        self.trials = trials
        self.sizes = sizes
        self.k_max = k_max
        self.seed = seed
        self.jobs = jobs
        self.output = output
        self.output_format = output_format
        self.timing = timing

    def with_defaults(self) -> "ConfigBuilder":
        """Updates unset attributes with default values.

        Returns:
            The updated builder.
        """
        defaults = SuiteConfig()
        if self.tolerances is None:
            self.tolerances = Tolerances()
        if self.trials is None:
            self.trials = defaults.trials
        if self.sizes is None:
            self.sizes = defaults.sizes
        if self.k_max is None:
            self.k_max = defaults.k_max
        if self.seed is None:
            self.seed = defaults.seed
        if self.jobs is None:
            self.jobs = defaults.jobs
        if self.output_format is None:
            self.output_format = OutputFormat.JSON
        if self.timing is None:
            self.timing = False
        return self

    def with_config(self, path: Path, reader: Callable[[Path], str] = _file_reader) -> "ConfigBuilder":
        """Updates attributes from a JSON configuration file.

        Args:
            path: The configuration file.
            reader: A function that reads a file and returns its string representation.

        Returns:
            The updated builder.

        Raises:
            ValueError: If the file is not valid JSON or holds unknown keys or badly typed values.
        """
        try:
            config = json.loads(reader(path))
        except json.JSONDecodeError as err:
            raise ValueError(f"{path}: invalid JSON: {err}") from err
        if not isinstance(config, dict):
            raise ValueError(f"{path}: expected a JSON object")

        unknown = sorted(set(config) - _CONFIG_KEYS)
        if unknown:
            raise ValueError(f"{path}: unknown configuration keys: {', '.join(unknown)}")

        tolerances = config.get("tolerances")
        if tolerances is not None:
            if not isinstance(tolerances, dict):
                raise ValueError(f"{path}: tolerances must be an object")
            unknown = sorted(set(tolerances) - _TOLERANCE_FIELDS)
            if unknown:
                raise ValueError(f"{path}: unknown tolerances: {', '.join(unknown)}")
            self.tolerances = replace(self.tolerances or Tolerances(), **tolerances)

        if "seed" in config:
            self.seed = _expect_int("seed", config["seed"])
        if "trials" in config:
            self.trials = _expect_int("trials", config["trials"])
        if "k_max" in config:
            self.k_max = _expect_int("k_max", config["k_max"])
        if "jobs" in config:
            self.jobs = _expect_int("jobs", config["jobs"])
        if "sizes" in config:
            sizes = config["sizes"]
            if not isinstance(sizes, list):
                raise ValueError(f"{path}: sizes must be a list")
            self.sizes = tuple(_expect_int("sizes", size) for size in sizes)
        if "output" in config:
            output = config["output"]
            if not isinstance(output, str):
                raise ValueError(f"{path}: output must be a string")
            self.output = Path(output)
        if "format" in config:
            self.output_format = OutputFormat.from_str(str(config["format"]))
        if "timing" in config:
            timing = config["timing"]
            if not isinstance(timing, bool):
                raise ValueError(f"{path}: timing must be a boolean")
            self.timing = timing

        return self

    def with_args(self, args: Mapping[str, Any]) -> "ConfigBuilder":
        """Updates attributes from parsed command-line arguments.

        Keys that are absent or map to None are left alone.

        Args:
            args: Typically, `vars()` of an argparse namespace.

        Returns:
            The updated builder.
        """
        overrides: Dict[str, Any] = {}
        for flag, name in TOLERANCE_FLAGS.items():
            value = args.get(flag)
            if value is not None:
                overrides[name] = value
        if overrides:
            self.tolerances = replace(self.tolerances or Tolerances(), **overrides)

        if args.get("seed") is not None:
            self.seed = int(args["seed"])
        if args.get("trials") is not None:
            self.trials = int(args["trials"])
        if args.get("sizes") is not None:
            self.sizes = tuple(args["sizes"])
        if args.get("k_max") is not None:
            self.k_max = int(args["k_max"])
        if args.get("jobs") is not None:
            self.jobs = int(args["jobs"])
        if args.get("output") is not None:
            self.output = Path(args["output"])
        if args.get("format") is not None:
            self.output_format = OutputFormat.from_str(str(args["format"]))
        if args.get("timing"):
            self.timing = True

        return self

    def build(self) -> CliConfig:
        """Builds a configuration object.

        Returns:
            The configuration object.
        """
        if self.tolerances is None:
            raise ValueError("tolerances is not set")

        if self.trials is None:
            raise ValueError("trials is not set")

        if self.sizes is None:
            raise ValueError("sizes is not set")

        if self.k_max is None:
            raise ValueError("k_max is not set")

        if self.seed is None:
            raise ValueError("seed is not set")

        if self.jobs is None:
            raise ValueError("jobs is not set")

        if self.output_format is None:
            raise ValueError("output_format is not set")

        if self.timing is None:
            raise ValueError("timing is not set")

        suite = SuiteConfig(trials=self.trials, sizes=self.sizes, k_max=self.k_max, seed=self.seed, jobs=self.jobs)
        return CliConfig(
            tolerances=self.tolerances,
            suite=suite,
            output=self.output,
            output_format=self.output_format,
            timing=self.timing,
        )
