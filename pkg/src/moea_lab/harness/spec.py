"""Experiment descriptions and their flat ``key = value`` file format.

Example::

    # Coverage stagnation with a population as large as the front
    experiment = CoverageTrace
    problem = OneMinMax
    n = 200
    population = n+1
    scheme = TwoPermutationTournaments
    mutation = Bitwise
    runs = 20
    base_seed = 1
    budget = 3000

``population`` is either an absolute size or a multiple of ``n+1`` such as
``4(n+1)`` or ``1.5*(n+1)``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from moea_lab.benchmarks import ProblemKind
from moea_lab.engines import Mutation, TieOrder
from moea_lab.selection import SelectionScheme


class SpecError(ValueError):
    """An experiment description that cannot be run."""


class ExperimentKind(str, enum.Enum):
    RUNTIME_CURVE = "RuntimeCurve"
    COVERAGE_TRACE = "CoverageTrace"
    VARIANT_COMPARISON = "VariantComparison"
    EXTREMES_DISCOVERY = "ExtremesDiscovery"
    FRONT_SNAPSHOT = "FrontSnapshot"


class Algorithm(str, enum.Enum):
    NSGA2 = "nsga2"
    SEMO = "semo"
    GSEMO = "gsemo"


#: Population factors (times n+1) used in the published experiments.
PRESET_FACTORS = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(4), Fraction(8))

_RULE = re.compile(r"^(?:(?P<factor>\d+(?:\.\d+)?|\d+/\d+)\s*\*?\s*)?\(?\s*n\s*\+\s*1\s*\)?$")


@dataclass(frozen=True)
class PopulationRule:
    """``factor * (n + 1)`` or an absolute size."""

    factor: Fraction | None = None
    absolute: int | None = None

    @classmethod
    def parse(cls, text: str) -> "PopulationRule":
        text = text.strip().replace(" ", "")
        if text.isdigit():
            return cls(absolute=int(text))
        match = _RULE.match(text)
        if not match:
            raise SpecError(f"cannot read population size {text!r}; use e.g. 204, n+1 or 4(n+1)")
        factor = match.group("factor")
        return cls(factor=Fraction(factor) if factor else Fraction(1))

    def resolve(self, n: int, scheme: SelectionScheme) -> int:
        """Population size for problem size ``n``.

        Fractional sizes round up. Two-permutation tournaments need an even
        size, so an odd multiple of ``n + 1`` is rounded up to the next even
        number; absolute sizes are used as given.
        """
        if self.absolute is not None:
            return self.absolute
        size = math.ceil(self.factor * (n + 1))
        if scheme is SelectionScheme.TWO_PERMUTATION_TOURNAMENTS and size % 2:
            size += 1
        return size

    def __str__(self) -> str:
        if self.absolute is not None:
            return str(self.absolute)
        return "n+1" if self.factor == 1 else f"{self.factor}(n+1)"


@dataclass(frozen=True)
class ExperimentSpec:
    kind: ExperimentKind
    problem: ProblemKind
    n_values: tuple[int, ...]
    population: PopulationRule = field(default_factory=lambda: PopulationRule(factor=Fraction(4)))
    scheme: SelectionScheme = SelectionScheme.TWO_PERMUTATION_TOURNAMENTS
    mutation: Mutation = Mutation.BITWISE
    algorithm: Algorithm = Algorithm.NSGA2
    runs: int = 1
    base_seed: int = 0
    budget: int | None = None
    window: tuple[int, int] | None = None
    snapshot_generation: int | None = None
    tie_order: TieOrder = TieOrder.RANDOM
    name: str | None = None

    def validate(self) -> "ExperimentSpec":
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise SpecError("n must list one or more positive problem sizes")
        if self.runs < 1:
            raise SpecError("runs must be at least 1")
        if self.base_seed < 0 or self.base_seed + self.runs - 1 >= 2**64:
            raise SpecError("seeds must fit in an unsigned 64-bit integer")
        if self.budget is not None and self.budget < 0:
            raise SpecError("budget must be non-negative")
        if self.population.absolute is not None and self.population.absolute < 2:
            raise SpecError("population size must be at least 2")
        if self.population.factor is not None and self.population.factor <= 0:
            raise SpecError("population factor must be positive")
        if self.kind is ExperimentKind.VARIANT_COMPARISON and self.algorithm is not Algorithm.NSGA2:
            raise SpecError("VariantComparison runs NSGA-II variants only")
        if self.kind is ExperimentKind.FRONT_SNAPSHOT and self.snapshot_generation is not None:
            if self.snapshot_generation < 0:
                raise SpecError("snapshot_generation must be non-negative")
        if self.window is not None:
            lo, hi = self.window
            if lo < 0 or hi < lo:
                raise SpecError(f"invalid generation window {lo}..{hi}")
            windowed = (ExperimentKind.COVERAGE_TRACE, ExperimentKind.VARIANT_COMPARISON)
            for n in self.n_values if self.kind in windowed else ():
                if hi > self.generations(n):
                    raise SpecError(f"window end {hi} exceeds the generation budget {self.generations(n)}")
        if self.absolute_size_odd_for_pairs():
            raise SpecError("two-permutation tournaments need an even population size")
        return self

    def absolute_size_odd_for_pairs(self) -> bool:
        return (
            self.algorithm is Algorithm.NSGA2
            and (
                self.scheme is SelectionScheme.TWO_PERMUTATION_TOURNAMENTS
                or self.kind is ExperimentKind.VARIANT_COMPARISON
            )
            and self.population.absolute is not None
            and self.population.absolute % 2 == 1
        )

    @property
    def label(self) -> str:
        return self.name or self.kind.value

    def population_size(self, n: int, scheme: SelectionScheme | None = None) -> int:
        return self.population.resolve(n, scheme or self.scheme)

    def generations(self, n: int) -> int:
        """Generation (or iteration) budget for problem size ``n``."""
        if self.kind is ExperimentKind.FRONT_SNAPSHOT and self.snapshot_generation is not None:
            return self.snapshot_generation
        if self.budget is not None:
            return self.budget
        if self.kind is ExperimentKind.RUNTIME_CURVE:
            return 100 * math.ceil(theorem_bound(self.problem, n, self.scheme, self.algorithm))
        return 3000 if self.problem is ProblemKind.ONE_MIN_MAX else 5000

    def coverage_window(self, n: int) -> tuple[int, int]:
        """Generations pooled in coverage summaries; defaults to the last 1000."""
        if self.window is not None:
            return self.window
        end = self.generations(n)
        return max(end - 999, 0), end

    def to_dict(self) -> dict:
        out = asdict(self)
        out["population"] = str(self.population)
        for key, value in out.items():
            if isinstance(value, enum.Enum):
                out[key] = value.value
        out["n_values"] = list(self.n_values)
        if self.window is not None:
            out["window"] = list(self.window)
        return out


def theorem_bound(problem: ProblemKind, n: int, scheme: SelectionScheme, algorithm: Algorithm) -> float:
    """Proven expected-runtime bound in generations (iterations for SEMO/GSEMO)."""
    e = math.e
    if algorithm is not Algorithm.NSGA2:
        # classic O(n^2 log n) and O(n^3) guarantees with a leading constant e
        if problem is ProblemKind.ONE_MIN_MAX:
            return e * n * (n + 1) * (math.log(n) + 1)
        return e * n**3
    easy = not scheme.is_tournament
    if problem is ProblemKind.ONE_MIN_MAX:
        factor = 2 * e**2 / (e - 1) if easy else 200 * e / 3
        return factor * n * (math.log(n) + 1)
    return (2 * e**2 / (e - 1) if easy else 15 * e) * n**2


def _int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise SpecError(f"{key} must be an integer, got {value!r}") from None


def _window(value: str) -> tuple[int, int]:
    match = re.fullmatch(r"\s*(\d+)\s*(?:\.\.|-|,)\s*(\d+)\s*", value)
    if not match:
        raise SpecError(f"window must look like 2001..3000, got {value!r}")
    return int(match.group(1)), int(match.group(2))


def _enum(parse, value: str, key: str):
    try:
        return parse(value)
    except ValueError as exc:
        raise SpecError(f"{key}: {exc}") from None


_FIELDS = {
    "experiment": ("kind", lambda v: _enum(ExperimentKind, v.strip(), "experiment")),
    "problem": ("problem", lambda v: _enum(ProblemKind.parse, v, "problem")),
    "n": ("n_values", lambda v: tuple(_int(x, "n") for x in re.split(r"[,\s]+", v.strip()) if x)),
    "population": ("population", PopulationRule.parse),
    "scheme": ("scheme", lambda v: _enum(SelectionScheme.parse, v, "scheme")),
    "mutation": ("mutation", lambda v: _enum(Mutation.parse, v, "mutation")),
    "algorithm": ("algorithm", lambda v: _enum(Algorithm, v.strip().lower().replace("-", ""), "algorithm")),
    "runs": ("runs", lambda v: _int(v, "runs")),
    "base_seed": ("base_seed", lambda v: _int(v, "base_seed")),
    "seed": ("base_seed", lambda v: _int(v, "seed")),
    "budget": ("budget", lambda v: _int(v, "budget")),
    "window": ("window", _window),
    "snapshot_generation": ("snapshot_generation", lambda v: _int(v, "snapshot_generation")),
    "tie_order": ("tie_order", lambda v: _enum(TieOrder, v.strip().lower(), "tie_order")),
    "name": ("name", str.strip),
}


def _pairs(text: str) -> list[tuple[str, str]]:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        pairs.append((key.strip().lower(), value.strip()))
    return pairs


def _apply(values: dict, pairs: list[tuple[str, str]]) -> None:
    for key, raw in pairs:
        if key not in _FIELDS:
            raise SpecError(f"unknown key {key!r}; known keys: {', '.join(sorted(_FIELDS))}")
        attr, convert = _FIELDS[key]
        values[attr] = convert(raw)


def parse_spec(text: str, overrides: list[str] = (), name: str | None = None) -> ExperimentSpec:
    """Build and validate a spec from file text plus ``key=value`` overrides."""
    values: dict = {}
    _apply(values, _pairs(text))
    _apply(values, _pairs("\n".join(overrides)))
    for required in ("kind", "problem", "n_values"):
        if required not in values:
            key = {"kind": "experiment", "n_values": "n"}.get(required, required)
            raise SpecError(f"missing required key {key!r}")
    if name and "name" not in values:
        values["name"] = name
    return ExperimentSpec(**values).validate()


def load_spec(path: str | Path, overrides: list[str] = ()) -> ExperimentSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read spec file {path}: {exc}") from None
    return parse_spec(text, overrides, name=path.stem)


def with_seed(spec: ExperimentSpec, seed: int) -> ExperimentSpec:
    return replace(spec, base_seed=seed).validate()
