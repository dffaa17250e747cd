"""Planar TSP instances, distances, tour costs and TSPLIB (EUC_2D) I/O."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

# Above this size distances are computed on demand instead of tabulated.
TABLE_LIMIT = 2048

Tour = tuple[int, ...]


class TSPError(ValueError):
    """Invalid instance, index or tour."""


class TSPLIBParseError(TSPError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedFormatError(TSPLIBParseError):
    pass


class Metric(enum.Enum):
    EUCLIDEAN_REAL = "real"
    EUCLIDEAN_ROUNDED = "rounded"

    @classmethod
    def parse(cls, value: "str | Metric") -> "Metric":
        if isinstance(value, Metric):
            return value
        key = str(value).strip().lower()
        for m in cls:
            if key in (m.value, m.name.lower()):
                return m
        raise TSPError(f"unknown metric {value!r} (expected 'real' or 'rounded')")


@dataclass(frozen=True)
class City:
    id: int
    x: float
    y: float


def nint(x):
    """Nearest integer with ties away from zero (works on scalars and arrays)."""
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


@dataclass(frozen=True, eq=False)
class Instance:
    """Immutable set of cities ``1..n`` with a fixed distance metric."""

    name: str
    cities: tuple[City, ...]
    metric: Metric = Metric.EUCLIDEAN_REAL
    _coords: np.ndarray = field(init=False, repr=False)
    _table: np.ndarray | None = field(init=False, repr=False)

    def __post_init__(self):
        cities = tuple(self.cities)
        if not cities:
            raise TSPError("an instance needs at least one city")
        for k, c in enumerate(cities, start=1):
            if c.id != k:
                raise TSPError(f"city ids must be 1..n in order; position {k} holds id {c.id}")
        object.__setattr__(self, "cities", cities)
        object.__setattr__(self, "metric", Metric.parse(self.metric))
        coords = np.array([(c.x, c.y) for c in cities], dtype=float)
        coords.setflags(write=False)
        object.__setattr__(self, "_coords", coords)
        table = None
        if len(cities) <= TABLE_LIMIT:
            diff = coords[:, None, :] - coords[None, :, :]
            table = np.sqrt((diff**2).sum(axis=2))
            if self.metric is Metric.EUCLIDEAN_ROUNDED:
                table = nint(table)
            table.setflags(write=False)
        object.__setattr__(self, "_table", table)

    @classmethod
    def from_coords(cls, coords, name: str = "instance",
                    metric: "Metric | str" = Metric.EUCLIDEAN_REAL) -> "Instance":
        pts = np.asarray(coords, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise TSPError(f"coordinates must have shape (n, 2), got {pts.shape}")
        cities = tuple(City(k, float(x), float(y)) for k, (x, y) in enumerate(pts, start=1))
        return cls(name, cities, Metric.parse(metric))

    @property
    def n(self) -> int:
        return len(self.cities)

    @property
    def coords(self) -> np.ndarray:
        """Read-only ``(n, 2)`` array; row ``k`` is city ``k + 1``."""
        return self._coords

    @property
    def rounded(self) -> bool:
        return self.metric is Metric.EUCLIDEAN_ROUNDED

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.name, self.cities, self.metric) == (other.name, other.cities, other.metric)

    def __hash__(self):
        return hash((self.name, self.cities, self.metric))

    def distance_matrix(self) -> np.ndarray:
        """Full ``(n, n)`` table indexed by 0-based city position."""
        if self._table is not None:
            return self._table
        return _pair_distances(self._coords[:, None, :], self._coords[None, :, :], self.rounded)

    def edge_lengths(self, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
        """Distances between 0-based city index arrays ``src`` and ``dst``."""
        if self._table is not None:
            return self._table[src, dst]
        return _pair_distances(self._coords[src], self._coords[dst], self.rounded)


def _pair_distances(a: np.ndarray, b: np.ndarray, rounded: bool) -> np.ndarray:
    d = np.sqrt(((a - b) ** 2).sum(axis=-1))
    return nint(d) if rounded else d


def _as_length(inst: Instance, value):
    return int(value) if inst.rounded else float(value)


def distance(inst: Instance, i: int, j: int):
    """Distance between 1-based cities ``i`` and ``j``."""
    for k in (i, j):
        if not 1 <= k <= inst.n:
            raise TSPError(f"city index {k} out of range 1..{inst.n}")
    if inst._table is not None:
        return _as_length(inst, inst._table[i - 1, j - 1])
    (x1, y1), (x2, y2) = inst.coords[i - 1], inst.coords[j - 1]
    d = math.hypot(x1 - x2, y1 - y2)
    return _as_length(inst, nint(d) if inst.rounded else d)


def validate_tour(t: Sequence[int], n: int) -> str | None:
    """Return ``None`` if ``t`` is a permutation of ``1..n``, else a short violation."""
    seen = set()
    for city in t:
        if isinstance(city, bool) or not isinstance(city, (int, np.integer)):
            return f"non-integer {city!r}"
        if not 1 <= city <= n:
            return f"out of range {city}"
        if city in seen:
            return f"duplicate {city}"
        seen.add(city)
    for city in range(1, n + 1):
        if city not in seen:
            return f"missing {city}"
    return None


def check_tour(t: Sequence[int], n: int) -> Tour:
    problem = validate_tour(t, n)
    if problem is not None:
        raise TSPError(f"invalid tour for n={n}: {problem}")
    return tuple(int(c) for c in t)


def batch_cost(inst: Instance, tours: np.ndarray) -> np.ndarray:
    """Costs of a ``(m, n)`` array of 1-based tours (no validation)."""
    idx = np.asarray(tours, dtype=np.intp) - 1
    return inst.edge_lengths(idx, np.roll(idx, -1, axis=-1)).sum(axis=-1)


def tour_cost(inst: Instance, t: Sequence[int]):
    """Closed tour length: consecutive edges plus the edge back to the start."""
    tour = check_tour(t, inst.n)
    return _as_length(inst, batch_cost(inst, np.asarray(tour)[None, :])[0])


def tour_space_size(n: int) -> int:
    """Number of distinct undirected closed tours over ``n`` cities, (n-1)!/2."""
    if n < 3:
        raise TSPError(f"tour_space_size needs n >= 3, got {n}")
    return math.factorial(n - 1) // 2


# --- TSPLIB --------------------------------------------------------------

_REQUIRED = ("NAME", "DIMENSION", "EDGE_WEIGHT_TYPE")


def parse_tsplib(text: str) -> Instance:
    """Parse the EUC_2D subset of TSPLIB into a rounded-metric instance."""
    header: dict[str, tuple[str, int]] = {}
    coords: dict[int, tuple[float, float]] = {}
    section_line = None
    lines = text.splitlines()
    lineno = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if section_line is None:
            if line.upper() == "EOF":
                break
            key = line.split(":", 1)[0].strip().upper()
            if key == "NODE_COORD_SECTION":
                section_line = lineno
                _check_header(header, lineno)
                continue
            if ":" not in line:
                if key.endswith("_SECTION"):
                    raise UnsupportedFormatError(f"unsupported section {key}", lineno)
                raise TSPLIBParseError(f"expected 'KEY: VALUE', got {line!r}", lineno)
            header[key] = (line.split(":", 1)[1].strip(), lineno)
            continue
        if line.upper() == "EOF":
            break
        parts = line.split()
        if len(parts) != 3:
            raise TSPLIBParseError(f"expected 'id x y', got {line!r}", lineno)
        try:
            cid = int(parts[0])
        except ValueError:
            raise TSPLIBParseError(f"non-integer city id {parts[0]!r}", lineno) from None
        try:
            x, y = float(parts[1]), float(parts[2])
        except ValueError:
            raise TSPLIBParseError(f"non-numeric coordinate in {line!r}", lineno) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise TSPLIBParseError(f"non-finite coordinate in {line!r}", lineno)
        if cid in coords:
            raise TSPLIBParseError(f"duplicate city id {cid}", lineno)
        coords[cid] = (x, y)

    if section_line is None:
        _check_header(header, lineno or None)
        raise TSPLIBParseError("missing NODE_COORD_SECTION", lineno or None)
    dim = int(header["DIMENSION"][0])
    if len(coords) != dim:
        raise TSPLIBParseError(
            f"DIMENSION is {dim} but {len(coords)} coordinate lines were found", lineno)
    if set(coords) != set(range(1, dim + 1)):
        bad = min(set(coords) ^ set(range(1, dim + 1)))
        raise TSPLIBParseError(f"city ids must be exactly 1..{dim} (offending id {bad})", lineno)
    cities = tuple(City(k, *coords[k]) for k in range(1, dim + 1))
    return Instance(header["NAME"][0], cities, Metric.EUCLIDEAN_ROUNDED)


def _check_header(header, lineno):
    for key in _REQUIRED:
        if key not in header:
            raise TSPLIBParseError(f"missing {key}", lineno)
    ewt, ln = header["EDGE_WEIGHT_TYPE"]
    if ewt.upper() != "EUC_2D":
        raise UnsupportedFormatError(f"EDGE_WEIGHT_TYPE {ewt} is not supported (only EUC_2D)", ln)
    dim, ln = header["DIMENSION"]
    try:
        if int(dim) < 1:
            raise ValueError
    except ValueError:
        raise TSPLIBParseError(f"DIMENSION must be a positive integer, got {dim!r}", ln) from None


def _fmt(v: float) -> str:
    return repr(float(v))


def dump_tsplib(inst: Instance) -> str:
    lines = [
        f"NAME: {inst.name}",
        "TYPE: TSP",
        f"DIMENSION: {inst.n}",
        "EDGE_WEIGHT_TYPE: EUC_2D",
        "NODE_COORD_SECTION",
    ]
    lines += [f"{c.id} {_fmt(c.x)} {_fmt(c.y)}" for c in inst.cities]
    lines.append("EOF")
    return "\n".join(lines) + "\n"


def load_tsplib(path: "str | Path", metric: "Metric | str | None" = None) -> Instance:
    """Read a TSPLIB file; ``metric`` overrides the rounded EUC_2D default."""
    inst = parse_tsplib(Path(path).read_text())
    if metric is not None and Metric.parse(metric) is not inst.metric:
        inst = Instance(inst.name, inst.cities, Metric.parse(metric))
    return inst


def berlin52_path() -> Path:
    return Path(__file__).with_name("data") / "berlin52.tsp"


def load_berlin52() -> Instance:
    return load_tsplib(berlin52_path())


def as_instance(obj: "Instance | Iterable", metric="real") -> Instance:
    if isinstance(obj, Instance):
        return obj
    return Instance.from_coords(obj, metric=metric)
