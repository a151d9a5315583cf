"""Computable stand-ins for the parameter functions f, g, F and h."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional

from ..errors import TableError, TableRangeError
from ..spectra import ALEPH0, is_aleph0


def _bit_prefix_sums(bits) -> list:
    sums = [0]
    for b in bits:
        sums.append(sums[-1] + b)
    return sums


def _check_bits(bits, name: str) -> None:
    for i, b in enumerate(bits, start=1):
        if b not in (0, 1):
            raise TableError(f"{name}({i})={b} is not 0 or 1")


def _balance_violation(sums, n: int, name: str) -> Optional[str]:
    # n is a power of two, n >= 2
    if sums[n] != n // 2:
        return f"{name} is unbalanced at n={n}: {name}1({n})={sums[n]}, expected {n // 2}"
    return None


@dataclass(frozen=True)
class FTable:
    """A finite prefix of f with f(1)=1 and exactly half ones below every power of two."""

    bits: tuple

    name = "f"

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        object.__setattr__(self, "_sums", _bit_prefix_sums(self.bits))
        self.validate()

    def _violations_at(self, n: int) -> Optional[str]:
        if n == 1 and self.bits[0] != 1:
            return f"{self.name}(1) must be 1, found {self.bits[0]}"
        if n >= 2 and n & (n - 1) == 0:
            return _balance_violation(self._sums, n, self.name)
        return None

    def validate(self) -> None:
        if not self.bits:
            raise TableError(f"{self.name} table is empty")
        _check_bits(self.bits, self.name)
        for n in range(1, len(self.bits) + 1):
            msg = self._violations_at(n)
            if msg:
                raise TableError(msg)

    def __len__(self) -> int:
        return len(self.bits)

    def _check_range(self, n: int) -> None:
        if not 1 <= n <= len(self.bits):
            raise TableRangeError(f"{self.name}({n}) is beyond the stored prefix of length {len(self.bits)}")

    def __call__(self, n: int) -> int:
        self._check_range(n)
        return self.bits[n - 1]

    def ones(self, n: int) -> int:
        """Number of i in [1, n] with value 1."""
        if n == 0:
            return 0
        self._check_range(n)
        return self._sums[n]

    def zeros(self, n: int) -> int:
        return n - self.ones(n)

    def text(self) -> str:
        return " ".join(map(str, self.bits))


@dataclass(frozen=True)
class GTable(FTable):
    """An FTable that also satisfies the seeds g(1)=g(3)=1, g(2)=g(4)=0 and
    g(2n+1)=g(2n+2) for n >= 2."""

    name = "g"

    def _violations_at(self, n: int) -> Optional[str]:
        seeds = {1: 1, 2: 0, 3: 1, 4: 0}
        if n in seeds and self.bits[n - 1] != seeds[n]:
            return f"g({n}) must be {seeds[n]}, found {self.bits[n - 1]}"
        if n >= 6 and n % 2 == 0 and self.bits[n - 2] != self.bits[n - 1]:
            return f"g pairing broken: g({n - 1})={self.bits[n - 2]} but g({n})={self.bits[n - 1]}"
        return super()._violations_at(n)

    @classmethod
    def from_f(cls, f: FTable, length: Optional[int] = None) -> "GTable":
        """g(1..4) = 1,0,1,0 and g(2n+1) = g(2n+2) = f(n+1) for n >= 2."""
        length = length if length is not None else 2 * len(f)
        bits = [1, 0, 1, 0]
        n = 2
        while len(bits) < length:
            b = f(n + 1)
            bits += [b, b]
            n += 1
        return cls(tuple(bits[:length]))


def thue_morse_f(length: int) -> FTable:
    """f(n) = 1 - (parity of the binary digit sum of n-1); balanced on every dyadic block."""
    return FTable(tuple(1 - (bin(n - 1).count("1") % 2) for n in range(1, length + 1)))


class FRelation:
    """The decidable relation F(m) >= n, optionally backed by an explicit table."""

    def __init__(self, table: Optional[Mapping[int, float]] = None, geq: Optional[Callable] = None):
        if (table is None) == (geq is None):
            raise ValueError("give exactly one of an explicit table or a geq relation")
        self.table = None
        if table is not None:
            clean = {}
            for m, v in table.items():
                if int(m) < 1:
                    raise TableError(f"F row {m} is not a positive integer")
                if not is_aleph0(v) and (int(v) != v or v < 1):
                    raise TableError(f"F({m})={v} must be a positive integer or inf")
                clean[int(m)] = v if is_aleph0(v) else int(v)
            self.table = dict(sorted(clean.items()))
        self._geq = geq

    def geq(self, m: int, n: int) -> bool:
        if n <= 1:
            return True
        if self.table is None:
            return bool(self._geq(m, n))
        return is_aleph0(self.value(m)) or self.value(m) >= n

    def value(self, m: int):
        if self.table is None:
            raise TableError("F is only available through its geq relation")
        if m not in self.table:
            raise TableRangeError(f"F({m}) is not in the table")
        return self.table[m]

    def is_infinite(self, m: int) -> bool:
        return is_aleph0(self.value(m))

    def rows(self) -> list:
        if self.table is None:
            raise TableError("F is only available through its geq relation")
        return list(self.table)

    def text(self) -> str:
        return " ".join(f"{m}={'inf' if is_aleph0(v) else v}" for m, v in self.table.items())


def step_bounded_F(halts_within: Callable[[int, int], bool]) -> FRelation:
    """F(m) >= n iff machine m has not halted within n steps.

    ``halts_within(m, steps)`` must be monotone in ``steps``.
    """
    return FRelation(geq=lambda m, n: not halts_within(m, n - 1))


class HTable:
    """A finite 0/1 prefix of h, zero beyond it. Counts reads for instrumentation."""

    def __init__(self, bits: Iterable[int] = ()):
        self.bits = tuple(int(b) for b in bits)
        _check_bits(self.bits, "h")
        self.reads = 0

    def __call__(self, n: int) -> int:
        self.reads += 1
        if n < 1:
            raise ValueError("h is defined on positive integers")
        return self.bits[n - 1] if n <= len(self.bits) else 0

    def text(self) -> str:
        return " ".join(map(str, self.bits))


@dataclass
class OracleTables:
    f: Optional[FTable] = None
    g: Optional[GTable] = None
    F: Optional[FRelation] = None
    h: Optional[HTable] = None


DEFAULT_F = thue_morse_f(64)
DEFAULT_G = GTable.from_f(DEFAULT_F, 64)
DEFAULT_FREL = FRelation({m: (ALEPH0 if m % 3 == 2 else max(1, m // 2)) for m in range(1, 33)})


def default_tables() -> OracleTables:
    return OracleTables(DEFAULT_F, DEFAULT_G, DEFAULT_FREL, HTable())


def _parse_bits(key: str, values: list) -> list:
    out = []
    for tok in values:
        if tok not in ("0", "1"):
            raise TableError(f"{key}: entry {len(out) + 1} is {tok!r}, expected 0 or 1")
        out.append(int(tok))
    return out


def parse_tables(text: str) -> OracleTables:
    """Read ``f:``, ``g:``, ``F:`` and ``h:`` lines; validates every table."""
    tables = OracleTables()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise TableError(f"line {lineno}: expected 'key: values'")
        key, rest = line.split(":", 1)
        key = key.strip()
        values = rest.split()
        if key in seen:
            raise TableError(f"line {lineno}: duplicate table {key!r}")
        seen.add(key)
        if key == "f":
            tables.f = FTable(tuple(_parse_bits(key, values)))
        elif key == "g":
            tables.g = GTable(tuple(_parse_bits(key, values)))
        elif key == "h":
            tables.h = HTable(_parse_bits(key, values))
        elif key == "F":
            rows = {}
            for tok in values:
                m, sep, v = tok.partition("=")
                if not sep or not m.isdigit():
                    raise TableError(f"F: malformed row {tok!r}, expected m=value")
                if v == "inf":
                    rows[int(m)] = ALEPH0
                elif v.isdigit():
                    rows[int(m)] = int(v)
                else:
                    raise TableError(f"F: value {v!r} for row {m} must be a positive integer or inf")
            tables.F = FRelation(rows)
        else:
            raise TableError(f"line {lineno}: unknown table {key!r}")
    return tables


def load_tables(path) -> OracleTables:
    return parse_tables(Path(path).read_text())
