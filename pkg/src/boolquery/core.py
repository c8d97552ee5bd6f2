"""Boolean functions as truth tables, product measures and the function zoo.

Bit convention: input ``x = (x_1, ..., x_n)`` is stored at table index
``sum(x_i << (i - 1))``. In code bits are 0-based, so bit ``i`` of an index
is the value of ``x_{i+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

DEFAULT_ARITY_CAP = 24


class CapExceeded(ValueError):
    """Raised when an input is larger than an engine is willing to handle."""


def as_rational(value) -> Fraction:
    """Parse ``"1/3"``, ints, or Fractions into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or 'num/den' string")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class ProductMeasure:
    """The product Bernoulli measure with marginal ``p`` on the cube."""

    p: Fraction

    def __post_init__(self):
        p = as_rational(self.p)
        if not 0 <= p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)

    def weight(self, ones: int, zeros: int) -> Fraction:
        return self.p**ones * (1 - self.p) ** zeros

    def point_masses(self, n: int) -> list[Fraction]:
        """Mass of every point of ``{0,1}^n`` in table-index order."""
        p, q = self.p, 1 - self.p
        powp = [p**k for k in range(n + 1)]
        powq = [q**k for k in range(n + 1)]
        return [powp[popcount(x)] * powq[n - popcount(x)] for x in range(1 << n)]

    def scaled(self) -> tuple[int, int]:
        """``(a, b)`` with ``p = a/b``; integer point weights are ``a^k (b-a)^(n-k)``."""
        return self.p.numerator, self.p.denominator


def point_probability(m: ProductMeasure, x: Sequence[int]) -> Fraction:
    ones = sum(1 for xi in x if xi)
    return m.weight(ones, len(x) - ones)


class BooleanFunction:
    """An immutable Boolean function on ``arity`` bits given by its truth table.

    ``bits`` is an int whose bit at position ``index`` is ``f`` at that index.
    """

    __slots__ = ("arity", "bits", "__dict__")

    def __init__(self, arity: int, bits: int, cap: int | None = None):
        cap = DEFAULT_ARITY_CAP if cap is None else cap
        if arity < 0:
            raise ValueError("arity must be non-negative")
        if arity > cap:
            raise CapExceeded(f"arity {arity} exceeds the cap {cap}")
        if bits < 0 or bits >> (1 << arity):
            raise ValueError("truth table has bits beyond 2^arity entries")
        self.arity = arity
        self.bits = bits

    @classmethod
    def from_table(cls, table: Iterable[int], cap: int | None = None) -> "BooleanFunction":
        table = [1 if v else 0 for v in table]
        n = len(table).bit_length() - 1
        if len(table) != 1 << n:
            raise ValueError(f"table length {len(table)} is not a power of two")
        bits = 0
        for i, v in enumerate(table):
            if v:
                bits |= 1 << i
        return cls(n, bits, cap=cap)

    @classmethod
    def from_callable(cls, n: int, fn, cap: int | None = None) -> "BooleanFunction":
        """Build from ``fn(x)`` where ``x`` is a tuple ``(x_1, ..., x_n)``."""
        bits = 0
        for idx in range(1 << n):
            if fn(index_to_input(idx, n)):
                bits |= 1 << idx
        return cls(n, bits, cap=cap)

    @classmethod
    def from_ones(cls, n: int, ones: Iterable[int]) -> "BooleanFunction":
        bits = 0
        for idx in ones:
            bits |= 1 << idx
        return cls(n, bits)

    @classmethod
    def constant(cls, n: int, value: int) -> "BooleanFunction":
        return cls(n, ((1 << (1 << n)) - 1) if value else 0)

    @property
    def size(self) -> int:
        return 1 << self.arity

    @cached_property
    def table(self) -> np.ndarray:
        """Truth table as a read-only uint8 array indexed by table index."""
        n = self.size
        raw = self.bits.to_bytes((n + 7) // 8, "little")
        arr = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n]
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        return arr

    @cached_property
    def values(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.table)

    def __call__(self, x: Sequence[int]) -> int:
        return evaluate(self, x)

    def at(self, index: int) -> int:
        return (self.bits >> index) & 1

    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == (1 << self.size) - 1

    def ones_count(self) -> int:
        return popcount(self.bits)

    def negate(self) -> "BooleanFunction":
        return BooleanFunction(self.arity, ((1 << self.size) - 1) ^ self.bits)

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.arity == other.arity and self.bits == other.bits

    def __hash__(self):
        return hash((self.arity, self.bits))

    def __repr__(self):
        return f"BooleanFunction(arity={self.arity}, bits={self.bits:#x})"


def index_to_input(idx: int, n: int) -> tuple[int, ...]:
    return tuple((idx >> i) & 1 for i in range(n))


def input_to_index(x: Sequence[int]) -> int:
    idx = 0
    for i, xi in enumerate(x):
        if xi not in (0, 1, True, False):
            raise ValueError(f"input entries must be bits, got {xi!r}")
        if xi:
            idx |= 1 << i
    return idx


def evaluate(f: BooleanFunction, x: Sequence[int]) -> int:
    if len(x) != f.arity:
        raise ValueError(f"input has length {len(x)}, function has arity {f.arity}")
    return f.at(input_to_index(x))


def output_probability(f: BooleanFunction, m: ProductMeasure) -> Fraction:
    """``P[f(x) = 1]`` under ``m``, exactly."""
    n = f.arity
    counts = [0] * (n + 1)
    bits = f.bits
    for idx in range(f.size):
        if (bits >> idx) & 1:
            counts[popcount(idx)] += 1
    return sum((c * m.weight(k, n - k) for k, c in enumerate(counts) if c), Fraction(0))


def variance(f: BooleanFunction, m: ProductMeasure) -> Fraction:
    g = output_probability(f, m)
    return g * (1 - g)


@dataclass(frozen=True)
class Restriction:
    """A partial assignment: bits in ``assigned`` take the values in ``values``."""

    assigned: int
    values: int = 0

    def __post_init__(self):
        if self.values & ~self.assigned:
            raise ValueError("values has bits set outside the assigned mask")

    def fix(self, bit: int, value: int) -> "Restriction":
        m = 1 << bit
        return Restriction(self.assigned | m, self.values | (m if value else 0))

    def free_bits(self, n: int) -> list[int]:
        return [i for i in range(n) if not (self.assigned >> i) & 1]

    def merge(self, n: int, free_values: Sequence[int]) -> int:
        """Table index of the input agreeing with this restriction and ``free_values``."""
        idx = self.values
        for bit, v in zip(self.free_bits(n), free_values):
            if v:
                idx |= 1 << bit
        return idx


def restrict(f: BooleanFunction, r: Restriction) -> BooleanFunction:
    """The subfunction on the unassigned bits, kept in increasing index order."""
    n = f.arity
    if r.assigned >> n:
        raise ValueError("restriction assigns bits outside the function's arity")
    free = r.free_bits(n)
    bits = 0
    for j in range(1 << len(free)):
        idx = r.values
        for k, bit in enumerate(free):
            if (j >> k) & 1:
                idx |= 1 << bit
        if f.at(idx):
            bits |= 1 << j
    return BooleanFunction(len(free), bits)


def compose(f: BooleanFunction, g: BooleanFunction, cap: int | None = None) -> BooleanFunction:
    """``f o g`` on ``n*m`` bits; block ``i`` (bits ``i*m .. i*m+m-1``) feeds input ``i`` of f."""
    n, m = f.arity, g.arity
    cap = DEFAULT_ARITY_CAP if cap is None else cap
    if n * m > cap:
        raise CapExceeded(f"composition has arity {n * m} > cap {cap}")
    gt = g.table
    # y-index of every composite input, built block by block
    inner = np.zeros(1, dtype=np.int64)
    for i in range(n):
        # new block occupies the high end of the index
        inner = (inner[None, :] + (gt.astype(np.int64)[:, None] << i)).reshape(-1)
    table = f.table[inner]
    return BooleanFunction.from_table(table, cap=cap)


def xor_parity(f: BooleanFunction, k: int, cap: int | None = None) -> BooleanFunction:
    """``f(x) xor y_1 xor ... xor y_k`` with the k parity bits appended after x."""
    cap = DEFAULT_ARITY_CAP if cap is None else cap
    if f.arity + k > cap:
        raise CapExceeded(f"arity {f.arity + k} exceeds cap {cap}")
    par = np.array([popcount(j) & 1 for j in range(1 << k)], dtype=np.uint8)
    table = (par[:, None] ^ f.table[None, :]).reshape(-1)
    return BooleanFunction.from_table(table, cap=cap)


def iterate(f: BooleanFunction, k: int, cap: int | None = None) -> BooleanFunction:
    if k < 1:
        raise ValueError("k must be at least 1")
    cap = DEFAULT_ARITY_CAP if cap is None else cap
    if f.arity**k > cap:
        raise CapExceeded(f"iterate has arity {f.arity ** k} > cap {cap}")
    out = f
    for _ in range(k - 1):
        out = compose(f, out, cap=cap)
    return out


def is_monotone(f: BooleanFunction) -> bool:
    t = f.table
    idx = np.arange(f.size)
    for i in range(f.arity):
        low = idx[(idx >> i) & 1 == 0]
        if np.any(t[low] > t[low | (1 << i)]):
            return False
    return True


def mobius_coefficients(f: BooleanFunction) -> np.ndarray:
    """Multilinear coefficients ``c_S`` (indexed by the mask of S) as int64."""
    c = f.table.astype(np.int64).copy()
    idx = np.arange(f.size)
    for i in range(f.arity):
        hi = idx[(idx >> i) & 1 == 1]
        c[hi] -= c[hi ^ (1 << i)]
    return c


def from_mobius(n: int, coeffs: np.ndarray) -> np.ndarray:
    """Evaluate the multilinear polynomial with the given coefficients on the cube."""
    v = np.asarray(coeffs, dtype=np.int64).copy()
    idx = np.arange(1 << n)
    for i in range(n):
        hi = idx[(idx >> i) & 1 == 1]
        v[hi] += v[hi ^ (1 << i)]
    return v


def degree(f: BooleanFunction) -> int:
    c = mobius_coefficients(f)
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return 0
    return max(popcount(int(s)) for s in nz)


def edge_boundary(f: BooleanFunction) -> int:
    """Number of cube edges whose endpoints get different values."""
    t = f.table
    idx = np.arange(f.size)
    total = 0
    for i in range(f.arity):
        low = idx[(idx >> i) & 1 == 0]
        total += int(np.count_nonzero(t[low] != t[low | (1 << i)]))
    return total


# ---------------------------------------------------------------- zoo


def _weight_function(n: int, accept) -> BooleanFunction:
    return BooleanFunction.from_ones(n, (x for x in range(1 << n) if accept(popcount(x))))


def _pattern_ones(n: int, patterns: Iterable[str]) -> set[int]:
    ones = set()
    for pat in patterns:
        free = [i for i, c in enumerate(pat) if c == "*"]
        base = sum(1 << i for i, c in enumerate(pat) if c == "1")
        for bits in product((0, 1), repeat=len(free)):
            ones.add(base | sum(b << i for b, i in zip(bits, free)))
    return ones


# value-1 inputs as listed for the 4-bit separating examples; '*' = free
G4_ONES = ("1001", "0001", "0101", "0110")
H4_ONES = ("**01", "111*", "1000", "0011")


def zoo(name: str, params: Sequence[int] = ()) -> BooleanFunction:
    """Named functions: AND, OR, PAR, MAJ, MAJ4, TRIBES, ADDRESS, AEQ3, NISAN,
    G4, H4, ADDR7, DICT, CONST, ID."""
    key = name.upper().replace("-", "").replace("_", "")
    params = list(params)

    def need(k):
        if len(params) != k:
            raise ValueError(f"{name} takes {k} parameter(s), got {params}")

    if key in ("AND", "OR", "PAR", "PARITY"):
        need(1)
        n = params[0]
        if n < 0:
            raise ValueError("arity must be non-negative")
        if key == "AND":
            return _weight_function(n, lambda w: w == n)
        if key == "OR":
            return _weight_function(n, lambda w: w > 0)
        return _weight_function(n, lambda w: w % 2 == 1)
    if key in ("MAJ", "MAJORITY"):
        need(1)
        n = params[0]
        if n < 1 or n % 2 == 0:
            raise ValueError("MAJ needs an odd number of bits")
        return _weight_function(n, lambda w: 2 * w >= n + 1)
    if key == "MAJ4":
        need(0)
        return BooleanFunction.from_callable(4, lambda x: 2 * x[0] + x[1] + x[2] + x[3] >= 3)
    if key == "TRIBES":
        need(2)
        ell, m = params
        if ell < 1 or m < 1:
            raise ValueError("TRIBES needs positive sizes")
        return compose(zoo("OR", [ell]), zoo("AND", [m]))
    if key in ("ADDRESS", "ADDR"):
        need(1)
        m = params[0]
        if m < 0:
            raise ValueError("ADDRESS needs m >= 0")

        def address(x):
            a = sum(x[i] << i for i in range(m))
            return x[m + a]

        return BooleanFunction.from_callable(m + (1 << m), address)
    if key in ("AEQ3", "ALLEQUAL"):
        need(0)
        return BooleanFunction.from_callable(3, lambda x: x[0] == x[1] == x[2])
    if key == "NISAN":
        need(1)
        n = params[0]
        if n <= 0 or n % 4:
            raise ValueError("NISAN needs n divisible by 4")
        return _weight_function(n, lambda w: w in (n // 2, n // 2 + 1))
    if key == "G4":
        need(0)
        return BooleanFunction.from_ones(4, _pattern_ones(4, G4_ONES))
    if key == "H4":
        need(0)
        return BooleanFunction.from_ones(4, _pattern_ones(4, H4_ONES))
    if key == "ADDR7":
        need(0)

        def addr7(x):
            if x[4] ^ x[5] ^ x[6]:
                return x[0] ^ x[1]
            return x[2] ^ x[3]

        return BooleanFunction.from_callable(7, addr7)
    if key in ("DICT", "DICTATOR"):
        need(2)
        n, i = params
        if not 1 <= i <= n:
            raise ValueError("DICT(n, i) needs 1 <= i <= n")
        return BooleanFunction.from_callable(n, lambda x: x[i - 1])
    if key in ("CONST", "CONSTANT"):
        need(2)
        n, v = params
        if v not in (0, 1):
            raise ValueError("CONST value must be 0 or 1")
        return BooleanFunction.constant(n, v)
    if key in ("ID", "IDENTITY"):
        need(0)
        return BooleanFunction(1, 0b10)
    raise ValueError(f"unknown zoo function {name!r}")


# ---------------------------------------------------------------- text format


def dumps_truth_table(f: BooleanFunction) -> str:
    digits = max(1, (f.size + 3) // 4)
    return f"n={f.arity}\n{f.bits:0{digits}x}\n"


def loads_truth_table(text: str, cap: int | None = None) -> BooleanFunction:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 2 or not lines[0].startswith("n="):
        raise ValueError("truth-table text must be 'n=<arity>' followed by a hex line")
    n = int(lines[0][2:])
    return BooleanFunction(n, int(lines[1], 16), cap=cap)


def all_functions(n: int):
    """Every Boolean function on n bits, in truth-table order."""
    for bits in range(1 << (1 << n)):
        yield BooleanFunction(n, bits)


def monotone_functions(n: int) -> list[BooleanFunction]:
    """All monotone functions on n bits (as up-closed sets of inputs)."""
    size = 1 << n
    result = []

    def extend(idx, ones):
        if idx == size:
            result.append(BooleanFunction.from_ones(n, ones))
            return
        # idx ascending is a linear extension of the cube order, so every
        # lower neighbour of idx is decided already
        forced = any((idx >> i) & 1 and (idx ^ (1 << i)) in ones for i in range(n))
        if forced:
            extend(idx + 1, ones | {idx})
            return
        extend(idx + 1, ones)
        extend(idx + 1, ones | {idx})

    extend(0, frozenset())
    return result
