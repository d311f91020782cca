"""Codewords of the cyclic-division-algebra code and their quality metrics."""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ArgumentError, BudgetError, ConsistencyError
from .periods import CyclotomicInt, vandermonde
from .quadring import QuadInt, Ring

ENUMERATION_BUDGET = 10**8
MONOTONICITY_NOTE = (
    "A smaller |gamma| gives a smaller energy E and hence a larger normalized diversity product 1/E^n."
)


@dataclass(frozen=True)
class CodeSpec:
    orbit: object
    gamma: QuadInt
    label: str = ""

    def __post_init__(self):
        if self.gamma.norm() not in (2, 3, 5):
            raise ArgumentError(f"unsupported gamma {self.gamma} (norm {self.gamma.norm()})")
        if self.gamma.ring is not self.orbit.ring:
            raise ArgumentError("gamma and orbit use different base rings")

    @property
    def n(self):
        return self.orbit.n

    @cached_property
    def eta_powers(self):
        eta = self.orbit.eta
        out = [CyclotomicInt.from_quadint(self.orbit.conductor, QuadInt(1, 0, self.orbit.ring))]
        for _ in range(self.n - 1):
            out.append(out[-1] * eta)
        return out

    @cached_property
    def sigma_residues(self):
        """Residues c**j with sigma**j(zeta) = zeta**(c**j)."""
        m = self.orbit.conductor
        return [pow(self.orbit.generator, j, m) for j in range(self.n)]


@dataclass
class Codeword:
    entries: list
    n: int

    def complex_matrix(self):
        return np.array([[complex(x) for x in row] for row in self.entries], dtype=complex)


def _symbol(x, ring):
    if isinstance(x, QuadInt):
        if x.ring is not ring:
            raise ArgumentError("symbol from a different ring")
        return x
    if isinstance(x, int):
        return QuadInt(x, 0, ring)
    if isinstance(x, tuple) and len(x) == 2:
        return QuadInt(int(x[0]), int(x[1]), ring)
    if isinstance(x, complex) and ring is Ring.GAUSSIAN and x.real.is_integer() and x.imag.is_integer():
        return QuadInt(int(x.real), int(x.imag), ring)
    raise ArgumentError(f"cannot use {x!r} as a symbol")


def build_codeword(spec, X):
    """S[r][c] = sigma**c(s_{(r - c) mod n}), times gamma strictly above the diagonal.

    s_i = sum_j X[i][j] * eta**j.
    """
    n = spec.n
    if len(X) != n or any(len(row) != n for row in X):
        raise ArgumentError(f"symbol matrix must be {n}x{n}")
    ring = spec.orbit.ring
    m = spec.orbit.conductor
    zero = CyclotomicInt.zero(m, ring)
    s = []
    for row in X:
        acc = zero
        for x, p in zip(row, spec.eta_powers):
            x = _symbol(x, ring)
            if x:
                acc = acc + p * x
        s.append(acc)
    conj = [[si.galois(c) for si in s] for c in spec.sigma_residues]
    gamma = spec.gamma
    entries = [
        [conj[c][(r - c) % n] * gamma if r < c else conj[c][(r - c) % n] for c in range(n)]
        for r in range(n)
    ]
    return Codeword(entries, n)


def _det_exact(entries):
    # Laplace expansion along rows, memoized on the set of used columns
    n = len(entries)
    if n == 0:
        raise ArgumentError("empty matrix")
    first = entries[0][0]
    zero = CyclotomicInt.zero(first.m, first.ring)
    dp = {0: CyclotomicInt.from_quadint(first.m, QuadInt(1, 0, first.ring))}
    for r in range(n):
        nxt = {}
        for mask, val in dp.items():
            if val.is_zero():
                continue
            for c in range(n):
                bit = 1 << c
                if mask & bit:
                    continue
                x = entries[r][c]
                if x.is_zero():
                    continue
                # sign from the number of used columns to the right of c
                term = val * x
                if bin(mask >> (c + 1)).count("1") % 2:
                    term = -term
                nxt[mask | bit] = nxt.get(mask | bit, zero) + term
        dp = nxt
    return dp.get((1 << n) - 1, zero)


def det_exact(codeword):
    return _det_exact(codeword.entries)


def det_norm(codeword, check=True):
    """|det S|**2 as an exact integer, cross-checked against floating point."""
    d = det_exact(codeword)
    if not d.is_constant():
        raise ConsistencyError("determinant did not reduce to the base ring")
    value = d.constant().norm()
    if check:
        approx = abs(np.linalg.det(codeword.complex_matrix())) ** 2
        if abs(approx - value) > 1e-6 * max(1.0, value):
            raise ConsistencyError(f"exact |det|^2={value} but floating point gives {approx}")
    return value


@dataclass
class MinDetResult:
    minimum: int
    witness: list
    checked: int
    values: dict = field(default_factory=dict)
    min_float: float = math.inf

    def to_dict(self):
        return {
            "min_det": self.minimum,
            "witness": [[str(x) for x in row] for row in self.witness],
            "checked": self.checked,
            "value_counts": {str(k): v for k, v in sorted(self.values.items())},
            "min_float": self.min_float,
        }


def min_det_bruteforce(spec, radius, budget=ENUMERATION_BUDGET):
    """Minimum |det S|**2 over nonzero symbol matrices with coordinates in [-radius, radius].

    The first minimiser in enumeration order is kept, so the witness is
    deterministic.
    """
    n = spec.n
    if radius < 1:
        raise ArgumentError("radius must be >= 1 (the box contains no nonzero matrix)")
    total = (2 * radius + 1) ** (2 * n * n)
    if total > budget:
        raise BudgetError(f"{total} symbol matrices exceed the budget of {budget}; reduce radius or n")
    ring = spec.orbit.ring
    coords = range(-radius, radius + 1)
    symbols = [QuadInt(a, b, ring) for a in coords for b in coords]
    best, witness, checked = None, None, 0
    values = {}
    min_float = math.inf
    for flat in itertools.product(symbols, repeat=n * n):
        if not any(flat):
            continue
        X = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        cw = build_codeword(spec, X)
        v = det_norm(cw, check=False)
        approx = abs(np.linalg.det(cw.complex_matrix())) ** 2
        if abs(approx - v) > 1e-6 * max(1.0, v):
            raise ConsistencyError(f"exact {v} vs float {approx} at {X}")
        min_float = min(min_float, approx)
        values[v] = values.get(v, 0) + 1
        checked += 1
        if best is None or v < best:
            best, witness = v, X
    return MinDetResult(best, witness, checked, values, min_float)


def _weights(n, gamma):
    g2 = gamma.norm()
    return [(n - a) + a * g2 for a in range(n)]


def energy(spec):
    """Encoding energy: sum_a [(n-a) + a|gamma|^2] * sum_b |sigma**a(eta)|^(2b)."""
    n = spec.n
    total = 0.0
    for w, v in zip(_weights(n, spec.gamma), spec.orbit.complex_orbit):
        r = abs(v) ** 2
        total += w * sum(r**b for b in range(n))
    return total


def energy_frobenius(spec):
    """The same energy as a sum of squared Frobenius norms of diag(I, gamma I) @ Xi."""
    n = spec.n
    xi = vandermonde(spec.orbit)
    g = complex(spec.gamma)
    total = 0.0
    for i in range(n):
        d = np.array([1.0] * (n - i) + [g] * i)
        total += np.linalg.norm(d[:, None] * xi, "fro") ** 2
    return float(total)


def energy_exact(spec):
    """Integer energy when every conjugate is a root of unity, else None."""
    if not spec.orbit.roots_of_unity:
        return None
    n = spec.n
    return n * sum(_weights(n, spec.gamma))


@dataclass
class CodeMetrics:
    label: str
    gamma: QuadInt
    n: int
    energy: float
    energy_exact: object = None
    min_det_sample: object = None
    radius: object = None

    @property
    def E(self):
        return self.energy_exact if self.energy_exact is not None else self.energy

    @property
    def xi(self):
        return f"1/{format_energy(self.E)}^{self.n}"

    @property
    def xi_log10(self):
        return -self.n * math.log10(self.E)

    def to_dict(self):
        d = {
            "label": self.label,
            "gamma": str(self.gamma),
            "n": self.n,
            "E": self.energy_exact if self.energy_exact is not None else self.energy,
            "xi": self.xi,
            "xi_log10": self.xi_log10,
        }
        if self.min_det_sample is not None:
            d["min_det_sample"] = self.min_det_sample
            d["radius"] = self.radius
        return d


def format_energy(E):
    if isinstance(E, int):
        return str(E)
    if E < 1e7:
        return str(round(E))
    return f"{E:.5g}"


def code_metrics(spec, radius=None):
    m = CodeMetrics(spec.label, spec.gamma, spec.n, energy(spec), energy_exact(spec))
    if radius is not None:
        m.min_det_sample = min_det_bruteforce(spec, radius).minimum
        m.radius = radius
    return m


def diversity_report(specs):
    """Metrics for codes of equal size, best (largest xi, smallest E) first."""
    specs = list(specs)
    if not specs:
        return []
    if len({s.n for s in specs}) != 1:
        raise ArgumentError("all codes in a report must have the same n")
    rows = [code_metrics(s) for s in specs]
    return sorted(rows, key=lambda r: r.energy)


def diversity_csv(specs):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "xi", "gamma", "orbit"])
    by_label = {s.label: s for s in specs}
    for row in diversity_report(specs):
        orbit = by_label[row.label].orbit
        w.writerow([row.label, row.xi, str(row.gamma), " ".join("+".join(map(str, e)) for e in orbit.exponents)])
    return buf.getvalue()
