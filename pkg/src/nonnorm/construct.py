"""Modulus search, construction plans and regeneration of the degree tables."""
from __future__ import annotations

import csv
import io
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from .arith import carmichael, crt, factorize, primitive_root
from .errors import ArgumentError, NonNormError, SearchExhaustedError, UncertifiedError
from .verify import get_base, verify_entry

log = logging.getLogger(__name__)

DEFAULT_LIMIT = 10**6
LIMIT_ENV = "NONNORM_SEARCH_LIMIT"


@dataclass(frozen=True)
class FieldFactor:
    """The part of the field coming from one rational prime.

    ``degree`` is the product of the certified q**k assigned to ``prime``;
    the subfield of that degree lives in Q(zeta_conductor) and its Galois
    group is generated by zeta -> zeta**generator.
    """

    prime: int
    conductor: int
    degree: int
    generator: int
    parts: tuple

    def to_dict(self):
        return {
            "prime": self.prime,
            "conductor": self.conductor,
            "degree": self.degree,
            "generator": self.generator,
            "parts": list(self.parts),
        }


@dataclass
class ExtensionPlan:
    base: object
    n: int
    m: int
    certificates: list = field(default_factory=list)
    factor_fields: list = field(default_factory=list)
    search_trace: list = field(default_factory=list)

    @property
    def conductor(self):
        return math.prod(f.conductor for f in self.factor_fields)

    @property
    def generator(self):
        """Residue modulo ``conductor`` acting as the Galois generator."""
        if not self.factor_fields:
            return 1
        return crt([f.generator for f in self.factor_fields], [f.conductor for f in self.factor_fields])

    @property
    def composite(self):
        return len(self.factor_fields) > 1

    def to_dict(self):
        return {
            "base": self.base.name,
            "n": self.n,
            "m": self.m,
            "conductor": self.conductor,
            "generator": self.generator,
            "certificates": [c.to_dict() for c in self.certificates],
            "factor_fields": [f.to_dict() for f in self.factor_fields],
            "eta": "sum-of-periods" if self.composite else "gaussian-period",
            "search_trace": [{"m": m, "reason": r} for m, r in self.search_trace],
        }


def _field_factors(certificates):
    by_prime = {}
    for cert in certificates:
        by_prime.setdefault(cert.prime, []).append(cert)
    out = []
    for p in sorted(by_prime):
        certs = by_prime[p]
        degree = math.prod(c.degree for c in certs)
        if p == 2:
            conductor = 1 << (degree.bit_length() + 1)  # 2^(k+2): real subfield of degree 2^k
            gen = 3
        else:
            e = 1
            while degree % p ** (e - 1) == 0 and (p - 1) * p ** (e - 1) % degree:
                e += 1
            conductor = p**e
            gen = primitive_root(conductor)
        out.append(FieldFactor(p, conductor, degree, gen, tuple(c.label() for c in certs)))
    return out


def _plan_from_report(report, trace=()):
    return ExtensionPlan(
        report.base,
        report.n,
        report.m,
        list(report.certificates),
        _field_factors(report.certificates),
        list(trace),
    )


def trivial_plan(base):
    return ExtensionPlan(get_base(base), 1, 1)


def plan_extension(base, n, m):
    """Verify (n, m) and attach the per-prime period parameters."""
    base = get_base(base)
    if n == 1:
        return trivial_plan(base)
    report = verify_entry(base, n, m)
    if not report.certified:
        raise UncertifiedError(f"degree {n} is not certified for m={m}", report)
    return _plan_from_report(report)


def _useful_exponent(p, e):
    # largest cyclic degree a route can extract from p^e
    if p == 2:
        return 1 << (e - 2) if e >= 3 else 1
    return (p - 1) * p ** (e - 1)


def is_candidate(base, n, m):
    """Cheap necessary condition for m to be the *smallest* certified modulus.

    Every prime power p**e || m must be needed by some q**k || n (dropping an
    unneeded factor, or lowering its exponent, gives a smaller valid m).
    """
    if base.overlaps(m):
        return False
    if carmichael(m) % n:
        return False
    parts = factorize(n)
    for p, e in factorize(m):
        full = _useful_exponent(p, e)
        lower = _useful_exponent(p, e - 1) if e > 1 else 1
        if not any(full % q**k == 0 and (e == 1 or lower % q**k) for q, k in parts):
            return False
    return True


def _default_limit():
    raw = os.environ.get(LIMIT_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ArgumentError(f"{LIMIT_ENV}={raw!r} is not an integer") from None
    return DEFAULT_LIMIT


def find_modulus(base, n, limit=None, naive=False):
    """Smallest m (ascending scan) whose entry report is certified.

    ``naive`` verifies every admissible m instead of pre-filtering with
    :func:`is_candidate`; both must agree.
    """
    base = get_base(base)
    if n < 1:
        raise ArgumentError("degree must be positive")
    if n == 1:
        return trivial_plan(base)
    limit = _default_limit() if limit is None else limit
    trace = []
    for m in range(3, limit + 1):
        if base.overlaps(m):
            continue
        if naive:
            if carmichael(m) % n:
                continue
        elif not is_candidate(base, n, m):
            continue
        report = verify_entry(base, n, m)
        if report.certified:
            return _plan_from_report(report, trace)
        trace.append((m, "; ".join(report.reasons)))
    raise SearchExhaustedError(f"no certified modulus <= {limit} for n={n}", trace)


def load_reference_tables(path=None):
    """Read the bundled ``base,n,modulus`` fixture into {(base, n): m}."""
    if path is None:
        text = resources.files("nonnorm").joinpath("data/reference_tables.csv").read_text()
    else:
        with open(path, newline="") as fh:
            text = fh.read()
    out = {}
    for row in csv.DictReader(io.StringIO(text)):
        out[(row["base"].strip().lower(), int(row["n"]))] = int(row["modulus"])
    return out


@dataclass
class TableRow:
    n: int
    modulus: object
    routes: str
    conformance: str = ""
    error: str = ""

    def to_dict(self):
        d = {"n": self.n, "modulus": self.modulus, "routes": self.routes, "conformance": self.conformance}
        if self.error:
            d["error"] = self.error
        return d


def _row(args):
    base_name, n, limit = args
    try:
        plan = find_modulus(base_name, n, limit)
    except NonNormError as exc:
        return TableRow(n, None, "", error=str(exc))
    return TableRow(n, plan.m, ";".join(c.label() for c in plan.certificates))


def conformance(base, n, m, reference):
    """Compare a found modulus against the reference table entry."""
    ref = reference.get((base.name, n))
    if ref is None or m is None:
        return "n/a" if m is not None else "mismatch"
    if m == ref:
        return "match"
    if m < ref and verify_entry(base, n, m).certified:
        return "smaller-valid"
    return "mismatch"


def generate_table(base, n_from, n_to, reference=None, limit=None, workers=1):
    """One row per degree in [n_from, n_to]; rows are independent of worker order."""
    base = get_base(base)
    if not 2 <= n_from <= n_to <= 200:
        raise ArgumentError("need 2 <= n_from <= n_to <= 200")
    jobs = [(base.name, n, limit) for n in range(n_from, n_to + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs))
    else:
        rows = [_row(j) for j in jobs]
    if reference is not None:
        for row in rows:
            row.conformance = conformance(base, row.n, row.modulus, reference)
    for row in rows:
        if row.error:
            log.warning("n=%d: %s", row.n, row.error)
    return rows


def table_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "modulus", "routes", "conformance"])
    for r in rows:
        w.writerow([r.n, "" if r.modulus is None else r.modulus, r.routes, r.conformance])
    return buf.getvalue()
