"""Verification and extraction of the block functions psi_k and phi_k.

The sampled coefficient data is phi_k(a, b) = [z^k] T(az + b).  From it the
blocks are read off as::

    phi~_k(b) = phi_k(0, b)            (coefficients of T(constant b))
    psi_k(c)  = phi_k(1, c) - phi_k(0, c)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import LeibnizError, NotMonomialForm, PoolGap
from .generators import FuzzConfig, random_factored
from .maps import SampledMap
from .operators import (
    OperatorSpec,
    RepBlocks,
    Representation,
    TableFn,
    apply,
    apply_any,
    apply_expanded,
    pointwise_log_eval,
)
from .poly import FactoredPoly, Poly, degree, eval_poly, expand
from .report import CheckReport, _text
from .scalars import ONE, ZERO, ScalarElem

G = ScalarElem.gaussian


# -- the Leibniz identity ------------------------------------------------------------


def _product(p, q):
    if isinstance(p, FactoredPoly) and isinstance(q, FactoredPoly):
        return p * q
    dense = lambda x: expand(x) if isinstance(x, FactoredPoly) else x
    return dense(p) * dense(q)


def _dense(x) -> Poly:
    return expand(x) if isinstance(x, FactoredPoly) else x


def _leibniz_instance(op: OperatorSpec, p, q, report: CheckReport) -> bool:
    lhs = apply_any(op, _product(p, q))
    rhs = apply_any(op, p) * _dense(q) + _dense(p) * apply_any(op, q)
    return report.record((_dense(p), _dense(q)), lhs, rhs, "leibniz")


def leibniz_check(op: OperatorSpec, p, q) -> CheckReport:
    """Exact comparison of T(pq) with T(p) q + p T(q)."""
    report = CheckReport()
    _leibniz_instance(op, p, q, report)
    return report


def leibniz_fuzz(op: OperatorSpec, config: FuzzConfig | None = None, n: int = 1000, seed: int = 0) -> CheckReport:
    config = config or FuzzConfig()
    rng = random.Random(seed)
    report = CheckReport()
    for _ in range(n):
        p = random_factored(rng, config)
        q = random_factored(rng, config)
        _leibniz_instance(op, p, q, report)
    return report


def homogeneity_check(op: OperatorSpec, c: ScalarElem, p: FactoredPoly) -> CheckReport:
    """T(c p) == c T(p) + T(c) p."""
    report = CheckReport()
    lhs = apply(op, FactoredPoly(c * p.lead, p.roots))
    rhs = apply(op, p).scale(c) + apply(op, FactoredPoly(c)) * expand(p)
    report.record((Poly.const(c), expand(p)), lhs, rhs, "homogeneity")
    return report


def pointwise_log_check(p: Poly, q: Poly, points: Iterable[complex], rel_tol: float = 1e-9) -> CheckReport:
    """|E(pq) - E(p) q - p E(q)| <= rel_tol * (1 + |pq|) at each point."""
    report = CheckReport()
    pq = p * q
    cp = [complex(c) for c in p.coeffs]
    cq = [complex(c) for c in q.coeffs]
    for z in points:
        pz = _horner(cp, z)
        qz = _horner(cq, z)
        lhs = pointwise_log_eval(pq, z).value
        rhs = pointwise_log_eval(p, z).value * qz + pz * pointwise_log_eval(q, z).value
        report.total += 1
        if abs(lhs - rhs) <= rel_tol * (1 + abs(pz * qz)):
            report.passed += 1
        else:
            from .report import Counterexample

            report.counterexamples.append(Counterexample((p, q, z), lhs, rhs, None, "pointwise_log"))
    return report


def _horner(coeffs: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


# -- linear action and the coefficient recurrences ----------------------------------------


@dataclass
class LinearActionTable:
    entries: dict[tuple[ScalarElem, ScalarElem], tuple[ScalarElem, ...]] = field(default_factory=dict)

    def phi(self, k: int, a: ScalarElem, b: ScalarElem) -> ScalarElem | None:
        row = self.entries.get((a, b))
        if row is None:
            return None
        if k < 0:
            return ZERO
        return row[k] if k < len(row) else ZERO

    def width(self) -> int:
        return max((len(r) for r in self.entries.values()), default=0)

    def to_json(self) -> dict:
        return {
            "entries": [
                {"a": _text(a), "b": _text(b), "coefficients": [_text(c) for c in row]}
                for (a, b), row in self.entries.items()
            ]
        }


def linear_input(a: ScalarElem, b: ScalarElem) -> FactoredPoly | None:
    """az + b in factored form (None for the zero polynomial)."""
    if not a.is_zero():
        return FactoredPoly(a, (-(b / a),))
    if not b.is_zero():
        return FactoredPoly(b)
    return None


def linear_action(op: OperatorSpec, samples: Iterable[tuple[ScalarElem, ScalarElem]]) -> LinearActionTable:
    table = LinearActionTable()
    for a, b in samples:
        a, b = ScalarElem.of(a), ScalarElem.of(b)
        if (a, b) in table.entries:
            continue
        p = linear_input(a, b)
        table.entries[(a, b)] = apply(op, p).coeffs if p is not None else ()
    return table


def closed_grid(a_values: Sequence[ScalarElem], b_values: Sequence[ScalarElem]) -> list[tuple[ScalarElem, ScalarElem]]:
    """(a, b) grid plus every auxiliary point the recurrences refer to."""
    a_values = [ScalarElem.of(a) for a in a_values]
    b_values = [ScalarElem.of(b) for b in b_values]
    out: dict[tuple, None] = {}
    consts = list(dict.fromkeys([*a_values, *b_values]))
    for a in a_values:
        for b in b_values:
            out[(a, b)] = None
            if not a.is_zero():
                out[(ONE, b / a)] = None
    out[(ONE, ZERO)] = None
    for x in consts:
        out[(ZERO, x)] = None
        for y in consts:
            out[(ZERO, x * y)] = None
    return list(out)


def recurrence_check(table: LinearActionTable) -> CheckReport:
    """Check the coefficient identities satisfied by any Leibniz-rule operator.

    constants   phi_k(0, bc) = phi_k(0, b) c + phi_k(0, c) b
    scaling_k0  phi_0(a, 0)  = phi_0(1, 0) a
    scaling_k   phi_k(a, 0)  = phi_k(1, 0) a + phi_{k-1}(0, a)          (k >= 1)
    affine      phi_k(a, b)  = phi_k(1, b/a) a + phi_{k-1}(0, a) + phi_k(0, a) b/a
                (a != 0, with phi_{-1} = 0)

    Instances whose grid points are missing are counted as skipped.
    """
    report = CheckReport()
    width = max(table.width() + 1, 2)
    phi = table.phi
    zero_row_bs = [b for (a, b) in table.entries if a.is_zero()]
    for i, b in enumerate(zero_row_bs):
        for c in zero_row_bs[i:]:
            if (ZERO, b * c) not in table.entries:
                report.skip("constants")
                continue
            for k in range(width):
                lhs = phi(k, ZERO, b * c)
                rhs = phi(k, ZERO, b) * c + phi(k, ZERO, c) * b
                report.record(("constants", k, b, c), lhs, rhs, "constants")
    for a, b in list(table.entries):
        if a.is_zero():
            continue
        if b.is_zero():
            if (ONE, ZERO) not in table.entries:
                report.skip("scaling_k0")
            else:
                report.record(("scaling_k0", 0, a, b), phi(0, a, ZERO), phi(0, ONE, ZERO) * a, "scaling_k0")
            if (ONE, ZERO) not in table.entries or (ZERO, a) not in table.entries:
                report.skip("scaling_k")
            else:
                for k in range(1, width):
                    lhs = phi(k, a, ZERO)
                    rhs = phi(k, ONE, ZERO) * a + phi(k - 1, ZERO, a)
                    report.record(("scaling_k", k, a, b), lhs, rhs, "scaling_k")
        ratio = b / a
        if (ONE, ratio) not in table.entries or (ZERO, a) not in table.entries:
            report.skip("affine")
            continue
        for k in range(width):
            lhs = phi(k, a, b)
            rhs = phi(k, ONE, ratio) * a + phi(k - 1, ZERO, a) + phi(k, ZERO, a) * ratio
            report.record(("affine", k, a, b), lhs, rhs, "affine")
    return report


# -- fingerprints --------------------------------------------------------------------


@dataclass
class Fingerprint:
    kmax: int
    points: tuple[ScalarElem, ...]
    psi_samples: dict[tuple[int, ScalarElem], ScalarElem]
    phi_samples: dict[tuple[int, ScalarElem], ScalarElem]

    def to_json(self) -> dict:
        def rows(samples):
            return [
                [_text(samples[(k, c)]) for c in self.points]
                for k in range(self.kmax + 1)
            ]

        return {
            "kmax": self.kmax,
            "points": [_text(c) for c in self.points],
            "psi": rows(self.psi_samples),
            "phi": rows(self.phi_samples),
        }


def fingerprint(op: OperatorSpec, points: Sequence[ScalarElem]) -> Fingerprint:
    points = tuple(dict.fromkeys(ScalarElem.of(c) for c in points))
    const_rows = {}
    lin_rows = {}
    for c in points:
        const_rows[c] = apply(op, FactoredPoly(c)).coeffs if not c.is_zero() else ()
        lin_rows[c] = apply(op, FactoredPoly(ONE, (-c,))).coeffs
    kmax = max((len(r) - 1 for r in (*const_rows.values(), *lin_rows.values()) if r), default=0)

    def at(row, k):
        return row[k] if k < len(row) else ZERO

    phi = {(k, b): at(const_rows[b], k) for k in range(kmax + 1) for b in points}
    psi = {(k, c): at(lin_rows[c], k) - phi[(k, c)] for k in range(kmax + 1) for c in points}
    return Fingerprint(kmax, points, psi, phi)


def rebuild(fp: Fingerprint) -> Representation:
    """Representation whose blocks are the sampled tables (undefined elsewhere)."""
    psi = [TableFn({c: fp.psi_samples[(k, c)] for c in fp.points}) for k in range(fp.kmax + 1)]
    phi = [SampledMap({c: fp.phi_samples[(k, c)] for c in fp.points}) for k in range(fp.kmax + 1)]
    return Representation(RepBlocks(psi, phi))


def check_pool_compatible(fp: Fingerprint, sample: FactoredPoly) -> None:
    pool = set(fp.points)
    if sample.lead not in pool:
        raise PoolGap(f"leading coefficient {sample.lead} is not among the sampled points")
    for r in sample.roots:
        if -r not in pool:
            raise PoolGap(f"root {r} needs psi at {-r}, which was not sampled")


def pool_compatible_samples(
    rng: random.Random, points: Sequence[ScalarElem], n: int, max_degree: int = 6
) -> list[FactoredPoly]:
    leads = [c for c in points if not c.is_zero()]
    roots = [-c for c in points]
    return [
        FactoredPoly(rng.choice(leads), tuple(rng.choice(roots) for _ in range(rng.randint(0, max_degree))))
        for _ in range(n)
    ]


def roundtrip_check(op: OperatorSpec, fp: Fingerprint, samples: Iterable[FactoredPoly]) -> CheckReport:
    rebuilt = rebuild(fp)
    report = CheckReport()
    for s in samples:
        check_pool_compatible(fp, s)
        report.record((expand(s),), apply(op, s), apply(rebuilt, s), "roundtrip")
    return report


# -- degree behaviour ----------------------------------------------------------------


@dataclass
class DegreeBehavior:
    label: str  # "Decreasing" | "NonIncreasing" | "Mixed"
    witnesses: list[tuple[Poly, Poly]] = field(default_factory=list)
    checked: int = 0

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "checked": self.checked,
            "witnesses": [{"input": _text(p), "image": _text(t)} for p, t in self.witnesses],
        }


def classify_degree(op: OperatorSpec, samples: Sequence[FactoredPoly]) -> DegreeBehavior:
    """Decreasing / NonIncreasing / Mixed over the samples and their leading constants."""
    probes = list(samples)
    probes += [FactoredPoly(c) for c in dict.fromkeys(s.lead for s in samples)]
    not_decreasing = None
    increasing = None
    for s in probes:
        t = apply(op, s)
        if not t:
            continue
        if degree(t) >= s.degree and not_decreasing is None:
            not_decreasing = (expand(s), t)
        if degree(t) > s.degree and increasing is None:
            increasing = (expand(s), t)
    if increasing is not None:
        return DegreeBehavior("Mixed", [increasing], len(probes))
    if not_decreasing is not None:
        return DegreeBehavior("NonIncreasing", [not_decreasing], len(probes))
    return DegreeBehavior("Decreasing", [], len(probes))


@dataclass
class MonomialConstants:
    """T(z^N) = c_N * N z^(N-1) + d_N * z^N."""

    values: dict[int, tuple[ScalarElem, ScalarElem]]

    def to_json(self) -> dict:
        return {str(n): {"c": _text(c), "d": _text(d)} for n, (c, d) in sorted(self.values.items())}


def monomial_constants(op: OperatorSpec, max_n: int) -> MonomialConstants:
    if max_n < 1:
        raise ValueError("max_n must be positive")
    out = {}
    for n in range(1, max_n + 1):
        t = apply(op, FactoredPoly(ONE, (ZERO,) * n))
        c = t.coeff(n - 1) / n
        d = t.coeff(n)
        fitted = Poly.monomial(n - 1, c * n) + Poly.monomial(n, d)
        if t != fitted:
            raise NotMonomialForm(f"T(z^{n}) = {t} is not of the form c*p' + d*p")
        out[n] = (c, d)
    return MonomialConstants(out)


# -- localization probe ----------------------------------------------------------------


@dataclass
class LocalizationCounterexample:
    p: Poly
    q: Poly
    z0: ScalarElem
    tp_value: ScalarElem
    tq_value: ScalarElem
    examined: int

    def to_json(self) -> dict:
        return {
            "p": _text(self.p),
            "q": _text(self.q),
            "z0": _text(self.z0),
            "values": [_text(self.tp_value), _text(self.tq_value)],
            "examined": self.examined,
        }


PROBE_POINTS = (G(1), G(0), G(-1), G(2), G(0, 1), G(0, -1))


def probe_candidates() -> list[Poly]:
    """Fixed, ordered candidate family: monomials, binomials, multiples, products."""
    z = Poly.z()
    one = Poly.const(1)
    head = [z, z + one, z.scale(G(2)), z * z + one]
    fam = []
    for k in (1, 2, 3):
        fam.append(z**k)
        for c in (G(1), G(-1), G(0, 1), G(2)):
            fam.append(z**k + Poly.const(c))
        for c in (G(2), G(-1), G(3), G(0, 1)):
            fam.append((z**k).scale(c))
    roots = (G(0), G(1), G(-1), G(2), G(0, 1))
    for i, r1 in enumerate(roots):
        for r2 in roots[i:]:
            fam.append(Poly.linear(r1) * Poly.linear(r2))
    out = {}
    for p in head + fam:
        out.setdefault(p, None)
    return list(out)


def localization_probe(op: OperatorSpec, budget: int) -> LocalizationCounterexample | None:
    """Search for p, q, z0 with p(z0) = q(z0) but T(p)(z0) != T(q)(z0)."""
    cands = probe_candidates()
    images: dict[int, Poly | None] = {}

    def image(idx: int) -> Poly | None:
        if idx not in images:
            try:
                images[idx] = apply_expanded(op, cands[idx])
            except LeibnizError:
                images[idx] = None
        return images[idx]

    examined = 0
    for j in range(1, len(cands)):
        for i in range(j):
            for z0 in PROBE_POINTS:
                if examined >= budget:
                    return None
                examined += 1
                p, q = cands[i], cands[j]
                if p(z0) != q(z0):
                    continue
                tp, tq = image(i), image(j)
                if tp is None or tq is None:
                    continue
                vp, vq = eval_poly(tp, z0), eval_poly(tq, z0)
                if vp != vq:
                    return LocalizationCounterexample(p, q, z0, vp, vq, examined)
    return None
