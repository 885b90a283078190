"""JSON documents for operator and Leibniz-map specifications.

Every object carries a ``kind`` discriminator; scalars and polynomials are
expression strings in the package grammar.  Example::

    {"kind": "root_power", "q0": "z",
     "f": {"default": 1, "overrides": [["0", 0], ["1", 2]]}}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import SpecError
from .gaussian import GaussianInteger
from .maps import Derivation, LeibnizMapSpec, LinCombMap, PrimeLog, SampledMap, ZeroMap
from .operators import (
    CoeffDerivation,
    ConstantFn,
    DegreeScale,
    FnSpec,
    IdentityNonCompliant,
    LinComb,
    NatFnSpec,
    OperatorSpec,
    OrderZero,
    PointwiseLog,
    PolyInC,
    RepBlocks,
    Representation,
    RootPower,
    RootPowerReal,
    ScaledDerivative,
    TableFn,
)
from .parsing import parse_poly, parse_scalar, print_poly, print_scalar
from .scalars import MAX_TRANSCENDENTALS, ScalarElem


def _require(doc: dict, key: str) -> Any:
    if key not in doc:
        raise SpecError(f"{doc.get('kind', 'spec')!s} is missing field {key!r}")
    return doc[key]


def _scalar(text: Any, m: int) -> ScalarElem:
    return parse_scalar(str(text), m)


def _gaussian_integer(text: Any, m: int) -> GaussianInteger:
    s = _scalar(text, m)
    if not s.is_constant() or s.c.re.denominator != 1 or s.c.im.denominator != 1:
        raise SpecError(f"{text!r} is not a Gaussian integer")
    return GaussianInteger(int(s.c.re), int(s.c.im))


def map_from_json(doc: dict, m: int = MAX_TRANSCENDENTALS) -> LeibnizMapSpec:
    kind = _require(doc, "kind")
    if kind == "zero":
        return ZeroMap()
    if kind == "prime_log":
        return PrimeLog([(_gaussian_integer(p, m), _scalar(w, m)) for p, w in _require(doc, "weights")])
    if kind == "derivation":
        u = [_scalar(x, m) for x in _require(doc, "u")]
        if len(u) > m:
            raise SpecError(f"derivation has {len(u)} components but the session allows {m} transcendentals")
        return Derivation(u)
    if kind == "lincomb":
        return LinCombMap([(_scalar(c, m), map_from_json(s, m)) for c, s in _require(doc, "terms")])
    if kind == "sampled":
        return SampledMap({_scalar(k, m): _scalar(v, m) for k, v in _require(doc, "table")})
    raise SpecError(f"unknown map kind {kind!r}")


def map_to_json(spec: LeibnizMapSpec) -> dict:
    if isinstance(spec, ZeroMap):
        return {"kind": "zero"}
    if isinstance(spec, PrimeLog):
        return {"kind": "prime_log", "weights": [[str(p), print_scalar(w)] for p, w in spec.weights]}
    if isinstance(spec, Derivation):
        return {"kind": "derivation", "u": [print_scalar(x) for x in spec.u]}
    if isinstance(spec, LinCombMap):
        return {"kind": "lincomb", "terms": [[print_scalar(c), map_to_json(s)] for c, s in spec.terms]}
    if isinstance(spec, SampledMap):
        return {"kind": "sampled", "table": [[print_scalar(k), print_scalar(v)] for k, v in spec.table.items()]}
    raise TypeError(f"not a map spec: {spec!r}")


def fn_from_json(doc: dict | None, m: int = MAX_TRANSCENDENTALS) -> FnSpec | None:
    if doc is None:
        return None
    kind = _require(doc, "kind")
    if kind == "constant":
        return ConstantFn(_scalar(_require(doc, "value"), m))
    if kind == "poly":
        # the argument c is written as z
        return PolyInC(parse_poly(str(_require(doc, "expr")), m))
    if kind == "table":
        overrides = {}
        for k, v in _require(doc, "overrides"):
            key = _scalar(k, m)
            if key in overrides:
                raise SpecError(f"duplicate table key {k!r}")
            overrides[key] = _scalar(v, m)
        return TableFn(overrides, fn_from_json(doc.get("default"), m))
    raise SpecError(f"unknown function kind {kind!r}")


def fn_to_json(spec: FnSpec | None) -> dict | None:
    if spec is None:
        return None
    if isinstance(spec, ConstantFn):
        return {"kind": "constant", "value": print_scalar(spec.value)}
    if isinstance(spec, PolyInC):
        return {"kind": "poly", "expr": print_poly(spec.poly)}
    if isinstance(spec, TableFn):
        return {
            "kind": "table",
            "overrides": [[print_scalar(k), print_scalar(v)] for k, v in spec.overrides.items()],
            "default": fn_to_json(spec.default),
        }
    raise TypeError(f"not a function spec: {spec!r}")


def _nat_fn(doc: dict | None, m: int) -> NatFnSpec:
    doc = doc or {}
    overrides = {}
    for k, v in doc.get("overrides", []):
        if not isinstance(v, int) or v < 0:
            raise SpecError(f"exponent for {k!r} must be a nonnegative integer")
        overrides[_scalar(k, m)] = v
    default = doc.get("default", 1)
    if not isinstance(default, int) or default < 0:
        raise SpecError("exponent default must be a nonnegative integer")
    return NatFnSpec(overrides, default)


def _nat_fn_to_json(f: NatFnSpec) -> dict:
    return {"default": f.default, "overrides": [[print_scalar(k), v] for k, v in f.overrides.items()]}


def op_from_json(doc: dict, m: int = MAX_TRANSCENDENTALS) -> OperatorSpec:
    if not isinstance(doc, dict):
        raise SpecError("operator spec must be a JSON object")
    kind = _require(doc, "kind")
    if kind == "order_zero":
        return OrderZero(_scalar(doc.get("x0", "0"), m))
    if kind == "degree_scale":
        return DegreeScale()
    if kind == "scaled_derivative":
        return ScaledDerivative(parse_poly(str(doc.get("p0", "1")), m))
    if kind == "coeff_derivation":
        return CoeffDerivation(map_from_json(_require(doc, "map"), m))
    if kind in ("root_power", "root_power_real"):
        cls = RootPower if kind == "root_power" else RootPowerReal
        return cls(parse_poly(str(_require(doc, "q0")), m), _nat_fn(doc.get("f"), m))
    if kind == "representation":
        psi = [fn_from_json(x, m) for x in _require(doc, "psi")]
        phi = [map_from_json(x, m) for x in _require(doc, "phi")]
        try:
            return Representation(RepBlocks(psi, phi))
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
    if kind == "lincomb":
        terms = [(_scalar(c, m), op_from_json(t, m)) for c, t in _require(doc, "terms")]
        if not terms:
            raise SpecError("lincomb needs at least one term")
        return LinComb(terms)
    if kind == "pointwise_log":
        return PointwiseLog()
    if kind == "identity_noncompliant":
        return IdentityNonCompliant()
    raise SpecError(f"unknown operator kind {kind!r}")


def op_to_json(op: OperatorSpec) -> dict:
    if isinstance(op, OrderZero):
        return {"kind": "order_zero", "x0": print_scalar(op.x0)}
    if isinstance(op, DegreeScale):
        return {"kind": "degree_scale"}
    if isinstance(op, ScaledDerivative):
        return {"kind": "scaled_derivative", "p0": print_poly(op.p0)}
    if isinstance(op, CoeffDerivation):
        return {"kind": "coeff_derivation", "map": map_to_json(op.d)}
    if isinstance(op, (RootPower, RootPowerReal)):
        kind = "root_power" if isinstance(op, RootPower) else "root_power_real"
        return {"kind": kind, "q0": print_poly(op.q0), "f": _nat_fn_to_json(op.f)}
    if isinstance(op, Representation):
        return {
            "kind": "representation",
            "psi": [fn_to_json(f) for f in op.blocks.psi],
            "phi": [map_to_json(s) for s in op.blocks.phi],
        }
    if isinstance(op, LinComb):
        return {"kind": "lincomb", "terms": [[print_scalar(c), op_to_json(t)] for c, t in op.terms]}
    if isinstance(op, PointwiseLog):
        return {"kind": "pointwise_log"}
    if isinstance(op, IdentityNonCompliant):
        return {"kind": "identity_noncompliant"}
    raise TypeError(f"not an operator spec: {op!r}")


def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_op(path: str | Path, m: int = MAX_TRANSCENDENTALS) -> OperatorSpec:
    return op_from_json(load_json(path), m)
