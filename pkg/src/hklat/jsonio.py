"""Input parsing and canonical serialization for the command line.

Numbers cross the boundary as exact text: rationals are lowest-terms
"p/q" strings (bare "p" when integral), big integers are decimal
strings. Floating point is rejected on input and never emitted except
inside explicitly logarithmic fields, which carry their own stated
error. Output dictionaries are rendered with sorted keys and compact
separators so identical inputs produce identical bytes.

Shape problems (missing keys, wrong JSON types) raise SchemaError,
which the CLI maps to exit status 2; mathematical violations inside
well-shaped input surface as the library's own typed errors and map to
exit status 1.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .cones import ConeContext, make_cone_context
from .lattice import Lattice, make_lattice, primal
from .mld import LogPairTable, make_table


class SchemaError(Exception):
    """Input does not match the documented shape."""


def rational_str(value) -> str:
    return str(Fraction(value))


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{where}: expected an integer or 'p/q' string")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{where}: cannot parse {value!r} as a rational")
    raise SchemaError(f"{where}: expected an integer or 'p/q' string")


def parse_int(value, where: str) -> int:
    if isinstance(value, bool):
        raise SchemaError(f"{where}: expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise SchemaError(f"{where}: cannot parse {value!r} as an integer")
    raise SchemaError(f"{where}: expected an integer")


def parse_vector(value, where: str) -> list[Fraction]:
    # bare list, or the explicit framed form {"frame": "primal", "coords": [...]}
    if isinstance(value, dict):
        frame = value.get("frame")
        if frame != "primal":
            raise SchemaError(f"{where}: only primal vectors are accepted as input")
        value = require(value, "coords", where)
    if not isinstance(value, list) or not value:
        raise SchemaError(f"{where}: expected a nonempty list of rationals")
    return [parse_rational(v, f"{where}[{i}]") for i, v in enumerate(value)]


def parse_int_matrix(value, where: str) -> list[list[int]]:
    if not isinstance(value, list) or not value:
        raise SchemaError(f"{where}: expected a nonempty list of integer rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise SchemaError(f"{where}[{i}]: expected a list")
        rows.append([parse_int(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return rows


def require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in obj:
        raise SchemaError(f"{where}: missing required key {key!r}")
    return obj[key]


def lattice_from_obj(obj, where: str = "input") -> Lattice:
    gram = parse_int_matrix(require(obj, "gram", where), f"{where}.gram")
    return make_lattice(gram)


def context_from_obj(obj, where: str = "input") -> ConeContext:
    lattice = lattice_from_obj(require(obj, "lattice", where), f"{where}.lattice")
    h = parse_vector(require(obj, "h", where), f"{where}.h")
    primes = [
        parse_vector(v, f"{where}.primes[{i}]")
        for i, v in enumerate(obj.get("primes", []))
    ]
    walls = [
        parse_vector(v, f"{where}.walls[{i}]")
        for i, v in enumerate(obj.get("walls", []))
    ]
    gens = [
        parse_int_matrix(g, f"{where}.monodromy_gens[{i}]")
        for i, g in enumerate(obj.get("monodromy_gens", []))
    ]
    return make_cone_context(
        lattice,
        primal(h),
        [primal(p) for p in primes],
        [primal(w) for w in walls],
        gens,
    )


def table_from_obj(obj, where: str = "input") -> LogPairTable:
    raw_rows = require(obj, "rows", where)
    if not isinstance(raw_rows, list):
        raise SchemaError(f"{where}.rows: expected a list")
    rows = []
    for i, r in enumerate(raw_rows):
        label = require(r, "label", f"{where}.rows[{i}]")
        k = parse_rational(require(r, "kE", f"{where}.rows[{i}]"), f"{where}.rows[{i}].kE")
        d = parse_rational(require(r, "dE", f"{where}.rows[{i}]"), f"{where}.rows[{i}].dE")
        center = require(r, "center", f"{where}.rows[{i}]")
        if not isinstance(label, str) or not isinstance(center, str):
            raise SchemaError(f"{where}.rows[{i}]: label and center must be strings")
        rows.append((label, k, d, center))
    containment = obj.get("containment", [])
    if not isinstance(containment, list):
        raise SchemaError(f"{where}.containment: expected a list of pairs")
    for i, pair in enumerate(containment):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)):
            raise SchemaError(f"{where}.containment[{i}]: expected a pair of strings")
    complete = obj.get("complete", False)
    if not isinstance(complete, bool):
        raise SchemaError(f"{where}.complete: expected a boolean")
    return make_table(rows, containment, complete)


def vector_json(v) -> list[str]:
    return [str(c) for c in v.coords]


def dump_canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


_VEC = {"type": "list of rationals", "item": "integer or 'p/q' string"}
_LATTICE = {"gram": "square symmetric integer matrix, nonzero determinant"}
_CONTEXT = {
    "lattice": _LATTICE,
    "h": _VEC,
    "primes": "optional list of integral vectors with negative square, pairwise q >= 0",
    "walls": "optional list of integral vectors with negative square",
    "monodromy_gens": "optional list of integer matrices preserving the form and the positive cone",
}

SCHEMAS: dict[str, Any] = {
    "disc": {"input": _LATTICE, "output": {"factors": "invariant factors > 1", "order": "decimal string"}},
    "dual": {
        "input": {"gram": _LATTICE["gram"], "x": _VEC},
        "output": {"dual": "coordinates of G*x", "divisibility": "gcd of the pairings, null for non-integral x"},
    },
    "reflect": {
        "input": {"gram": _LATTICE["gram"], "mirror": _VEC, "x": _VEC},
        "output": {"image": "reflected vector", "integral_reflection": "bool, null when the predicate does not apply"},
    },
    "zariski": {
        "input": {"context": _CONTEXT, "D": _VEC, "cardA": "optional positive integer, default: discriminant order of the context lattice"},
        "output": {
            "P": "positive part", "N": "negative part",
            "support": "indices into context.primes", "coefficients": "positive rationals",
            "denominator_lcm": "decimal string",
            "audit": {"lcm": "...", "support_det": "...", "lcm_divides_det": "bool", "bound": "bound value", "within_bound": "bool or null"},
        },
    },
    "bound": {
        "input": {"n": "positive integer (half-dimension)", "cardA": "positive integer", "rho": "positive integer"},
        "output": {"exact": "decimal string", "or": {"log10": "decimal string", "rel_err": "1e-9"}},
    },
    "moduli-bound": {
        "input": {"a": "positive integer", "k": "positive integer", "eps": "+1 or -1", "rho": "positive integer"},
        "output": {"dim": "moduli dimension", "bound": "as for bound"},
    },
    "walls": {
        "input": {
            "context": _CONTEXT,
            "divisor": "predicate mode: integral vector to test",
            "square": "enumeration mode: negative integer",
            "pairing_max": "enumeration mode: positive integer",
            "primitive_only": "enumeration mode: optional bool",
        },
        "output": {
            "predicate mode": {"is_wall": "bool", "witness": "orbit element, wall index, factor", "failed_condition": "string or null", "orbit_closed": "bool"},
            "enumeration mode": {"classes": "sorted integral vectors", "count": "integer"},
        },
    },
    "chamber": {
        "input": {"context": _CONTEXT, "x": _VEC},
        "output": {"signs": "list of +1/-1, one per wall"},
    },
    "mld": {
        "input": {
            "table": {
                "rows": [{"label": "string", "kE": "rational", "dE": "nonnegative rational", "center": "string"}],
                "containment": "list of [inner, outer] label pairs",
                "complete": "optional bool",
            },
            "query": "exactly one of {\"at\": center}, {\"along\": center}, {\"discrepancy\": label}, {\"acc\": [rationals]}",
        },
        "output": {
            "at/along": {"value": "rational string or '-inf'", "complete": "bool"},
            "discrepancy": {"value": "rational string"},
            "acc": {"stationary": "bool", "stationary_from": "int or null", "increase_points": "list of ints"},
        },
    },
}
