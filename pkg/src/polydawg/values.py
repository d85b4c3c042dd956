"""Scalar value domain shared by the three storage engines.

Values are plain Python objects: int, float, str, bool or None (relational
nulls only).  Declared type names follow the schema sublanguages: int32,
int64, float, double, string, bool ("float" and "double" both store as a
Python float; "text" is accepted as an alias of "string").
"""

from .errors import DivisionByZero, QueryTypeError

INT_TYPES = {"int32", "int64"}
FLOAT_TYPES = {"float", "double", "float64"}
TEXT_TYPES = {"string", "text"}
SCALAR_TYPES = INT_TYPES | FLOAT_TYPES | TEXT_TYPES | {"bool"}

_INT32_MIN, _INT32_MAX = -(2**31), 2**31 - 1
_INT64_MIN, _INT64_MAX = -(2**63), 2**63 - 1


def normalize_type(name: str) -> str:
    name = name.lower()
    if name == "text":
        return "string"
    if name == "float64":
        return "double"
    if name not in SCALAR_TYPES:
        raise QueryTypeError(f"unknown scalar type {name!r}")
    return name


def check_value(value, type_name: str) -> None:
    """Raise QueryTypeError unless value conforms to the declared type."""
    t = normalize_type(type_name)
    if value is None:
        return  # nullability is the caller's concern
    if t in INT_TYPES:
        if not isinstance(value, int) or isinstance(value, bool):
            raise QueryTypeError(f"expected {t}, got {value!r}")
        lo, hi = (_INT32_MIN, _INT32_MAX) if t == "int32" else (_INT64_MIN, _INT64_MAX)
        if not lo <= value <= hi:
            raise QueryTypeError(f"{value} out of range for {t}")
    elif t in FLOAT_TYPES:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise QueryTypeError(f"expected {t}, got {value!r}")
    elif t in TEXT_TYPES:
        if not isinstance(value, str):
            raise QueryTypeError(f"expected string, got {value!r}")
    elif t == "bool":
        if not isinstance(value, bool):
            raise QueryTypeError(f"expected bool, got {value!r}")


def coerce(value, type_name: str):
    """Check value against the type, widening ints to float where declared."""
    check_value(value, type_name)
    if value is not None and normalize_type(type_name) in FLOAT_TYPES:
        return float(value)
    return value


def is_numeric(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def compare(a, b) -> int:
    """Three-way comparison with numeric promotion; None is not comparable here."""
    if is_numeric(a) and is_numeric(b):
        return (a > b) - (a < b)
    if isinstance(a, str) and isinstance(b, str):
        return (a > b) - (a < b)
    if isinstance(a, bool) and isinstance(b, bool):
        return (a > b) - (a < b)
    raise QueryTypeError(f"cannot compare {a!r} with {b!r}")


def arithmetic(op: str, a, b):
    """Evaluate + - * / with SQL-style integer division (truncate toward zero)."""
    if not (is_numeric(a) and is_numeric(b)):
        raise QueryTypeError(f"arithmetic on non-numeric operands {a!r}, {b!r}")
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise DivisionByZero(f"{a} / 0")
        if isinstance(a, int) and isinstance(b, int):
            q = abs(a) // abs(b)
            return q if (a >= 0) == (b >= 0) else -q
        return a / b
    raise QueryTypeError(f"unknown arithmetic operator {op!r}")


def promote_types(t1: str, t2: str) -> str:
    """Result type of an arithmetic op over two declared numeric types."""
    t1, t2 = normalize_type(t1), normalize_type(t2)
    if t1 in FLOAT_TYPES or t2 in FLOAT_TYPES:
        return "double"
    if t1 in INT_TYPES and t2 in INT_TYPES:
        return "int64" if "int64" in (t1, t2) else "int32"
    raise QueryTypeError(f"no numeric promotion for {t1}, {t2}")


def textify(value) -> str:
    """Canonical text form used in TSV output and the text-island cast."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)
