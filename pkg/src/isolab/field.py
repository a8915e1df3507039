"""Exact arithmetic in the cyclotomic field Q(zeta_m).

Scalars used throughout the package are either plain rationals (``int`` or
``fractions.Fraction``) or :class:`FieldScalar` instances.  Arithmetic on
``FieldScalar`` returns a plain rational whenever the result has no
irrational part, so rational-only computations never pay for the extension.
"""

from __future__ import annotations

import ast
import os
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import FieldError

_DEFAULT_M = 8


def _int_poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # coefficient lists are low-degree first; den is monic
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    rem = num[:dd] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (low degree first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise FieldError(f"cyclotomic modulus must be positive, got {m}")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _int_poly_divmod(num, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise FieldError("cyclotomic division left a remainder")
    return tuple(num)


class _FieldData:
    """Precomputed reduction data for one modulus."""

    __slots__ = ("m", "deg", "phi", "reduce_table")

    def __init__(self, m: int):
        self.m = m
        self.phi = cyclotomic_polynomial(m)
        self.deg = len(self.phi) - 1
        d = self.deg
        # reduce_table[k] = coefficients of t^k mod Phi_m for k < 2d - 1
        table = []
        for k in range(max(2 * d - 1, 1)):
            if k < d:
                v = [0] * d
                v[k] = 1
            else:
                prev = table[k - 1]
                # multiply by t: shift up and fold the top coefficient
                top = prev[d - 1]
                v = [0] + prev[: d - 1]
                for j in range(d):
                    v[j] -= top * self.phi[j]
            table.append(v)
        self.reduce_table = tuple(tuple(v) for v in table)


@lru_cache(maxsize=None)
def _data(m: int) -> _FieldData:
    return _FieldData(m)


_current_m = int(os.environ.get("ISOLAB_CYCLOTOMIC_M", _DEFAULT_M))


def get_modulus() -> int:
    return _current_m


def set_modulus(m: int) -> None:
    """Change the global cyclotomic modulus used for newly created scalars."""
    global _current_m
    _data(int(m))
    _current_m = int(m)


def field_degree(m: int | None = None) -> int:
    return _data(m or _current_m).deg


def is_rational(x) -> bool:
    t = type(x)
    return t is int or t is Fraction


def _demote(coeffs: tuple, m: int):
    for c in coeffs[1:]:
        if c:
            return FieldScalar._raw(coeffs, m)
    c0 = coeffs[0]
    if type(c0) is Fraction and c0.denominator == 1:
        return c0.numerator
    return c0


class FieldScalar:
    """Element of Q(zeta_m) stored as a coefficient vector in powers of zeta_m."""

    __slots__ = ("coeffs", "m")

    def __init__(self, coeffs=(0,), m: int | None = None):
        m = m or _current_m
        data = _data(m)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > data.deg:
            cs = list(_reduce_long(cs, data))
        cs = cs + [Fraction(0)] * (data.deg - len(cs))
        self.coeffs = tuple(cs)
        self.m = m

    @classmethod
    def _raw(cls, coeffs: tuple, m: int) -> "FieldScalar":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.m = m
        return obj

    @classmethod
    def from_rational(cls, q, m: int | None = None) -> "FieldScalar":
        return cls((q,), m)

    @classmethod
    def zeta(cls, power: int = 1, m: int | None = None) -> "FieldScalar":
        m = m or _current_m
        data = _data(m)
        power %= m
        vec = [0] * (power + 1)
        vec[power] = 1
        return cls(tuple(_reduce_long([Fraction(v) for v in vec], data)), m)

    # -- helpers -------------------------------------------------------
    def is_rational_value(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self) -> Fraction:
        return self.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            if other.m != self.m:
                raise FieldError(
                    f"cannot mix elements of Q(zeta_{self.m}) and Q(zeta_{other.m})"
                )
            return other.coeffs
        if is_rational(other):
            return (Fraction(other),) + (Fraction(0),) * (len(self.coeffs) - 1)
        return None

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return _demote(tuple(a + b for a, b in zip(self.coeffs, oc)), self.m)

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return _demote(tuple(a - b for a, b in zip(self.coeffs, oc)), self.m)

    def __rsub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return _demote(tuple(b - a for a, b in zip(self.coeffs, oc)), self.m)

    def __neg__(self):
        return FieldScalar._raw(tuple(-a for a in self.coeffs), self.m)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if is_rational(other):
            if not other:
                return 0
            return _demote(tuple(a * other for a in self.coeffs), self.m)
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return _demote(_mul_coeffs(self.coeffs, oc, _data(self.m)), self.m)

    __rmul__ = __mul__

    def inverse(self):
        data = _data(self.m)
        d = data.deg
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # column k of the multiplication matrix = self * zeta^k
        cols = []
        for k in range(d):
            e = [Fraction(0)] * d
            e[k] = Fraction(1)
            cols.append(_mul_coeffs(self.coeffs, tuple(e), data))
        rows = [[cols[k][r] for k in range(d)] + [Fraction(1 if r == 0 else 0)] for r in range(d)]
        sol = _solve_small(rows, d)
        return _demote(tuple(sol), self.m)

    def __truediv__(self, other):
        if is_rational(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            q = Fraction(other)
            return _demote(tuple(a / q for a in self.coeffs), self.m)
        if isinstance(other, FieldScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if is_rational(other):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n) if n != -1 else self.inverse()
        result = 1
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return self.coeffs == tuple(oc)

    def __hash__(self):
        if self.is_rational_value():
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def conjugate_power(self, k: int):
        """Image under the Galois automorphism zeta -> zeta^k (gcd(k, m) = 1)."""
        if gcd(k, self.m) != 1:
            raise FieldError("Galois exponent must be coprime to m")
        total = 0
        for j, c in enumerate(self.coeffs):
            if c:
                total = total + c * FieldScalar.zeta(j * k, self.m)
        return total

    def __repr__(self):
        return f"FieldScalar({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def _reduce_long(cs: list, data: _FieldData) -> tuple:
    d = data.deg
    out = [Fraction(0)] * d
    for k, c in enumerate(cs):
        if not c:
            continue
        if k < d:
            out[k] += c
            continue
        # reduce t^k by repeated use of the table (k may exceed table range)
        vec = _power_vector(k, data)
        for j in range(d):
            if vec[j]:
                out[j] += c * vec[j]
    return tuple(out)


@lru_cache(maxsize=None)
def _power_vector_cached(k: int, m: int) -> tuple:
    data = _data(m)
    return _power_vector_impl(k, data)


def _power_vector(k: int, data: _FieldData) -> tuple:
    return _power_vector_cached(k % data.m, data.m)


def _power_vector_impl(k: int, data: _FieldData) -> tuple:
    d = data.deg
    if k < len(data.reduce_table):
        return data.reduce_table[k]
    v = list(data.reduce_table[len(data.reduce_table) - 1])
    for _ in range(k - len(data.reduce_table) + 1):
        top = v[d - 1]
        v = [0] + v[: d - 1]
        for j in range(d):
            v[j] -= top * data.phi[j]
    return tuple(v)


def _mul_coeffs(a: tuple, b: tuple, data: _FieldData) -> tuple:
    d = data.deg
    if data.m == 8:
        # Phi_8 = t^4 + 1: hand-unrolled negacyclic product
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return (
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        )
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    out = [Fraction(0)] * d
    table = data.reduce_table
    for k, c in enumerate(prod):
        if c:
            if k < d:
                out[k] += c
            else:
                vec = table[k]
                for j in range(d):
                    if vec[j]:
                        out[j] += c * vec[j]
    return tuple(out)


def _solve_small(rows: list, n: int) -> list:
    # Gauss-Jordan on an augmented n x (n+1) rational system with unique solution
    rows = [list(r) for r in rows]
    for c in range(n):
        p = next(i for i in range(c, n) if rows[i][c] != 0)
        rows[c], rows[p] = rows[p], rows[c]
        piv = rows[c][c]
        rows[c] = [x / piv for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return [rows[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# convenience constructors and formatting

def zeta(power: int = 1, m: int | None = None):
    return _demote(FieldScalar.zeta(power, m).coeffs, m or _current_m)


def imag_unit(m: int | None = None):
    m = m or _current_m
    if m % 4:
        raise FieldError(
            f"sqrt(-1) is not in Q(zeta_{m}); set ISOLAB_CYCLOTOMIC_M to a multiple of 4"
        )
    return zeta(m // 4, m)


def root_of_unity(order: int, m: int | None = None):
    """A primitive ``order``-th root of unity, if it lies in Q(zeta_m)."""
    m = m or _current_m
    if m % order:
        raise FieldError(
            f"a primitive {order}-th root of unity is not in Q(zeta_{m}); "
            f"increase ISOLAB_CYCLOTOMIC_M to a multiple of {order}"
        )
    return zeta(m // order, m)


def to_fraction_or_field(x):
    """Normalise ints/Fractions/FieldScalars into the canonical scalar form."""
    if type(x) is int:
        return x
    if type(x) is Fraction:
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, FieldScalar):
        return _demote(x.coeffs, x.m)
    if isinstance(x, bool):
        return int(x)
    raise FieldError(f"unsupported scalar type {type(x).__name__}")


def sqrt_in_field(x, m: int | None = None):
    """An exact square root of ``x`` inside Q(zeta_m), or raise FieldError.

    Only elements q * zeta^k are handled, with q a positive rational such that
    q or 2q is a square (the latter needs 8 | m); that covers every witness
    used by the constructions in this package.
    """
    m = m or _current_m
    if not x:
        return 0
    for k in range(m):
        u = zeta(k, m)
        if not k:
            q = x
        elif is_rational(x) and is_rational(u):
            q = Fraction(x) / u
        else:
            q = x / u
        if is_rational(q):
            q = Fraction(q)
            if q > 0:
                r = _rational_sqrt(q)
                if r is None and m % 8 == 0:
                    r2 = _rational_sqrt(2 * q)
                    if r2 is not None:
                        # sqrt(2) = zeta_8 + zeta_8^-1
                        r = (r2 / 2) * (zeta(m // 8, m) + zeta(m - m // 8, m))
                if r is not None:
                    # sqrt(q * zeta^k) = sqrt(q) * zeta^(k/2) or zeta^((k+m)/2)
                    if k % 2 == 0:
                        return to_fraction_or_field(r * zeta(k // 2, m)) if k else to_fraction_or_field(r)
                    if (k + m) % 2 == 0:
                        return to_fraction_or_field(r * zeta((k + m) // 2, m))
    raise FieldError(
        f"no square root of {format_scalar(x)} in Q(zeta_{m}); increase ISOLAB_CYCLOTOMIC_M"
    )


def _rational_sqrt(q: Fraction):
    from math import isqrt

    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def format_scalar(x) -> str:
    if is_rational(x):
        return str(x)
    if isinstance(x, FieldScalar):
        terms = []
        for k, c in enumerate(x.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append(f"{c}*{mon}")
        s = " + ".join(terms) if terms else "0"
        return s.replace("+ -", "- ")
    return str(x)


# ---------------------------------------------------------------------------
# tiny expression language for scalars: "i", "-i", "1/2", "z^3", "(1+i)/2"

_NAMES = ("i", "z", "zeta")


def parse_scalar(text: str, m: int | None = None):
    m = m or _current_m
    try:
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise FieldError(f"cannot parse scalar {text!r}: {exc.msg}") from None
    return to_fraction_or_field(_eval_node(tree.body, m, text))


def _eval_node(node, m, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name):
        if node.id == "i":
            return imag_unit(m)
        if node.id in ("z", "zeta"):
            return zeta(1, m)
        raise FieldError(f"unknown symbol {node.id!r} in {text!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, m, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a = _eval_node(node.left, m, text)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)) and not (
                isinstance(node.right, ast.UnaryOp) and isinstance(node.right.operand, ast.Constant)
            ):
                raise FieldError(f"exponent must be an integer literal in {text!r}")
            e = _eval_node(node.right, m, text)
            if is_rational(a):
                return Fraction(a) ** e
            return a ** e
        b = _eval_node(node.right, m, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if is_rational(a) and is_rational(b):
                return Fraction(a) / Fraction(b)
            return a / b
    raise FieldError(f"unsupported syntax in scalar {text!r}")
