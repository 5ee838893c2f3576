"""Sparse multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`, which already keeps the
canonical form (positive denominator, lowest terms, zero as 0/1).
Exponent vectors are dense tuples whose length equals the number of
variables of the owning :class:`VarSet`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import NotDivisible, UnknownVariable, UsageError, VarSetMismatch

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


def grlex_key(exp: Exponent):
    """Sort key for graded lexicographic order (ascending)."""
    return (sum(exp), exp)


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, _RationalABC)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


@dataclass(frozen=True)
class VarSet:
    """Ordered tuple of distinct variable names."""

    names: Tuple[str, ...]

    def __init__(self, names: Union[str, Iterable[str]]):
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        names = tuple(names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self.names

    def __getitem__(self, i):
        return self.names[i]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}; have {list(self.names)}") from None

    def without(self, name: str) -> "VarSet":
        self.index(name)
        return VarSet(n for n in self.names if n != name)

    def extend(self, *names: str) -> "VarSet":
        return VarSet(self.names + tuple(names))

    def fresh(self, stem: str = "u") -> str:
        name = stem
        k = 0
        while name in self.names:
            k += 1
            name = f"{stem}{k}"
        return name

    def __str__(self) -> str:
        return ",".join(self.names)


def _check_same(a: VarSet, b: VarSet) -> None:
    if a != b:
        raise VarSetMismatch(f"variable sets differ: ({a}) vs ({b})")


def _add_into(acc: Dict[Exponent, Fraction], exp: Exponent, c: Fraction) -> None:
    v = acc.get(exp)
    if v is None:
        acc[exp] = c
    else:
        v += c
        if v:
            acc[exp] = v
        else:
            del acc[exp]


class MultiPoly:
    """Immutable sparse polynomial in an ordered set of variables."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Union[VarSet, str, Iterable[str]], terms: Mapping[Exponent, Scalar] = None):
        if not isinstance(vars, VarSet):
            vars = VarSet(vars)
        n = len(vars)
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise UsageError(f"bad exponent vector {exp} for variables ({vars})")
            c = as_fraction(c)
            if c:
                _add_into(clean, exp, c)
        self.vars = vars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: VarSet, terms: Dict[Exponent, Fraction]) -> "MultiPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, vars) -> "MultiPoly":
        return cls(vars)

    @classmethod
    def constant(cls, vars, c: Scalar) -> "MultiPoly":
        if not isinstance(vars, VarSet):
            vars = VarSet(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def one(cls, vars) -> "MultiPoly":
        return cls.constant(vars, 1)

    @classmethod
    def var(cls, vars, name: str) -> "MultiPoly":
        if not isinstance(vars, VarSet):
            vars = VarSet(vars)
        exp = [0] * len(vars)
        exp[vars.index(name)] = 1
        return cls(vars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, vars, exp: Sequence[int], c: Scalar = 1) -> "MultiPoly":
        return cls(vars, {tuple(exp): c})

    @classmethod
    def from_coeffs(cls, vars, name: str, coeffs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Build ``sum(coeffs[k] * name**k)``; coefficients live over ``vars``."""
        if not isinstance(vars, VarSet):
            vars = VarSet(vars)
        t = cls.var(vars, name)
        out = cls.zero(vars)
        for c in reversed(list(coeffs)):
            out = out * t + c
        return out

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self.vars.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def used_vars(self) -> Tuple[str, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(self.vars[i] for i in sorted(used))

    def coeffs_in(self, name: str) -> list:
        """Coefficients ``[c_0, c_1, ...]`` with ``self = sum c_k name^k``.

        Each ``c_k`` stays over the same VarSet (with zero ``name``-degree).
        """
        i = self.vars.index(name)
        deg = self.degree_in(name)
        parts = [dict() for _ in range(max(deg + 1, 0))]
        for e, c in self.terms.items():
            k = e[i]
            parts[k][e[:i] + (0,) + e[i + 1:]] = c
        return [MultiPoly._raw(self.vars, p) for p in parts]

    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=descending)

    # arithmetic

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            _check_same(self.vars, other.vars)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for e, c in other.terms.items():
            _add_into(acc, e, c)
        return MultiPoly._raw(self.vars, acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly.zero(self.vars)
            return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add_into(acc, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return MultiPoly._raw(self.vars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise UsageError("polynomial powers need a nonnegative integer exponent")
        result = MultiPoly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPoly.constant(self.vars, other).terms
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution

    def diff(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        acc = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                acc[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MultiPoly._raw(self.vars, acc)

    def evaluate(self, values: Mapping[str, Scalar]) -> "MultiPoly":
        """Replace the given variables by rational numbers (VarSet is kept)."""
        idx = [(self.vars.index(n), as_fraction(v)) for n, v in values.items()]
        acc: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            e = list(e)
            for i, v in idx:
                if e[i]:
                    c = c * v ** e[i]
                    e[i] = 0
            if c:
                _add_into(acc, tuple(e), c)
        return MultiPoly._raw(self.vars, acc)

    def value_at(self, values: Mapping[str, Scalar]) -> Fraction:
        """Full evaluation; every variable that occurs must be given."""
        missing = [v for v in self.used_vars() if v not in values]
        if missing:
            raise UsageError(f"no value for {missing}")
        return self.evaluate({k: v for k, v in values.items() if k in self.vars}).constant_term()

    def at_origin(self) -> Fraction:
        return self.constant_term()

    def compose(self, target: VarSet, images: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials over ``target`` for variables of ``self``.

        Variables without an image are carried over by name and must exist
        in ``target``.
        """
        if not isinstance(target, VarSet):
            target = VarSet(target)
        subs = []
        for name in self.vars:
            if name in images:
                img = images[name]
                _check_same(img.vars, target)
                subs.append(img)
            else:
                subs.append(MultiPoly.var(target, name) if name in target else None)
        powers = [dict() for _ in subs]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                if subs[i] is None:
                    raise UnknownVariable(f"variable {self.vars[i]!r} has no image in ({target})")
                cache[k] = subs[i] ** k
            return cache[k]

        out = MultiPoly.zero(target)
        for e, c in self.sorted_terms():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def embed(self, target: Union[VarSet, str, Iterable[str]]) -> "MultiPoly":
        """Re-express over another VarSet containing every used variable."""
        if not isinstance(target, VarSet):
            target = VarSet(target)
        if target == self.vars:
            return self
        pos = []
        for i, name in enumerate(self.vars):
            if name in target:
                pos.append((i, target.index(name)))
        acc = {}
        for e, c in self.terms.items():
            new = [0] * len(target)
            moved = 0
            for i, j in pos:
                new[j] = e[i]
                moved += e[i]
            if moved != sum(e):
                raise UnknownVariable(f"cannot embed {self} into ({target}): variable missing")
            acc[tuple(new)] = c
        return MultiPoly._raw(target, acc)

    def divide_by_var(self, name: str, k: int = 1) -> "MultiPoly":
        i = self.vars.index(name)
        acc = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise NotDivisible(f"{self} is not divisible by {name}^{k}")
            acc[e[:i] + (e[i] - k,) + e[i + 1:]] = c
        return MultiPoly._raw(self.vars, acc)

    def leading(self):
        """Leading (exponent, coefficient) in graded lex order."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient; raises NotDivisible when a remainder is left."""
        _check_same(self.vars, other.vars)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        de, dc = other.leading()
        quo: Dict[Exponent, Fraction] = {}
        rem = dict(self.terms)
        while rem:
            e = max(rem, key=grlex_key)
            diff = tuple(a - b for a, b in zip(e, de))
            if any(d < 0 for d in diff):
                raise NotDivisible("polynomial division leaves a remainder")
            c = rem[e] / dc
            quo[diff] = c
            for oe, oc in other.terms.items():
                _add_into(rem, tuple(a + b for a, b in zip(oe, diff)), -c * oc)
        return MultiPoly._raw(self.vars, quo)

    # rendering

    def to_expr(self) -> str:
        """Render using the input grammar (reparses to an equal value)."""
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.vars, e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            sign = "-" if c < 0 else "+"
            if not pieces:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"MultiPoly([{self.vars}], {self.to_expr()!r})"


# module-level operations


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    _check_same(p.vars, q.vars)
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    _check_same(p.vars, q.vars)
    return p * q


def poly_pow(p: MultiPoly, k: int) -> MultiPoly:
    return p ** k


def partial_derivative(p: MultiPoly, v: str) -> MultiPoly:
    return p.diff(v)


def bareiss_det(matrix):
    """Fraction-free determinant of a square matrix of MultiPoly entries.

    All entries must share one VarSet.  Intermediate divisions are exact
    (Sylvester's identity), so no fractions of polynomials appear.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        raise UsageError("empty matrix")
    vars = m[0][0].vars
    sign = 1
    prev = MultiPoly.one(vars)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly.zero(vars)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev) if not num.is_zero() else num
            m[i][k] = MultiPoly.zero(vars)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(p_coeffs: Sequence, q_coeffs: Sequence):
    """Sylvester matrix from ascending coefficient lists of p and q.

    Rows hold shifted descending coefficients: deg(q) rows for p followed
    by deg(p) rows for q.  ``zero`` fills empty slots.
    """
    m = len(p_coeffs) - 1
    n = len(q_coeffs) - 1
    zero = p_coeffs[0] * 0
    size = m + n
    rows = []
    for shift in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(p_coeffs)):
            row[shift + k] = c
        rows.append(row)
    for shift in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(q_coeffs)):
            row[shift + k] = c
        rows.append(row)
    return rows


def resultant(p: MultiPoly, q: MultiPoly, v: str) -> MultiPoly:
    """Res_v(p, q) as the Sylvester determinant (same VarSet, free of v)."""
    _check_same(p.vars, q.vars)
    if p.degree_in(v) < 1 or q.degree_in(v) < 1:
        raise UsageError(f"resultant needs positive degree in {v} for both inputs")
    return bareiss_det(sylvester_matrix(p.coeffs_in(v), q.coeffs_in(v)))


def _aux_setup(P1: MultiPoly, P2: MultiPoly, t: str):
    _check_same(P1.vars, P2.vars)
    if P1.is_zero() or P2.is_zero():
        raise UsageError("annihilators must be nonzero")
    if P1.degree_in(t) < 1 or P2.degree_in(t) < 1:
        raise UsageError(f"annihilators need positive degree in {t}")
    u = P1.vars.fresh("u")
    big = P1.vars.extend(u)
    return big, u


def annihilator_sum(P1: MultiPoly, P2: MultiPoly, t: str = None) -> MultiPoly:
    """Res_u(P1(x,u), P2(x,t-u)): vanishes at t = f + g for roots f, g."""
    t = t or P1.vars[-1]
    big, u = _aux_setup(P1, P2, t)
    T = MultiPoly.var(big, t)
    U = MultiPoly.var(big, u)
    A = P1.embed(big).compose(big, {t: U})
    B = P2.embed(big).compose(big, {t: T - U})
    return resultant(A, B, u).embed(P1.vars)


def annihilator_prod(P1: MultiPoly, P2: MultiPoly, t: str = None) -> MultiPoly:
    """Res_u(P1(x,u), u^d P2(x,t/u)) with d = deg_t P2: vanishes at t = f*g."""
    t = t or P1.vars[-1]
    big, u = _aux_setup(P1, P2, t)
    T = MultiPoly.var(big, t)
    U = MultiPoly.var(big, u)
    A = P1.embed(big).compose(big, {t: U})
    coeffs = P2.embed(big).coeffs_in(t)
    d = len(coeffs) - 1
    B = MultiPoly.zero(big)
    for k, c in enumerate(coeffs):
        B = B + c * T ** k * U ** (d - k)
    if B.degree_in(u) < 1:
        # P2 = c*t^d: only g = 0 is a root, so the product is 0 as well
        return MultiPoly.var(P1.vars, t)
    return resultant(A, B, u).embed(P1.vars)
