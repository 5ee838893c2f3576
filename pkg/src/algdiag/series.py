"""Truncated multivariate power series.

A :class:`TruncSeries` is exact on every monomial of total degree at most
``bound``; nothing is known beyond.  Binary operations keep the smaller
bound.  The inner loops work on exponent vectors packed into single
integers (base ``cap + 1``), which is safe because no exponent kept below
the cap can carry into the next digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from .errors import NotAUnit, NotDivisible, UsageError, VarSetMismatch
from .poly import Exponent, MultiPoly, VarSet, as_fraction, grlex_key

# packed-key kernels


def _packer(n: int, cap: int):
    base = cap + 1
    radix = [base ** i for i in range(n)]

    def pack(exp):
        return sum(e * r for e, r in zip(exp, radix))

    def unpack(key):
        out = []
        for _ in range(n):
            key, e = divmod(key, base)
            out.append(e)
        return tuple(out)

    return pack, unpack


def _weight(exp, weights) -> int:
    return sum(e * w for e, w in zip(exp, weights))


def mul_terms(a: Mapping, b: Mapping, n: int, cap: int, weights: Sequence[int] = None) -> Dict[Exponent, Fraction]:
    """Product of two term dicts, keeping only monomials of weight <= cap."""
    weights = tuple(weights) if weights else (1,) * n
    if not a or not b or cap < 0:
        return {}
    pack, unpack = _packer(n, cap)
    A = [(_weight(e, weights), pack(e), c) for e, c in a.items()]
    B = sorted(((_weight(e, weights), pack(e), c) for e, c in b.items()), key=lambda x: x[0])
    A = [x for x in A if x[0] <= cap]
    acc: Dict[int, Fraction] = {}
    get = acc.get
    for wa, ka, ca in A:
        room = cap - wa
        for wb, kb, cb in B:
            if wb > room:
                break
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb
    return {unpack(k): v for k, v in acc.items() if v}


def inv_terms(f: Mapping, n: int, cap: int, weights: Sequence[int] = None) -> Dict[Exponent, Fraction]:
    """Inverse of a unit, through weight ``cap``.

    The coefficients are scaled to integers: with F = L*f integral and
    F0 its constant term, (1/F)_b = G_b / F0^(w(b)+1) where
    G_b = [b == 0] - sum_{a != 0} F_a * F0^(w(a)-1) * G_(b-a),
    an integer recurrence processed in increasing weight.
    """
    weights = tuple(weights) if weights else (1,) * n
    zero = (0,) * n
    f0 = f.get(zero, 0)
    if not f0:
        raise NotAUnit("series has zero constant term")
    L = 1
    for c in f.values():
        L = lcm(L, Fraction(c).denominator)
    pack, unpack = _packer(n, cap)
    F0 = int(f0 * L)
    rest = []
    for e, c in f.items():
        w = _weight(e, weights)
        if e != zero and w <= cap:
            rest.append((w, pack(e), int(c * L) * F0 ** (w - 1)))
    rest.sort(key=lambda x: x[0])
    buckets = [dict() for _ in range(cap + 1)]
    buckets[0][0] = 0
    G: Dict[int, Tuple[int, int]] = {}
    for w in range(cap + 1):
        bucket = buckets[w]
        for key, s in bucket.items():
            g = (1 if key == 0 else 0) - s
            if not g:
                continue
            G[key] = (w, g)
            room = cap - w
            for wa, ka, ca in rest:
                if wa > room:
                    break
                tgt = buckets[w + wa]
                k = key + ka
                tgt[k] = tgt.get(k, 0) + ca * g
        buckets[w] = None
    powers = {}
    out = {}
    for key, (w, g) in G.items():
        den = powers.get(w)
        if den is None:
            den = powers[w] = F0 ** (w + 1)
        out[unpack(key)] = Fraction(g * L, den)
    return out


# series type


@dataclass(frozen=True)
class SeriesOrder:
    """An order that is either exact or only bounded below by the window."""

    value: int
    exact: bool = True

    @property
    def is_finite(self) -> bool:
        return self.exact

    def __str__(self):
        return str(self.value) if self.exact else f"at-least({self.value})"


class TruncSeries:
    __slots__ = ("vars", "bound", "terms")

    def __init__(self, vars, bound: int, terms: Mapping[Exponent, object] = None):
        if not isinstance(vars, VarSet):
            vars = VarSet(vars)
        if bound < 0:
            raise UsageError("truncation bound must be nonnegative")
        n = len(vars)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise UsageError(f"bad exponent vector {exp} for variables ({vars})")
            if sum(exp) > bound:
                continue
            c = as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.vars = vars
        self.bound = int(bound)
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, vars, bound, terms):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.bound = bound
        obj.terms = terms
        return obj

    @classmethod
    def from_poly(cls, p: MultiPoly, bound: int) -> "TruncSeries":
        return cls(p.vars, bound, p.terms)

    @classmethod
    def zero(cls, vars, bound):
        return cls(vars, bound)

    @classmethod
    def constant(cls, vars, bound, c):
        if not isinstance(vars, VarSet):
            vars = VarSet(vars)
        return cls(vars, bound, {(0,) * len(vars): c})

    @classmethod
    def one(cls, vars, bound):
        return cls.constant(vars, bound, 1)

    # queries

    def coeff(self, exp: Sequence[int]) -> Fraction:
        exp = tuple(exp)
        if sum(exp) > self.bound:
            raise UsageError(f"coefficient of degree {sum(exp)} lies outside the window {self.bound}")
        return self.terms.get(exp, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, bound: int) -> "TruncSeries":
        if bound > self.bound:
            raise UsageError(f"cannot widen an exact window from {self.bound} to {bound}")
        return TruncSeries._raw(self.vars, bound, {e: c for e, c in self.terms.items() if sum(e) <= bound})

    def homogeneous(self, d: int) -> Dict[Exponent, Fraction]:
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    def to_poly(self) -> MultiPoly:
        return MultiPoly(self.vars, self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def first_mismatch(self, other: "TruncSeries", through: int = None) -> Optional[int]:
        """Lowest total degree <= ``through`` where the coefficients differ."""
        _check(self, other)
        if through is None:
            through = min(self.bound, other.bound)
        if through > min(self.bound, other.bound):
            raise UsageError("comparison window exceeds an exact window")
        bad = [sum(e) for e in set(self.terms) | set(other.terms)
               if sum(e) <= through and self.terms.get(e, 0) != other.terms.get(e, 0)]
        return min(bad) if bad else None

    def agrees(self, other: "TruncSeries", through: int = None) -> bool:
        return self.first_mismatch(other, through) is None

    def rename(self, vars) -> "TruncSeries":
        if not isinstance(vars, VarSet):
            vars = VarSet(vars)
        if len(vars) != len(self.vars):
            raise UsageError("rename needs the same number of variables")
        return TruncSeries._raw(vars, self.bound, dict(self.terms))

    def embed(self, target) -> "TruncSeries":
        p = self.to_poly().embed(target)
        return TruncSeries._raw(p.vars, self.bound, p.terms)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            _check(self, other)
            return other
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise VarSetMismatch(f"variable sets differ: ({self.vars}) vs ({other.vars})")
            return TruncSeries.from_poly(other, self.bound)
        if isinstance(other, (int, Fraction)):
            return TruncSeries.constant(self.vars, self.bound, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bound = min(self.bound, other.bound)
        acc = {e: c for e, c in self.terms.items() if sum(e) <= bound}
        for e, c in other.terms.items():
            if sum(e) <= bound:
                v = acc.get(e, 0) + c
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        return TruncSeries._raw(self.vars, bound, acc)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self.vars, self.bound, {e: -c for e, c in self.terms.items()})

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
            return TruncSeries._raw(self.vars, self.bound,
                                    {e: v * c for e, v in self.terms.items()} if c else {})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bound = min(self.bound, other.bound)
        return TruncSeries._raw(self.vars, bound, mul_terms(self.terms, other.terms, len(self.vars), bound))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise UsageError("series powers need a nonnegative integer exponent")
        result = TruncSeries.one(self.vars, self.bound)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.vars == other.vars and self.bound == other.bound and self.terms == other.terms

    __hash__ = None

    def to_expr(self, order_term: bool = True) -> str:
        body = _ascending_expr(self) if self.terms else "0"
        return f"{body} + O({self.bound + 1})" if order_term else body

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"TruncSeries([{self.vars}], bound={self.bound}, {self.to_expr(False)!r})"


def _ascending_expr(s: TruncSeries) -> str:
    pieces = []
    for e, c in s.sorted_terms():
        mono = "*".join(name if k == 1 else f"{name}^{k}" for name, k in zip(s.vars, e) if k)
        a = abs(c)
        body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append(f" {'-' if c < 0 else '+'} {body}")
    return "".join(pieces)


def _check(a, b):
    if a.vars != b.vars:
        raise VarSetMismatch(f"variable sets differ: ({a.vars}) vs ({b.vars})")


# operations


def series_from_poly(p: MultiPoly, bound: int) -> TruncSeries:
    return TruncSeries.from_poly(p, bound)


def series_add(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    _check(f, g)
    return f + g


def series_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    _check(f, g)
    return f * g


def invert_unit(f: TruncSeries) -> TruncSeries:
    """Multiplicative inverse, exact through ``f.bound``."""
    return TruncSeries._raw(f.vars, f.bound, inv_terms(f.terms, len(f.vars), f.bound))


def substitute_xt(f: Union[TruncSeries, MultiPoly], t: str = None):
    """Map x^a t^b to x^a t^(|a|+b), with ``t`` the last variable by default.

    Polynomials are mapped exactly.  A series exact through N yields a
    series declared exact through N // 2.  (Each output monomial of degree
    D comes from an input monomial of degree at most D, so this window is
    conservative, never optimistic.)
    """
    vars = f.vars
    t = t or vars[-1]
    ti = vars.index(t)
    acc = {}
    for e, c in f.terms.items():
        e2 = list(e)
        e2[ti] = sum(e)
        acc[tuple(e2)] = c
    if isinstance(f, MultiPoly):
        return MultiPoly._raw(vars, acc)
    return TruncSeries(vars, f.bound // 2, acc)


def ord(f: TruncSeries) -> SeriesOrder:
    if not f.terms:
        return SeriesOrder(f.bound + 1, exact=False)
    return SeriesOrder(min(sum(e) for e in f.terms))


def regular_order(g: TruncSeries, v: str) -> SeriesOrder:
    """Order in ``v`` of g with every other variable set to zero."""
    i = g.vars.index(v)
    ks = [e[i] for e in g.terms if sum(e) == e[i]]
    if not ks:
        return SeriesOrder(g.bound + 1, exact=False)
    return SeriesOrder(min(ks))


def exact_divide_by_var(f: TruncSeries, v: str, k: int) -> TruncSeries:
    """f / v^k; the window shrinks by k since degree D comes from D + k."""
    if k < 1:
        raise UsageError("k must be positive")
    if f.bound < k:
        raise UsageError(f"window {f.bound} too small to divide by {v}^{k}")
    i = f.vars.index(v)
    acc = {}
    for e, c in f.terms.items():
        if e[i] < k:
            raise NotDivisible(f"term with {v}-exponent {e[i]} < {k}")
        acc[e[:i] + (e[i] - k,) + e[i + 1:]] = c
    return TruncSeries(f.vars, f.bound - k, acc)


def substitute_series(P: MultiPoly, images: Mapping[str, TruncSeries], target=None) -> TruncSeries:
    """Evaluate P with series substituted for some of its variables.

    Variables of P without an image must be variables of the images'
    VarSet (or of ``target``) and are kept as series variables.
    """
    if not images:
        raise UsageError("no images given")
    some = next(iter(images.values()))
    target = target or some.vars
    if not isinstance(target, VarSet):
        target = VarSet(target)
    bound = min(s.bound for s in images.values())
    for s in images.values():
        if s.vars != target:
            raise VarSetMismatch(f"image over ({s.vars}) but target is ({target})")
    # Horner in the first substituted variable, plain sums for the rest
    names = [n for n in P.vars if n in images]
    rest = [n for n in P.vars if n not in images]
    for n in rest:
        target.index(n)
    main = names[0]
    coeffs = P.coeffs_in(main)
    h = images[main]
    out = TruncSeries.zero(target, bound)
    for c in reversed(coeffs):
        out = out * h + _subs_no_main(c, images, target, bound, main)
    return out


def _subs_no_main(c: MultiPoly, images, target, bound, main):
    acc = TruncSeries.zero(target, bound)
    cache = {}
    for e, coef in c.terms.items():
        term = TruncSeries.constant(target, bound, coef)
        mono = [0] * len(target)
        for name, k in zip(c.vars, e):
            if not k or name == main:
                continue
            if name in images:
                key = (name, k)
                if key not in cache:
                    cache[key] = images[name] ** k
                term = term * cache[key]
            else:
                mono[target.index(name)] += k
        if any(mono):
            term = TruncSeries._raw(target, bound, {
                tuple(a + b for a, b in zip(ex, mono)): v
                for ex, v in term.terms.items() if sum(ex) + sum(mono) <= bound})
        acc = acc + term
    return acc


def eval_poly_at_series(P: MultiPoly, h: TruncSeries, t: str = None) -> TruncSeries:
    """P(x, h(x)) truncated to the window of h; t defaults to P's last variable."""
    t = t or P.vars[-1]
    expected = P.vars.without(t)
    if h.vars != expected:
        raise VarSetMismatch(f"series over ({h.vars}) but annihilator expects ({expected})")
    out = TruncSeries.zero(h.vars, h.bound)
    for c in reversed(P.coeffs_in(t)):
        out = out * h + TruncSeries.from_poly(c.embed(h.vars), h.bound)
    return out
