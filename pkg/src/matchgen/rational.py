"""Exact arithmetic: multivariate polynomials and rational functions over Q.

Values are canonical: equal rational functions have identical
representations, so `==` is both cheap and meaningful.  All objects are
immutable after construction.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

# Arbitrary-precision rational coefficients.  Invariants (reduced form,
# positive denominator, 0 == 0/1) are maintained by Fraction itself.
BigRational = Fraction

ExpVec = Tuple[int, ...]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class MultiPoly:
    """A multivariate polynomial with Fraction coefficients.

    `variables` is the sorted tuple of variable names that actually occur;
    `terms` maps exponent vectors (relative to `variables`) to nonzero
    coefficients.  Term order is graded lexicographic, which fixes a unique
    representation and printing order.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Tuple[str, ...], terms: Dict[ExpVec, Fraction]):
        # Canonicalize: drop zero coefficients and unused variables.
        terms = {e: c for e, c in terms.items() if c != 0}
        if variables:
            used = [i for i in range(len(variables))
                    if any(e[i] for e in terms)]
            if len(used) != len(variables):
                variables = tuple(variables[i] for i in used)
                terms = _merge_terms((tuple(e[i] for i in used), c)
                                     for e, c in terms.items())
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c) -> "MultiPoly":
        c = _as_fraction(c)
        return MultiPoly((), {(): c} if c else {})

    @staticmethod
    def var(name: str) -> "MultiPoly":
        return MultiPoly((name,), {(1,): Fraction(1)})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.variables

    def as_const(self) -> Fraction:
        if self.variables:
            raise ValueError("not a constant polynomial")
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        if name not in self.variables:
            return 0
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]),
                      reverse=True)

    def leading(self) -> Tuple[ExpVec, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coeff(self) -> Fraction:
        return self.leading()[1]

    # -- arithmetic ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        vs, ta, tb = _align(self, other)
        out = dict(ta)
        for e, c in tb.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(vs, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if self.is_zero() or other.is_zero():
            return MultiPoly((), {})
        if self.is_const():
            c = self.as_const()
            return MultiPoly(other.variables,
                             {e: c * k for e, k in other.terms.items()})
        if other.is_const():
            return other * self
        vs, ta, tb = _align(self, other)
        if _sympy is not None and len(ta) * len(tb) > 4000:
            gens = _sympy.symbols(vs)
            prod = _to_sympy(MultiPoly(vs, ta), vs, gens) \
                * _to_sympy(MultiPoly(vs, tb), vs, gens)
            return _from_sympy(prod, vs)
        out: Dict[ExpVec, Fraction] = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(vs, out)

    def scale(self, c) -> "MultiPoly":
        c = _as_fraction(c)
        if c == 0:
            return MultiPoly((), {})
        return MultiPoly(self.variables, {e: c * k for e, k in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        if _sympy is not None and n > 2 and len(self.terms) ** 2 > 4000:
            gens = _sympy.symbols(self.variables)
            return _from_sympy(_to_sympy(self, self.variables, gens) ** n,
                               self.variables)
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- evaluation / substitution ------------------------------------

    def eval_rationals(self, point: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at a fully rational point."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for name, exp in zip(self.variables, e):
                if exp:
                    v *= point[name] ** exp
            total += v
        return total

    # -- structure helpers --------------------------------------------

    def as_univariate(self, name: str):
        """Coefficients of powers of `name`, as a dict deg -> MultiPoly."""
        if name not in self.variables:
            return {0: self}
        i = self.variables.index(name)
        rest = self.variables[:i] + self.variables[i + 1:]
        coeffs: Dict[int, Dict[ExpVec, Fraction]] = {}
        for e, c in self.terms.items():
            d = e[i]
            re = e[:i] + e[i + 1:]
            coeffs.setdefault(d, {})[re] = c
        return {d: MultiPoly(rest, t) for d, t in coeffs.items()}

    @staticmethod
    def from_univariate(coeffs: Mapping[int, "MultiPoly"], name: str) -> "MultiPoly":
        out = MultiPoly.const(0)
        xn = MultiPoly.var(name)
        for d, c in coeffs.items():
            out = out + c * xn ** d
        return out

    # -- printing -----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.variables, e) if k)
            if not mono:
                body = _frac_str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{_frac_str(abs(c))}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append(("+" if c > 0 else "-") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def _frac_str(c: Fraction) -> str:
    return str(c)


def _grlex_key(e: ExpVec):
    return (sum(e), e)


def _merge_terms(items: Iterable[Tuple[ExpVec, Fraction]]) -> Dict[ExpVec, Fraction]:
    out: Dict[ExpVec, Fraction] = {}
    for e, c in items:
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _align(a: MultiPoly, b: MultiPoly):
    """Remap two polynomials onto the union of their variable sets."""
    if a.variables == b.variables:
        return a.variables, a.terms, b.terms
    vs = tuple(sorted(set(a.variables) | set(b.variables)))

    def remap(p: MultiPoly) -> Dict[ExpVec, Fraction]:
        idx = [vs.index(v) for v in p.variables]
        out = {}
        for e, c in p.terms.items():
            ne = [0] * len(vs)
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return out

    return vs, remap(a), remap(b)


# ---------------------------------------------------------------------------
# Exact division, GCD, square root
# ---------------------------------------------------------------------------


def div_exact(f: MultiPoly, d: MultiPoly) -> Optional[MultiPoly]:
    """Return f/d if d divides f exactly, else None."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return MultiPoly.const(0)
    if d.is_const():
        return f.scale(Fraction(1) / d.as_const())
    vs, tf, td = _align(f, d)
    lead_d = max(td, key=_grlex_key)
    cd = td[lead_d]
    rem = dict(tf)
    quo: Dict[ExpVec, Fraction] = {}
    while rem:
        e = max(rem, key=_grlex_key)
        q = tuple(x - y for x, y in zip(e, lead_d))
        if any(x < 0 for x in q):
            return None
        c = rem[e] / cd
        quo[q] = c
        for ed, kd in td.items():
            t = tuple(x + y for x, y in zip(q, ed))
            s = rem.get(t, Fraction(0)) - c * kd
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    return MultiPoly(vs, quo)


def _content(coeffs) -> MultiPoly:
    """GCD of a collection of polynomials."""
    g = MultiPoly.const(0)
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_const() and not g.is_zero():
            return MultiPoly.const(1)
    return g


def _make_monic(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    return p.scale(Fraction(1) / p.leading_coeff())


def _univ_gcd(f: MultiPoly, g: MultiPoly, name: str) -> MultiPoly:
    """Euclid for univariate polynomials over Q."""
    fa = {d: c.as_const() for d, c in f.as_univariate(name).items()}
    ga = {d: c.as_const() for d, c in g.as_univariate(name).items()}

    def deg(p):
        return max(p) if p else -1

    while ga:
        df, dg = deg(fa), deg(ga)
        if df < dg:
            fa, ga = ga, fa
            continue
        # one elimination step of long division
        rem = dict(fa)
        lg = ga[dg]
        while rem and deg(rem) >= dg:
            dr = deg(rem)
            c = rem[dr] / lg
            for d, k in ga.items():
                t = dr - dg + d
                s = rem.get(t, Fraction(0)) - c * k
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        fa, ga = ga, rem
    if not fa:
        return MultiPoly.const(0)
    lead = fa[deg(fa)]
    x = MultiPoly.var(name)
    out = MultiPoly.const(0)
    for d, c in fa.items():
        out = out + x ** d * MultiPoly.const(c / lead)
    return out


_rng = random.Random(0x5EED)


def _coprime_by_evaluation(f: MultiPoly, g: MultiPoly, name: str) -> bool:
    """Fast probabilistic-but-sound coprimality certificate.

    Substitute random integers for every variable except `name`.  If both
    leading coefficients (in `name`) survive and the univariate images have
    gcd 1, the polynomials have no common factor involving `name`.
    """
    others = sorted((set(f.variables) | set(g.variables)) - {name})
    if not others:
        return _univ_gcd(f, g, name).total_degree() == 0
    for _ in range(3):
        point = {v: Fraction(_rng.randint(-50, 50)) for v in others}
        fu = _eval_partial(f, name, point)
        gu = _eval_partial(g, name, point)
        if max(fu, default=-1) != f.degree_in(name):
            continue
        if max(gu, default=-1) != g.degree_in(name):
            continue
        if _univ_dict_gcd_deg(fu, gu) == 0:
            return True
        return False
    return False


def _eval_partial(p: MultiPoly, name: str, point) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for d, c in p.as_univariate(name).items():
        v = c.eval_rationals(point)
        if v:
            out[d] = v
    return out


def _univ_dict_gcd_deg(fa: Dict[int, Fraction], ga: Dict[int, Fraction]) -> int:
    fa, ga = dict(fa), dict(ga)

    def deg(p):
        return max(p) if p else -1

    while ga:
        if deg(fa) < deg(ga):
            fa, ga = ga, fa
            continue
        dg = deg(ga)
        lg = ga[dg]
        rem = dict(fa)
        while rem and deg(rem) >= dg:
            dr = deg(rem)
            c = rem[dr] / lg
            for d, k in ga.items():
                t = dr - dg + d
                s = rem.get(t, Fraction(0)) - c * k
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        fa, ga = ga, rem
    return deg(fa)


try:
    import sympy as _sympy
except ImportError:  # pragma: no cover - sympy is a hard dependency
    _sympy = None


def _to_sympy(p: MultiPoly, variables, gens):
    idx = [variables.index(v) for v in p.variables]
    d = {}
    for e, c in p.terms.items():
        key = [0] * len(variables)
        for pos, ex in zip(idx, e):
            key[pos] = ex
        d[tuple(key)] = _sympy.Rational(c.numerator, c.denominator)
    return _sympy.Poly.from_dict(d, *gens, domain="QQ")


def _from_sympy(poly, variables) -> MultiPoly:
    terms = {}
    for mono, coeff in poly.terms():
        terms[tuple(int(e) for e in mono)] = Fraction(int(coeff.p),
                                                      int(coeff.q))
    return MultiPoly(variables, terms)


def _sympy_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    variables = tuple(sorted(set(f.variables) | set(g.variables)))
    gens = _sympy.symbols(variables)
    h = _to_sympy(f, variables, gens).gcd(_to_sympy(g, variables, gens))
    return _make_monic(_from_sympy(h, variables))


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic GCD of two polynomials (1 for coprime nonzero inputs).

    Delegates to sympy's multivariate gcd when available; otherwise a
    primitive-PRS recursion over a main variable, with a random-evaluation
    shortcut that certifies coprimality early.
    """
    if f.is_zero():
        return _make_monic(g)
    if g.is_zero():
        return _make_monic(f)
    if f.is_const() or g.is_const():
        return MultiPoly.const(1)
    shared = set(f.variables) & set(g.variables)
    if not shared:
        return MultiPoly.const(1)
    if _sympy is not None:
        return _sympy_gcd(f, g)
    # main variable: smallest combined degree keeps the PRS short
    name = min(shared, key=lambda v: f.degree_in(v) + g.degree_in(v))
    fu = f.as_univariate(name)
    gu = g.as_univariate(name)
    fc = _content(fu.values())
    gc = _content(gu.values())
    cont = poly_gcd(fc, gc)
    fp = {d: _must_div(c, fc) for d, c in fu.items()}
    gp = {d: _must_div(c, gc) for d, c in gu.items()}
    fpp = MultiPoly.from_univariate(fp, name)
    gpp = MultiPoly.from_univariate(gp, name)
    if _coprime_by_evaluation(fpp, gpp, name):
        return _make_monic(cont)
    prim = _primitive_prs(fpp, gpp, name)
    return _make_monic(cont * prim)


def _must_div(f: MultiPoly, d: MultiPoly) -> MultiPoly:
    q = div_exact(f, d)
    assert q is not None, "internal: exact division failed"
    return q


def _primitive_prs(f: MultiPoly, g: MultiPoly, name: str) -> MultiPoly:
    """Primitive pseudo-remainder sequence in the main variable."""
    a, b = f, g
    if a.degree_in(name) < b.degree_in(name):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, name)
        if r.is_zero():
            bu = b.as_univariate(name)
            bc = _content(bu.values())
            return MultiPoly.from_univariate(
                {d: _must_div(c, bc) for d, c in bu.items()}, name)
        if r.degree_in(name) == 0 and name not in r.variables:
            return MultiPoly.const(1)
        ru = r.as_univariate(name)
        rc = _content(ru.values())
        r = MultiPoly.from_univariate(
            {d: _must_div(c, rc) for d, c in ru.items()}, name)
        a, b = b, r


def _pseudo_rem(f: MultiPoly, g: MultiPoly, name: str) -> MultiPoly:
    fu = f.as_univariate(name)
    gu = g.as_univariate(name)
    dg = max(gu)
    lg = gu[dg]
    rem = dict(fu)

    def deg(p):
        return max(p) if p else -1

    while rem and deg(rem) >= dg:
        dr = deg(rem)
        lead = rem[dr]
        # multiply through by lg to avoid fractions of polynomials
        rem = {d: c * lg for d, c in rem.items()}
        for d, k in gu.items():
            t = dr - dg + d
            s = rem.get(t, MultiPoly.const(0)) - lead * k
            if s.is_zero():
                rem.pop(t, None)
            else:
                rem[t] = s
        rem = {d: c for d, c in rem.items() if not c.is_zero()}
    return MultiPoly.from_univariate(rem, name)


def poly_sqrt(p: MultiPoly) -> Optional[MultiPoly]:
    """Exact square root of a perfect-square polynomial, else None."""
    if p.is_zero():
        return MultiPoly.const(0)
    le, lc = p.leading()
    if any(x % 2 for x in le):
        return None
    cr = _frac_sqrt(lc)
    if cr is None:
        return None
    half = MultiPoly(p.variables, {tuple(x // 2 for x in le): cr})
    s = half
    twice_lead = half.scale(2)
    r = p - s * s
    # each accepted term strictly decreases LT(r); bound the loop defensively
    for _ in range(4 * (len(p.terms) + 2) ** 2):
        if r.is_zero():
            return s
        re, rc = r.leading()
        he, hc = twice_lead.leading()
        te = tuple(x - y for x, y in zip(*_pad(re, r.variables, he,
                                               twice_lead.variables)))
        if any(x < 0 for x in te):
            return None
        vs = tuple(sorted(set(r.variables) | set(twice_lead.variables)))
        t = MultiPoly(vs, {te: rc / hc})
        s = s + t
        r = p - s * s
    return None


def _pad(ea, va, eb, vb):
    vs = tuple(sorted(set(va) | set(vb)))

    def remap(e, v):
        out = [0] * len(vs)
        for name, k in zip(v, e):
            out[vs.index(name)] = k
        return tuple(out)

    return remap(ea, va), remap(eb, vb)


def _frac_sqrt(c: Fraction) -> Optional[Fraction]:
    if c < 0:
        return None
    n = math.isqrt(c.numerator)
    d = math.isqrt(c.denominator)
    if n * n != c.numerator or d * d != c.denominator:
        return None
    return Fraction(n, d)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """A quotient of MultiPolys in lowest terms with a monic denominator.

    The normalization (cancel the polynomial gcd, then divide both parts by
    the denominator's leading coefficient) is a canonical form: two
    RationalFunctions are equal as functions iff they are structurally equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly, _normalized=False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            if num.is_zero():
                den = MultiPoly.const(1)
            else:
                g = poly_gcd(num, den)
                if not (g.is_const() and g.as_const() == 1):
                    num = _must_div(num, g)
                    den = _must_div(den, g)
                lc = den.leading_coeff()
                if lc != 1:
                    inv = Fraction(1) / lc
                    num = num.scale(inv)
                    den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(MultiPoly.const(c), MultiPoly.const(1),
                                _normalized=True)

    @staticmethod
    def var(name: str) -> "RationalFunction":
        return RationalFunction(MultiPoly.var(name), MultiPoly.const(1),
                                _normalized=True)

    @staticmethod
    def from_poly(p: MultiPoly) -> "RationalFunction":
        return RationalFunction(p, MultiPoly.const(1))

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def as_const(self) -> Fraction:
        return self.num.as_const() / self.den.as_const()

    def is_integer(self) -> bool:
        return self.is_const() and self.as_const().denominator == 1

    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.num.variables) | set(self.den.variables)))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return RationalFunction.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        d = poly_gcd(self.den, other.den)
        if d.is_const():
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
        else:
            da = _must_div(self.den, d)
            db = _must_div(other.den, d)
            num = self.num * db + other.num * da
            den = da * other.den
        return RationalFunction(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalFunction.const(0)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_const() else _must_div(self.num, g1)
        d2 = other.den if g1.is_const() else _must_div(other.den, g1)
        n2 = other.num if g2.is_const() else _must_div(other.num, g2)
        d1 = self.den if g2.is_const() else _must_div(self.den, g2)
        num = n1 * n2
        den = d1 * d2
        lc = den.leading_coeff()
        if lc != 1:
            inv = Fraction(1) / lc
            num, den = num.scale(inv), den.scale(inv)
        return RationalFunction(num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n == 0:
            return RationalFunction.const(1)
        if n < 0:
            return self.inverse() ** (-n)
        # num/den already coprime, so no cancellation can appear
        num = self.num ** n
        den = self.den ** n
        lc = den.leading_coeff()
        if lc != 1:
            inv = Fraction(1) / lc
            num, den = num.scale(inv), den.scale(inv)
        return RationalFunction(num, den, _normalized=True)

    # -- substitution -------------------------------------------------

    def substitute(self, bindings: Mapping[str, "RationalFunction"]):
        """Substitute rational functions for variables, exactly.

        Raises ZeroDivisionError if the denominator vanishes under the
        binding.
        """
        bindings = {k: self._coerce(v) for k, v in bindings.items()}
        num = _poly_substitute(self.num, bindings)
        den = _poly_substitute(self.den, bindings)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes under substitution")
        return num / den

    def sqrt(self) -> "RationalFunction":
        """Exact square root; raises ValueError if not a perfect square."""
        n = poly_sqrt(self.num)
        d = poly_sqrt(self.den)
        if d is None and n is not None:
            # monic den may hide a square behind a content factor; retry scaled
            n2 = poly_sqrt(self.num * self.den)
            if n2 is not None:
                return RationalFunction(n2, self.den)
        if n is None or d is None:
            raise ValueError(f"not a perfect square: {self}")
        return RationalFunction(n, d)

    def __str__(self) -> str:
        if self.den == MultiPoly.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def _poly_substitute(p: MultiPoly, bindings) -> "RationalFunction":
    cache: Dict[Tuple[str, int], RationalFunction] = {}

    def power(name, e):
        key = (name, e)
        if key not in cache:
            base = bindings.get(name)
            if base is None:
                base = RationalFunction.var(name)
            cache[key] = base ** e
        return cache[key]

    total = RationalFunction.const(0)
    for e, c in p.terms.items():
        v = RationalFunction.const(c)
        for name, exp in zip(p.variables, e):
            if exp:
                v = v * power(name, exp)
        total = total + v
    return total


_factor_cache: Dict[MultiPoly, Tuple[Fraction, Tuple[Tuple[MultiPoly, int], ...]]] = {}


def poly_factor(p: MultiPoly):
    """Factor into monic irreducibles: (coeff, ((factor, exponent), ...)).

    The product coeff * prod(f^e) reproduces p exactly.  Falls back to the
    trivial factorization (monic p itself) without sympy.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.is_const():
        return p.as_const(), ()
    cached = _factor_cache.get(p)
    if cached is not None:
        return cached
    if _sympy is None:
        lc = p.leading_coeff()
        result = (lc, ((_make_monic(p), 1),))
    else:
        variables = p.variables
        gens = _sympy.symbols(variables)
        coeff, parts = _to_sympy(p, variables, gens).factor_list()
        c = Fraction(int(coeff.p), int(coeff.q))
        out = []
        for fac, e in parts:
            mp = _from_sympy(fac, tuple(str(g) for g in fac.gens))
            lc = mp.leading_coeff()
            if lc != 1:
                c *= lc ** e
                mp = _make_monic(mp)
            out.append((mp, int(e)))
        out.sort(key=lambda fe: (fe[0].total_degree(), str(fe[0])))
        result = (c, tuple(out))
    if len(_factor_cache) > 4096:
        _factor_cache.clear()
    _factor_cache[p] = result
    return result


class FactoredValue:
    """A nonzero rational function kept as coeff * prod(irreducible^exp).

    Multiplication just adds exponents, so long products cancel without
    ever expanding intermediate polynomials; expand() builds the canonical
    RationalFunction at the end.
    """

    def __init__(self, coeff=Fraction(1), factors=None):
        self.coeff = Fraction(coeff)
        if self.coeff == 0:
            raise ValueError("FactoredValue must be nonzero")
        self.factors: Dict[MultiPoly, int] = dict(factors or {})

    def copy(self) -> "FactoredValue":
        return FactoredValue(self.coeff, self.factors)

    def _mul_poly(self, p: MultiPoly, e: int):
        c, parts = poly_factor(p)
        self.coeff *= Fraction(c) ** e
        for f, k in parts:
            new = self.factors.get(f, 0) + k * e
            if new:
                self.factors[f] = new
            else:
                del self.factors[f]

    def mul_rf(self, rf, exponent: int = 1) -> "FactoredValue":
        if rf.is_zero():
            raise ValueError("cannot multiply a FactoredValue by zero")
        if not exponent:
            return self
        if isinstance(rf, FactoredRF):
            self.coeff *= rf.coeff ** exponent
            for f, k in rf.factors.items():
                new = self.factors.get(f, 0) + k * exponent
                if new:
                    self.factors[f] = new
                else:
                    del self.factors[f]
            return self
        self._mul_poly(rf.num, exponent)
        if not rf.den.is_const() or rf.den.as_const() != 1:
            self._mul_poly(rf.den, -exponent)
        return self

    def mul(self, other: "FactoredValue") -> "FactoredValue":
        self.coeff *= other.coeff
        for f, e in other.factors.items():
            new = self.factors.get(f, 0) + e
            if new:
                self.factors[f] = new
            else:
                del self.factors[f]
        return self

    def expand(self) -> "RationalFunction":
        num = MultiPoly.const(self.coeff.numerator)
        den = MultiPoly.const(self.coeff.denominator)
        # small factors first keeps intermediate products lean
        order = sorted(self.factors.items(),
                       key=lambda fe: (fe[0].total_degree(), str(fe[0])))
        for f, e in order:
            if e > 0:
                num = num * f ** e
            else:
                den = den * f ** (-e)
        lc = den.leading_coeff()
        if lc != 1:
            inv = Fraction(1) / lc
            num, den = num.scale(inv), den.scale(inv)
        return RationalFunction(num, den,
                                _normalized=_sympy is not None)


class FactoredRF:
    """A rational function kept as coeff * prod(monic irreducible^exp).

    Multiplication and division are exponent arithmetic; addition pulls out
    the shared factors so that only a small remainder is ever expanded.
    This makes long weight-transformation orbits tractable where expanded
    arithmetic blows up.  coeff == 0 encodes the zero function (factors
    empty).  The representation is canonical, so == is structural.
    """

    __slots__ = ("coeff", "factors")

    def __init__(self, coeff=Fraction(1), factors=None):
        object.__setattr__(self, "coeff", Fraction(coeff))
        object.__setattr__(self, "factors",
                           dict(factors or {}) if self.coeff else {})

    def __setattr__(self, *a):
        raise AttributeError("FactoredRF is immutable")

    @staticmethod
    def zero() -> "FactoredRF":
        return FactoredRF(0)

    @staticmethod
    def const(c) -> "FactoredRF":
        return FactoredRF(c)

    @staticmethod
    def from_rf(rf: "RationalFunction") -> "FactoredRF":
        if rf.is_zero():
            return FactoredRF.zero()
        c1, parts1 = poly_factor(rf.num)
        c2, parts2 = poly_factor(rf.den)
        factors: Dict[MultiPoly, int] = {}
        for f, e in parts1:
            factors[f] = factors.get(f, 0) + e
        for f, e in parts2:
            factors[f] = factors.get(f, 0) - e
        factors = {f: e for f, e in factors.items() if e}
        return FactoredRF(Fraction(c1) / Fraction(c2), factors)

    def to_rf(self) -> "RationalFunction":
        if not self.coeff:
            return RationalFunction.const(0)
        num = MultiPoly.const(self.coeff.numerator)
        den = MultiPoly.const(self.coeff.denominator)
        order = sorted(self.factors.items(),
                       key=lambda fe: (fe[0].total_degree(), str(fe[0])))
        for f, e in order:
            if e > 0:
                num = num * f ** e
            else:
                den = den * f ** (-e)
        lc = den.leading_coeff()
        if lc != 1:
            inv = Fraction(1) / lc
            num, den = num.scale(inv), den.scale(inv)
        return RationalFunction(num, den, _normalized=_sympy is not None)

    def is_zero(self) -> bool:
        return not self.coeff

    def _merged(self, other: "FactoredRF", sign: int) -> "FactoredRF":
        factors = dict(self.factors)
        for f, e in other.factors.items():
            new = factors.get(f, 0) + sign * e
            if new:
                factors[f] = new
            else:
                factors.pop(f, None)
        coeff = self.coeff * (other.coeff if sign > 0
                              else Fraction(1) / other.coeff)
        return FactoredRF(coeff, factors)

    @staticmethod
    def _coerce(x) -> "FactoredRF":
        if isinstance(x, FactoredRF):
            return x
        if isinstance(x, RationalFunction):
            return FactoredRF.from_rf(x)
        if isinstance(x, (int, Fraction)):
            return FactoredRF(x)
        raise TypeError(f"cannot coerce {type(x).__name__}")

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return FactoredRF.zero()
        return self._merged(other, 1)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_zero():
            return self
        return self._merged(other, -1)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def inverse(self) -> "FactoredRF":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FactoredRF(Fraction(1) / self.coeff,
                          {f: -e for f, e in self.factors.items()})

    def __pow__(self, n: int):
        if n == 0:
            return FactoredRF(1)
        if self.is_zero():
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return self
        return FactoredRF(self.coeff ** n,
                          {f: e * n for f, e in self.factors.items()})

    def __neg__(self):
        return FactoredRF(-self.coeff, self.factors)

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        shared: Dict[MultiPoly, int] = {}
        for f in set(self.factors) | set(other.factors):
            m = min(self.factors.get(f, 0), other.factors.get(f, 0))
            if m:
                shared[f] = m
        common = FactoredRF(1, shared)
        r = (self._merged(common, -1).to_rf()
             + other._merged(common, -1).to_rf())
        if r.is_zero():
            return FactoredRF.zero()
        return FactoredRF.from_rf(r)._merged(common, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            other = self._coerce(other)
        if not isinstance(other, FactoredRF):
            return NotImplemented
        return self.coeff == other.coeff and self.factors == other.factors

    def __hash__(self):
        return hash((self.coeff, frozenset(self.factors.items())))

    def __str__(self):
        return str(self.to_rf())

    def __repr__(self):
        return f"FactoredRF({self})"


def divides(d: MultiPoly, f: MultiPoly) -> Tuple[bool, Optional[MultiPoly]]:
    """Whether d divides f exactly; returns the quotient when it does."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q = div_exact(f, d)
    return (q is not None), q


# ---------------------------------------------------------------------------
# Integer factorization (display helper for count tables)
# ---------------------------------------------------------------------------


def factor_integer(n: int):
    """Prime factorization of |n| as [(prime, exponent), ...], ascending."""
    if n == 0:
        raise ValueError("cannot factor zero")
    n = abs(n)
    out = []
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        rest = sorted(_factor_rho(n).items())
        out.extend(rest)
    return out


def _factor_rho(n: int) -> Dict[int, int]:
    if n == 1:
        return {}
    if _is_prime(n):
        return {n: 1}
    d = n
    while d == n:
        d = _pollard_rho(n)
    left = _factor_rho(d)
    for p, e in _factor_rho(n // d).items():
        left[p] = left.get(p, 0) + e
    return left


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
