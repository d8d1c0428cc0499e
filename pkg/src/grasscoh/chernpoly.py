"""Polynomials in formal Chern variables c_1..c_k and the sphere class u.

These live *before* any quotient is taken: relations h_r, Jacobi-Trudi
determinants and endomorphism data are all expressed here and then pushed
into a ring by :func:`evaluate`.
"""
from fractions import Fraction
from typing import Dict, Sequence, Tuple

Monomial = Tuple[Tuple[int, ...], int]  # (c exponents, u exponent)

MAX_U_EXPONENT = 2


def _fmt_coeff(q: Fraction) -> str:
    return str(q)


class ChernPolynomial:
    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Dict[Monomial, object] = None):
        if k < 1:
            raise ValueError("need at least one Chern variable")
        self.k = k
        clean = {}
        for (exps, ue), coef in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != k:
                raise ValueError(f"monomial {exps} has wrong number of variables for k={k}")
            if ue > MAX_U_EXPONENT:
                raise ValueError("u exponent above 2 is not representable (u^2 = 0 downstream)")
            coef = Fraction(coef)
            if coef:
                key = (exps, ue)
                clean[key] = clean.get(key, 0) + coef
                if not clean[key]:
                    del clean[key]
        self.terms = clean

    # -- constructors --------------------------------------------------
    @classmethod
    def constant(cls, k: int, value=1) -> "ChernPolynomial":
        return cls(k, {((0,) * k, 0): value})

    @classmethod
    def c(cls, k: int, i: int) -> "ChernPolynomial":
        """The variable c_i; c_0 = 1 and c_i = 0 outside 0..k."""
        if i == 0:
            return cls.constant(k)
        if i < 0 or i > k:
            return cls(k)
        exps = [0] * k
        exps[i - 1] = 1
        return cls(k, {(tuple(exps), 0): 1})

    @classmethod
    def u(cls, k: int) -> "ChernPolynomial":
        return cls(k, {((0,) * k, 1): 1})

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "ChernPolynomial":
        if isinstance(other, ChernPolynomial):
            if other.k != self.k:
                raise ValueError("Chern polynomials over different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return ChernPolynomial.constant(self.k, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            out[mono] = out.get(mono, 0) + coef
        return ChernPolynomial(self.k, out)

    __radd__ = __add__

    def __neg__(self):
        return ChernPolynomial(self.k, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, Fraction] = {}
        for (ea, ua), ca in self.terms.items():
            for (eb, ub), cb in other.terms.items():
                ue = ua + ub
                if ue > MAX_U_EXPONENT:
                    raise ValueError("product would contain u^3; u^2 = 0 downstream")
                key = (tuple(x + y for x, y in zip(ea, eb)), ue)
                out[key] = out.get(key, 0) + ca * cb
        return ChernPolynomial(self.k, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = ChernPolynomial.constant(self.k)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other) if isinstance(other, (int, Fraction, ChernPolynomial)) else NotImplemented
        if other is NotImplemented:
            return other
        return self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, q) -> "ChernPolynomial":
        q = Fraction(q)
        return ChernPolynomial(self.k, {m: c * q for m, c in self.terms.items()})

    # -- degrees -------------------------------------------------------
    def monomial_degree(self, mono: Monomial, m: int = 0) -> int:
        exps, ue = mono
        return sum(2 * (i + 1) * a for i, a in enumerate(exps)) + m * ue

    def degrees(self, m: int = 0) -> set:
        return {self.monomial_degree(mono, m) for mono in self.terms}

    def is_homogeneous(self, m: int = 0) -> bool:
        return len(self.degrees(m)) <= 1

    def u_free(self) -> bool:
        return all(ue == 0 for _, ue in self.terms)

    # -- calculus ------------------------------------------------------
    def partial_derivative(self, j: int) -> "ChernPolynomial":
        """Formal partial derivative with respect to c_j."""
        if not 1 <= j <= self.k:
            raise ValueError(f"variable index {j} out of range 1..{self.k}")
        out = {}
        for (exps, ue), coef in self.terms.items():
            a = exps[j - 1]
            if a:
                new = list(exps)
                new[j - 1] = a - 1
                out[(tuple(new), ue)] = coef * a
        return ChernPolynomial(self.k, out)

    def substitute_scaled(self, factors: Sequence) -> "ChernPolynomial":
        """Substitute c_i -> factors[i-1] * c_i."""
        out = {}
        for (exps, ue), coef in self.terms.items():
            q = Fraction(coef)
            for f, a in zip(factors, exps):
                q *= Fraction(f) ** a
            out[(exps, ue)] = q
        return ChernPolynomial(self.k, out)

    # -- text ----------------------------------------------------------
    def _sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda t: (-self.monomial_degree(t[0]), -t[0][1], tuple(-a for a in t[0][0])),
        )

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for (exps, ue), coef in self._sorted_terms():
            factors = []
            if ue == 1:
                factors.append("u")
            elif ue > 1:
                factors.append(f"u^{ue}")
            for i, a in enumerate(exps):
                if a == 1:
                    factors.append(f"c{i + 1}")
                elif a > 1:
                    factors.append(f"c{i + 1}^{a}")
            mag = abs(coef)
            if not factors:
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _fmt_coeff(mag) + "*" + "*".join(factors)
            if not pieces:
                pieces.append(("-" if coef < 0 else "") + body)
            else:
                pieces.append((" - " if coef < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"ChernPolynomial(k={self.k}, {self})"


def evaluate(poly: ChernPolynomial, images: Sequence, u_image=None, one=None):
    """Ring-homomorphic substitution c_i -> images[i-1], u -> u_image.

    ``images`` and ``u_image`` are ring elements supporting ``+``, ``*`` and
    scalar multiplication (ProductClass for the product ring, GrassClass for
    the bare Grassmannian).  Powers are cached per variable.
    """
    if len(images) != poly.k:
        raise ValueError(f"need {poly.k} generator images, got {len(images)}")
    if one is None:
        ref = u_image if u_image is not None else images[0]
        one = ref.one()
    result = one.zero()
    powers = [[one] for _ in range(poly.k)]
    u_powers = [one]

    def power(cache, base, e):
        while len(cache) <= e:
            cache.append(cache[-1] * base)
        return cache[e]

    for (exps, ue), coef in poly.terms.items():
        term = one
        for i, a in enumerate(exps):
            if a:
                term = term * power(powers[i], images[i], a)
        if ue:
            if u_image is None:
                raise ValueError("polynomial involves u but no image for u was given")
            term = term * power(u_powers, u_image, ue)
        result = result + term.scale(coef)
    return result
