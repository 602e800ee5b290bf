"""
Exact Laurent-polynomial arithmetic over the integers.

``LaurentPoly2`` lives in Z[v^{+-1}, z^{+-1}] and carries HOMFLY polynomials;
``LaurentPoly1`` lives in Z[t^{+-1}] (or any single named variable) and
carries Alexander polynomials and the v-slices g_i(z) of a HOMFLY polynomial.

Both types are immutable, keep only nonzero coefficients, and print in a
canonical text form that parses back to the same value::

    >>> p = LaurentPoly2.parse("2*v^2 - 1*v^4 + 1*v^2*z^2")
    >>> str(p)
    '2*v^2 + 1*v^2*z^2 - 1*v^4'
    >>> p.ord_v(), p.maxdeg_v()
    (2, 4)
"""

from __future__ import annotations

import operator
import re
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Tuple

from cbord.errors import InputError

__all__ = ["LaurentPoly1", "LaurentPoly2", "add", "mul", "ord_v", "maxdeg_v", "substitute_mirror"]


def _is_integer(value) -> bool:
    # bool is an int subclass but never a coefficient
    return isinstance(value, int) and not isinstance(value, bool)


class _Laurent:
    """Shared machinery: a sparse map from exponent keys to nonzero ints."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for key, coeff in (terms or {}).items():
            if not _is_integer(coeff):
                coeff = operator.index(coeff)
            key = self._normalize_key(key)
            coeff = clean.get(key, 0) + coeff
            if coeff:
                clean[key] = coeff
            else:
                clean.pop(key, None)
        self._terms = MappingProxyType(clean)
        self._hash = None

    # subclasses define the exponent key shape
    @staticmethod
    def _normalize_key(key):
        raise NotImplementedError

    @staticmethod
    def _add_keys(k1, k2):
        raise NotImplementedError

    @classmethod
    def _unit_key(cls):
        raise NotImplementedError

    def _same_space(self, other) -> bool:
        return type(self) is type(other)

    def _coerce(self, other):
        if self._same_space(other):
            return other
        if _is_integer(other):
            return self._constant(other)
        return None

    def _constant(self, c: int):
        return self._rebuild({self._unit_key(): c})

    def _rebuild(self, terms):
        return type(self)(terms)

    @property
    def terms(self) -> Mapping:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0) + coeff
        return self._rebuild(merged)

    __radd__ = __add__

    def __neg__(self):
        return self._rebuild({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        product: Dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = self._add_keys(k1, k2)
                product[key] = product.get(key, 0) + c1 * c2
        return self._rebuild(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not _is_integer(exponent):
            return NotImplemented
        if exponent < 0:
            # only units (signed monomials) are invertible
            if len(self._terms) != 1:
                raise ValueError("only monomials with coefficient +-1 have negative powers")
            (key, coeff), = self._terms.items()
            if coeff not in (1, -1):
                raise ValueError("only monomials with coefficient +-1 have negative powers")
            inverse = self._rebuild({self._negate_key(key): coeff})
            return inverse ** (-exponent)
        result = self._constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}('{self}')"


class LaurentPoly2(_Laurent):
    """An element of Z[v^{+-1}, z^{+-1}], keyed by (v-exponent, z-exponent)."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(key) -> Tuple[int, int]:
        a, b = key
        return int(a), int(b)

    @staticmethod
    def _add_keys(k1, k2):
        return k1[0] + k2[0], k1[1] + k2[1]

    @staticmethod
    def _negate_key(key):
        return -key[0], -key[1]

    @classmethod
    def _unit_key(cls):
        return 0, 0

    @classmethod
    def monomial(cls, coeff: int, v_exp: int = 0, z_exp: int = 0) -> "LaurentPoly2":
        return cls({(v_exp, z_exp): coeff})

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly2":
        return cls.monomial(1)

    def ord_v(self) -> int:
        """The v-valuation d: the smallest v-exponent present."""
        if not self._terms:
            raise InputError("valuation undefined for the zero polynomial")
        return min(a for a, _ in self._terms)

    def maxdeg_v(self) -> int:
        """The largest v-exponent D present."""
        if not self._terms:
            raise InputError("valuation undefined for the zero polynomial")
        return max(a for a, _ in self._terms)

    def z_exponents(self) -> set:
        return {b for _, b in self._terms}

    def substitute_mirror(self) -> "LaurentPoly2":
        """Return p(v^-1, -z)."""
        return LaurentPoly2({(-a, b): (-c if b % 2 else c) for (a, b), c in self._terms.items()})

    def v_slices(self) -> Dict[int, "LaurentPoly1"]:
        """The coefficients g_i(z) of p = sum_i g_i(z) v^i, keyed by i."""
        slices: Dict[int, Dict[int, int]] = {}
        for (a, b), c in self._terms.items():
            slices.setdefault(a, {})[b] = c
        return {a: LaurentPoly1(terms, var="z") for a, terms in sorted(slices.items())}

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for (a, b), c in sorted(self._terms.items()):
            body = str(abs(c))
            if a:
                body += f"*v^{a}"
            if b:
                body += f"*z^{b}"
            pieces.append((c < 0, body))
        return _join_terms(pieces)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly2":
        """Parse ``term (("+"|"-") term)*`` with term = ``int ["*v^" int] ["*z^" int]``."""
        terms: Dict[Tuple[int, int], int] = {}
        for coeff, exps in _scan_terms(text, _TERM2):
            a = int(exps[0]) if exps[0] is not None else 0
            b = int(exps[1]) if exps[1] is not None else 0
            terms[(a, b)] = terms.get((a, b), 0) + coeff
        return cls(terms)


class LaurentPoly1(_Laurent):
    """An element of Z[x^{+-1}] for a single named variable (``t`` by default)."""

    __slots__ = ("var",)

    def __init__(self, terms: Mapping | None = None, var: str = "t"):
        super().__init__(terms)
        self.var = var

    def _rebuild(self, terms):
        return LaurentPoly1(terms, var=self.var)

    def _same_space(self, other) -> bool:
        return isinstance(other, LaurentPoly1) and other.var == self.var

    @staticmethod
    def _normalize_key(key) -> int:
        return int(key)

    @staticmethod
    def _add_keys(k1, k2):
        return k1 + k2

    @staticmethod
    def _negate_key(key):
        return -key

    @classmethod
    def _unit_key(cls):
        return 0

    def min_degree(self) -> int:
        if not self._terms:
            raise InputError("degree undefined for the zero polynomial")
        return min(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise InputError("degree undefined for the zero polynomial")
        return max(self._terms)

    def normalized(self) -> "LaurentPoly1":
        """Representative up to +-x^k: lowest exponent 0, leading coefficient positive."""
        if not self._terms:
            return self
        shift = self.min_degree()
        sign = -1 if self._terms[self.max_degree()] < 0 else 1
        return self._rebuild({k - shift: sign * c for k, c in self._terms.items()})

    def reciprocal(self) -> "LaurentPoly1":
        """Return p(1/x)."""
        return self._rebuild({-k: c for k, c in self._terms.items()})

    def __hash__(self):
        return hash((self.var, super().__hash__()))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for k, c in sorted(self._terms.items()):
            body = str(abs(c))
            if k:
                body += f"*{self.var}^{k}"
            pieces.append((c < 0, body))
        return _join_terms(pieces)

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "LaurentPoly1":
        pattern = re.compile(r"([+-]?)(\d+)(?:\*" + re.escape(var) + r"\^(-?\d+))?")
        terms: Dict[int, int] = {}
        for coeff, exps in _scan_terms(text, pattern):
            k = int(exps[0]) if exps[0] is not None else 0
            terms[k] = terms.get(k, 0) + coeff
        return cls(terms, var=var)


_TERM2 = re.compile(r"([+-]?)(\d+)(?:\*v\^(-?\d+))?(?:\*z\^(-?\d+))?")


def _join_terms(pieces) -> str:
    negative, body = pieces[0]
    out = ("-" if negative else "") + body
    for negative, body in pieces[1:]:
        out += (" - " if negative else " + ") + body
    return out


def _scan_terms(text: str, pattern: re.Pattern):
    """Yield (signed coefficient, exponent groups) for each term of ``text``."""
    compact = re.sub(r"\s*([*^+-])\s*", r"\1", text.strip())
    if not compact:
        raise InputError("empty polynomial", position=0)
    pos = 0
    while pos < len(compact):
        match = pattern.match(compact, pos)
        if match is None or match.end() == pos:
            raise InputError(f"malformed polynomial term {compact[pos:pos + 12]!r}", position=pos)
        sign, digits = match.group(1), match.group(2)
        if pos > 0 and not sign:
            raise InputError("expected '+' or '-' between terms", position=pos)
        coeff = -int(digits) if sign == "-" else int(digits)
        yield coeff, match.groups()[2:]
        pos = match.end()


# Functional spellings of the ring operations.

def add(p: LaurentPoly2, q: LaurentPoly2) -> LaurentPoly2:
    return p + q


def mul(p: LaurentPoly2, q: LaurentPoly2) -> LaurentPoly2:
    return p * q


def ord_v(p: LaurentPoly2) -> int:
    return p.ord_v()


def maxdeg_v(p: LaurentPoly2) -> int:
    return p.maxdeg_v()


def substitute_mirror(p: LaurentPoly2) -> LaurentPoly2:
    return p.substitute_mirror()
