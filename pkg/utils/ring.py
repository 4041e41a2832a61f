"""
Exact arithmetic over the supported principal ideal domains.

Three base rings are supported: the integers, univariate polynomials over the rationals
and univariate polynomials over a prime field. Integers are stored as Python ints and
polynomials as sympy ``Poly`` objects, so every computation is exact.
"""
import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from functools import reduce as fold
from itertools import combinations
from tokenize import TokenError
from typing import Iterable, List, Optional, Tuple, Union

import sympy
from sympy import Poly, Symbol, ZZ
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from sympy.polys.polyerrors import ExactQuotientFailed

from .exceptions import (
    IncompatibleSystem,
    InexactDivision,
    ParseError,
    RingMismatch,
    UnsupportedRing,
)

# Configure logging
logger = logging.getLogger(__name__)

X = Symbol('x')

_RING_PATTERN = re.compile(r'^\s*(?:(?P<z>Z)|(?P<q>Q\[x\])|GF\(\s*(?P<p>\d+)\s*\)\[x\])\s*$')
_INTEGER_PATTERN = re.compile(r'^\s*[+-]?\d+\s*$')
_POLY_CHARS = re.compile(r'[0-9x+\-*/^()\s]')
_IMPLICIT_MUL = re.compile(r'[0-9x)]\s*(?=[x(])|[x)]\s*(?=[0-9])')


class RingKind(Enum):
    INTEGERS = 'Z'
    RATIONAL_POLYNOMIALS = 'Q[x]'
    PRIME_FIELD_POLYNOMIALS = 'GF(p)[x]'


@dataclass(frozen=True)
class RingSpec:
    """
    A principal ideal domain the engine can compute in.

    Attributes:
        kind: Which family of ring this is.
        p: The characteristic for polynomials over a prime field, otherwise None.
    """
    kind: RingKind
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind is RingKind.PRIME_FIELD_POLYNOMIALS:
            if self.p is None or not sympy.isprime(self.p):
                raise UnsupportedRing(f"GF(p)[x] needs a prime p, got {self.p}")
        elif self.p is not None:
            raise UnsupportedRing(f"{self.kind.value} takes no characteristic")

    def __str__(self) -> str:
        if self.kind is RingKind.PRIME_FIELD_POLYNOMIALS:
            return f"GF({self.p})[x]"
        return self.kind.value

    @property
    def is_polynomial(self) -> bool:
        return self.kind is not RingKind.INTEGERS

    @property
    def domain(self):
        """The sympy coefficient domain of a polynomial ring."""
        if self.kind is RingKind.RATIONAL_POLYNOMIALS:
            return sympy.QQ
        if self.kind is RingKind.PRIME_FIELD_POLYNOMIALS:
            return sympy.GF(self.p)
        raise UnsupportedRing("The integers have no coefficient domain")

    def poly(self, data) -> Poly:
        """Build a polynomial in this ring from an expression or a coefficient list."""
        return Poly(data, X, domain=self.domain)

    def from_int(self, n: int) -> 'RingElem':
        if self.is_polynomial:
            return RingElem(self, self.poly(n))
        return RingElem(self, int(n))

    def zero(self) -> 'RingElem':
        return self.from_int(0)

    def one(self) -> 'RingElem':
        return self.from_int(1)

    def coerce(self, value: Union['RingElem', int]) -> 'RingElem':
        if isinstance(value, RingElem):
            if value.ring != self:
                raise RingMismatch(self, value.ring)
            return value
        if isinstance(value, int):
            return self.from_int(value)
        raise TypeError(f"Cannot interpret {value!r} as an element of {self}")

    @property
    def matrix_domain(self):
        """The sympy domain matrices over this ring are computed in: ZZ, QQ[x] or GF(p)[x]."""
        if self.is_polynomial:
            return self.domain.poly_ring(X)
        return ZZ

    def to_matrix_entry(self, a: 'RingElem', domain=None):
        domain = domain or self.matrix_domain
        if self.is_polynomial:
            return domain.from_sympy(a.value.as_expr())
        return domain(a.value)

    def from_matrix_entry(self, value, domain=None) -> 'RingElem':
        domain = domain or self.matrix_domain
        if self.is_polynomial:
            return RingElem(self, self.poly(domain.to_sympy(value)))
        return RingElem(self, int(value))


INTEGERS = RingSpec(RingKind.INTEGERS)
RATIONAL_POLYNOMIALS = RingSpec(RingKind.RATIONAL_POLYNOMIALS)


def prime_field_polynomials(p: int) -> RingSpec:
    return RingSpec(RingKind.PRIME_FIELD_POLYNOMIALS, p)


@dataclass(frozen=True)
class RingElem:
    """
    An immutable element of a RingSpec.

    Attributes:
        ring: The ring the element lives in.
        value: A Python int for the integers, a sympy Poly for polynomial rings.
    """
    ring: RingSpec
    value: Union[int, Poly]

    def _other(self, other) -> 'RingElem':
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingElem(self.ring, self.value + self._other(other).value)

    __radd__ = __add__

    def __sub__(self, other):
        return RingElem(self.ring, self.value - self._other(other).value)

    def __rsub__(self, other):
        return RingElem(self.ring, self._other(other).value - self.value)

    def __mul__(self, other):
        return RingElem(self.ring, self.value * self._other(other).value)

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, -self.value)

    def __str__(self) -> str:
        return print_elem(self)

    def __repr__(self) -> str:
        return f"RingElem({self.ring}, {print_elem(self)})"

    @property
    def is_zero(self) -> bool:
        if self.ring.is_polynomial:
            return self.value.is_zero
        return self.value == 0

    @property
    def is_unit(self) -> bool:
        if self.ring.is_polynomial:
            return not self.value.is_zero and self.value.degree() == 0
        return abs(self.value) == 1

    def divides(self, other) -> bool:
        """True when self divides other."""
        other = self._other(other)
        if self.is_zero:
            return other.is_zero
        return reduce(other, self).is_zero

    def exquo(self, other) -> 'RingElem':
        """Exact quotient self / other."""
        return exquo(self, self._other(other))


def _same_ring(a: RingElem, b: RingElem) -> RingSpec:
    if a.ring != b.ring:
        raise RingMismatch(a.ring, b.ring)
    return a.ring


def normalize(a: RingElem) -> RingElem:
    """
    Return the canonical associate of an element.

    Args:
        a: Any ring element.

    Returns:
        |a| for integers, the monic associate for polynomials, zero for zero.
    """
    if a.is_zero:
        return a
    if a.ring.is_polynomial:
        return RingElem(a.ring, a.value.monic())
    return RingElem(a.ring, abs(a.value))


def associates(a: RingElem, b: RingElem) -> bool:
    _same_ring(a, b)
    return normalize(a) == normalize(b)


def exquo(a: RingElem, b: RingElem) -> RingElem:
    """
    Divide exactly.

    Raises:
        InexactDivision: If b does not divide a.
    """
    ring = _same_ring(a, b)
    if b.is_zero:
        raise InexactDivision(f"Division of {a} by zero")
    if ring.is_polynomial:
        try:
            return RingElem(ring, a.value.exquo(b.value))
        except ExactQuotientFailed:
            raise InexactDivision(f"{b} does not divide {a}")
    quotient, remainder = divmod(a.value, b.value)
    if remainder:
        raise InexactDivision(f"{b} does not divide {a}")
    return RingElem(ring, quotient)


def reduce(a: RingElem, m: RingElem) -> RingElem:
    """
    Canonical representative of a modulo m.

    The least non-negative residue for integers and the remainder of degree below
    deg m for polynomials. Modulo zero the element is returned unchanged; modulo a unit
    every element reduces to zero.
    """
    ring = _same_ring(a, m)
    if m.is_zero:
        return a
    if ring.is_polynomial:
        return RingElem(ring, a.value.rem(m.value))
    return RingElem(ring, a.value % abs(m.value))


def gcd(a: RingElem, b: RingElem) -> RingElem:
    """Normalized greatest common divisor; gcd(0, a) = normalize(a)."""
    ring = _same_ring(a, b)
    if ring.is_polynomial:
        return normalize(RingElem(ring, a.value.gcd(b.value)))
    return RingElem(ring, math.gcd(a.value, b.value))


def lcm(a: RingElem, b: RingElem) -> RingElem:
    """Normalized least common multiple; lcm(0, a) = 0."""
    _same_ring(a, b)
    if a.is_zero or b.is_zero:
        return a.ring.zero()
    return normalize(exquo(a * b, gcd(a, b)))


def gcd_of(ring: RingSpec, elements: Iterable[RingElem]) -> RingElem:
    """Fold gcd over a collection; the gcd of nothing is 0."""
    return fold(gcd, elements, ring.zero())


def lcm_of(ring: RingSpec, elements: Iterable[RingElem]) -> RingElem:
    """Fold lcm over a collection; the lcm of nothing is 1."""
    return fold(lcm, elements, ring.one())


def egcd(a: RingElem, b: RingElem) -> Tuple[RingElem, RingElem, RingElem]:
    """
    Extended Euclidean algorithm.

    Args:
        a: First operand.
        b: Second operand.

    Returns:
        Tuple (g, s, t) with g = normalize(gcd(a, b)) and s*a + t*b = g.
    """
    ring = _same_ring(a, b)
    if a.is_zero and b.is_zero:
        return ring.zero(), ring.zero(), ring.zero()
    if ring.is_polynomial:
        if a.is_zero:
            g = normalize(b)
            return g, ring.zero(), exquo(g, b)
        if b.is_zero:
            g = normalize(a)
            return g, exquo(g, a), ring.zero()
        s, t, h = a.value.gcdex(b.value)
        return RingElem(ring, h), RingElem(ring, s), RingElem(ring, t)
    s, t, h = ZZ.gcdex(ZZ(a.value), ZZ(b.value))
    s, t, h = int(s), int(t), int(h)
    if h < 0:
        s, t, h = -s, -t, -h
    return RingElem(ring, h), RingElem(ring, s), RingElem(ring, t)


def inverse_mod(a: RingElem, m: RingElem) -> RingElem:
    """
    Inverse of a modulo m, reduced to its canonical representative.

    Raises:
        InexactDivision: If a is not a unit modulo m.
    """
    g, s, _ = egcd(a, m)
    if not g.is_unit:
        raise InexactDivision(f"{a} is not invertible modulo {m}")
    return reduce(s, m)


@dataclass(frozen=True)
class CongruenceSystem:
    """
    Conditions x = residue mod modulus over one ring.

    A zero modulus is an exact equality; a unit modulus is no constraint at all.
    """
    ring: RingSpec
    conditions: Tuple[Tuple[RingElem, RingElem], ...] = ()

    def __post_init__(self):
        for residue, modulus in self.conditions:
            if residue.ring != self.ring or modulus.ring != self.ring:
                raise RingMismatch(self.ring, residue.ring if residue.ring != self.ring else modulus.ring)

    @classmethod
    def of(cls, ring: RingSpec, conditions: Iterable[Tuple[RingElem, RingElem]]) -> 'CongruenceSystem':
        return cls(ring, tuple(conditions))

    def satisfied_by(self, x: RingElem) -> bool:
        return all(modulus.divides(x - residue) for residue, modulus in self.conditions)


def _merge(x: RingElem, modulus: RingElem, residue: RingElem, m: RingElem) -> Tuple[RingElem, RingElem]:
    g, s, _ = egcd(modulus, m)
    if g.is_zero:
        return x, modulus
    lifted = x + modulus * s * exquo(residue - x, g)
    combined = lcm(modulus, m)
    return reduce(lifted, combined), combined


def solve_congruences(system: CongruenceSystem) -> Tuple[RingElem, RingElem]:
    """
    Solve a congruence system with pairwise non-coprime moduli.

    Args:
        system: The conditions to satisfy.

    Returns:
        Tuple (x, L): the canonical solution and the normalized lcm of the moduli
        (zero when an exact constraint is present).

    Raises:
        IncompatibleSystem: If two conditions disagree modulo the gcd of their moduli.
    """
    ring = system.ring
    conditions = [(a, m) for a, m in system.conditions if not m.is_unit]
    for (a, m), (b, k) in combinations(conditions, 2):
        if not gcd(m, k).divides(a - b):
            raise IncompatibleSystem((a, m), (b, k))

    x, modulus = ring.zero(), ring.one()
    for residue, m in conditions:
        x, modulus = _merge(x, modulus, residue, m)
    logger.debug(f"Solved {len(conditions)} congruences over {ring}: x = {x} mod {modulus}")
    return reduce(x, modulus), normalize(modulus)


def crt_solve(system: CongruenceSystem) -> RingElem:
    """
    Canonical solution of a congruence system (generalized Chinese Remainder Theorem).

    The empty system has the solution 0.
    """
    return solve_congruences(system)[0]


def parse_ring_spec(text: str) -> RingSpec:
    """
    Parse "Z", "Q[x]" or "GF(p)[x]".

    Raises:
        UnsupportedRing: For anything else, including multivariate rings and non-prime p.
    """
    match = _RING_PATTERN.match(text or '')
    if not match:
        raise UnsupportedRing(f"Unsupported ring {text!r}; expected Z, Q[x] or GF(p)[x]")
    if match.group('z'):
        return INTEGERS
    if match.group('q'):
        return RATIONAL_POLYNOMIALS
    return prime_field_polynomials(int(match.group('p')))


def _original_position(text: str, rewritten_position: int) -> int:
    # each '^' became '**' in the rewritten text
    shift = 0
    for index, char in enumerate(text):
        if index + shift >= rewritten_position:
            return index
        if char == '^':
            shift += 1
    return len(text)


def _parse_polynomial_expr(text: str):
    for position, char in enumerate(text):
        if not _POLY_CHARS.match(char):
            raise ParseError(f"Unexpected character {char!r}", position, text)
    if not text.strip():
        raise ParseError("Empty element", 0, text)
    if '**' in text:
        raise ParseError("Use '^' for powers", text.index('**'), text)
    implicit = _IMPLICIT_MUL.search(text)
    if implicit:
        raise ParseError("Implicit multiplication is not allowed", implicit.end(), text)

    rewritten = text.replace('^', '**')
    try:
        expr = parse_expr(rewritten, local_dict={'x': X}, transformations=standard_transformations)
    except SyntaxError as e:
        position = _original_position(text, (e.offset or 1) - 1)
        raise ParseError("Malformed expression", position, text)
    except TokenError:
        raise ParseError("Unbalanced parentheses", len(text), text)
    except (TypeError, ValueError) as e:
        raise ParseError(f"Malformed expression ({e})", None, text)

    unknown = sorted(str(s) for s in expr.free_symbols if s != X)
    if unknown:
        raise ParseError(f"Unknown symbol {unknown[0]!r}", text.find(unknown[0]), text)
    if expr.has(sympy.zoo, sympy.nan, sympy.oo) or not expr.is_polynomial(X):
        raise ParseError("Not a polynomial in x", None, text)
    return expr


def parse_elem(spec: RingSpec, text: str) -> RingElem:
    """
    Parse a ring element.

    Integers are decimal literals with an optional sign. Polynomials are expressions in
    x built from integer or rational (a/b) coefficients with + - * ^ and parentheses;
    implicit multiplication is rejected.

    Args:
        spec: The ring to parse into.
        text: The element's text.

    Returns:
        The parsed element in canonical payload form (not normalized to an associate).

    Raises:
        ParseError: With the offending position where one is known.
    """
    if not spec.is_polynomial:
        if not _INTEGER_PATTERN.match(text):
            stripped = text.strip()
            offset = len(text) - len(text.lstrip())
            bad = next(
                (i for i, c in enumerate(stripped) if not (c.isdigit() or (i == 0 and c in '+-'))),
                len(stripped),
            )
            raise ParseError("Expected an integer literal", offset + bad, text)
        return RingElem(spec, int(text.strip()))

    rational = Poly(_parse_polynomial_expr(text), X, domain=sympy.QQ)
    if spec.kind is RingKind.RATIONAL_POLYNOMIALS:
        return RingElem(spec, rational)

    coefficients: List[int] = []
    for c in rational.all_coeffs():
        numerator, denominator = int(c.p), int(c.q)
        if denominator % spec.p == 0:
            raise ParseError(f"Coefficient {c} has no image in GF({spec.p})", None, text)
        coefficients.append(numerator * pow(denominator, -1, spec.p) % spec.p)
    return RingElem(spec, spec.poly(coefficients))


def _coefficients(a: RingElem) -> List:
    if a.ring.kind is RingKind.PRIME_FIELD_POLYNOMIALS:
        return [int(c) % a.ring.p for c in a.value.all_coeffs()]
    return list(a.value.all_coeffs())


def print_elem(a: RingElem) -> str:
    """
    Canonical text of an element, readable back by parse_elem.

    Examples: "-7", "x^2+2*x+1", "-1/2*x^2-1/2*x".
    """
    if not a.ring.is_polynomial:
        return str(a.value)
    if a.is_zero:
        return '0'

    coefficients = _coefficients(a)
    degree = len(coefficients) - 1
    terms: List[str] = []
    for k, c in enumerate(coefficients):
        if c == 0:
            continue
        exponent = degree - k
        magnitude = abs(c)
        if exponent == 0:
            body = str(magnitude)
        else:
            monomial = 'x' if exponent == 1 else f"x^{exponent}"
            body = monomial if magnitude == 1 else f"{magnitude}*{monomial}"
        if c < 0:
            terms.append(f"-{body}")
        else:
            terms.append(f"+{body}" if terms else body)
    return ''.join(terms)
