import itertools

import pytest
from hypothesis import assume, given, strategies as st

from utils.exceptions import IncompatibleSystem, InexactDivision, ParseError, RingMismatch, UnsupportedRing
from utils.ring import (
    INTEGERS,
    RATIONAL_POLYNOMIALS,
    CongruenceSystem,
    RingKind,
    associates,
    crt_solve,
    egcd,
    exquo,
    gcd,
    gcd_of,
    inverse_mod,
    lcm,
    lcm_of,
    normalize,
    parse_elem,
    parse_ring_spec,
    prime_field_polynomials,
    print_elem,
    reduce,
    solve_congruences,
)
from tests.strategies import ELEMENTS, element_tuples

Z = INTEGERS
QX = RATIONAL_POLYNOMIALS


def z(n):
    return Z.from_int(n)


def q(text):
    return parse_elem(QX, text)


def system(ring, *pairs):
    return CongruenceSystem.of(ring, pairs)


class TestRingSpec:
    @pytest.mark.parametrize('text,kind,p', [
        ('Z', RingKind.INTEGERS, None),
        ('Q[x]', RingKind.RATIONAL_POLYNOMIALS, None),
        ('GF(7)[x]', RingKind.PRIME_FIELD_POLYNOMIALS, 7),
        (' GF( 2 )[x] ', RingKind.PRIME_FIELD_POLYNOMIALS, 2),
    ])
    def test_parse(self, text, kind, p):
        spec = parse_ring_spec(text)
        assert spec.kind is kind
        assert spec.p == p

    @pytest.mark.parametrize('text', ['GF(4)[x]', 'GF(1)[x]', 'Z[x,y]', 'Q[x,y]', 'R', ''])
    def test_rejects_unsupported(self, text):
        with pytest.raises(UnsupportedRing):
            parse_ring_spec(text)

    def test_str_round_trips(self):
        for spec in (Z, QX, prime_field_polynomials(11)):
            assert parse_ring_spec(str(spec)) == spec


class TestParsing:
    def test_integers(self):
        assert parse_elem(Z, '-7') == z(-7)
        assert parse_elem(Z, ' 42 ') == z(42)
        assert parse_elem(Z, '+3') == z(3)

    def test_integer_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_elem(Z, '12a4')
        assert info.value.position == 2

    def test_polynomial_canonical_text(self):
        assert print_elem(q('(x+1)^2')) == 'x^2+2*x+1'
        assert print_elem(q('x - 2')) == 'x-2'
        assert print_elem(q('-(x^2+x)/2')) == '-1/2*x^2-1/2*x'
        assert print_elem(q('0')) == '0'
        assert print_elem(q('3')) == '3'

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(ParseError) as info:
            q('2x')
        assert info.value.position == 1

    def test_unknown_character(self):
        with pytest.raises(ParseError) as info:
            q('x+y')
        assert info.value.position == 2

    def test_python_power_rejected(self):
        with pytest.raises(ParseError) as info:
            q('x**2')
        assert info.value.position == 1

    @pytest.mark.parametrize('text', ['(x+1', 'x+', '', '1/0', 'x^-1', 'x/(x+1)'])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            q(text)

    def test_prime_field_coefficients(self):
        gf5 = prime_field_polynomials(5)
        assert print_elem(parse_elem(gf5, 'x+6')) == 'x+1'
        assert print_elem(parse_elem(gf5, '1/2*x')) == '3*x'
        assert print_elem(parse_elem(gf5, 'x-2')) == 'x+3'
        with pytest.raises(ParseError):
            parse_elem(gf5, '1/5*x')

    @given(element_tuples(1))
    def test_print_parse_round_trip(self, elements):
        (a,) = elements
        assert parse_elem(a.ring, print_elem(a)) == a


class TestArithmetic:
    def test_normalize(self):
        assert normalize(z(-6)) == z(6)
        assert normalize(q('2*x+4')) == q('x+2')
        assert normalize(q('0')) == q('0')

    def test_integer_gcd_lcm(self):
        assert gcd(z(12), z(-18)) == z(6)
        assert lcm(z(4), z(6)) == z(12)
        assert lcm(z(0), z(5)) == z(0)
        assert gcd(z(0), z(0)) == z(0)
        assert gcd(z(0), z(-5)) == z(5)
        assert gcd_of(Z, []) == z(0)
        assert lcm_of(Z, []) == z(1)

    def test_polynomial_gcd_lcm(self):
        assert gcd(q('x^2-1'), q('x^2+x')) == q('x+1')
        assert lcm(q('x'), q('x^2+x')) == q('x^2+x')
        assert lcm(q('x'), q('x-1')) == q('x^2-x')

    def test_reduce(self):
        assert reduce(z(-7), z(5)) == z(3)
        assert reduce(z(7), z(-5)) == z(2)
        assert reduce(z(7), z(0)) == z(7)
        assert reduce(q('x^2'), q('x+1')) == q('1')
        assert reduce(q('x^2+3'), q('2')) == q('0')

    def test_exquo(self):
        assert exquo(z(12), z(-4)) == z(-3)
        assert exquo(q('x^2-1'), q('x+1')) == q('x-1')
        with pytest.raises(InexactDivision):
            exquo(z(7), z(2))
        with pytest.raises(InexactDivision):
            exquo(q('x^2+1'), q('x+1'))
        with pytest.raises(InexactDivision):
            exquo(z(3), z(0))

    def test_inverse_mod(self):
        assert inverse_mod(z(5), z(3)) == z(2)
        assert inverse_mod(z(2), z(5)) == z(3)
        with pytest.raises(InexactDivision):
            inverse_mod(z(2), z(4))

    def test_predicates(self):
        assert z(-1).is_unit
        assert q('3').is_unit
        assert not q('x').is_unit
        assert z(3).divides(z(-12))
        assert z(0).divides(z(0))
        assert not z(0).divides(z(1))
        assert associates(q('2*x-4'), q('x-2'))
        assert associates(z(-8), z(8))

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatch):
            z(1) + q('1')
        with pytest.raises(RingMismatch):
            gcd(z(2), q('x'))

    @given(element_tuples(2))
    def test_egcd_bezout(self, pair):
        a, b = pair
        g, s, t = egcd(a, b)
        assert s * a + t * b == g
        assert g == gcd(a, b)

    @given(element_tuples(3))
    def test_gcd_lcm_identities(self, triple):
        a, b, c = triple
        g = gcd(a, b)
        assert g.divides(a) and g.divides(b)
        assert gcd(gcd(a, b), c) == gcd(a, gcd(b, c))
        assert lcm(lcm(a, b), c) == lcm(a, lcm(b, c))
        assert associates(g * lcm(a, b), a * b)
        if not g.is_zero:
            assert reduce(a, g).is_zero
        assert reduce(reduce(a, c), c) == reduce(a, c)


class TestCongruences:
    def test_golden_pairs(self):
        assert crt_solve(system(Z, (z(2), z(3)), (z(0), z(5)))) == z(5)
        assert crt_solve(system(Z, (z(8), z(9)), (z(5), z(6)))) == z(17)

    def test_combined_modulus(self):
        x, modulus = solve_congruences(system(Z, (z(8), z(9)), (z(5), z(6))))
        assert (x, modulus) == (z(17), z(18))

    def test_empty_system(self):
        assert crt_solve(system(Z)) == z(0)
        assert crt_solve(system(QX)) == q('0')

    def test_unit_moduli_are_vacuous(self):
        assert crt_solve(system(Z, (z(7), z(1)), (z(3), z(5)))) == z(3)

    def test_exact_constraint(self):
        assert crt_solve(system(Z, (z(12), z(0)), (z(2), z(5)))) == z(12)
        with pytest.raises(IncompatibleSystem):
            crt_solve(system(Z, (z(12), z(0)), (z(1), z(5))))

    def test_incompatible_reports_pair(self):
        with pytest.raises(IncompatibleSystem) as info:
            crt_solve(system(Z, (z(1), z(2)), (z(0), z(4))))
        assert info.value.pair == ((z(1), z(2)), (z(0), z(4)))

    def test_polynomial_golden(self):
        # g_4 = 0 mod x^2+x and g_4 = x-2 mod x-1
        g4 = crt_solve(system(QX, (q('0'), q('x^2+x')), (q('x-2'), q('x-1'))))
        assert g4 == q('-(x^2+x)/2')
        assert q('x^2+x').divides(g4)
        assert q('x-1').divides(g4 - q('x-2'))

    @given(st.lists(
        st.tuples(st.integers(min_value=0, max_value=50), st.integers(min_value=1, max_value=12)),
        min_size=1, max_size=3,
    ))
    def test_integer_systems_match_exhaustive_search(self, pairs):
        conditions = [(z(r), z(m)) for r, m in pairs]
        modulus = lcm_of(Z, (m for _, m in conditions)).value
        solutions = [x for x in range(modulus) if all((x - r) % m == 0 for r, m in pairs)]
        if solutions:
            assert crt_solve(system(Z, *conditions)) == z(solutions[0])
            assert len(solutions) == 1
        else:
            with pytest.raises(IncompatibleSystem):
                crt_solve(system(Z, *conditions))

    @given(st.sampled_from(list(ELEMENTS)).flatmap(
        lambda ring: st.lists(st.tuples(ELEMENTS[ring], ELEMENTS[ring]), min_size=1, max_size=3)
    ))
    def test_solution_satisfies_every_condition(self, pairs):
        assume(all(not m.is_zero for _, m in pairs))
        ring = pairs[0][0].ring
        conditions = system(ring, *pairs)
        compatible = all(
            gcd(m, k).divides(a - b) for (a, m), (b, k) in itertools.combinations(pairs, 2)
        )
        if compatible:
            assert conditions.satisfied_by(crt_solve(conditions))
        else:
            with pytest.raises(IncompatibleSystem):
                crt_solve(conditions)
