from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-12, max_value=12, max_denominator=9)
nonzero_fractions = small_fractions.filter(lambda q: q != 0)


@st.composite
def polynomials(draw, max_degree=6):
    from zerotransfer.poly import Polynomial

    coeffs = draw(st.lists(small_fractions, min_size=0, max_size=max_degree + 1))
    return Polynomial(coeffs)


def to_sympy(p, x):
    import sympy

    return sum((sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs)),
               sympy.Integer(0))


def from_sympy(expr, x):
    import sympy

    from zerotransfer.poly import Polynomial

    coeffs = sympy.Poly(sympy.expand(expr), x).all_coeffs()[::-1]
    return Polynomial(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs)


def naive_family(g, h, n_max):
    """The defining recursion unrolled with sympy expressions, sharing no code
    with the package.  Returns sympy expressions in the symbol ``z``."""
    import sympy

    z = sympy.Symbol("z")
    P = [sympy.Integer(1)]
    for n in range(1, n_max + 1):
        acc = sum(sympy.Rational(str(g(k))) * P[n - k] for k in range(1, n + 1))
        P.append(sympy.expand(z * acc / sympy.Rational(str(h(n)))))
    return z, P
