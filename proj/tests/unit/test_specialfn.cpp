#include <doctest.h>

#include <cmath>

#include <mnconvex/errors.hpp>
#include <mnconvex/legendre.hpp>
#include <mnconvex/specialfn.hpp>

using namespace mnconvex;

namespace
{

HypergeometricParams hyp(const char *a, const char *b, const char *c)
{
    return {Param::parse(a), Param::parse(b), Param::parse(c)};
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

RationalPoly x_poly()
{
    return RationalPoly({Rational(0), Rational(1)});
}

} // namespace

TEST_CASE("gauss 2F1 series examples")
{
    const auto k = gauss_2f1_series(hyp("1/2", "1/2", "1"));
    CHECK(k.radius() == 1.0);
    CHECK(k.boundary_divergent());
    CHECK(k.exact_coeff(0) == 1);
    CHECK(k.exact_coeff(1) == Rational(1, 4));
    CHECK(k.exact_coeff(2) == Rational(9, 64));

    CHECK(rel(eval(gauss_2f1_series(hyp("3", "3", "1")), 0.1), 1.41 / std::pow(0.9, 5)) < 1e-14);
    CHECK(rel(eval(gauss_2f1_series(hyp("1/4", "3/4", "3/2")), 0.75), 2 / std::sqrt(3.0)) < 1e-13);
    // c > a + b: the series converges at the boundary, no guard.
    CHECK_FALSE(gauss_2f1_series(hyp("1/4", "3/4", "3/2")).boundary_divergent());

    CHECK_THROWS_AS(gauss_2f1_series(hyp("0", "1", "1")), InvalidParameter);
    CHECK_THROWS_AS(gauss_2f1_series(hyp("1", "1", "-1/2")), InvalidParameter);
}

TEST_CASE("generalized pFq examples")
{
    const auto e = generalized_pfq_series({{}, {}});
    CHECK_FALSE(e.finite_radius());
    CHECK(rel(eval(e, 1.3), std::exp(1.3)) < 1e-15);

    const auto cancelled = generalized_pfq_series({{Param::parse("2/3")}, {Param::parse("2/3")}});
    for (std::size_t n = 0; n < 20; ++n) {
        CHECK(cancelled.exact_coeff(n) == e.exact_coeff(n));
    }

    const auto i0 = generalized_pfq_series({{}, {Param(1)}});
    Rational fact = 1;
    for (std::size_t n = 0; n < 20; ++n) {
        if (n > 0) {
            fact *= static_cast<long>(n);
        }
        CHECK(i0.exact_coeff(n) == 1 / (fact * fact));
    }

    CHECK(generalized_pfq_series({{Param(1), Param(2)}, {Param(3)}}).radius() == 1.0);
    CHECK_THROWS_AS(generalized_pfq_series({{Param(1), Param(2)}, {}}), InvalidParameter);
    CHECK_THROWS_AS(generalized_pfq_series({{Param(1)}, {Param(-2)}}), InvalidParameter);
}

TEST_CASE("elliptic K examples")
{
    CHECK(elliptic_k(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-16));
    CHECK(elliptic_k(1e-9) == doctest::Approx(M_PI / 2).epsilon(1e-15));
    const double k = elliptic_k(std::sqrt(0.5));
    CHECK(std::abs(k * k / 4 - 0.859398) < 1e-6);
    CHECK(std::abs(k - 2 * std::sqrt(0.859398)) < 1e-5);
    CHECK(std::abs(elliptic_k(0.3) - elliptic_k_by_series(0.3)) < 1e-12);
    CHECK_THROWS_AS(elliptic_k(1.0), DomainError);
    CHECK_THROWS_AS(elliptic_k(-0.1), DomainError);
}

TEST_CASE("AGM and series routes for K agree")
{
    for (int i = 0; i <= 94; ++i) {
        const double x = 0.01 + 0.01 * i;
        CHECK_MESSAGE(rel(elliptic_k(x), elliptic_k_by_series(x)) < 1e-10, "x = " << x);
    }
    CHECK(agm(1.0, 1.0) == 1.0);
    CHECK(agm(1.0, 0.0) == 0.0);
    CHECK(rel(agm(1.0, std::sqrt(2.0)), 1.19814023473559220744) < 1e-15);
}

TEST_CASE("bessel series examples")
{
    const BesselParams cosh_p{Param(1), Param(-1), Param::parse("-1/2")};
    const BesselParams sinhc_p{Param(1), Param(-1), Param::parse("1/2")};
    const auto c = bessel_series(cosh_p);
    const auto s = bessel_series(sinhc_p);
    CHECK(cosh_p.k().exact() == Rational(1, 2));
    CHECK(sinhc_p.k().exact() == Rational(3, 2));
    CHECK_FALSE(c.finite_radius());
    CHECK(eval(c, 0.0) == 1.0);

    Rational fact = 1;
    for (std::size_t n = 0; n < 30; ++n) {
        if (n > 0) {
            fact *= static_cast<long>((2 * n - 1) * (2 * n));
        }
        CHECK(c.exact_coeff(n) == 1 / fact);
        CHECK(s.exact_coeff(n) == 1 / (fact * static_cast<long>(2 * n + 1)));
    }
    for (double x : {0.3, 1.0, 2.5, 4.0}) {
        CHECK(rel(eval(c, x * x), std::cosh(x)) < 1e-14);
        CHECK(rel(eval(s, x * x), std::sinh(x) / x) < 1e-14);
    }
    CHECK_THROWS_AS(bessel_series({Param(1), Param(1), Param(0)}), InvalidParameter);
    CHECK_THROWS_AS(bessel_series({Param(1), Param(-1), Param(-2)}), InvalidParameter);
}

TEST_CASE("legendre examples")
{
    CHECK(legendre(0).poly() == RationalPoly({Rational(1)}));
    CHECK(legendre(0)(0.3) == 1.0);
    CHECK(legendre(1).poly() == x_poly());
    CHECK(legendre(2).poly() == RationalPoly({Rational(-1, 2), Rational(0), Rational(3, 2)}));
    for (int n = 0; n <= 20; ++n) {
        CHECK(legendre(n)(Rational(1)) == 1);
        CHECK(legendre(n)(Rational(-1)) == (n % 2 == 0 ? 1 : -1));
        CHECK(legendre(n).poly().derivative()(Rational(1)) == Rational(n * (n + 1), 2));
    }
    CHECK_THROWS_AS(legendre(-1), InvalidParameter);
    CHECK(legendre(70).degree() == 70);
}

TEST_CASE("legendre recurrences hold as polynomial identities")
{
    for (int n = 1; n <= 20; ++n) {
        const auto p = legendre(n).poly();
        const auto q = legendre(n - 1).poly();
        // x P_n' = n P_n + P_{n-1}'
        CHECK(p.derivative().times_x() == Rational(n) * p + q.derivative());
        // P_n'' = x P_{n-1}'' + (n+1) P_{n-1}'
        CHECK(p.derivative().derivative() == q.derivative().derivative().times_x() + Rational(n + 1) * q.derivative());
        if (n >= 2) {
            // Bonnet: n P_n = (2n-1) x P_{n-1} - (n-1) P_{n-2}
            const auto r = legendre(n - 2).poly();
            CHECK(Rational(n) * p == Rational(2 * n - 1) * q.times_x() - Rational(n - 1) * r);
            // 4 P_{n-1}''(1) = (n-1)^2 n^2 / 2 - (n-1) n
            CHECK(4 * q.derivative().derivative()(Rational(1)) == Rational((n - 1) * (n - 1) * n * n, 2) - (n - 1) * n);
        }
    }
}

TEST_CASE("F(n,n;1;x) through Legendre polynomials")
{
    CHECK(rel(fnn_via_legendre(3, 0.1), 1.41 / std::pow(0.9, 5)) < 1e-14);
    CHECK(std::abs(fnn_via_legendre(3, 0.1) - 2.38785) < 1e-5);
    for (double x : {-0.7, -0.2, 0.0, 0.3, 0.45}) {
        CHECK(rel(fnn_via_legendre(1, x), 1 / (1 - x)) < 1e-15);
    }
    CHECK(rel(fnn_via_legendre(4, 0.2), eval(gauss_2f1_series(hyp("4", "4", "1")), 0.2)) < 1e-9);
    for (int n = 2; n <= 8; ++n) {
        const auto series = gauss_2f1_series({Param(n), Param(n), Param(1)});
        for (double x = -0.8; x <= 0.45 + 1e-12; x += 0.05) {
            CHECK_MESSAGE(rel(eval(series, x), fnn_via_legendre(n, x)) < 1e-9, "n " << n << " x " << x);
        }
    }
    CHECK_THROWS_AS(fnn_via_legendre(3, 0.5), DomainError);
    CHECK_THROWS_AS(fnn_via_legendre(3, -1.0), DomainError);
    CHECK_THROWS_AS(fnn_via_legendre(0, 0.1), InvalidParameter);
}

TEST_CASE("logarithmic derivative g_n")
{
    CHECK(gn_logderiv(3, Rational(0)) == 9);
    CHECK(std::abs(gn_logderiv(3, 0.1) - 8.534) < 5e-4);
    // Independent form: g_3 = (4 + 2x)/(1 + 4x + x^2) + 5/(1 - x).
    for (double x : {-0.5, -0.1, 0.0, 0.1, 0.3, 0.49}) {
        CHECK(rel(gn_logderiv(3, x), (4 + 2 * x) / (1 + 4 * x + x * x) + 5 / (1 - x)) < 1e-13);
    }
    CHECK(gn_prime(3, Rational(0)) == -9);
    CHECK(gn_prime_zero(3) == -9);
    CHECK(gn_prime_zero(4) == -56);
    for (int n = 2; n <= 10; ++n) {
        CHECK(gn_logderiv(n, Rational(0)) == n * n);
        CHECK(gn_prime(n, Rational(0)) == gn_prime_zero(n));
        if (n >= 3) {
            CHECK(gn_prime_zero(n) < 0);
        }
        const double h = 1e-5;
        const double fd = (gn_logderiv(n, h) - gn_logderiv(n, -h)) / (2 * h);
        CHECK(rel(fd, to_double(gn_prime_zero(n))) < 1e-4);
    }
    CHECK(gn_prime_zero(2) == 2);
}

TEST_CASE("contiguous relation for the derivative")
{
    const auto p = hyp("1/2", "1/2", "1");
    const auto f = gauss_2f1_series(p);
    const auto df = derivative(f);
    CHECK(std::abs(contiguous_derivative(p, 0.3) - 0.3 * 0.7 * eval(df, 0.3)) < 1e-10);
    CHECK(std::abs(contiguous_derivative(p, 1e-9)) < 1e-8);

    const auto q = hyp("1/4", "3/4", "3/2");
    const double x = 0.75;
    const double closed = f_quarter_closed_form(x);
    const double logderiv = 1 / (4 * (1 - x + std::sqrt(1 - x)));
    CHECK(rel(contiguous_derivative(q, x), x * (1 - x) * closed * logderiv) < 1e-10);
    CHECK_THROWS_AS(contiguous_derivative(p, 1.0), DomainError);
    CHECK_THROWS_AS(contiguous_derivative(p, 0.0), DomainError);
}

TEST_CASE("conjugate product")
{
    const auto p = hyp("1/2", "1/2", "1");
    CHECK(std::abs(conjugate_product(p, 0.2) - conjugate_product(p, 0.8)) < 1e-12);
    const double x = 0.6;
    const double xp = std::sqrt(1 - x * x);
    const double expected = std::pow(2 / M_PI, 2) * x * x * xp * xp * elliptic_k(x) * elliptic_k(xp);
    CHECK(rel(conjugate_product(p, x * x), expected) < 1e-12);
    CHECK(conjugate_product(p, 1e-3) < 0.01);

    CHECK(conjugate_product_applicable(hyp("1/3", "1/4", "3/4")));
    CHECK_FALSE(conjugate_product_applicable(hyp("3", "3", "1")));
    CHECK_FALSE(conjugate_product_applicable(hyp("1/2", "1/2", "1/2")));
    CHECK_THROWS_AS(conjugate_product(hyp("3", "3", "1"), 0.5), InvalidParameter);
    CHECK_THROWS_AS(conjugate_product(p, 1e-4), DomainError);

    for (const auto &params : {p, hyp("1/3", "1/4", "3/4")}) {
        double previous = 0.0;
        const int points = 201;
        for (int i = 0; i < points; ++i) {
            const double t = 1e-3 + (1 - 2e-3) * i / (points - 1);
            const double v = conjugate_product(params, t);
            if (t <= 0.5) {
                CHECK(v >= previous - 1e-12);
            } else {
                CHECK(v <= previous + 1e-12);
            }
            previous = v;
        }
    }
}

TEST_CASE("closed forms against the series")
{
    const auto f33 = gauss_2f1_series(hyp("3", "3", "1"));
    const auto fq = gauss_2f1_series(hyp("1/4", "3/4", "3/2"));
    for (int i = 1; i < 200; ++i) {
        const double x = 0.9 * i / 200;
        CHECK(rel(eval(f33, x), f33_closed_form(x)) < 1e-10);
    }
    for (int i = 1; i < 200; ++i) {
        const double x = 0.99 * i / 200;
        CHECK(std::abs(eval(fq, x) - f_quarter_closed_form(x)) < 1e-10);
    }
    CHECK(f33_closed_form(0.0) == 1.0);
    CHECK(f_quarter_closed_form(0.0) == 1.0);
}
