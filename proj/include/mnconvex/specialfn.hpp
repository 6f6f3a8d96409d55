#ifndef MNCONVEX_SPECIALFN_HPP
#define MNCONVEX_SPECIALFN_HPP

#include <string>
#include <vector>

#include <mnconvex/legendre.hpp>
#include <mnconvex/numeric.hpp>
#include <mnconvex/powerseries.hpp>

namespace mnconvex
{

// Parameters of F(a,b;c;x); all three must be positive.
struct HypergeometricParams {
    Param a;
    Param b;
    Param c;

    bool is_exact() const
    {
        return a.is_exact() && b.is_exact() && c.is_exact();
    }
    std::string str() const;
};

// Throws InvalidParameter unless a, b, c > 0.
void validate(const HypergeometricParams &p);

// Coefficients (a,n)(b,n)/((c,n) n!), radius 1. Exact when all parameters are.
// The boundary guard applies when c <= a + b.
PowerSeries gauss_2f1_series(const HypergeometricParams &p);

struct GeneralizedHypergeometricParams {
    std::vector<Param> numer;
    std::vector<Param> denom;

    bool is_exact() const;
    std::string str() const;
};

void validate(const GeneralizedHypergeometricParams &p);

// prod (a_i,n) / prod (b_j,n) / n!. Radius 1 when p = q + 1 and infinite when
// p <= q; p > q + 1 is rejected since the series then diverges for every x != 0.
PowerSeries generalized_pfq_series(const GeneralizedHypergeometricParams &p);

// Arithmetic-geometric mean of two non-negative numbers.
double agm(double a, double b);

// Complete elliptic integral of the first kind, pi / (2 agm(1, x')).
// Defined for 0 <= x < 1; throws DomainError otherwise.
double elliptic_k(double x);

// The same integral summed as (pi/2) F(1/2,1/2;1;x^2).
double elliptic_k_by_series(double x, double tol = 1e-15);

struct BesselParams {
    Param b;
    Param c;
    Param p;

    // k = p + (b + 1)/2
    Param k() const;
    std::string str() const;
};

// sum (-c/4)^n x^n / (n! (k,n)), infinite radius. Requires c < 0 and k > 0.
PowerSeries bessel_series(const BesselParams &p);

// F(n,n;1;x) = P_{n-1}(y) / (1-x)^n with y = (1+x)/(1-x), for -1 < x < 1/2.
double fnn_via_legendre(int n, double x);

// g_n = (log F(n,n;1;.))' = n/(1-x) + 2/(1-x)^2 P'_{n-1}(y)/P_{n-1}(y).
double gn_logderiv(int n, double x);
Rational gn_logderiv(int n, const Rational &x);

// Derivative of g_n, from P_{n-1}, P'_{n-1} and P''_{n-1}.
double gn_prime(int n, double x);
Rational gn_prime(int n, const Rational &x);

// g_n'(0) in closed form: -n^4/2 + n^3 + n^2/2.
Rational gn_prime_zero(int n);

// x(1-x)F'(x) = (c-a)F(a-1,b;c;x) + (a-c+bx)F(a,b;c;x), for 0 < x < 1.
double contiguous_derivative(const HypergeometricParams &p, double x);

// x(1-x)F(x)F(1-x). Requires a, b in (0,1), a < c and b < c; throws
// InvalidParameter otherwise. x must satisfy 1e-3 <= x <= 1 - 1e-3 so that
// both arguments stay inside the summation guard.
double conjugate_product(const HypergeometricParams &p, double x);

// Whether the parameter conditions of conjugate_product hold.
bool conjugate_product_applicable(const HypergeometricParams &p);

// F(3,3;1;x) = (1 + 4x + x^2)/(1-x)^5.
double f33_closed_form(double x);

// F(1/4,3/4;3/2;x) = [2/(1 + sqrt(1-x))]^(1/2).
double f_quarter_closed_form(double x);

} // namespace mnconvex

#endif
