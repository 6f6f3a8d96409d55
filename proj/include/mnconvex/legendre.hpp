#ifndef MNCONVEX_LEGENDRE_HPP
#define MNCONVEX_LEGENDRE_HPP

#include <cstddef>
#include <vector>

#include <mnconvex/numeric.hpp>

namespace mnconvex
{

// Dense polynomial with exact rational coefficients, lowest degree first.
class RationalPoly
{
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coefficients);

    // Degree of the zero polynomial is reported as 0.
    std::size_t degree() const;
    const std::vector<Rational> &coefficients() const
    {
        return m_coeffs;
    }
    Rational coefficient(std::size_t k) const;

    Rational operator()(const Rational &x) const;
    double operator()(double x) const;

    RationalPoly derivative() const;
    RationalPoly times_x() const;

    friend RationalPoly operator+(const RationalPoly &a, const RationalPoly &b);
    friend RationalPoly operator-(const RationalPoly &a, const RationalPoly &b);
    friend RationalPoly operator*(const Rational &k, const RationalPoly &p);
    friend bool operator==(const RationalPoly &a, const RationalPoly &b);

private:
    void normalize();

    std::vector<Rational> m_coeffs;
    std::vector<double> m_values;
};

// Legendre polynomial P_n with exact coefficients.
class LegendrePoly
{
public:
    LegendrePoly(int n, RationalPoly poly) : m_degree(n), m_poly(std::move(poly)) {}

    int degree() const
    {
        return m_degree;
    }
    const RationalPoly &poly() const
    {
        return m_poly;
    }
    Rational operator()(const Rational &x) const
    {
        return m_poly(x);
    }
    double operator()(double x) const
    {
        return m_poly(x);
    }

private:
    int m_degree;
    RationalPoly m_poly;
};

// Built by the three-term recurrence (n+1)P_{n+1} = (2n+1)x P_n - n P_{n-1};
// polynomials up to degree 64 are tabulated on first use.
// Throws InvalidParameter for n < 0.
LegendrePoly legendre(int n);

} // namespace mnconvex

#endif
