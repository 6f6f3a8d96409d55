#ifndef MNCONVEX_NUMERIC_HPP
#define MNCONVEX_NUMERIC_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace mnconvex
{

namespace bmp = boost::multiprecision;

// Exact arithmetic for coefficients built from rational parameters.
using Rational = bmp::mpq_rational;

// 64-bit mantissa (same as x87 long double) with an exponent range wide enough
// that coefficients such as 1/(2000)! stay normal.
using Wide = bmp::number<bmp::cpp_bin_float<64, bmp::digit_base_2, void, std::int32_t, -(1 << 26), (1 << 26)>, bmp::et_off>;

// Used to re-sum alternating series whose terms cancel badly in Wide.
using HighPrec = bmp::cpp_bin_float_100;

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// Parses "3", "-1/2", "0.25", "1e-3" or "2.5E+2" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational &value);

inline double to_double(const Rational &value)
{
    return static_cast<double>(value);
}

inline double to_double(const Wide &value)
{
    return static_cast<double>(value);
}

// Shortest form is not stable across libraries; 17 significant digits is.
std::string format_double(double value);
// For human-readable output: %.12g.
std::string format_short(double value);

// A real-valued parameter. Parameters written as rational literals keep an
// exact value so that closed-form conditions can be decided without rounding.
class Param
{
public:
    Param(int value);
    Param(const Rational &value);

    static Param approx(double value);
    static Param parse(std::string_view text);

    double value() const noexcept
    {
        return m_value;
    }
    bool is_exact() const noexcept
    {
        return m_exact.has_value();
    }
    const Rational &exact() const;
    Wide wide() const;
    std::string str() const;

    friend bool operator==(const Param &a, const Param &b);
    // Exact three-way comparison when both sides are exact.
    friend int compare(const Param &a, const Param &b);

private:
    Param(double value, std::optional<Rational> exact) : m_value(value), m_exact(std::move(exact)) {}

    double m_value;
    std::optional<Rational> m_exact;
};

// Results stay exact only when both operands are.
Param operator+(const Param &a, const Param &b);
Param operator-(const Param &a, const Param &b);
Param operator*(const Param &a, const Param &b);
// Throws InvalidParameter on division by zero.
Param operator/(const Param &a, const Param &b);
Param operator-(const Param &a);

inline bool operator<(const Param &a, const Param &b)
{
    return compare(a, b) < 0;
}
inline bool operator<=(const Param &a, const Param &b)
{
    return compare(a, b) <= 0;
}
inline bool operator>(const Param &a, const Param &b)
{
    return compare(a, b) > 0;
}
inline bool operator>=(const Param &a, const Param &b)
{
    return compare(a, b) >= 0;
}

} // namespace mnconvex

#endif
