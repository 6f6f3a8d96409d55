#include <mnconvex/numeric.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>

#include <mnconvex/errors.hpp>

namespace mnconvex
{

namespace
{

bmp::mpz_int parse_integer(std::string_view digits, std::string_view whole)
{
    if (digits.empty()) {
        throw ParseError("expected digits in '" + std::string(whole) + "'");
    }
    for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw ParseError("unexpected character '" + std::string(1, ch) + "' in '" + std::string(whole) + "'");
        }
    }
    // A leading zero would make the string constructor read octal.
    const auto first = digits.find_first_not_of('0');
    return first == std::string_view::npos ? bmp::mpz_int(0) : bmp::mpz_int(std::string(digits.substr(first)));
}

bmp::mpz_int pow10(long exponent)
{
    bmp::mpz_int result = 1;
    for (long i = 0; i < exponent; ++i) {
        result *= 10;
    }
    return result;
}

std::string_view trim(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const std::string_view whole = trim(text);
    std::string_view rest = whole;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    if (rest.empty()) {
        throw ParseError("empty number");
    }

    Rational value;
    if (const auto slash = rest.find('/'); slash != std::string_view::npos) {
        const auto num = parse_integer(trim(rest.substr(0, slash)), whole);
        const auto den = parse_integer(trim(rest.substr(slash + 1)), whole);
        if (den == 0) {
            throw ParseError("zero denominator in '" + std::string(whole) + "'");
        }
        value = Rational(num, den);
    } else {
        long exponent = 0;
        if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
            std::string_view exp_text = rest.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            const auto magnitude = parse_integer(exp_text, whole);
            if (magnitude > 4000) {
                throw ParseError("exponent out of range in '" + std::string(whole) + "'");
            }
            exponent = magnitude.convert_to<long>();
            if (exp_negative) {
                exponent = -exponent;
            }
            rest = rest.substr(0, e);
        }
        std::string digits;
        if (const auto dot = rest.find('.'); dot != std::string_view::npos) {
            const auto int_part = rest.substr(0, dot);
            const auto frac_part = rest.substr(dot + 1);
            if (int_part.empty() && frac_part.empty()) {
                throw ParseError("expected digits in '" + std::string(whole) + "'");
            }
            digits = std::string(int_part) + std::string(frac_part);
            exponent -= static_cast<long>(frac_part.size());
        } else {
            digits = std::string(rest);
        }
        const auto mantissa = parse_integer(digits, whole);
        if (exponent >= 0) {
            value = Rational(mantissa * pow10(exponent));
        } else {
            value = Rational(mantissa, pow10(-exponent));
        }
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational &value)
{
    return value.str();
}

std::string format_double(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string format_short(double value)
{
    if (!std::isfinite(value)) {
        return format_double(value);
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

Param::Param(int value) : m_value(value), m_exact(Rational(value)) {}

Param::Param(const Rational &value) : m_value(to_double(value)), m_exact(value) {}

Param Param::approx(double value)
{
    if (!std::isfinite(value)) {
        throw InvalidParameter("parameter must be finite");
    }
    return Param(value, std::nullopt);
}

Param Param::parse(std::string_view text)
{
    return Param(parse_rational(text));
}

const Rational &Param::exact() const
{
    if (!m_exact) {
        throw InvalidParameter("parameter " + format_double(m_value) + " has no exact value");
    }
    return *m_exact;
}

Wide Param::wide() const
{
    if (m_exact) {
        return Wide(*m_exact);
    }
    return Wide(m_value);
}

std::string Param::str() const
{
    return m_exact ? to_string(*m_exact) : format_double(m_value);
}

bool operator==(const Param &a, const Param &b)
{
    if (a.m_exact && b.m_exact) {
        return *a.m_exact == *b.m_exact;
    }
    return a.m_value == b.m_value;
}

int compare(const Param &a, const Param &b)
{
    if (a.m_exact && b.m_exact) {
        return *a.m_exact < *b.m_exact ? -1 : (*b.m_exact < *a.m_exact ? 1 : 0);
    }
    return a.m_value < b.m_value ? -1 : (b.m_value < a.m_value ? 1 : 0);
}

Param operator+(const Param &a, const Param &b)
{
    if (a.is_exact() && b.is_exact()) {
        return Param(a.exact() + b.exact());
    }
    return Param::approx(a.value() + b.value());
}

Param operator-(const Param &a, const Param &b)
{
    if (a.is_exact() && b.is_exact()) {
        return Param(a.exact() - b.exact());
    }
    return Param::approx(a.value() - b.value());
}

Param operator*(const Param &a, const Param &b)
{
    if (a.is_exact() && b.is_exact()) {
        return Param(a.exact() * b.exact());
    }
    return Param::approx(a.value() * b.value());
}

Param operator/(const Param &a, const Param &b)
{
    if (b.value() == 0.0 && (!b.is_exact() || b.exact() == 0)) {
        throw InvalidParameter("division by zero");
    }
    if (a.is_exact() && b.is_exact()) {
        return Param(a.exact() / b.exact());
    }
    return Param::approx(a.value() / b.value());
}

Param operator-(const Param &a)
{
    if (a.is_exact()) {
        return Param(Rational(-a.exact()));
    }
    return Param::approx(-a.value());
}

} // namespace mnconvex
