#include <mnconvex/legendre.hpp>

#include <algorithm>

#include <mnconvex/errors.hpp>

namespace mnconvex
{

RationalPoly::RationalPoly(std::vector<Rational> coefficients) : m_coeffs(std::move(coefficients))
{
    normalize();
}

void RationalPoly::normalize()
{
    while (m_coeffs.size() > 1 && m_coeffs.back() == 0) {
        m_coeffs.pop_back();
    }
    if (m_coeffs.empty()) {
        m_coeffs.push_back(Rational(0));
    }
    m_values.clear();
    m_values.reserve(m_coeffs.size());
    for (const auto &c : m_coeffs) {
        m_values.push_back(to_double(c));
    }
}

std::size_t RationalPoly::degree() const
{
    return m_coeffs.size() - 1;
}

Rational RationalPoly::coefficient(std::size_t k) const
{
    return k < m_coeffs.size() ? m_coeffs[k] : Rational(0);
}

Rational RationalPoly::operator()(const Rational &x) const
{
    Rational acc(0);
    for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double RationalPoly::operator()(double x) const
{
    double acc = 0.0;
    for (auto it = m_values.rbegin(); it != m_values.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

RationalPoly RationalPoly::derivative() const
{
    if (m_coeffs.size() <= 1) {
        return RationalPoly({Rational(0)});
    }
    std::vector<Rational> out;
    out.reserve(m_coeffs.size() - 1);
    for (std::size_t k = 1; k < m_coeffs.size(); ++k) {
        out.push_back(Rational(static_cast<long>(k)) * m_coeffs[k]);
    }
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::times_x() const
{
    std::vector<Rational> out;
    out.reserve(m_coeffs.size() + 1);
    out.push_back(Rational(0));
    out.insert(out.end(), m_coeffs.begin(), m_coeffs.end());
    return RationalPoly(std::move(out));
}

RationalPoly operator+(const RationalPoly &a, const RationalPoly &b)
{
    std::vector<Rational> out(std::max(a.m_coeffs.size(), b.m_coeffs.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = a.coefficient(k) + b.coefficient(k);
    }
    return RationalPoly(std::move(out));
}

RationalPoly operator-(const RationalPoly &a, const RationalPoly &b)
{
    std::vector<Rational> out(std::max(a.m_coeffs.size(), b.m_coeffs.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = a.coefficient(k) - b.coefficient(k);
    }
    return RationalPoly(std::move(out));
}

RationalPoly operator*(const Rational &k, const RationalPoly &p)
{
    std::vector<Rational> out;
    out.reserve(p.m_coeffs.size());
    for (const auto &c : p.m_coeffs) {
        out.push_back(k * c);
    }
    return RationalPoly(std::move(out));
}

bool operator==(const RationalPoly &a, const RationalPoly &b)
{
    return a.m_coeffs == b.m_coeffs;
}

namespace
{

constexpr int tabulated = 64;

std::vector<RationalPoly> build_table(int up_to)
{
    std::vector<RationalPoly> table;
    table.reserve(static_cast<std::size_t>(up_to) + 1);
    table.emplace_back(std::vector<Rational>{Rational(1)});
    if (up_to >= 1) {
        table.emplace_back(std::vector<Rational>{Rational(0), Rational(1)});
    }
    for (int n = 1; n < up_to; ++n) {
        const auto &pn = table[static_cast<std::size_t>(n)];
        const auto &prev = table[static_cast<std::size_t>(n - 1)];
        const RationalPoly next = Rational(2 * n + 1, n + 1) * pn.times_x() - Rational(n, n + 1) * prev;
        table.push_back(next);
    }
    return table;
}

} // namespace

LegendrePoly legendre(int n)
{
    if (n < 0) {
        throw InvalidParameter("Legendre degree must be non-negative");
    }
    static const std::vector<RationalPoly> table = build_table(tabulated);
    if (n <= tabulated) {
        return LegendrePoly(n, table[static_cast<std::size_t>(n)]);
    }
    return LegendrePoly(n, build_table(n).back());
}

} // namespace mnconvex
