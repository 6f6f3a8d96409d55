#include <mnconvex/specialfn.hpp>

#include <cmath>
#include <numbers>

#include <mnconvex/errors.hpp>

namespace mnconvex
{

namespace
{

bool is_nonpositive_integer(const Param &p)
{
    if (!p.is_exact()) {
        return p.value() <= 0.0 && std::floor(p.value()) == p.value();
    }
    const Rational &q = p.exact();
    return q <= 0 && denominator(q) == 1;
}

// Non-positive integer numerator parameters truncate the series.
std::optional<std::size_t> truncation_degree(const std::vector<Param> &numer)
{
    std::optional<std::size_t> degree;
    for (const auto &a : numer) {
        if (is_nonpositive_integer(a)) {
            const auto d = static_cast<std::size_t>(-std::llround(a.value()));
            degree = degree ? std::min(*degree, d) : d;
        }
    }
    return degree;
}

std::string join(const std::vector<Param> &params)
{
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += params[i].str();
    }
    return out;
}

// prod (a_i + n) / prod (b_j + n) / (n + 1), with no sign checks on a_i.
PowerSeries pochhammer_ratio_series(std::string name, PowerSeries::Shape shape, const std::vector<Param> &numer,
                                    const std::vector<Param> &denom)
{
    for (const auto &b : denom) {
        if (is_nonpositive_integer(b)) {
            throw InvalidParameter("denominator parameter " + b.str() + " is zero or a negative integer");
        }
    }
    shape.degree = truncation_degree(numer);
    std::vector<Wide> wa;
    std::vector<Wide> wb;
    for (const auto &a : numer) {
        wa.push_back(a.wide());
    }
    for (const auto &b : denom) {
        wb.push_back(b.wide());
    }
    auto wide_ratio = [wa, wb](std::size_t n) {
        const Wide wn(n);
        Wide num(1);
        Wide den(wn + 1);
        for (const auto &a : wa) {
            num *= a + wn;
        }
        for (const auto &b : wb) {
            den *= b + wn;
        }
        return num / den;
    };

    bool exact = true;
    for (const auto &a : numer) {
        exact = exact && a.is_exact();
    }
    for (const auto &b : denom) {
        exact = exact && b.is_exact();
    }
    if (!exact) {
        return PowerSeries::from_ratio(std::move(name), shape, Rational(1), wide_ratio);
    }
    std::vector<Rational> ra;
    std::vector<Rational> rb;
    for (const auto &a : numer) {
        ra.push_back(a.exact());
    }
    for (const auto &b : denom) {
        rb.push_back(b.exact());
    }
    auto exact_ratio = [ra, rb](std::size_t n) {
        const Rational rn(n);
        Rational num(1);
        Rational den(rn + 1);
        for (const auto &a : ra) {
            num *= a + rn;
        }
        for (const auto &b : rb) {
            den *= b + rn;
        }
        return Rational(num / den);
    };
    return PowerSeries::from_ratio(std::move(name), shape, Rational(1), wide_ratio, exact_ratio);
}

PowerSeries hypergeometric_unchecked(const Param &a, const Param &b, const Param &c)
{
    PowerSeries::Shape shape;
    shape.radius = 1.0;
    shape.boundary_divergent = c <= a + b;
    return pochhammer_ratio_series("2F1(" + a.str() + "," + b.str() + ";" + c.str() + ")", shape, {a, b}, {c});
}

constexpr double conjugate_guard = 1e-3;

EvalOptions relative_options()
{
    EvalOptions options;
    options.tol = 1e-16;
    options.relative = true;
    return options;
}

void check_legendre_domain(int n, int min_n, double x)
{
    if (n < min_n) {
        throw InvalidParameter("index n must be at least " + std::to_string(min_n));
    }
    if (!(x > -1.0 && x < 0.5)) {
        throw DomainError("x = " + format_double(x) + " is outside (-1, 1/2)");
    }
}

void check_legendre_domain(int n, int min_n, const Rational &x)
{
    if (n < min_n) {
        throw InvalidParameter("index n must be at least " + std::to_string(min_n));
    }
    if (!(x > -1 && x < Rational(1, 2))) {
        throw DomainError("x = " + to_string(x) + " is outside (-1, 1/2)");
    }
}

struct LegendreTriple {
    LegendrePoly p;
    RationalPoly dp;
    RationalPoly ddp;
};

LegendreTriple legendre_with_derivatives(int degree)
{
    auto p = legendre(degree);
    auto dp = p.poly().derivative();
    auto ddp = dp.derivative();
    return {std::move(p), std::move(dp), std::move(ddp)};
}

template <class Real>
Real gn_logderiv_impl(int n, const Real &x)
{
    const auto t = legendre_with_derivatives(n - 1);
    const Real one(1);
    const Real w = one - x;
    const Real y = (one + x) / w;
    return Real(n) / w + Real(2) / (w * w) * t.dp(y) / t.p(y);
}

template <class Real>
Real gn_prime_impl(int n, const Real &x)
{
    const auto t = legendre_with_derivatives(n - 1);
    const Real one(1);
    const Real w = one - x;
    const Real y = (one + x) / w;
    const Real p = t.p(y);
    const Real dp = t.dp(y);
    const Real ddp = t.ddp(y);
    const Real q = dp / p;
    const Real dq = (ddp * p - dp * dp) / (p * p);
    const Real w2 = w * w;
    return Real(n) / w2 + Real(4) / (w2 * w) * q + Real(4) / (w2 * w2) * dq;
}

} // namespace

std::string HypergeometricParams::str() const
{
    return "2F1(" + a.str() + "," + b.str() + ";" + c.str() + ")";
}

void validate(const HypergeometricParams &p)
{
    const Param zero(0);
    if (!(p.a > zero) || !(p.b > zero) || !(p.c > zero)) {
        throw InvalidParameter("hypergeometric parameters must be positive, got " + p.str());
    }
}

PowerSeries gauss_2f1_series(const HypergeometricParams &p)
{
    validate(p);
    return hypergeometric_unchecked(p.a, p.b, p.c);
}

bool GeneralizedHypergeometricParams::is_exact() const
{
    for (const auto &a : numer) {
        if (!a.is_exact()) {
            return false;
        }
    }
    for (const auto &b : denom) {
        if (!b.is_exact()) {
            return false;
        }
    }
    return true;
}

std::string GeneralizedHypergeometricParams::str() const
{
    return std::to_string(numer.size()) + "F" + std::to_string(denom.size()) + "(" + join(numer) + ";" + join(denom) + ")";
}

void validate(const GeneralizedHypergeometricParams &p)
{
    const Param zero(0);
    for (const auto &a : p.numer) {
        if (!(a > zero)) {
            throw InvalidParameter("numerator parameters must be positive, got " + a.str());
        }
    }
    for (const auto &b : p.denom) {
        if (!(b > zero)) {
            throw InvalidParameter("denominator parameters must be positive, got " + b.str());
        }
    }
    if (p.numer.size() > p.denom.size() + 1) {
        throw InvalidParameter(p.str() + " diverges for every x != 0");
    }
}

PowerSeries generalized_pfq_series(const GeneralizedHypergeometricParams &p)
{
    validate(p);
    PowerSeries::Shape shape;
    if (p.numer.size() == p.denom.size() + 1) {
        shape.radius = 1.0;
        Param excess(0);
        for (const auto &b : p.denom) {
            excess = excess + b;
        }
        for (const auto &a : p.numer) {
            excess = excess - a;
        }
        shape.boundary_divergent = excess <= Param(0);
    }
    return pochhammer_ratio_series(p.str(), shape, p.numer, p.denom);
}

double agm(double a, double b)
{
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("agm needs non-negative finite arguments");
    }
    if (a == 0.0 || b == 0.0) {
        return 0.0;
    }
    for (int i = 0; i < 64 && std::fabs(a - b) > 2.0 * std::numeric_limits<double>::epsilon() * a; ++i) {
        const double next = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next;
    }
    return 0.5 * (a + b);
}

double elliptic_k(double x)
{
    if (!(x >= 0.0 && x < 1.0)) {
        throw DomainError("K(x) needs 0 <= x < 1, got " + format_double(x));
    }
    const double complement = std::sqrt((1.0 - x) * (1.0 + x));
    return std::numbers::pi / (2.0 * agm(1.0, complement));
}

double elliptic_k_by_series(double x, double tol)
{
    if (!(x >= 0.0 && x < 1.0)) {
        throw DomainError("K(x) needs 0 <= x < 1, got " + format_double(x));
    }
    static const PowerSeries series = gauss_2f1_series({Rational(1, 2), Rational(1, 2), 1});
    return std::numbers::pi / 2.0 * eval(series, x * x, tol);
}

Param BesselParams::k() const
{
    return p + (b + Param(1)) / Param(2);
}

std::string BesselParams::str() const
{
    return "bessel(b=" + b.str() + ",c=" + c.str() + ",p=" + p.str() + ")";
}

PowerSeries bessel_series(const BesselParams &params)
{
    const Param k = params.k();
    if (!(params.c < Param(0))) {
        throw InvalidParameter("bessel series needs c < 0, got c = " + params.c.str());
    }
    if (!(k > Param(0))) {
        throw InvalidParameter("bessel series needs k = p + (b+1)/2 > 0, got k = " + k.str());
    }
    PowerSeries::Shape shape;
    const Param scale = -params.c / Param(4);
    const Wide ws = scale.wide();
    const Wide wk = k.wide();
    auto wide_ratio = [ws, wk](std::size_t n) {
        const Wide wn(n);
        return ws / ((wn + 1) * (wk + wn));
    };
    if (!scale.is_exact() || !k.is_exact()) {
        return PowerSeries::from_ratio(params.str(), shape, Rational(1), wide_ratio);
    }
    const Rational rs = scale.exact();
    const Rational rk = k.exact();
    auto exact_ratio = [rs, rk](std::size_t n) {
        const Rational rn(n);
        return Rational(rs / ((rn + 1) * (rk + rn)));
    };
    return PowerSeries::from_ratio(params.str(), shape, Rational(1), wide_ratio, exact_ratio);
}

double fnn_via_legendre(int n, double x)
{
    check_legendre_domain(n, 1, x);
    const auto p = legendre(n - 1);
    const double y = (1.0 + x) / (1.0 - x);
    return p(y) / std::pow(1.0 - x, n);
}

double gn_logderiv(int n, double x)
{
    check_legendre_domain(n, 2, x);
    return gn_logderiv_impl<double>(n, x);
}

Rational gn_logderiv(int n, const Rational &x)
{
    check_legendre_domain(n, 2, x);
    return gn_logderiv_impl<Rational>(n, x);
}

double gn_prime(int n, double x)
{
    check_legendre_domain(n, 2, x);
    return gn_prime_impl<double>(n, x);
}

Rational gn_prime(int n, const Rational &x)
{
    check_legendre_domain(n, 2, x);
    return gn_prime_impl<Rational>(n, x);
}

Rational gn_prime_zero(int n)
{
    if (n < 2) {
        throw InvalidParameter("index n must be at least 2");
    }
    const Rational r(n);
    return Rational((-r * r * r * r + 2 * r * r * r + r * r) / 2);
}

double contiguous_derivative(const HypergeometricParams &p, double x)
{
    validate(p);
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError("contiguous relation needs 0 < x < 1, got " + format_double(x));
    }
    const auto f = hypergeometric_unchecked(p.a, p.b, p.c);
    const auto lowered = hypergeometric_unchecked(p.a - Param(1), p.b, p.c);
    const auto options = relative_options();
    const double a = p.a.value();
    const double b = p.b.value();
    const double c = p.c.value();
    return (c - a) * eval(lowered, x, options) + (a - c + b * x) * eval(f, x, options);
}

bool conjugate_product_applicable(const HypergeometricParams &p)
{
    const Param zero(0);
    const Param one(1);
    return p.a > zero && p.a < one && p.b > zero && p.b < one && p.a < p.c && p.b < p.c;
}

double conjugate_product(const HypergeometricParams &p, double x)
{
    if (!conjugate_product_applicable(p)) {
        throw InvalidParameter("conjugate product needs a, b in (0,1), a < c and b < c; got " + p.str());
    }
    if (!(x >= conjugate_guard && x <= 1.0 - conjugate_guard)) {
        throw DomainError("conjugate product is evaluated on [1e-3, 1 - 1e-3], got " + format_double(x));
    }
    const auto f = gauss_2f1_series(p);
    const auto options = relative_options();
    return x * (1.0 - x) * eval(f, x, options) * eval(f, 1.0 - x, options);
}

double f33_closed_form(double x)
{
    return (1.0 + 4.0 * x + x * x) / std::pow(1.0 - x, 5);
}

double f_quarter_closed_form(double x)
{
    return std::sqrt(2.0 / (1.0 + std::sqrt(1.0 - x)));
}

} // namespace mnconvex
