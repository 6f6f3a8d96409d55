#include <mnconvex/means.hpp>

#include <cmath>
#include <utility>

#include <mnconvex/errors.hpp>

namespace mnconvex
{

char mean_symbol(MeanKind kind)
{
    switch (kind) {
        case MeanKind::arithmetic:
            return 'A';
        case MeanKind::geometric:
            return 'G';
        case MeanKind::harmonic:
            return 'H';
        case MeanKind::logarithmic:
            return 'L';
        case MeanKind::identric:
            return 'I';
    }
    return '?';
}

MeanKind parse_mean(char symbol)
{
    switch (symbol) {
        case 'A':
            return MeanKind::arithmetic;
        case 'G':
            return MeanKind::geometric;
        case 'H':
            return MeanKind::harmonic;
        case 'L':
            return MeanKind::logarithmic;
        case 'I':
            return MeanKind::identric;
        default:
            throw ParseError(std::string("unknown mean '") + symbol + "'");
    }
}

const char *mean_name(MeanKind kind)
{
    switch (kind) {
        case MeanKind::arithmetic:
            return "arithmetic";
        case MeanKind::geometric:
            return "geometric";
        case MeanKind::harmonic:
            return "harmonic";
        case MeanKind::logarithmic:
            return "logarithmic";
        case MeanKind::identric:
            return "identric";
    }
    return "unknown";
}

namespace
{

constexpr double near_diagonal = 1e-6;

double logarithmic_mean(double x, double y)
{
    const double m = 0.5 * (x + y);
    const double u = (y - x) / (x + y);
    if (std::fabs(u) < near_diagonal) {
        // m * u / artanh(u)
        const double u2 = u * u;
        return m * (1.0 - u2 / 3.0 - 4.0 * u2 * u2 / 45.0);
    }
    return (y - x) / std::log1p((y - x) / x);
}

double identric_mean(double x, double y)
{
    const double m = 0.5 * (x + y);
    const double u = (y - x) / (x + y);
    if (std::fabs(u) < near_diagonal) {
        const double u2 = u * u;
        return m * std::exp(-u2 / 6.0 - u2 * u2 / 20.0 - u2 * u2 * u2 / 42.0);
    }
    // log I = log x + r log r / (r - 1) - 1 with r = y/x = 1 + d.
    const double d = (y - x) / x;
    return x * std::exp((1.0 + d) * std::log1p(d) / d - 1.0);
}

} // namespace

double mean(MeanKind kind, double x, double y)
{
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("means are defined for positive finite arguments");
    }
    switch (kind) {
        case MeanKind::arithmetic:
            return 0.5 * (x + y);
        case MeanKind::geometric:
            if (x == y) {
                return x;
            }
            if (const double product = x * y; std::isnormal(product) && std::isfinite(product)) {
                return std::sqrt(product);
            }
            return std::sqrt(x) * std::sqrt(y);
        case MeanKind::harmonic:
            return 2.0 * x * y / (x + y);
        case MeanKind::logarithmic:
            return x == y ? x : logarithmic_mean(x, y);
        case MeanKind::identric:
            return x == y ? x : identric_mean(x, y);
    }
    return 0.0;
}

MeanRatioSeries mean_ratio_series()
{
    PowerSeries::Shape shape;
    shape.radius = infinity;
    auto log_over_geo = PowerSeries::from_ratio(
        "L/G", shape, Rational(1), [](std::size_t n) { return Wide(1) / Wide((2 * n + 2) * (2 * n + 3)); },
        [](std::size_t n) { return Rational(1, (2 * n + 2) * (2 * n + 3)); });
    auto arith_over_geo = PowerSeries::from_ratio(
        "A/G", shape, Rational(1), [](std::size_t n) { return Wide(1) / Wide((2 * n + 1) * (2 * n + 2)); },
        [](std::size_t n) { return Rational(1, (2 * n + 1) * (2 * n + 2)); });
    return {std::move(log_over_geo), std::move(arith_over_geo)};
}

} // namespace mnconvex
