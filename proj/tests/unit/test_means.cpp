#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <mnconvex/errors.hpp>
#include <mnconvex/means.hpp>

using namespace mnconvex;

namespace
{

constexpr MeanKind all_means[] = {MeanKind::arithmetic, MeanKind::geometric, MeanKind::harmonic, MeanKind::logarithmic,
                                  MeanKind::identric};

bool close(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

} // namespace

TEST_CASE("mean examples")
{
    const double e = std::exp(1.0);
    CHECK(mean(MeanKind::arithmetic, 1, 3) == 2.0);
    CHECK(mean(MeanKind::geometric, 1, 4) == 2.0);
    CHECK(mean(MeanKind::harmonic, 1, 3) == 1.5);
    CHECK(mean(MeanKind::logarithmic, 1, e) == doctest::Approx(e - 1).epsilon(1e-14));
    CHECK(mean(MeanKind::identric, 1, e) == doctest::Approx(std::exp(1 / (e - 1))).epsilon(1e-14));
    CHECK(mean(MeanKind::identric, 1, e) == doctest::Approx(1.78959).epsilon(1e-5));
}

TEST_CASE("means reject non-positive input")
{
    for (auto kind : all_means) {
        CHECK_THROWS_AS(mean(kind, 0.0, 1.0), DomainError);
        CHECK_THROWS_AS(mean(kind, 1.0, -2.0), DomainError);
        CHECK_THROWS_AS(mean(kind, 1.0, infinity), DomainError);
    }
}

TEST_CASE("symbols and names round-trip")
{
    for (auto kind : all_means) {
        CHECK(parse_mean(mean_symbol(kind)) == kind);
        CHECK(std::string(mean_name(kind)).size() > 3);
    }
    CHECK_THROWS_AS(parse_mean('Q'), ParseError);
}

TEST_CASE("mean axioms on random pairs")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> point(1e-3, 100.0);
    std::uniform_real_distribution<double> factor(0.01, 50.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = point(rng);
        const double y = point(rng);
        const double a = factor(rng);
        const double lo = std::min(x, y);
        const double hi = std::max(x, y);
        for (auto kind : all_means) {
            const double m = mean(kind, x, y);
            const bool exact = kind == MeanKind::arithmetic || kind == MeanKind::geometric || kind == MeanKind::harmonic;
            const double tol = exact ? 4e-16 : 1e-12;
            CHECK(close(m, mean(kind, y, x), tol));
            CHECK(close(mean(kind, x, x), x, tol));
            CHECK(close(mean(kind, a * x, a * y), a * m, 1e-12));
            if (hi - lo > 1e-9 * hi) {
                CHECK(lo < m);
                CHECK(m < hi);
            }
        }
    }
}

TEST_CASE("harmonic, geometric, arithmetic ordering")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> point(1e-3, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = point(rng);
        const double y = point(rng);
        const double h = mean(MeanKind::harmonic, x, y);
        const double g = mean(MeanKind::geometric, x, y);
        const double a = mean(MeanKind::arithmetic, x, y);
        CHECK(h <= g * (1 + 1e-15));
        CHECK(g <= a * (1 + 1e-15));
        if (std::abs(x - y) / std::max(x, y) > 1e-6) {
            CHECK(h < g);
            CHECK(g < a);
        }
    }
    CHECK(mean(MeanKind::harmonic, 3, 3) == 3.0);
    CHECK(mean(MeanKind::geometric, 3, 3) == 3.0);
}

TEST_CASE("logarithmic and identric means are smooth across the diagonal")
{
    for (double u : {1e-5, 1e-6, 5e-7, 1e-8, 1e-12}) {
        const double x = 2.0;
        const double y = 2.0 * (1 + u);
        CHECK(close(mean(MeanKind::logarithmic, x, y), 2.0 * (1 + u / 2 - u * u / 12), 1e-13));
        CHECK(close(mean(MeanKind::identric, x, y), 2.0 * (1 + u / 2 - u * u / 24), 1e-13));
    }
}

TEST_CASE("mean ratio series")
{
    const auto s = mean_ratio_series();
    CHECK(eval(s.logarithmic_over_geometric, 0.0) == 1.0);
    CHECK(eval(s.arithmetic_over_geometric, 0.0) == 1.0);
    CHECK(eval(s.arithmetic_over_geometric, 1.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
    CHECK(!s.logarithmic_over_geometric.finite_radius());

    const double e2 = std::exp(2.0);
    const double lg = mean(MeanKind::logarithmic, 1, e2) / mean(MeanKind::geometric, 1, e2);
    CHECK(lg == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    CHECK(eval(s.logarithmic_over_geometric, 1.0) == doctest::Approx(lg).epsilon(1e-14));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> tdist(1e-6, 25.0);
    for (int i = 0; i < 200; ++i) {
        const double t = tdist(rng);
        const double y = std::exp(2 * std::sqrt(t));
        const double g = mean(MeanKind::geometric, 1, y);
        CHECK(close(eval(s.logarithmic_over_geometric, t), mean(MeanKind::logarithmic, 1, y) / g, 1e-9));
        CHECK(close(eval(s.arithmetic_over_geometric, t), mean(MeanKind::arithmetic, 1, y) / g, 1e-9));
    }
}
