#ifndef MNCONVEX_NUMCHECK_HPP
#define MNCONVEX_NUMCHECK_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <mnconvex/convexity.hpp>
#include <mnconvex/powerseries.hpp>
#include <mnconvex/specialfn.hpp>

namespace mnconvex
{

enum class Spacing { log, uniform };

struct GridSpec {
    double lo = 0.01;
    double hi = 3.0;
    std::size_t points = 64;
    Spacing spacing = Spacing::log;

    // Throws InvalidParameter unless 0 < lo < hi < inf and points >= 16.
    void validate() const;
    // Ascending nodes including both ends.
    std::vector<double> nodes() const;
};

// A positive function on (0, domain_hi) with its derivative. eval_tol is a
// bound on the relative error of value and derivative.
struct Subject {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    double domain_hi = infinity;
    // Whether domain_hi itself may be sampled.
    bool closed_at_hi = false;
    double eval_tol = 1e-15;
};

// Summed with a relative tolerance of 1e-16; reports eval_tol = 1e-14.
Subject series_subject(const PowerSeries &series);

// cosh, sinh, exp, log1p, arctan, sinhc (sinh x / x) and K.
Subject named_subject(std::string_view name);
const std::vector<std::string> &named_subject_names();

struct ConvexityQuery {
    Subject subject;
    MeanPair pair;
    Sense sense = Sense::convex;
};

struct CheckOptions {
    // A pair refutes when its gap is below -refute_factor * tol.
    double refute_factor = 10.0;
    // Off-diagonal gaps must exceed strict_rel * max(|lhs|, |rhs|).
    double strict_rel = 1e-12;
    // Pairs closer than diagonal_fraction * (hi - lo) are exempt from strictness.
    double diagonal_fraction = 1e-3;
    // On x == y, |gap| must stay below diagonal_rel * max(|lhs|, |rhs|).
    double diagonal_rel = 1e-9;
    // Whether a non-strict pair makes the check fail.
    bool require_strict = false;
    // Local refinement around the weakest pair after the coarse grid.
    int refine_levels = 0;
    std::size_t refine_points = 16;
    // Keep every evaluated pair for CSV output.
    bool keep_rows = false;
};

struct CheckResult {
    bool passed = false;
    bool refuted = false;
    // Every off-diagonal pair cleared the strictness threshold.
    bool strict = true;
    // Every x == y pair was an equality within tolerance.
    bool diagonal_ok = true;
    std::size_t pairs = 0;
    // The refuting pair when refuted, otherwise the pair with the smallest
    // relative gap.
    std::optional<Witness> witness;
    std::vector<Witness> rows;
};

// f(M(x,y)) <= N(f(x), f(y)) (>= for concave) on all grid pairs.
CheckResult verify_mn(const ConvexityQuery &query, const GridSpec &grid, const CheckOptions &options = {});

// Monotonicity of x^i f'(x)/f(x)^j on adjacent grid points, where i and j
// are 0, 1, 2 for A, G, H in the first and second mean. Only A, G, H.
CheckResult verify_gencor(const ConvexityQuery &query, const GridSpec &grid, const CheckOptions &options = {});

// Change of variable u = x, log(hi/x) or 1/x for M = A, G, H, then midpoint
// convexity of f, log f or -1/f for N = A, G, H. Only A, G, H.
CheckResult verify_transform(const ConvexityQuery &query, const GridSpec &grid, const CheckOptions &options = {});

// Options used by the chain verifiers: strictness required.
CheckOptions chain_options();

// F((x+y)/2) <= sqrt(F(x)F(y)) <= F(1 - sqrt((1-x)(1-y))) <= (F(x)+F(y))/2
// for F = F(a,b;a+b;.). Throws InvalidParameter when c != a + b.
CheckResult verify_hypergeometric_chain(const HypergeometricParams &params, const GridSpec &grid,
                                        const CheckOptions &options = chain_options());

// With m(x) = f(R - x^2/R)/f(x^2/R):
// 1/m(((R^2-x^2)(R^2-y^2))^{1/4}) <= sqrt(m(x)m(y)) <= m(sqrt(xy)).
// R defaults to the radius of the series.
CheckResult verify_mf_chain(const PowerSeries &series, const GridSpec &grid, const CheckOptions &options = chain_options(),
                            std::optional<double> radius = std::nullopt);

// Evaluates m for the series above.
double mf_value(const PowerSeries &series, double radius, double x);

// The cosh (parts 1, 2) and sinh(x)/x (parts 3, 4) inequalities, evaluated
// through the bessel series f with f(x^2) = cosh x or sinh x / x.
// Parts 1, 3: f(sqrt(XY)) <= sqrt(f(X)f(Y)) <= f((X+Y)/2) <= (f(X)+f(Y))/2.
// Parts 2, 4: (f(X)+f(Y))/2 <= f(R - sqrt((R-X)(R-Y))), X = x^2 < R.
CheckResult verify_cosh_sinh(int part, double radius, const GridSpec &grid, const CheckOptions &options = chain_options());

// (0.01, 3) for parts 1 and 3; (0.05 sqrt R, 0.999 sqrt R) for parts 2 and 4.
GridSpec cosh_sinh_grid(int part, double radius, std::size_t points = 64);

// g_3 = (log F(3,3;1;x))' at 0 and at 0.1: 9 and 8.534..., so g_3 is not
// increasing and F(3,3;1;x) is not log-convex.
Witness refute_log_convexity_f3();

struct SharpnessRow {
    double radius = 0.0;
    bool passed = false;
    bool refuted = false;
    std::optional<Witness> witness;
};

// Runs verify_cosh_sinh for parts 2 or 4 with two refinement levels.
std::vector<SharpnessRow> sharpness_scan(int part, const std::vector<double> &radii, std::size_t points = 64);

struct EllipticScan {
    std::size_t points = 0;
    double max_value = 0.0;
    double argmax = 0.0;
    // Non-decreasing up to the argmax and non-increasing after it.
    bool unimodal = false;
};

// x^2 x'^2 K(x) K(x') on x_i = i/(points+1), i = 1..points.
EllipticScan elliptic_product_scan(std::size_t points = 2048);

std::string to_csv(const std::vector<Witness> &rows);
nlohmann::ordered_json to_json(const CheckResult &result);

} // namespace mnconvex

#endif
