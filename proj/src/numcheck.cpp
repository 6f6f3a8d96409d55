#include <mnconvex/numcheck.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <mnconvex/errors.hpp>
#include <mnconvex/means.hpp>

namespace mnconvex
{

void GridSpec::validate() const
{
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
        throw InvalidParameter("grid interval must satisfy 0 < lo < hi < inf, got (" + format_double(lo) + ", "
                               + format_double(hi) + ")");
    }
    if (points < 16) {
        throw InvalidParameter("grid needs at least 16 points per axis");
    }
}

std::vector<double> GridSpec::nodes() const
{
    validate();
    std::vector<double> out(points);
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / last;
        out[i] = spacing == Spacing::log ? lo * std::exp(t * std::log(hi / lo)) : lo + t * (hi - lo);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

Subject series_subject(const PowerSeries &series)
{
    EvalOptions options;
    options.tol = 1e-16;
    options.relative = true;
    const PowerSeries d = derivative(series);
    Subject s;
    s.name = series.name();
    s.value = [series, options](double x) { return eval(series, x, options); };
    s.derivative = [d, options](double x) { return eval(d, x, options); };
    s.domain_hi = eval_limit(series);
    s.closed_at_hi = series.boundary_divergent();
    s.eval_tol = 1e-14;
    return s;
}

namespace
{

double sinhc(double x)
{
    return x == 0.0 ? 1.0 : std::sinh(x) / x;
}

double sinhc_derivative(double x)
{
    if (std::fabs(x) < 1e-2) {
        const double x2 = x * x;
        return x * (1.0 / 3.0 + x2 * (1.0 / 30.0 + x2 * (1.0 / 840.0 + x2 / 45360.0)));
    }
    return (x * std::cosh(x) - std::sinh(x)) / (x * x);
}

} // namespace

Subject named_subject(std::string_view name)
{
    Subject s;
    s.name = std::string(name);
    if (name == "cosh") {
        s.value = [](double x) { return std::cosh(x); };
        s.derivative = [](double x) { return std::sinh(x); };
    } else if (name == "sinh") {
        s.value = [](double x) { return std::sinh(x); };
        s.derivative = [](double x) { return std::cosh(x); };
    } else if (name == "exp") {
        s.value = [](double x) { return std::exp(x); };
        s.derivative = [](double x) { return std::exp(x); };
    } else if (name == "log1p") {
        s.value = [](double x) { return std::log1p(x); };
        s.derivative = [](double x) { return 1.0 / (1.0 + x); };
    } else if (name == "arctan") {
        s.value = [](double x) { return std::atan(x); };
        s.derivative = [](double x) { return 1.0 / (1.0 + x * x); };
    } else if (name == "sinhc") {
        s.value = sinhc;
        s.derivative = sinhc_derivative;
    } else if (name == "K") {
        // K(x) = (pi/2) F(1/2,1/2;1;x^2), so K'(x) = pi x F'(x^2).
        const auto f = gauss_2f1_series({Rational(1, 2), Rational(1, 2), 1});
        const auto d = derivative(f);
        EvalOptions options;
        options.tol = 1e-16;
        options.relative = true;
        s.value = [](double x) { return elliptic_k(x); };
        s.derivative = [d, options](double x) { return std::numbers::pi * x * eval(d, x * x, options); };
        s.domain_hi = std::sqrt(eval_limit(f));
        s.closed_at_hi = true;
        s.eval_tol = 1e-14;
        return s;
    } else {
        throw ParseError("unknown function '" + std::string(name) + "'");
    }
    s.eval_tol = 1e-15;
    return s;
}

const std::vector<std::string> &named_subject_names()
{
    static const std::vector<std::string> names{"cosh", "sinh", "exp", "log1p", "arctan", "sinhc", "K"};
    return names;
}

namespace
{

void check_subject_domain(const Subject &s, const GridSpec &grid)
{
    grid.validate();
    const bool inside = s.closed_at_hi ? grid.hi <= s.domain_hi : grid.hi < s.domain_hi;
    if (!inside) {
        throw DomainError("grid upper end " + format_double(grid.hi) + " is outside the domain of " + s.name + " (0, "
                          + format_double(s.domain_hi) + ")");
    }
}

struct Link {
    double lhs;
    double rhs;
    // +1 when lhs <= rhs is expected, -1 when lhs >= rhs is expected.
    int sign;
    double tol;
    const char *context;
};

using PairFunction = std::function<void(double x, double y, std::vector<Link> &links)>;

class PairChecker
{
public:
    PairChecker(const CheckOptions &options, double lo, double hi, bool exempt_near_diagonal)
        : m_options(options), m_delta(exempt_near_diagonal ? options.diagonal_fraction * (hi - lo) : 0.0)
    {
    }

    void visit(double x, double y, const std::vector<Link> &links)
    {
        for (const auto &link : links) {
            const double gap = link.sign * (link.rhs - link.lhs);
            const double scale = std::max(std::fabs(link.lhs), std::fabs(link.rhs));
            const double rel = scale > 0.0 ? gap / scale : gap;
            Witness w{x, y, link.lhs, link.rhs, gap, link.tol, link.context};
            ++m_result.pairs;
            if (!std::isfinite(gap)) {
                throw ConvergenceError("non-finite value while checking " + std::string(link.context) + " at ("
                                       + format_double(x) + ", " + format_double(y) + ")");
            }
            if (gap < -m_options.refute_factor * link.tol) {
                if (!m_result.refuted || rel < m_refute_rel) {
                    m_refute_rel = rel;
                    m_refuting = w;
                }
                m_result.refuted = true;
            }
            if (x == y) {
                if (std::fabs(gap) > std::max(m_options.diagonal_rel * scale, m_options.refute_factor * link.tol)) {
                    m_result.diagonal_ok = false;
                }
            } else if (std::fabs(x - y) >= m_delta) {
                if (!(gap > std::max(m_options.strict_rel * scale, link.tol))) {
                    m_result.strict = false;
                }
                if (!m_weakest || rel < m_weakest_rel) {
                    m_weakest_rel = rel;
                    m_weakest = w;
                }
            }
            if (m_options.keep_rows) {
                m_result.rows.push_back(std::move(w));
            }
        }
    }

    const std::optional<Witness> &weakest() const
    {
        return m_weakest;
    }

    CheckResult finish()
    {
        m_result.witness = m_result.refuted ? m_refuting : m_weakest;
        m_result.passed = !m_result.refuted && m_result.diagonal_ok && (m_result.strict || !m_options.require_strict);
        return std::move(m_result);
    }

private:
    CheckOptions m_options;
    double m_delta;
    CheckResult m_result;
    std::optional<Witness> m_refuting;
    double m_refute_rel = 0.0;
    std::optional<Witness> m_weakest;
    double m_weakest_rel = 0.0;
};

std::vector<double> box(double centre, double half_width, double lo, double hi, std::size_t points)
{
    const double a = std::max(lo, centre - half_width);
    const double b = std::min(hi, centre + half_width);
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return out;
}

double neighbour_spacing(const std::vector<double> &nodes, double x)
{
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    const std::size_t i = static_cast<std::size_t>(std::distance(nodes.begin(), it));
    double h = 0.0;
    if (i > 0) {
        h = std::max(h, nodes[std::min(i, nodes.size() - 1)] - nodes[i - 1]);
    }
    if (i + 1 < nodes.size()) {
        h = std::max(h, nodes[i + 1] - nodes[i]);
    }
    return h;
}

// All pairs x_i <= x_j of the grid, then optional refinement boxes around the
// weakest off-diagonal pair.
CheckResult check_all_pairs(const GridSpec &grid, const PairFunction &fn, const CheckOptions &options)
{
    const auto nodes = grid.nodes();
    PairChecker checker(options, grid.lo, grid.hi, true);
    std::vector<Link> links;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i; j < nodes.size(); ++j) {
            links.clear();
            fn(nodes[i], nodes[j], links);
            checker.visit(nodes[i], nodes[j], links);
        }
    }
    double hx = 0.0;
    double hy = 0.0;
    for (int level = 0; level < options.refine_levels && checker.weakest(); ++level) {
        const double cx = checker.weakest()->x;
        const double cy = checker.weakest()->y;
        if (level == 0) {
            hx = neighbour_spacing(nodes, cx);
            hy = neighbour_spacing(nodes, cy);
        } else {
            hx = 2.0 * hx / static_cast<double>(options.refine_points - 1);
            hy = 2.0 * hy / static_cast<double>(options.refine_points - 1);
        }
        const auto xs = box(cx, hx, grid.lo, grid.hi, options.refine_points);
        const auto ys = box(cy, hy, grid.lo, grid.hi, options.refine_points);
        for (const double x : xs) {
            for (const double y : ys) {
                links.clear();
                fn(x, y, links);
                checker.visit(x, y, links);
            }
        }
    }
    return checker.finish();
}

int sign_of(Sense sense)
{
    return sense == Sense::convex ? 1 : -1;
}

int exponent_of(MeanKind kind)
{
    switch (kind) {
        case MeanKind::arithmetic:
            return 0;
        case MeanKind::geometric:
            return 1;
        case MeanKind::harmonic:
            return 2;
        default:
            throw InvalidParameter(std::string("only the A, G and H means have a derivative test, got ")
                                   + mean_symbol(kind));
    }
}

constexpr double eps = std::numeric_limits<double>::epsilon();

} // namespace

CheckResult verify_mn(const ConvexityQuery &query, const GridSpec &grid, const CheckOptions &options)
{
    const Subject &f = query.subject;
    check_subject_domain(f, grid);
    const auto context = query.pair.str() + "-" + to_string(query.sense) + " of " + f.name;
    const int sign = sign_of(query.sense);
    auto fn = [&](double x, double y, std::vector<Link> &links) {
        const double lhs = f.value(mean(query.pair.m, x, y));
        const double rhs = mean(query.pair.n, f.value(x), f.value(y));
        const double tol = (f.eval_tol + 4.0 * eps) * std::max(std::fabs(lhs), std::fabs(rhs));
        links.push_back({lhs, rhs, sign, tol, context.c_str()});
    };
    return check_all_pairs(grid, fn, options);
}

CheckResult verify_gencor(const ConvexityQuery &query, const GridSpec &grid, const CheckOptions &options)
{
    const Subject &f = query.subject;
    check_subject_domain(f, grid);
    const int px = exponent_of(query.pair.m);
    const int pf = exponent_of(query.pair.n);
    const auto context = "x^" + std::to_string(px) + " f'/f^" + std::to_string(pf) + " "
                         + (query.sense == Sense::convex ? "increasing" : "decreasing") + " for " + f.name;
    const auto nodes = grid.nodes();
    std::vector<double> h(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double x = nodes[i];
        h[i] = std::pow(x, px) * f.derivative(x) / std::pow(f.value(x), pf);
    }
    PairChecker checker(options, grid.lo, grid.hi, false);
    const int sign = sign_of(query.sense);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double scale = std::max(std::fabs(h[i]), std::fabs(h[i + 1]));
        const double tol = (static_cast<double>(pf + 1) * f.eval_tol + 8.0 * eps) * scale;
        checker.visit(nodes[i], nodes[i + 1], {{h[i], h[i + 1], sign, tol, context.c_str()}});
    }
    return checker.finish();
}

CheckResult verify_transform(const ConvexityQuery &query, const GridSpec &grid, const CheckOptions &options)
{
    const Subject &f = query.subject;
    check_subject_domain(f, grid);
    exponent_of(query.pair.m);
    exponent_of(query.pair.n);
    const double b = grid.hi;
    auto to_u = [&](double x) {
        switch (query.pair.m) {
            case MeanKind::geometric:
                return std::log(b / x);
            case MeanKind::harmonic:
                return 1.0 / x;
            default:
                return x;
        }
    };
    auto from_u = [&](double u) {
        switch (query.pair.m) {
            case MeanKind::geometric:
                return b * std::exp(-u);
            case MeanKind::harmonic:
                return 1.0 / u;
            default:
                return u;
        }
    };
    // -1/f is convex exactly when 1/f is concave.
    auto psi = [&](double fx) {
        switch (query.pair.n) {
            case MeanKind::geometric:
                return std::log(fx);
            case MeanKind::harmonic:
                return -1.0 / fx;
            default:
                return fx;
        }
    };
    const bool absolute_noise = query.pair.n == MeanKind::geometric;
    const auto context = std::string("midpoint ") + to_string(query.sense) + " after change of variable for "
                         + query.pair.str() + " of " + f.name;
    const int sign = sign_of(query.sense);
    auto fn = [&](double x, double y, std::vector<Link> &links) {
        const double ux = to_u(x);
        const double uy = to_u(y);
        const double xm = (x == y) ? x : from_u(0.5 * (ux + uy));
        const double pm = psi(f.value(xm));
        const double px = psi(f.value(x));
        const double py = psi(f.value(y));
        const double lhs = pm;
        const double rhs = 0.5 * (px + py);
        const double big = std::max({std::fabs(pm), std::fabs(px), std::fabs(py)});
        const double tol = f.eval_tol * (absolute_noise ? 1.0 : big) + 8.0 * eps * big;
        links.push_back({lhs, rhs, sign, tol, context.c_str()});
    };
    return check_all_pairs(grid, fn, options);
}

CheckOptions chain_options()
{
    CheckOptions options;
    options.require_strict = true;
    return options;
}

CheckResult verify_hypergeometric_chain(const HypergeometricParams &params, const GridSpec &grid,
                                        const CheckOptions &options)
{
    validate(params);
    if (!(params.c == params.a + params.b)) {
        throw InvalidParameter("the chain needs c = a + b, got " + params.str());
    }
    const auto series = gauss_2f1_series(params);
    const Subject f = series_subject(series);
    check_subject_domain(f, grid);
    if (!(grid.hi < 1.0)) {
        throw DomainError("the chain is checked inside (0,1)");
    }
    auto fn = [&](double x, double y, std::vector<Link> &links) {
        const double fx = f.value(x);
        const double fy = f.value(y);
        const double a = f.value(0.5 * (x + y));
        const double g = std::sqrt(fx * fy);
        const double s = f.value(1.0 - std::sqrt((1.0 - x) * (1.0 - y)));
        const double m = 0.5 * (fx + fy);
        const double tol = 2.0 * f.eval_tol;
        links.push_back({a, g, 1, tol * std::max(a, g), "F((x+y)/2) <= sqrt(F(x)F(y))"});
        links.push_back({g, s, 1, tol * std::max(g, s), "sqrt(F(x)F(y)) <= F(1-sqrt((1-x)(1-y)))"});
        links.push_back({s, m, 1, tol * std::max(s, m), "F(1-sqrt((1-x)(1-y))) <= (F(x)+F(y))/2"});
    };
    return check_all_pairs(grid, fn, options);
}

double mf_value(const PowerSeries &series, double radius, double x)
{
    EvalOptions options;
    options.tol = 1e-16;
    options.relative = true;
    const double t = x * x / radius;
    return eval(series, radius - t, options) / eval(series, t, options);
}

CheckResult verify_mf_chain(const PowerSeries &series, const GridSpec &grid, const CheckOptions &options,
                            std::optional<double> radius)
{
    const double r = radius.value_or(series.radius());
    if (!std::isfinite(r) || !(r > 0.0) || r > series.radius()) {
        throw InvalidParameter("the m_f chain needs a finite radius inside the radius of convergence");
    }
    grid.validate();
    if (!(grid.hi < r)) {
        throw DomainError("grid must lie inside (0, R)");
    }
    const double tol_rel = 4e-14;
    auto fn = [&](double x, double y, std::vector<Link> &links) {
        const double mx = mf_value(series, r, x);
        const double my = mf_value(series, r, y);
        const double z = std::sqrt(std::sqrt((r * r - x * x) * (r * r - y * y)));
        const double left = 1.0 / mf_value(series, r, z);
        const double middle = std::sqrt(mx * my);
        const double right = mf_value(series, r, std::sqrt(x * y));
        links.push_back({left, middle, 1, tol_rel * std::max(left, middle), "1/m(((R^2-x^2)(R^2-y^2))^{1/4}) <= sqrt(m(x)m(y))"});
        links.push_back({middle, right, 1, tol_rel * std::max(middle, right), "sqrt(m(x)m(y)) <= m(sqrt(xy))"});
    };
    return check_all_pairs(grid, fn, options);
}

namespace
{

const PowerSeries &cosh_sqrt_series()
{
    static const PowerSeries s = bessel_series({1, -1, Rational(-1, 2)});
    return s;
}

const PowerSeries &sinhc_sqrt_series()
{
    static const PowerSeries s = bessel_series({1, -1, Rational(1, 2)});
    return s;
}

} // namespace

GridSpec cosh_sinh_grid(int part, double radius, std::size_t points)
{
    GridSpec grid;
    grid.points = points;
    if (part == 1 || part == 3) {
        grid.lo = 0.01;
        grid.hi = 3.0;
    } else {
        const double root = std::sqrt(radius);
        grid.lo = 0.05 * root;
        grid.hi = 0.999 * root;
    }
    return grid;
}

CheckResult verify_cosh_sinh(int part, double radius, const GridSpec &grid, const CheckOptions &options)
{
    if (part < 1 || part > 4) {
        throw InvalidParameter("part must be 1, 2, 3 or 4");
    }
    grid.validate();
    const bool with_radius = part == 2 || part == 4;
    if (with_radius && (!(radius > 0.0) || !(grid.hi * grid.hi < radius))) {
        throw DomainError("parts 2 and 4 need R > 0 and grid points in (0, sqrt R)");
    }
    const PowerSeries &series = (part <= 2) ? cosh_sqrt_series() : sinhc_sqrt_series();
    const Subject f = series_subject(series);
    const double tol_rel = 2.0 * f.eval_tol;
    auto fn = [&](double x, double y, std::vector<Link> &links) {
        const double X = x * x;
        const double Y = y * y;
        const double fx = f.value(X);
        const double fy = f.value(Y);
        const double mean_value = 0.5 * (fx + fy);
        if (!with_radius) {
            const double g = f.value(std::sqrt(X * Y));
            const double root = std::sqrt(fx * fy);
            const double a = f.value(0.5 * (X + Y));
            links.push_back({g, root, 1, tol_rel * std::max(g, root), "f(sqrt(XY)) <= sqrt(f(X)f(Y))"});
            links.push_back({root, a, 1, tol_rel * std::max(root, a), "sqrt(f(X)f(Y)) <= f((X+Y)/2)"});
            links.push_back({a, mean_value, 1, tol_rel * std::max(a, mean_value), "f((X+Y)/2) <= (f(X)+f(Y))/2"});
            return;
        }
        const double shifted = f.value(radius - std::sqrt((radius - X) * (radius - Y)));
        links.push_back({mean_value, shifted, 1, tol_rel * std::max(mean_value, shifted),
                         "(f(X)+f(Y))/2 <= f(R-sqrt((R-X)(R-Y)))"});
    };
    return check_all_pairs(grid, fn, options);
}

Witness refute_log_convexity_f3()
{
    Witness w;
    w.x = 0.0;
    w.y = 0.1;
    w.lhs = to_double(gn_logderiv(3, Rational(0)));
    w.rhs = gn_logderiv(3, 0.1);
    w.gap = w.rhs - w.lhs;
    w.tol = 1e-12;
    w.context = "g_3 = (log F(3,3;1;x))' must increase for log-convexity";
    return w;
}

std::vector<SharpnessRow> sharpness_scan(int part, const std::vector<double> &radii, std::size_t points)
{
    if (part != 2 && part != 4) {
        throw InvalidParameter("sharpness scans use part 2 or part 4");
    }
    CheckOptions options = chain_options();
    options.refine_levels = 2;
    std::vector<SharpnessRow> rows;
    rows.reserve(radii.size());
    for (const double r : radii) {
        const auto result = verify_cosh_sinh(part, r, cosh_sinh_grid(part, r, points), options);
        rows.push_back({r, result.passed, result.refuted, result.witness});
    }
    return rows;
}

EllipticScan elliptic_product_scan(std::size_t points)
{
    if (points < 16) {
        throw InvalidParameter("scan needs at least 16 points");
    }
    EllipticScan scan;
    scan.points = points;
    std::vector<double> values(points);
    std::size_t best = 0;
    for (std::size_t i = 0; i < points; ++i) {
        const double x = static_cast<double>(i + 1) / static_cast<double>(points + 1);
        const double xc2 = (1.0 - x) * (1.0 + x);
        values[i] = x * x * xc2 * elliptic_k(x) * elliptic_k(std::sqrt(xc2));
        if (values[i] > values[best]) {
            best = i;
        }
    }
    scan.max_value = values[best];
    scan.argmax = static_cast<double>(best + 1) / static_cast<double>(points + 1);
    const double slack = 1e-15 * scan.max_value;
    scan.unimodal = true;
    for (std::size_t i = 0; i + 1 < points; ++i) {
        const bool ok = i < best ? values[i + 1] >= values[i] - slack : values[i + 1] <= values[i] + slack;
        scan.unimodal = scan.unimodal && ok;
    }
    return scan;
}

std::string to_csv(const std::vector<Witness> &rows)
{
    std::ostringstream out;
    out << "x,y,lhs,rhs,gap\n";
    for (const auto &w : rows) {
        out << format_double(w.x) << ',' << format_double(w.y) << ',' << format_double(w.lhs) << ','
            << format_double(w.rhs) << ',' << format_double(w.gap) << '\n';
    }
    return out.str();
}

nlohmann::ordered_json to_json(const CheckResult &result)
{
    nlohmann::ordered_json j;
    j["verdict"] = result.passed ? "Pass" : (result.refuted ? "Refuted" : "Fail");
    j["refuted"] = result.refuted;
    j["strict"] = result.strict;
    j["diagonal_ok"] = result.diagonal_ok;
    j["pairs"] = result.pairs;
    j["witness"] = result.witness ? to_json(*result.witness) : nlohmann::ordered_json(nullptr);
    return j;
}

} // namespace mnconvex
