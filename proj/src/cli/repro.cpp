#include <mnconvex/cli/repro.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <mnconvex/criteria.hpp>
#include <mnconvex/numcheck.hpp>
#include <mnconvex/specialfn.hpp>
#include <mnconvex/stable_json.hpp>

namespace mnconvex::cli
{

namespace
{

constexpr const char *published = "published";
constexpr const char *derived = "derived";

ReproCheck near(std::string quantity, const char *provenance, double expected, double computed, double tol)
{
    ReproCheck c{std::move(quantity), provenance, expected, computed, tol, false};
    c.passed = std::isfinite(computed) && std::fabs(computed - expected) <= tol;
    return c;
}

ReproCheck same(std::string quantity, const char *provenance, nlohmann::ordered_json expected, nlohmann::ordered_json computed)
{
    const bool passed = expected == computed;
    return {std::move(quantity), provenance, std::move(expected), std::move(computed), std::nullopt, passed};
}

std::string verdict_of(const CheckResult &r)
{
    return r.passed ? "Pass" : (r.refuted ? "Refuted" : "Fail");
}

double relative_error(double computed, double expected)
{
    return std::fabs(computed - expected) / std::max(std::fabs(expected), 1e-300);
}

EvalOptions accurate()
{
    EvalOptions o;
    o.tol = 1e-16;
    o.relative = true;
    return o;
}

std::vector<double> uniform_points(double lo, double hi, std::size_t count)
{
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return xs;
}

std::vector<ReproCheck> elliptic_max(nlohmann::ordered_json &)
{
    std::vector<ReproCheck> out;
    const auto scan = elliptic_product_scan(2048);
    out.push_back(near("max of x^2 x'^2 K(x) K(x') over 2048 points", published, 0.859398, scan.max_value, 1e-5));
    out.push_back(near("argmax", derived, std::sqrt(0.5), scan.argmax, 1e-3));
    out.push_back(same("increasing up to the argmax, decreasing after", published, true, scan.unimodal));
    out.push_back(near("K(sqrt(1/2)) = 2 sqrt(0.859398)", derived, 2.0 * std::sqrt(0.859398), elliptic_k(std::sqrt(0.5)), 1e-5));
    out.push_back(near("K(0.3): series route against the AGM route", derived, elliptic_k(0.3), elliptic_k_by_series(0.3), 1e-12));
    return out;
}

std::vector<ReproCheck> legendre_counterexample(nlohmann::ordered_json &data)
{
    std::vector<ReproCheck> out;
    out.push_back(same("g_3(0) (exact)", published, "9", to_string(gn_logderiv(3, Rational(0)))));
    out.push_back(near("g_3(0.1)", published, 8.534, gn_logderiv(3, 0.1), 5e-4));
    out.push_back(same("g_3'(0) (exact)", published, "-9", to_string(gn_prime(3, Rational(0)))));
    out.push_back(same("g_4'(0) from -n^4/2 + n^3 + n^2/2", derived, "-56", to_string(gn_prime_zero(4))));

    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    bool all_negative = true;
    bool all_match = true;
    for (int n = 3; n <= 10; ++n) {
        const Rational v = gn_prime(n, Rational(0));
        all_negative = all_negative && v < 0;
        all_match = all_match && v == gn_prime_zero(n);
        values.push_back(to_string(v));
    }
    out.push_back(same("g_n'(0) < 0 for n = 3..10", published, true, all_negative));
    out.push_back(same("g_n'(0) equals the closed form for n = 3..10", derived, true, all_match));
    data["g_n'(0) for n = 3..10"] = values;

    double worst_fd = 0.0;
    for (int n = 3; n <= 8; ++n) {
        const double h = 1e-5;
        const double fd = (gn_logderiv(n, h) - gn_logderiv(n, -h)) / (2.0 * h);
        worst_fd = std::max(worst_fd, relative_error(fd, to_double(gn_prime_zero(n))));
    }
    out.push_back(near("max relative error of centered differences of g_n at 0, n = 3..8", derived, 0.0, worst_fd, 1e-4));

    bool slopes = true;
    for (int n = 0; n <= 20; ++n) {
        slopes = slopes && legendre(n).poly().derivative()(Rational(1)) == Rational(n * (n + 1), 2);
    }
    out.push_back(same("P_n'(1) = n(n+1)/2 exactly for n <= 20", derived, true, slopes));

    const auto cert = certify_hypergeometric({3, 3, 1}, HypergeometricProperty::log_convex);
    out.push_back(same("log-convexity criterion for F(3,3;1;x)", published, "Inapplicable", to_string(cert.verdict)));
    const Witness w = refute_log_convexity_f3();
    out.push_back(same("g_3(0.1) < g_3(0), so F(3,3;1;x) is not log-convex", published, true, w.gap < -10.0 * w.tol));
    return out;
}

std::vector<ReproCheck> sharpness(nlohmann::ordered_json &data, int part, double inside, double outside, double threshold, double scan_lo)
{
    std::vector<ReproCheck> out;
    const bool cosh = part == 2;
    const std::string name = cosh ? "cosh" : "sinh(x)/x";
    const auto at_inside = verify_cosh_sinh(part, inside, cosh_sinh_grid(part, inside));
    const auto at_outside = verify_cosh_sinh(part, outside, cosh_sinh_grid(part, outside));
    out.push_back(same(name + " inequality at R = " + format_short(inside), published, "Pass", verdict_of(at_inside)));
    out.push_back(same(name + " inequality at R = " + format_short(outside), published, "Refuted", verdict_of(at_outside)));
    if (at_outside.witness) {
        const auto &w = *at_outside.witness;
        out.push_back(same("refuting gap exceeds 10x the evaluation tolerance", derived, true, w.gap < -10.0 * w.tol));
    }

    // Bessel form: k > -1 - cR/4 with c = -1 is R < 4k + 4.
    const BesselParams params{1, -1, cosh ? Rational(-1, 2) : Rational(1, 2)};
    const auto granted = certify_bessel(params, Param::parse(format_short(inside)))[3];
    const auto at_threshold = certify_bessel(params, Param(static_cast<int>(threshold)))[3];
    out.push_back(same("criterion k > -1 - cR/4 at R = " + format_short(inside), published, "ProvenByCriterion",
                       to_string(granted.verdict)));
    out.push_back(same("criterion k > -1 - cR/4 at R = " + format_short(threshold), published, "Inapplicable",
                       to_string(at_threshold.verdict)));

    std::vector<double> radii;
    for (int i = 0; i <= 15; ++i) {
        radii.push_back((10.0 * scan_lo + i) / 10.0);
    }
    const auto rows = sharpness_scan(part, radii);
    bool below_threshold_pass = true;
    std::optional<double> first_refuted;
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (const auto &row : rows) {
        if (row.radius < threshold) {
            below_threshold_pass = below_threshold_pass && row.passed;
        }
        if (row.refuted && !first_refuted) {
            first_refuted = row.radius;
        }
        nlohmann::ordered_json r;
        r["R"] = row.radius;
        r["verdict"] = row.passed ? "Pass" : (row.refuted ? "Refuted" : "Fail");
        r["gap"] = row.witness ? row.witness->gap : 0.0;
        table.push_back(std::move(r));
    }
    out.push_back(same("scan: every R < " + format_short(threshold) + " passes", published, true, below_threshold_pass));
    const bool bracketed = first_refuted && *first_refuted >= threshold && *first_refuted <= outside;
    out.push_back(same("scan: first refuted R lies in [" + format_short(threshold) + ", " + format_short(outside) + "]",
                       derived, true, bracketed));
    data["scan"] = table;
    return out;
}

std::vector<ReproCheck> cosh_sinh_chains(nlohmann::ordered_json &)
{
    std::vector<ReproCheck> out;
    for (int part : {1, 3}) {
        const auto r = verify_cosh_sinh(part, 0.0, cosh_sinh_grid(part, 0.0));
        const std::string name = part == 1 ? "cosh" : "sinh(x)/x";
        out.push_back(same(name + " chain G <= sqrt <= A <= mean on (0.01,3)", published, "Pass", verdict_of(r)));
        out.push_back(same(name + " chain strict off the diagonal", derived, true, r.strict));
    }
    return out;
}

std::vector<ReproCheck> hypergeometric_chain(nlohmann::ordered_json &)
{
    std::vector<ReproCheck> out;
    const GridSpec grid{0.05, 0.95, 64, Spacing::uniform};
    const struct {
        Rational a, b;
        const char *provenance;
    } cases[] = {{Rational(1, 2), Rational(1, 2), published}, {1, 1, derived}, {Rational(1, 4), Rational(3, 4), derived}};
    for (const auto &c : cases) {
        const HypergeometricParams p{c.a, c.b, Param(c.a + c.b)};
        const auto r = verify_hypergeometric_chain(p, grid);
        out.push_back(same(p.str() + " chain on a 64x64 grid in (0.05,0.95)", c.provenance, "Pass", verdict_of(r)));
        out.push_back(same(p.str() + " chain strict off the diagonal", derived, true, r.strict && r.diagonal_ok));
    }
    return out;
}

std::vector<ReproCheck> hypergeometric_criteria(nlohmann::ordered_json &)
{
    std::vector<ReproCheck> out;
    using H = HypergeometricProperty;
    const Rational half(1, 2);
    auto verdict = [](const HypergeometricParams &p, H which) { return to_string(certify_hypergeometric(p, which).verdict); };
    out.push_back(same("F(1/2,1/2;1) log-convex: ab/(a+b+1) = 1/8 < 1", derived, "ProvenByCriterion",
                       verdict({half, half, 1}, H::log_convex)));
    out.push_back(same("F(3,3;1) log-convex: ab/(a+b+1) = 9/7 > 1", published, "Inapplicable", verdict({3, 3, 1}, H::log_convex)));
    out.push_back(same("F(1/2,1/2;1) reciprocal concave with c = a + b", published, "ProvenByCriterion",
                       verdict({half, half, 1}, H::reciprocal_concave)));
    out.push_back(same("F(3,3;1) transformed log-concave: (a-c)(b-c) = 4 > 0", published, "ProvenByCriterion",
                       verdict({3, 3, 1}, H::log_concave_transformed)));
    out.push_back(same("F(1,1;2) transformed convex: a + b >= c", derived, "ProvenByCriterion", verdict({1, 1, 2}, H::convex_transformed)));
    // On the surface ab/(a+b+1) = c the strict condition fails.
    out.push_back(same("F(1,1;1/3) log-convex on the boundary ab/(a+b+1) = c", derived, "Inapplicable",
                       verdict({1, 1, Rational(1, 3)}, H::log_convex)));
    return out;
}

std::vector<ReproCheck> closed_forms(nlohmann::ordered_json &)
{
    std::vector<ReproCheck> out;
    const auto o = accurate();
    const auto f33 = gauss_2f1_series({3, 3, 1});
    double worst = 0.0;
    for (double x : uniform_points(0.0045, 0.8955, 200)) {
        worst = std::max(worst, relative_error(eval(f33, x, o), f33_closed_form(x)));
    }
    out.push_back(near("max relative error F(3,3;1;x) vs (1+4x+x^2)/(1-x)^5 on (0,0.9)", published, 0.0, worst, 1e-10));
    out.push_back(near("F(3,3;1;0.1) = 1.41/0.9^5", published, 1.41 / std::pow(0.9, 5), eval(f33, 0.1, o), 1e-12));

    const auto fq = gauss_2f1_series({Rational(1, 4), Rational(3, 4), Rational(3, 2)});
    worst = 0.0;
    for (double x : uniform_points(0.00495, 0.98505, 200)) {
        worst = std::max(worst, std::fabs(eval(fq, x, o) - f_quarter_closed_form(x)));
    }
    out.push_back(near("max error F(1/4,3/4;3/2;x) vs [2/(1+sqrt(1-x))]^(1/2) on (0,0.99)", published, 0.0, worst, 1e-10));
    out.push_back(near("F(1/4,3/4;3/2;0.75) = 2/sqrt(3)", derived, 2.0 / std::sqrt(3.0), eval(fq, 0.75, o), 1e-12));

    worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const auto f = gauss_2f1_series({n, n, 1});
        for (double x : uniform_points(-0.79, 0.44, 124)) {
            const double lhs = eval(f, x, o) * std::pow(1.0 - x, n);
            const double rhs = legendre(n - 1)((1.0 + x) / (1.0 - x));
            worst = std::max(worst, relative_error(lhs, rhs));
        }
    }
    out.push_back(near("max relative error F(n,n;1;x)(1-x)^n vs P_{n-1}((1+x)/(1-x)), n = 2..8, x in (-0.8,0.45)", published,
                       0.0, worst, 1e-9));
    return out;
}

std::vector<ReproCheck> mf_pipeline(nlohmann::ordered_json &)
{
    std::vector<ReproCheck> out;
    const auto f = gauss_2f1_series({Rational(1, 2), Rational(1, 2), 1});
    const auto cert = certify_mf(f);
    out.push_back(same("certificate for F(1/2,1/2;1): sequence 1/(4(n+1)) decreasing", derived, "PrefixChecked",
                       to_string(cert.verdict)));
    const auto seq = transform(ratio_sequence(derivative(f), f, 5), [](std::size_t n, const Wide &t) { return t - Wide(n); },
                               [](std::size_t n, const Rational &t) { return t - Rational(static_cast<long>(n)); });
    nlohmann::ordered_json first = nlohmann::ordered_json::array();
    for (const auto &t : *seq.exact) {
        first.push_back(to_string(t));
    }
    out.push_back(same("first terms of R(n+1)a_{n+1}/a_n - n", derived, {"1/4", "1/8", "1/12", "1/16", "1/20", "1/24"}, first));
    const auto r = verify_mf_chain(f, GridSpec{0.1, 0.9, 32, Spacing::uniform});
    out.push_back(same("two-sided m inequality on a 32x32 grid in (0.1,0.9)", derived, "Pass", verdict_of(r)));
    out.push_back(near("m(sqrt(1/2))", derived, 1.0, mf_value(f, 1.0, std::sqrt(0.5)), 1e-12));
    const double x = 0.4;
    const double xc = std::sqrt(1.0 - x * x);
    out.push_back(near("m(0.4) = K(x')/K(x)", derived, elliptic_k(xc) / elliptic_k(x), mf_value(f, 1.0, x), 1e-12));
    return out;
}

std::vector<ReproCheck> examples_matrix(nlohmann::ordered_json &)
{
    std::vector<ReproCheck> out;
    const GridSpec grid{0.01, 3.0, 64, Spacing::log};
    const struct {
        const char *function;
        const char *pair;
        Sense sense;
        bool holds;
    } stated[] = {
        {"cosh", "AG", Sense::convex, true},    {"cosh", "AH", Sense::convex, false}, {"sinh", "AA", Sense::convex, true},
        {"sinh", "AG", Sense::concave, true},   {"exp", "GG", Sense::convex, true},   {"exp", "GH", Sense::convex, false},
        {"log1p", "GA", Sense::convex, true},   {"log1p", "GG", Sense::concave, true}, {"arctan", "HA", Sense::convex, true},
        {"arctan", "HG", Sense::convex, false},
    };
    for (const auto &s : stated) {
        const ConvexityQuery q{named_subject(s.function), parse_pair(s.pair), s.sense};
        const std::string expected = s.holds ? "Pass" : "Refuted";
        nlohmann::ordered_json computed;
        computed["direct"] = verdict_of(verify_mn(q, grid));
        computed["derivative"] = verdict_of(verify_gencor(q, grid));
        nlohmann::ordered_json want;
        want["direct"] = expected;
        want["derivative"] = expected;
        out.push_back(same(std::string(s.function) + " " + s.pair + "-" + to_string(s.sense), published, want, computed));
    }

    std::size_t combos = 0;
    nlohmann::ordered_json disagreements = nlohmann::ordered_json::array();
    for (const char *name : {"cosh", "sinh", "exp", "log1p", "arctan"}) {
        const Subject subject = named_subject(name);
        for (MeanKind m : classical_means) {
            for (MeanKind n : classical_means) {
                for (Sense sense : {Sense::convex, Sense::concave}) {
                    const ConvexityQuery q{subject, {m, n}, sense};
                    const bool a = verify_mn(q, grid).passed;
                    const bool b = verify_gencor(q, grid).passed;
                    const bool c = verify_transform(q, grid).passed;
                    ++combos;
                    if (a != b || a != c) {
                        disagreements.push_back(std::string(name) + " " + MeanPair{m, n}.str() + "-" + to_string(sense));
                    }
                }
            }
        }
    }
    out.push_back(same("combinations compared", derived, 90, combos));
    out.push_back(same("route disagreements (direct, derivative, change of variable)", derived, nlohmann::ordered_json::array(),
                       disagreements));
    return out;
}

std::vector<ReproCheck> pfq_cases(nlohmann::ordered_json &)
{
    std::vector<ReproCheck> out;
    const GridSpec grid{0.01, 0.99, 64, Spacing::uniform};
    const Rational half(1, 2);
    const struct {
        std::vector<Param> numer;
        std::vector<Param> denom;
        const char *expected;
    } cases[] = {
        {{}, {}, "log-convex and log-concave"},
        {{half}, {1}, "log-convex"},
        {{half, 2}, {1}, "log-convex"},
        {{2}, {1, 3}, "log-concave"},
        {{}, {1, 2}, "log-concave"},
    };
    for (const auto &c : cases) {
        const GeneralizedHypergeometricParams p{c.numer, c.denom};
        const auto cert = certify_pfq(p);
        const bool convex = cert.establishes(parse_pair("AG"), Sense::convex);
        const bool concave = cert.establishes(parse_pair("AG"), Sense::concave);
        const std::string got = convex && concave ? "log-convex and log-concave"
                                : convex          ? "log-convex"
                                : concave         ? "log-concave"
                                                  : to_string(cert.verdict);
        out.push_back(same(p.str() + " certificate", published, c.expected, got));

        // F'/F monotone on (0,1) in the certified direction(s).
        const Subject subject = series_subject(generalized_pfq_series(p));
        bool concur = convex || concave;
        if (convex) {
            concur = concur && verify_gencor({subject, parse_pair("AG"), Sense::convex}, grid).passed;
        }
        if (concave) {
            concur = concur && verify_gencor({subject, parse_pair("AG"), Sense::concave}, grid).passed;
        }
        out.push_back(same(p.str() + " F'/F monotone on (0.01,0.99) in the certified direction", derived, true, concur));
    }
    const GeneralizedHypergeometricParams mixed{{half, 3}, {1, 2}};
    out.push_back(same(mixed.str() + " mixed comparison", derived, "Inapplicable", to_string(certify_pfq(mixed).verdict)));
    return out;
}

std::vector<ReproCheck> conjugate_product_case(nlohmann::ordered_json &)
{
    std::vector<ReproCheck> out;
    const Rational half(1, 2);
    const HypergeometricParams elliptic{half, half, 1};
    out.push_back(near("x(1-x)F(x)F(1-x) at 0.2 vs 0.8", published, conjugate_product(elliptic, 0.2),
                       conjugate_product(elliptic, 0.8), 1e-12));
    const double x = 0.6;
    const double xc = std::sqrt(1.0 - x * x);
    const double scale = 2.0 / std::numbers::pi;
    out.push_back(near("product at x^2 equals (2/pi)^2 x^2 x'^2 K(x) K(x'), x = 0.6", published,
                       scale * scale * x * x * xc * xc * elliptic_k(x) * elliptic_k(xc), conjugate_product(elliptic, x * x), 1e-12));

    for (const HypergeometricParams &p : {elliptic, HypergeometricParams{Rational(1, 3), Rational(1, 4), Rational(3, 4)}}) {
        const auto xs = uniform_points(1e-3, 1.0 - 1e-3, 201);
        std::size_t violations = 0;
        double previous = conjugate_product(p, xs[0]);
        for (std::size_t i = 1; i < xs.size(); ++i) {
            const double value = conjugate_product(p, xs[i]);
            const double slack = 1e-12 * std::max(value, previous);
            const bool rising = xs[i] <= 0.5;
            if (rising ? value < previous - slack : value > previous + slack) {
                ++violations;
            }
            previous = value;
        }
        out.push_back(same(p.str() + " product increasing on (0,1/2], decreasing on [1/2,1): violations", published, 0, violations));
    }
    return out;
}

} // namespace

bool ReproResult::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ReproCheck &c) { return c.passed; });
}

const std::vector<ReproCase> &repro_cases()
{
    static const std::vector<ReproCase> cases{
        {"elliptic-max", "maximum of x^2 x'^2 K(x) K(x') on (0,1)", elliptic_max},
        {"legendre-counterexample", "F(3,3;1;x) is not log-convex; g_n through Legendre polynomials", legendre_counterexample},
        {"cosh-sharpness", "cosh inequality with radius R: holds below 6, fails at 7",
         [](nlohmann::ordered_json &data) { return sharpness(data, 2, 5.9, 7.0, 6.0, 5.5); }},
        {"sinhc-sharpness", "sinh(x)/x inequality with radius R: holds below 10, fails at 11",
         [](nlohmann::ordered_json &data) { return sharpness(data, 4, 9.9, 11.0, 10.0, 9.5); }},
        {"cosh-sinh-chains", "mean chains for cosh and sinh(x)/x", cosh_sinh_chains},
        {"hypergeometric-chain", "F((x+y)/2) <= sqrt(F(x)F(y)) <= F(1-sqrt((1-x)(1-y))) <= (F(x)+F(y))/2 for c = a+b",
         hypergeometric_chain},
        {"hypergeometric-criteria", "parameter conditions for F(a,b;c;x)", hypergeometric_criteria},
        {"closed-forms", "series against closed forms and the Legendre representation", closed_forms},
        {"mf-pipeline", "m(x) = f(R - x^2/R)/f(x^2/R) for F(1/2,1/2;1;x)", mf_pipeline},
        {"examples-matrix", "five named functions across the nine mean pairs", examples_matrix},
        {"pfq-cases", "log-convexity of pFq from parameter comparison", pfq_cases},
        {"conjugate-product", "x(1-x)F(x)F(1-x) symmetry and monotonicity", conjugate_product_case},
    };
    return cases;
}

const ReproCase *find_repro_case(std::string_view id)
{
    for (const auto &c : repro_cases()) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

ReproResult run_repro(const ReproCase &c)
{
    ReproResult result{c.id, c.description, {}, nlohmann::ordered_json::object()};
    result.checks = c.run(result.data);
    return result;
}

nlohmann::ordered_json to_json(const ReproCheck &check)
{
    nlohmann::ordered_json j;
    j["quantity"] = check.quantity;
    j["provenance"] = check.provenance;
    j["expected"] = check.expected;
    j["computed"] = check.computed;
    j["tolerance"] = check.tolerance ? nlohmann::ordered_json(*check.tolerance) : nlohmann::ordered_json();
    j["passed"] = check.passed;
    return j;
}

nlohmann::ordered_json to_json(const ReproResult &result)
{
    nlohmann::ordered_json j;
    j["id"] = result.id;
    j["description"] = result.description;
    j["passed"] = result.passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto &c : result.checks) {
        j["checks"].push_back(to_json(c));
    }
    if (!result.data.empty()) {
        j["data"] = result.data;
    }
    return j;
}

std::string to_text(const ReproResult &result)
{
    auto show = [](const nlohmann::ordered_json &v) {
        if (v.is_number_float()) {
            return format_short(v.get<double>());
        }
        if (v.is_string()) {
            return v.get<std::string>();
        }
        return dump_stable(v, -1);
    };
    std::ostringstream os;
    os << (result.passed() ? "[PASS] " : "[FAIL] ") << result.id << ": " << result.description << '\n';
    for (const auto &c : result.checks) {
        os << "  " << (c.passed ? "ok   " : "FAIL ") << c.quantity << " (" << c.provenance << ")\n"
           << "       expected " << show(c.expected);
        if (c.tolerance) {
            os << " +/- " << format_short(*c.tolerance);
        }
        os << ", computed " << show(c.computed) << '\n';
    }
    return os.str();
}

} // namespace mnconvex::cli
