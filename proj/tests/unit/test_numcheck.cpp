#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <map>

#include <mnconvex/errors.hpp>
#include <mnconvex/numcheck.hpp>

using namespace mnconvex;

namespace
{

constexpr MeanKind agh[] = {MeanKind::arithmetic, MeanKind::geometric, MeanKind::harmonic};

const MeanPair AG{MeanKind::arithmetic, MeanKind::geometric};
const MeanPair AH{MeanKind::arithmetic, MeanKind::harmonic};

HypergeometricParams hyp(const char *a, const char *b, const char *c)
{
    return {Param::parse(a), Param::parse(b), Param::parse(c)};
}

GridSpec corpus_grid()
{
    return {0.01, 3.0, 64, Spacing::log};
}

const char *const examples_corpus[] = {"cosh", "sinh", "exp", "log1p", "arctan"};

// Verdict of verify_mn for every (M,N) in {A,G,H}^2 and both senses.
std::map<std::pair<std::string, Sense>, bool> verdicts(const Subject &subject, const GridSpec &grid)
{
    std::map<std::pair<std::string, Sense>, bool> out;
    for (auto m : agh) {
        for (auto n : agh) {
            for (auto sense : {Sense::convex, Sense::concave}) {
                const MeanPair pair{m, n};
                out[{pair.str(), sense}] = verify_mn({subject, pair, sense}, grid).passed;
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("grid validation and nodes")
{
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, 64, Spacing::log}.validate()), InvalidParameter);
    CHECK_THROWS_AS((GridSpec{1.0, 1.0, 64, Spacing::log}.validate()), InvalidParameter);
    CHECK_THROWS_AS((GridSpec{0.1, 1.0, 15, Spacing::log}.validate()), InvalidParameter);
    CHECK_THROWS_AS((GridSpec{0.1, infinity, 64, Spacing::log}.validate()), InvalidParameter);
    const auto nodes = GridSpec{0.5, 2.0, 17, Spacing::uniform}.nodes();
    REQUIRE(nodes.size() == 17);
    CHECK(nodes.front() == 0.5);
    CHECK(nodes.back() == 2.0);
    CHECK(nodes[8] == doctest::Approx(1.25));
    const auto lg = GridSpec{0.01, 1.0, 21, Spacing::log}.nodes();
    CHECK(lg[10] == doctest::Approx(0.1));
}

TEST_CASE("direct verification examples")
{
    const auto cosh = named_subject("cosh");
    const auto ag = verify_mn({cosh, AG, Sense::convex}, corpus_grid());
    CHECK(ag.passed);
    CHECK_FALSE(ag.refuted);
    CHECK(ag.strict);
    CHECK(ag.diagonal_ok);
    // Unordered pairs, diagonal included.
    CHECK(ag.pairs == 64 * 65 / 2);

    const auto ah = verify_mn({cosh, AH, Sense::convex}, corpus_grid());
    CHECK_FALSE(ah.passed);
    CHECK(ah.refuted);
    REQUIRE(ah.witness);
    CHECK(ah.witness->gap < -10 * ah.witness->tol);
    CHECK(ah.witness->x != ah.witness->y);
    const double x = ah.witness->x;
    const double y = ah.witness->y;
    CHECK(ah.witness->lhs == doctest::Approx(std::cosh((x + y) / 2)));
    CHECK(ah.witness->rhs == doctest::Approx(2 * std::cosh(x) * std::cosh(y) / (std::cosh(x) + std::cosh(y))));

    CHECK_THROWS_AS(named_subject("nope"), ParseError);
}

TEST_CASE("derivative tests examples")
{
    const MeanPair GG{MeanKind::geometric, MeanKind::geometric};
    const MeanPair HA{MeanKind::harmonic, MeanKind::arithmetic};
    CHECK(verify_gencor({named_subject("exp"), GG, Sense::convex}, corpus_grid()).passed);
    CHECK(verify_gencor({named_subject("log1p"), GG, Sense::concave}, corpus_grid()).passed);
    CHECK(verify_gencor({named_subject("arctan"), HA, Sense::convex}, corpus_grid()).passed);
    CHECK(verify_gencor({named_subject("exp"), GG, Sense::concave}, corpus_grid()).refuted);
    CHECK_THROWS_AS(verify_gencor({named_subject("exp"), {MeanKind::logarithmic, MeanKind::arithmetic}, Sense::convex},
                                  corpus_grid()),
                    InvalidParameter);
}

TEST_CASE("the three routes agree on the example corpus")
{
    int disagreements = 0;
    for (const char *name : examples_corpus) {
        const auto subject = named_subject(name);
        for (auto m : agh) {
            for (auto n : agh) {
                for (auto sense : {Sense::convex, Sense::concave}) {
                    const ConvexityQuery q{subject, {m, n}, sense};
                    const bool direct = verify_mn(q, corpus_grid()).passed;
                    const bool deriv = verify_gencor(q, corpus_grid()).passed;
                    const bool trans = verify_transform(q, corpus_grid()).passed;
                    if (direct != deriv || direct != trans) {
                        ++disagreements;
                        MESSAGE(name << " " << q.pair.str() << " " << to_string(sense) << ": " << direct << deriv << trans);
                    }
                }
            }
        }
    }
    CHECK(disagreements == 0);
}

TEST_CASE("stronger output means give implied verdicts")
{
    // Convex: Pass(XH) => Pass(XG) => Pass(XA). Concave: the reverse.
    for (const auto &name : named_subject_names()) {
        const auto subject = named_subject(name);
        GridSpec grid = corpus_grid();
        grid.points = 32;
        if (std::isfinite(subject.domain_hi)) {
            grid.hi = 0.95 * subject.domain_hi;
        }
        const auto v = verdicts(subject, grid);
        for (char m : {'A', 'G', 'H'}) {
            const std::string h = std::string(1, m) + "H", g = std::string(1, m) + "G", a = std::string(1, m) + "A";
            if (v.at({h, Sense::convex})) {
                CHECK_MESSAGE(v.at({g, Sense::convex}), name << " " << h);
            }
            if (v.at({g, Sense::convex})) {
                CHECK_MESSAGE(v.at({a, Sense::convex}), name << " " << g);
            }
            if (v.at({a, Sense::concave})) {
                CHECK_MESSAGE(v.at({g, Sense::concave}), name << " " << a);
            }
            if (v.at({g, Sense::concave})) {
                CHECK_MESSAGE(v.at({h, Sense::concave}), name << " " << g);
            }
        }
        // All named subjects are increasing: Pass(A,N) => Pass(G,N) => Pass(H,N)
        // for convexity, reversed for concavity.
        for (char n : {'A', 'G', 'H'}) {
            const std::string a = std::string("A") + n, g = std::string("G") + n, h = std::string("H") + n;
            if (v.at({a, Sense::convex})) {
                CHECK_MESSAGE(v.at({g, Sense::convex}), name << " " << a);
            }
            if (v.at({g, Sense::convex})) {
                CHECK_MESSAGE(v.at({h, Sense::convex}), name << " " << g);
            }
            if (v.at({h, Sense::concave})) {
                CHECK_MESSAGE(v.at({g, Sense::concave}), name << " " << h);
            }
            if (v.at({g, Sense::concave})) {
                CHECK_MESSAGE(v.at({a, Sense::concave}), name << " " << g);
            }
        }
    }
}

TEST_CASE("diagonal pairs are equalities")
{
    for (const auto &name : named_subject_names()) {
        const auto subject = named_subject(name);
        GridSpec grid{0.05, std::isfinite(subject.domain_hi) ? 0.9 * subject.domain_hi : 2.0, 16, Spacing::uniform};
        CheckOptions opts;
        opts.keep_rows = true;
        for (auto m : agh) {
            for (auto n : agh) {
                const auto r = verify_mn({subject, {m, n}, Sense::convex}, grid, opts);
                CHECK(r.diagonal_ok);
                for (const auto &w : r.rows) {
                    if (w.x == w.y) {
                        CHECK(std::abs(w.gap) <= 1e-9 * std::max(std::abs(w.lhs), std::abs(w.rhs)));
                    }
                }
            }
        }
    }
}

TEST_CASE("analytic derivatives match centered differences")
{
    std::vector<Subject> subjects;
    for (const auto &name : named_subject_names()) {
        subjects.push_back(named_subject(name));
    }
    subjects.push_back(series_subject(gauss_2f1_series(hyp("1/2", "1/2", "1"))));
    subjects.push_back(series_subject(gauss_2f1_series(hyp("3", "3", "1"))));
    subjects.push_back(series_subject(gauss_2f1_series(hyp("1/4", "3/4", "3/2"))));
    subjects.push_back(series_subject(generalized_pfq_series({{}, {Param(1), Param(2)}})));
    subjects.push_back(series_subject(bessel_series({Param(1), Param(-1), Param::parse("1/2")})));
    for (const auto &s : subjects) {
        const double hi = std::isfinite(s.domain_hi) ? 0.9 * s.domain_hi : 3.0;
        for (int i = 1; i <= 16; ++i) {
            const double x = hi * i / 17.0;
            const double h = 1e-6 * std::max(1.0, x);
            const double fd = (s.value(x + h) - s.value(x - h)) / (2 * h);
            const double d = s.derivative(x);
            CHECK_MESSAGE(std::abs(fd - d) <= 1e-6 * std::abs(d), s.name << " at " << x);
        }
    }
}

TEST_CASE("elliptic product scan")
{
    const auto scan = elliptic_product_scan(2048);
    CHECK(scan.points == 2048);
    CHECK(std::abs(scan.max_value - 0.859398) < 1e-5);
    CHECK(scan.unimodal);
    // The argmax is the grid node closest to 1/sqrt(2).
    const double step = 1.0 / 2049;
    const double nearest = std::round(std::sqrt(0.5) / step) * step;
    CHECK(scan.argmax == doctest::Approx(nearest).epsilon(1e-12));
}

TEST_CASE("hypergeometric chain with c = a + b")
{
    const GridSpec grid{0.05, 0.95, 64, Spacing::uniform};
    for (auto p : {hyp("1/2", "1/2", "1"), hyp("1", "1", "2"), hyp("1/4", "3/4", "1")}) {
        const auto r = verify_hypergeometric_chain(p, grid);
        CHECK_MESSAGE(r.passed, p.str());
        CHECK(r.strict);
        CHECK(r.diagonal_ok);
    }
    CHECK_THROWS_AS(verify_hypergeometric_chain(hyp("1/2", "1/2", "2"), grid), InvalidParameter);
}

TEST_CASE("m-function chain")
{
    const auto k = gauss_2f1_series(hyp("1/2", "1/2", "1"));
    CHECK(std::abs(mf_value(k, 1.0, std::sqrt(0.5)) - 1.0) < 1e-12);
    const double x = 0.4;
    const double xp = std::sqrt(1 - x * x);
    CHECK(mf_value(k, 1.0, x) == doctest::Approx(elliptic_k(xp) / elliptic_k(x)).epsilon(1e-13));
    const auto r = verify_mf_chain(k, {0.1, 0.9, 32, Spacing::uniform});
    CHECK(r.passed);
    CHECK(r.diagonal_ok);
}

TEST_CASE("cosh and sinh(x)/x inequalities")
{
    CHECK(verify_cosh_sinh(1, 0, cosh_sinh_grid(1, 0)).passed);
    CHECK(verify_cosh_sinh(3, 0, cosh_sinh_grid(3, 0)).passed);
    CHECK(verify_cosh_sinh(2, 5.9, cosh_sinh_grid(2, 5.9)).passed);
    const auto bad = verify_cosh_sinh(2, 7.0, cosh_sinh_grid(2, 7.0));
    CHECK(bad.refuted);
    REQUIRE(bad.witness);
    CHECK(bad.witness->gap < -10 * bad.witness->tol);
    CHECK(verify_cosh_sinh(4, 9.9, cosh_sinh_grid(4, 9.9)).passed);
    CHECK(verify_cosh_sinh(4, 11.0, cosh_sinh_grid(4, 11.0)).refuted);

    const auto g = cosh_sinh_grid(2, 4.0);
    CHECK(g.lo == doctest::Approx(0.1));
    CHECK(g.hi == doctest::Approx(1.998));
    CHECK_THROWS_AS(verify_cosh_sinh(5, 1.0, cosh_sinh_grid(1, 0)), InvalidParameter);
}

TEST_CASE("sharpness scan")
{
    const auto rows = sharpness_scan(2, {5.5, 7.0});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].passed);
    CHECK_FALSE(rows[0].refuted);
    CHECK(rows[1].refuted);
    CHECK(rows[1].witness);
    const auto rows4 = sharpness_scan(4, {11.0});
    CHECK(rows4.at(0).refuted);
}

TEST_CASE("counterexample witness for log-convexity of F(3,3;1;x)")
{
    const auto w = refute_log_convexity_f3();
    CHECK(w.x == 0.0);
    CHECK(w.y == doctest::Approx(0.1));
    CHECK(w.lhs == doctest::Approx(9.0));
    CHECK(std::abs(w.rhs - 8.534) < 5e-4);
    CHECK(w.gap < 0);
}

TEST_CASE("CSV and JSON output")
{
    CheckOptions opts;
    opts.keep_rows = true;
    const auto r = verify_mn({named_subject("cosh"), AG, Sense::convex}, {0.1, 1.0, 16, Spacing::uniform}, opts);
    CHECK(r.rows.size() == 136);
    const auto csv = to_csv(r.rows);
    CHECK(csv.rfind("x,y,lhs,rhs,gap\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 137);
    const auto j = to_json(r);
    CHECK(j["verdict"] == "Pass");
    CHECK(j["pairs"] == 136);
}
