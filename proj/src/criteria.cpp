#include <mnconvex/criteria.hpp>

#include <algorithm>
#include <cmath>

#include <mnconvex/errors.hpp>

namespace mnconvex
{

namespace
{

std::string interval_text(double radius)
{
    return std::isfinite(radius) ? "(0," + format_double(radius) + ")" : "(0,inf)";
}

Conclusion mn_conclusion(MeanKind m, MeanKind n, Sense sense, const std::string &interval)
{
    const MeanPair pair{m, n};
    return {pair.str() + "-" + to_string(sense) + " on " + interval, pair, sense};
}

Conclusion plain_conclusion(const std::string &what, Sense sense)
{
    return {what + " " + to_string(sense), std::nullopt, sense};
}

const char *direction_word(Sense sense)
{
    return sense == Sense::convex ? "increasing" : "decreasing";
}

void require_positive(const PowerSeries &s, std::size_t count)
{
    if (s.kind() == CoeffKind::exact_rational) {
        const auto a = s.exact_coeffs(count);
        for (std::size_t n = 0; n < count; ++n) {
            if (a[n] <= 0) {
                throw NonPositiveCoefficient(n);
            }
        }
        return;
    }
    const auto a = s.coeffs(count);
    for (std::size_t n = 0; n < count; ++n) {
        if (!(a[n] > 0)) {
            throw NonPositiveCoefficient(n);
        }
    }
}

double effective_radius(const PowerSeries &s, const CertifyOptions &options)
{
    if (!options.radius) {
        return s.radius();
    }
    const double r = *options.radius;
    if (!(r > 0.0) || r > s.radius()) {
        throw InvalidParameter("radius " + format_double(r) + " must lie in (0, " + format_double(s.radius()) + "]");
    }
    return r;
}

void check_horizon(const CertifyOptions &options)
{
    if (options.horizon < 2) {
        throw InvalidParameter("horizon must be at least 2");
    }
}

// Fills verdict, conclusions and reason from the monotonicity of seq.
// conclude(sense) lists what an increasing (convex) or decreasing (concave)
// sequence yields.
template <class Conclude>
void apply_monotone(Certificate &cert, const RatioSequence &seq, const std::string &sequence_text, double tie_tol,
                    Conclude conclude)
{
    const auto v = monotone_verdict(seq, tie_tol);
    cert.horizon = v.horizon;
    cert.start_index = v.start;
    const std::string range = " for " + std::to_string(v.start) + " <= n <= " + std::to_string(v.horizon);
    const std::string mode = v.exact ? " (exact)" : " (floating point)";
    switch (v.kind) {
        case Monotonicity::increasing:
        case Monotonicity::decreasing: {
            const Sense sense = v.kind == Monotonicity::increasing ? Sense::convex : Sense::concave;
            cert.hypotheses.push_back({sequence_text + " " + direction_word(sense) + range + mode, true});
            cert.verdict = Verdict::prefix_checked;
            cert.conclusions = conclude(sense);
            if (!v.strict) {
                cert.note = "some consecutive terms tie; monotonicity is weak";
            }
            break;
        }
        case Monotonicity::constant: {
            cert.hypotheses.push_back({sequence_text + " constant" + range + mode, true});
            cert.verdict = Verdict::prefix_checked;
            cert.conclusions = conclude(Sense::convex);
            for (auto &c : conclude(Sense::concave)) {
                cert.conclusions.push_back(std::move(c));
            }
            cert.note = "constant sequence: both weak senses hold (equality case)";
            break;
        }
        case Monotonicity::not_monotone:
            cert.hypotheses.push_back({sequence_text + " monotone" + range + mode, false});
            cert.verdict = Verdict::inapplicable;
            cert.reason = "sequence is not monotone; first violation at index " + std::to_string(*v.violation_index);
            break;
    }
}

// n a_n R^n for n = 1..horizon (scaled), or n! a_n R^n/(1/2,n) for n = 0..horizon.
RatioSequence scaled_sequence(const PowerSeries &s, double radius, std::size_t horizon, bool factorial_form)
{
    RatioSequence seq;
    seq.start = factorial_form ? 0 : 1;
    const auto a = s.coeffs(horizon + 1);
    const Wide r(radius);
    Wide power(1);
    Wide weight(1); // n!/(1/2,n)
    for (std::size_t n = 0; n <= horizon; ++n) {
        if (n > 0) {
            power *= r;
            if (factorial_form) {
                weight *= Wide(n) / (Wide(n) - Wide(0.5));
            }
        }
        if (factorial_form) {
            seq.terms.push_back(weight * a[n] * power);
        } else if (n > 0) {
            seq.terms.push_back(Wide(n) * a[n] * power);
        }
    }
    if (s.kind() == CoeffKind::exact_rational) {
        const auto ea = s.exact_coeffs(horizon + 1);
        const Rational er(radius);
        Rational epower(1);
        Rational eweight(1);
        std::vector<Rational> exact;
        for (std::size_t n = 0; n <= horizon; ++n) {
            if (n > 0) {
                epower *= er;
                if (factorial_form) {
                    eweight *= Rational(2 * n, 2 * n - 1);
                }
            }
            if (factorial_form) {
                exact.push_back(eweight * ea[n] * epower);
            } else if (n > 0) {
                exact.push_back(Rational(static_cast<long>(n)) * ea[n] * epower);
            }
        }
        seq.exact = std::move(exact);
    }
    return seq;
}

// (n+1)a_{n+1}/b_n or n a_n/b_n with b = a * a, in floating point.
RatioSequence square_sequence(const PowerSeries &s, std::size_t horizon, bool shifted)
{
    const auto a = s.coeffs(horizon + 2);
    RatioSequence seq;
    seq.terms.reserve(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) {
        Wide b = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            b += a[k] * a[n - k];
        }
        if (!(b > 0)) {
            throw NonPositiveDenominator(n);
        }
        seq.terms.push_back(shifted ? Wide(n + 1) * a[n + 1] / b : Wide(n) * a[n] / b);
    }
    return seq;
}

Certificate inapplicable(Certificate cert, std::string reason)
{
    cert.verdict = Verdict::inapplicable;
    cert.reason = std::move(reason);
    cert.conclusions.clear();
    return cert;
}

Certificate certify_positivity(const PowerSeries &s, const CertifyOptions &options)
{
    Certificate cert;
    cert.subject = s.name();
    cert.criterion = "positive coefficients: AA- and GG-convex";
    const std::size_t count = options.horizon + 1;
    require_positive(s, count);
    const std::string interval = interval_text(s.radius());
    cert.hypotheses.push_back({"a_n > 0 for 0 <= n <= " + std::to_string(options.horizon), true});
    cert.verdict = Verdict::proven_by_criterion;
    cert.horizon = options.horizon;
    cert.conclusions = {mn_conclusion(MeanKind::arithmetic, MeanKind::arithmetic, Sense::convex, interval),
                        mn_conclusion(MeanKind::geometric, MeanKind::geometric, Sense::convex, interval)};
    return cert;
}

} // namespace

const char *to_string(Verdict verdict)
{
    switch (verdict) {
        case Verdict::proven_by_criterion:
            return "ProvenByCriterion";
        case Verdict::prefix_checked:
            return "PrefixChecked";
        case Verdict::refuted:
            return "Refuted";
        case Verdict::inapplicable:
            return "Inapplicable";
    }
    return "Inapplicable";
}

bool Certificate::establishes(MeanPair pair, Sense sense) const
{
    if (!granted()) {
        return false;
    }
    return std::any_of(conclusions.begin(), conclusions.end(),
                       [&](const Conclusion &c) { return c.pair && *c.pair == pair && c.sense == sense; });
}

nlohmann::ordered_json to_json(const Certificate &c)
{
    nlohmann::ordered_json j;
    j["subject"] = c.subject;
    j["criterion"] = c.criterion;
    j["verdict"] = to_string(c.verdict);
    auto conclusions = nlohmann::ordered_json::array();
    for (const auto &k : c.conclusions) {
        conclusions.push_back(k.str());
    }
    j["conclusions"] = conclusions;
    auto hypotheses = nlohmann::ordered_json::array();
    for (const auto &h : c.hypotheses) {
        nlohmann::ordered_json item;
        item["condition"] = h.condition;
        item["held"] = h.held;
        hypotheses.push_back(item);
    }
    j["hypotheses"] = hypotheses;
    j["horizon"] = c.horizon;
    j["start_index"] = c.start_index;
    j["reason"] = c.reason;
    j["note"] = c.note;
    j["witness"] = c.witness ? to_json(*c.witness) : nlohmann::ordered_json(nullptr);
    return j;
}

HypergeometricProperty parse_hypergeometric_property(const std::string &name)
{
    if (name == "log-convex") {
        return HypergeometricProperty::log_convex;
    }
    if (name == "log-concave-transformed") {
        return HypergeometricProperty::log_concave_transformed;
    }
    if (name == "convex-transformed") {
        return HypergeometricProperty::convex_transformed;
    }
    if (name == "reciprocal-concave") {
        return HypergeometricProperty::reciprocal_concave;
    }
    throw ParseError("unknown property '" + name
                     + "' (expected log-convex, log-concave-transformed, convex-transformed or reciprocal-concave)");
}

const char *to_string(HypergeometricProperty property)
{
    switch (property) {
        case HypergeometricProperty::log_convex:
            return "log-convex";
        case HypergeometricProperty::log_concave_transformed:
            return "log-concave-transformed";
        case HypergeometricProperty::convex_transformed:
            return "convex-transformed";
        case HypergeometricProperty::reciprocal_concave:
            return "reciprocal-concave";
    }
    return "log-convex";
}

Certificate certify_hypergeometric(const HypergeometricParams &p, HypergeometricProperty property)
{
    validate(p);
    Certificate cert;
    cert.subject = p.str();
    const std::string exactness = p.is_exact() ? " (exact)" : " (floating point)";
    const Param one(1);
    const Param two(2);
    bool held = false;
    switch (property) {
        case HypergeometricProperty::log_convex: {
            cert.criterion = "hypergeometric log-convexity: ab/(a+b+1) < c";
            const Param lhs = p.a * p.b / (p.a + p.b + one);
            held = lhs < p.c;
            cert.hypotheses.push_back({"ab/(a+b+1) = " + lhs.str() + " < c = " + p.c.str() + exactness, held});
            cert.conclusions = {mn_conclusion(MeanKind::arithmetic, MeanKind::geometric, Sense::convex, "(0,1)")};
            break;
        }
        case HypergeometricProperty::log_concave_transformed: {
            cert.criterion = "hypergeometric shifted log-concavity: (a-c)(b-c) > 0";
            const Param lhs = (p.a - p.c) * (p.b - p.c);
            held = lhs > Param(0);
            cert.hypotheses.push_back({"(a-c)(b-c) = " + lhs.str() + " > 0" + exactness, held});
            cert.conclusions = {plain_conclusion("log F(1-e^{-t}) on (0,inf)", Sense::concave)};
            break;
        }
        case HypergeometricProperty::convex_transformed: {
            cert.criterion = "hypergeometric shifted convexity: a+b >= c";
            const Param lhs = p.a + p.b;
            held = lhs >= p.c;
            cert.hypotheses.push_back({"a+b = " + lhs.str() + " >= c = " + p.c.str() + exactness, held});
            cert.conclusions = {plain_conclusion("F(1-e^{-t}) on (0,inf)", Sense::convex)};
            break;
        }
        case HypergeometricProperty::reciprocal_concave: {
            cert.criterion = "hypergeometric reciprocal concavity: a+b >= c >= 2ab and c > a+b-1/2";
            const Param sum = p.a + p.b;
            const Param twice = two * p.a * p.b;
            const bool upper = sum >= p.c;
            const bool lower = p.c >= twice;
            const bool margin = p.c > sum - one / two;
            cert.hypotheses.push_back({"a+b = " + sum.str() + " >= c = " + p.c.str() + exactness, upper});
            cert.hypotheses.push_back({"c = " + p.c.str() + " >= 2ab = " + twice.str() + exactness, lower});
            cert.hypotheses.push_back({"c = " + p.c.str() + " > a+b-1/2 = " + (sum - one / two).str() + exactness, margin});
            held = upper && lower && margin;
            cert.conclusions = {mn_conclusion(MeanKind::arithmetic, MeanKind::harmonic, Sense::convex, "(0,1)")};
            break;
        }
    }
    if (!held) {
        return inapplicable(std::move(cert), "sufficient condition does not hold");
    }
    cert.verdict = Verdict::proven_by_criterion;
    return cert;
}

SeriesCriterion series_criterion_from_number(int number)
{
    if (number < 1 || number > 7) {
        throw ParseError("criterion number must be between 1 and 7, got " + std::to_string(number));
    }
    return static_cast<SeriesCriterion>(number - 1);
}

int number_of(SeriesCriterion criterion)
{
    return static_cast<int>(criterion) + 1;
}

Certificate certify_series(const PowerSeries &s, SeriesCriterion criterion, const CertifyOptions &options)
{
    check_horizon(options);
    const std::size_t horizon = options.horizon;
    if (criterion == SeriesCriterion::positive_coefficients) {
        return certify_positivity(s, options);
    }
    const double radius = effective_radius(s, options);
    const std::string interval = interval_text(radius);

    Certificate cert;
    cert.subject = s.name();
    switch (criterion) {
        case SeriesCriterion::positive_coefficients:
            break;
        case SeriesCriterion::derivative_ratio: {
            cert.criterion = "coefficient ratio (n+1)a_{n+1}/a_n monotone: AG";
            require_positive(s, horizon + 2);
            const auto seq = ratio_sequence(derivative(s), s, horizon);
            apply_monotone(cert, seq, "(n+1)a_{n+1}/a_n", options.float_tie_tol, [&](Sense sense) {
                return std::vector<Conclusion>{mn_conclusion(MeanKind::arithmetic, MeanKind::geometric, sense, interval)};
            });
            break;
        }
        case SeriesCriterion::square_ratio: {
            cert.criterion = "square ratio (n+1)a_{n+1}/b_n monotone, b_n = sum a_k a_{n-k}: AH";
            require_positive(s, horizon + 2);
            const auto seq = square_sequence(s, horizon, true);
            apply_monotone(cert, seq, "(n+1)a_{n+1}/b_n", options.float_tie_tol, [&](Sense sense) {
                return std::vector<Conclusion>{mn_conclusion(MeanKind::arithmetic, MeanKind::harmonic, sense, interval)};
            });
            break;
        }
        case SeriesCriterion::weighted_square_ratio: {
            cert.criterion = "square ratio n a_n/b_n monotone, b_n = sum a_k a_{n-k}: GH";
            require_positive(s, horizon + 2);
            const auto seq = square_sequence(s, horizon, false);
            apply_monotone(cert, seq, "n a_n/b_n", options.float_tie_tol, [&](Sense sense) {
                return std::vector<Conclusion>{
                    mn_conclusion(MeanKind::geometric, MeanKind::harmonic, sense, interval),
                    mn_conclusion(MeanKind::harmonic, MeanKind::harmonic, sense, interval)};
            });
            cert.note += std::string(cert.note.empty() ? "" : "; ")
                         + "stated as GH; the derivative tests behind it cover both GH and HH, so both are listed";
            break;
        }
        case SeriesCriterion::shifted_derivative_ratio:
        case SeriesCriterion::scaled_coefficients:
        case SeriesCriterion::reciprocal_concavity:
            if (!std::isfinite(radius)) {
                cert.criterion = criterion == SeriesCriterion::shifted_derivative_ratio
                                     ? "shifted ratio R(n+1)a_{n+1}/a_n - n monotone"
                                     : (criterion == SeriesCriterion::scaled_coefficients
                                            ? "scaled coefficients n a_n R^n monotone"
                                            : "n a_n R^n increasing and n! a_n R^n/(1/2,n) decreasing");
                cert.hypotheses.push_back({"0 < R < inf", false});
                return inapplicable(std::move(cert), "criterion needs a finite radius");
            }
            cert.hypotheses.push_back({"0 < R = " + format_double(radius) + " < inf", true});
            if (criterion == SeriesCriterion::shifted_derivative_ratio) {
                cert.criterion = "shifted ratio R(n+1)a_{n+1}/a_n - n monotone";
                require_positive(s, horizon + 2);
                const Wide wr(radius);
                const Rational er(radius);
                const auto seq = transform(
                    ratio_sequence(derivative(s), s, horizon),
                    [wr](std::size_t n, const Wide &t) { return Wide(wr * t - Wide(n)); },
                    [er](std::size_t n, const Rational &t) { return Rational(er * t - Rational(static_cast<long>(n))); });
                apply_monotone(cert, seq, "R(n+1)a_{n+1}/a_n - n", options.float_tie_tol, [&](Sense sense) {
                    return std::vector<Conclusion>{
                        plain_conclusion("log f(R(1-e^{-t})) on (0,inf), R = " + format_double(radius), sense)};
                });
            } else if (criterion == SeriesCriterion::scaled_coefficients) {
                cert.criterion = "scaled coefficients n a_n R^n monotone";
                require_positive(s, horizon + 1);
                const auto seq = scaled_sequence(s, radius, horizon, false);
                apply_monotone(cert, seq, "n a_n R^n", options.float_tie_tol, [&](Sense sense) {
                    return std::vector<Conclusion>{
                        plain_conclusion("f(R(1-e^{-t})) on (0,inf), R = " + format_double(radius), sense)};
                });
            } else {
                cert.criterion = "n a_n R^n increasing and n! a_n R^n/(1/2,n) decreasing: 1/f concave";
                require_positive(s, horizon + 1);
                Certificate first;
                apply_monotone(first, scaled_sequence(s, radius, horizon, false), "n a_n R^n", options.float_tie_tol,
                               [](Sense sense) { return std::vector<Conclusion>{plain_conclusion("", sense)}; });
                Certificate second;
                apply_monotone(second, scaled_sequence(s, radius, horizon, true), "n! a_n R^n/(1/2,n)",
                               options.float_tie_tol,
                               [](Sense sense) { return std::vector<Conclusion>{plain_conclusion("", sense)}; });
                auto has = [](const Certificate &c, Sense sense) {
                    return c.granted()
                           && std::any_of(c.conclusions.begin(), c.conclusions.end(),
                                          [&](const Conclusion &k) { return k.sense == sense; });
                };
                const bool up = has(first, Sense::convex);
                const bool down = has(second, Sense::concave);
                cert.hypotheses.push_back({first.hypotheses.back().condition + (up ? "" : " (increasing required)"), up});
                cert.hypotheses.push_back(
                    {second.hypotheses.back().condition + (down ? "" : " (decreasing required)"), down});
                cert.horizon = horizon;
                cert.start_index = 1;
                if (!(up && down)) {
                    return inapplicable(std::move(cert), "first sequence must increase and second must decrease");
                }
                cert.verdict = Verdict::prefix_checked;
                cert.conclusions = {mn_conclusion(MeanKind::arithmetic, MeanKind::harmonic, Sense::convex, interval)};
                cert.note = "second sequence starts at n = 0";
            }
            break;
    }
    return cert;
}

std::vector<Certificate> certify_bessel(const BesselParams &params, const Param &radius)
{
    const Param zero(0);
    const Param k = params.k();
    if (!(params.c < zero) || !(k > zero)) {
        throw InvalidParameter("bessel criteria need c < 0 and k > 0; got " + params.str() + ", k = " + k.str());
    }
    if (!(radius > zero)) {
        throw InvalidParameter("R must be positive");
    }
    const std::string subject = params.str();
    const std::string positivity = "c = " + params.c.str() + " < 0 and k = " + k.str() + " > 0";

    std::vector<Certificate> out;
    Certificate gg;
    gg.subject = subject;
    gg.criterion = "bessel series: positive coefficients give GG-convexity";
    gg.hypotheses.push_back({positivity + " (all coefficients positive)", true});
    gg.verdict = Verdict::proven_by_criterion;
    gg.conclusions = {mn_conclusion(MeanKind::geometric, MeanKind::geometric, Sense::convex, "(0,inf)")};
    out.push_back(gg);

    Certificate ag;
    ag.subject = subject;
    ag.criterion = "bessel series: (n+1)b_{n+1}/b_n = (-c/4)/(k+n) decreasing gives AG-concavity";
    ag.hypotheses.push_back({positivity + " ((-c/4)/(k+n) decreasing)", true});
    ag.verdict = Verdict::proven_by_criterion;
    ag.conclusions = {mn_conclusion(MeanKind::arithmetic, MeanKind::geometric, Sense::concave, "(0,inf)")};
    out.push_back(ag);

    Certificate aa;
    aa.subject = subject;
    aa.criterion = "bessel series: positive coefficients give convexity";
    aa.hypotheses.push_back({positivity + " (all coefficients positive)", true});
    aa.verdict = Verdict::proven_by_criterion;
    aa.conclusions = {mn_conclusion(MeanKind::arithmetic, MeanKind::arithmetic, Sense::convex, "(0,inf)")};
    out.push_back(aa);

    Certificate shifted;
    shifted.subject = subject;
    shifted.criterion = "bessel series: k > -1 - cR/4 gives concavity of f(R(1-e^{-t}))";
    const Param bound = -Param(1) - params.c * radius / Param(4);
    const bool held = k > bound;
    const std::string exactness = (k.is_exact() && bound.is_exact()) ? " (exact)" : " (floating point)";
    shifted.hypotheses.push_back({"k = " + k.str() + " > -1 - cR/4 = " + bound.str() + " with R = " + radius.str() + exactness,
                                  held});
    shifted.conclusions = {plain_conclusion("f(R(1-e^{-t})) on (0,inf), R = " + radius.str(), Sense::concave)};
    if (held) {
        shifted.verdict = Verdict::proven_by_criterion;
        out.push_back(shifted);
    } else {
        out.push_back(inapplicable(shifted, "sufficient condition does not hold"));
    }
    return out;
}

namespace
{

std::vector<Param> sorted(std::vector<Param> v)
{
    std::sort(v.begin(), v.end(), [](const Param &x, const Param &y) { return x < y; });
    return v;
}

// Removes parameters occurring in both lists (F is unchanged by this).
void cancel_common(std::vector<Param> &numer, std::vector<Param> &denom)
{
    for (auto it = numer.begin(); it != numer.end();) {
        auto match = std::find(denom.begin(), denom.end(), *it);
        if (match != denom.end()) {
            denom.erase(match);
            it = numer.erase(it);
        } else {
            ++it;
        }
    }
}

// +1 when every x_k <= y_k, -1 when every x_k >= y_k, 0 otherwise. Both
// vectors are sorted and have equal length; an empty comparison gives +1.
int componentwise(const std::vector<Param> &x, const std::vector<Param> &y)
{
    bool all_le = true;
    bool all_ge = true;
    for (std::size_t k = 0; k < x.size(); ++k) {
        all_le = all_le && x[k] <= y[k];
        all_ge = all_ge && x[k] >= y[k];
    }
    return all_le ? 1 : (all_ge ? -1 : 0);
}

} // namespace

Certificate certify_pfq(const GeneralizedHypergeometricParams &params)
{
    validate(params);
    Certificate cert;
    cert.subject = params.str();
    std::vector<Param> numer = params.numer;
    std::vector<Param> denom = params.denom;
    cancel_common(numer, denom);
    numer = sorted(numer);
    denom = sorted(denom);
    const std::size_t p = numer.size();
    const std::size_t q = denom.size();
    if (p != params.numer.size()) {
        cert.note = "cancelled parameters common to both lists; reduced to " + std::to_string(p) + "F" + std::to_string(q);
    }
    const std::string log_interval = "(0,1)";
    auto log_convex = [&](bool strict) {
        cert.verdict = Verdict::proven_by_criterion;
        cert.conclusions = {mn_conclusion(MeanKind::arithmetic, MeanKind::geometric, Sense::convex, log_interval)};
        if (strict) {
            cert.conclusions.front().property = "strictly " + cert.conclusions.front().property;
        }
    };
    auto log_concave = [&](bool strict) {
        cert.verdict = Verdict::proven_by_criterion;
        cert.conclusions = {mn_conclusion(MeanKind::arithmetic, MeanKind::geometric, Sense::concave, log_interval)};
        if (strict) {
            cert.conclusions.front().property = "strictly " + cert.conclusions.front().property;
        }
    };

    if (p == 0 && q == 0) {
        cert.criterion = "pFq with p = q = 0 is e^x";
        cert.hypotheses.push_back({"p = q = 0", true});
        log_convex(false);
        cert.conclusions.push_back(mn_conclusion(MeanKind::arithmetic, MeanKind::geometric, Sense::concave, log_interval));
        cert.note += std::string(cert.note.empty() ? "" : "; ") + "log e^x is affine, so both weak senses hold";
        return cert;
    }
    if (p == 0) {
        cert.criterion = "pFq with p = 0, q >= 1: T_n = 1/prod(n+b_k) decreasing";
        cert.hypotheses.push_back({"p = 0 and q = " + std::to_string(q) + " >= 1", true});
        log_concave(false);
        return cert;
    }
    if (p == q) {
        cert.criterion = "pFq with p = q >= 1: componentwise comparison a_k vs b_k";
        const int cmp = componentwise(numer, denom);
        if (cmp > 0) {
            cert.hypotheses.push_back({"a_k <= b_k for each k, one strictly (sorted)", true});
            log_convex(true);
        } else if (cmp < 0) {
            cert.hypotheses.push_back({"a_k >= b_k for each k, one strictly (sorted)", true});
            log_concave(true);
        } else {
            cert.hypotheses.push_back({"a_k <= b_k for each k or a_k >= b_k for each k", false});
            return inapplicable(std::move(cert), "mixed comparison: neither a_k <= b_k for all k nor a_k >= b_k for all k");
        }
        return cert;
    }
    if (p > q) {
        cert.criterion = "pFq with p > q: a_k <= b_k for k = 1..q";
        const std::vector<Param> head(numer.begin(), numer.begin() + static_cast<std::ptrdiff_t>(q));
        const bool held = q == 0 || componentwise(head, denom) > 0;
        cert.hypotheses.push_back({q == 0 ? "q = 0: T_n = prod(a_k+n) increasing"
                                          : "a_k <= b_k for k = 1..q, one strictly (smallest numerator parameters)",
                                   held});
        if (!held) {
            return inapplicable(std::move(cert), "mixed comparison: the q smallest a_k do not satisfy a_k <= b_k");
        }
        log_convex(true);
        return cert;
    }
    cert.criterion = "pFq with 1 <= p < q: a_k >= b_k for k = 1..p";
    const std::vector<Param> head(denom.begin(), denom.begin() + static_cast<std::ptrdiff_t>(p));
    const bool held = componentwise(numer, head) < 0;
    cert.hypotheses.push_back({"a_k >= b_k for k = 1..p, one strictly (smallest denominator parameters)", held});
    if (!held) {
        return inapplicable(std::move(cert), "mixed comparison: a_k >= b_k fails against the p smallest b_k");
    }
    log_concave(true);
    return cert;
}

Certificate certify_mf(const PowerSeries &s, const CertifyOptions &options)
{
    check_horizon(options);
    const double radius = effective_radius(s, options);
    Certificate cert;
    cert.subject = s.name();
    cert.criterion = "m(x) = f(R - x^2/R)/f(x^2/R): R(n+1)a_{n+1}/a_n - n decreasing";
    if (!std::isfinite(radius)) {
        cert.hypotheses.push_back({"0 < R < inf", false});
        return inapplicable(std::move(cert), "criterion needs a finite radius");
    }
    cert.hypotheses.push_back({"0 < R = " + format_double(radius) + " < inf", true});
    const auto shifted = certify_series(s, SeriesCriterion::shifted_derivative_ratio, options);
    for (std::size_t i = 1; i < shifted.hypotheses.size(); ++i) {
        cert.hypotheses.push_back(shifted.hypotheses[i]);
    }
    cert.horizon = shifted.horizon;
    cert.start_index = shifted.start_index;
    const bool decreasing =
        shifted.granted() && std::any_of(shifted.conclusions.begin(), shifted.conclusions.end(),
                                         [](const Conclusion &c) { return c.sense == Sense::concave; });
    if (!decreasing) {
        return inapplicable(std::move(cert), shifted.granted() ? "sequence is increasing, decreasing required" : shifted.reason);
    }
    cert.verdict = Verdict::prefix_checked;
    cert.note = shifted.note;
    cert.conclusions = {{"1/m((R^2-x^2)^{1/4}(R^2-y^2)^{1/4}) <= sqrt(m(x)m(y)) <= m(sqrt(xy)) on " + interval_text(radius),
                         std::nullopt, Sense::concave}};
    return cert;
}

Certificate certify_pair(const PowerSeries &s, MeanPair pair, Sense sense, const CertifyOptions &options)
{
    auto finish = [&](Certificate cert) {
        if (cert.granted() && !cert.establishes(pair, sense)) {
            return inapplicable(std::move(cert), std::string("criterion yields the opposite sense for ") + pair.str());
        }
        return cert;
    };
    using M = MeanKind;
    if (pair == MeanPair{M::arithmetic, M::arithmetic} || pair == MeanPair{M::geometric, M::geometric}) {
        return finish(certify_series(s, SeriesCriterion::positive_coefficients, options));
    }
    if (pair == MeanPair{M::arithmetic, M::geometric}) {
        return finish(certify_series(s, SeriesCriterion::derivative_ratio, options));
    }
    if (pair == MeanPair{M::arithmetic, M::harmonic}) {
        auto cert = certify_series(s, SeriesCriterion::square_ratio, options);
        if (!cert.establishes(pair, sense) && sense == Sense::convex && s.finite_radius()) {
            auto alt = certify_series(s, SeriesCriterion::reciprocal_concavity, options);
            if (alt.establishes(pair, sense)) {
                return alt;
            }
        }
        return finish(std::move(cert));
    }
    if (pair == MeanPair{M::geometric, M::harmonic} || pair == MeanPair{M::harmonic, M::harmonic}) {
        return finish(certify_series(s, SeriesCriterion::weighted_square_ratio, options));
    }
    Certificate cert;
    cert.subject = s.name();
    cert.criterion = "coefficient criteria for " + pair.str();
    return inapplicable(std::move(cert), "no coefficient criterion for the pair " + pair.str());
}

} // namespace mnconvex
