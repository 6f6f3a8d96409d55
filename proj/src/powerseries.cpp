#include <mnconvex/powerseries.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <utility>

#include <mnconvex/errors.hpp>

namespace mnconvex
{

Rational pochhammer(const Rational &a, long long n)
{
    if (n < 0) {
        throw InvalidParameter("Pochhammer length must be non-negative");
    }
    if (n == 0) {
        if (a == 0) {
            throw UndefinedSymbol("the Pochhammer symbol (0,0) is not defined");
        }
        return Rational(1);
    }
    Rational result(1);
    for (long long k = 0; k < n; ++k) {
        result *= a + k;
    }
    return result;
}

double pochhammer(double a, long long n)
{
    if (n < 0) {
        throw InvalidParameter("Pochhammer length must be non-negative");
    }
    if (n == 0) {
        if (a == 0.0) {
            throw UndefinedSymbol("the Pochhammer symbol (0,0) is not defined");
        }
        return 1.0;
    }
    double result = 1.0;
    for (long long k = 0; k < n; ++k) {
        result *= a + static_cast<double>(k);
    }
    return result;
}

struct PowerSeries::State {
    std::string name;
    Shape shape;
    WideRule wide_rule;
    ExactRule exact_rule;

    std::mutex mutex;
    std::vector<Wide> wide;
    std::vector<Rational> exact;

    bool beyond_degree(std::size_t n) const
    {
        return shape.degree && n > *shape.degree;
    }

    // Callers hold the mutex.
    void grow_wide(std::size_t count)
    {
        while (wide.size() < count) {
            const std::size_t n = wide.size();
            wide.push_back(beyond_degree(n) ? Wide(0) : wide_rule(n, std::span<const Wide>(wide)));
        }
    }

    void grow_exact(std::size_t count)
    {
        if (!exact_rule) {
            throw InvalidParameter("series '" + name + "' has floating-point coefficients");
        }
        while (exact.size() < count) {
            const std::size_t n = exact.size();
            exact.push_back(beyond_degree(n) ? Rational(0) : exact_rule(n, std::span<const Rational>(exact)));
        }
    }
};

PowerSeries::PowerSeries(std::string name, Shape shape, WideRule wide_rule, ExactRule exact_rule)
    : m_state(std::make_shared<State>())
{
    if (!(shape.radius > 0.0)) {
        throw InvalidParameter("radius of convergence must be positive");
    }
    if (!wide_rule) {
        throw InvalidParameter("series needs a coefficient rule");
    }
    m_state->name = std::move(name);
    m_state->shape = shape;
    m_state->wide_rule = std::move(wide_rule);
    m_state->exact_rule = std::move(exact_rule);
}

PowerSeries PowerSeries::from_ratio(std::string name, Shape shape, Rational a0, std::function<Wide(std::size_t)> wide_ratio,
                                    std::function<Rational(std::size_t)> exact_ratio)
{
    const Wide wide_a0(a0);
    WideRule wide_rule = [wide_a0, wide_ratio](std::size_t n, std::span<const Wide> prefix) {
        return n == 0 ? wide_a0 : Wide(prefix.back() * wide_ratio(n - 1));
    };
    ExactRule exact_rule;
    if (exact_ratio) {
        exact_rule = [a0, exact_ratio](std::size_t n, std::span<const Rational> prefix) {
            return n == 0 ? a0 : Rational(prefix.back() * exact_ratio(n - 1));
        };
    }
    return PowerSeries(std::move(name), shape, std::move(wide_rule), std::move(exact_rule));
}

PowerSeries PowerSeries::from_ratio(std::string name, Shape shape, Wide a0, std::function<Wide(std::size_t)> wide_ratio)
{
    WideRule wide_rule = [a0, wide_ratio](std::size_t n, std::span<const Wide> prefix) {
        return n == 0 ? a0 : Wide(prefix.back() * wide_ratio(n - 1));
    };
    return PowerSeries(std::move(name), shape, std::move(wide_rule));
}

PowerSeries PowerSeries::from_coefficients(std::string name, double radius, std::vector<Rational> coefficients)
{
    if (coefficients.empty()) {
        coefficients.push_back(Rational(0));
    }
    Shape shape;
    shape.radius = radius;
    shape.degree = coefficients.size() - 1;
    auto table = std::make_shared<const std::vector<Rational>>(std::move(coefficients));
    WideRule wide_rule = [table](std::size_t n, std::span<const Wide>) { return Wide((*table)[n]); };
    ExactRule exact_rule = [table](std::size_t n, std::span<const Rational>) { return (*table)[n]; };
    return PowerSeries(std::move(name), shape, std::move(wide_rule), std::move(exact_rule));
}

PowerSeries PowerSeries::from_function(std::string name, Shape shape, std::function<Wide(std::size_t)> coefficient)
{
    WideRule wide_rule = [coefficient](std::size_t n, std::span<const Wide>) { return coefficient(n); };
    return PowerSeries(std::move(name), shape, std::move(wide_rule));
}

const std::string &PowerSeries::name() const
{
    return m_state->name;
}

double PowerSeries::radius() const
{
    return m_state->shape.radius;
}

bool PowerSeries::finite_radius() const
{
    return std::isfinite(m_state->shape.radius);
}

bool PowerSeries::boundary_divergent() const
{
    return m_state->shape.boundary_divergent;
}

std::optional<std::size_t> PowerSeries::degree() const
{
    return m_state->shape.degree;
}

CoeffKind PowerSeries::kind() const
{
    return m_state->exact_rule ? CoeffKind::exact_rational : CoeffKind::floating;
}

Wide PowerSeries::coeff(std::size_t n) const
{
    std::lock_guard lock(m_state->mutex);
    m_state->grow_wide(n + 1);
    return m_state->wide[n];
}

double PowerSeries::coeff_value(std::size_t n) const
{
    return to_double(coeff(n));
}

Rational PowerSeries::exact_coeff(std::size_t n) const
{
    std::lock_guard lock(m_state->mutex);
    m_state->grow_exact(n + 1);
    return m_state->exact[n];
}

std::vector<Wide> PowerSeries::coeffs(std::size_t count) const
{
    std::vector<Wide> out;
    coeff_block(0, count, out);
    return out;
}

std::vector<Rational> PowerSeries::exact_coeffs(std::size_t count) const
{
    std::vector<Rational> out;
    exact_block(0, count, out);
    return out;
}

void PowerSeries::coeff_block(std::size_t begin, std::size_t end, std::vector<Wide> &out) const
{
    std::lock_guard lock(m_state->mutex);
    m_state->grow_wide(end);
    out.assign(m_state->wide.begin() + static_cast<std::ptrdiff_t>(begin), m_state->wide.begin() + static_cast<std::ptrdiff_t>(end));
}

void PowerSeries::exact_block(std::size_t begin, std::size_t end, std::vector<Rational> &out) const
{
    std::lock_guard lock(m_state->mutex);
    m_state->grow_exact(end);
    out.assign(m_state->exact.begin() + static_cast<std::ptrdiff_t>(begin), m_state->exact.begin() + static_cast<std::ptrdiff_t>(end));
}

PowerSeries PowerSeries::renamed(std::string name) const
{
    return PowerSeries(std::move(name), m_state->shape, m_state->wide_rule, m_state->exact_rule);
}

namespace
{

void check_domain(const PowerSeries &s, double x, double guard)
{
    if (!std::isfinite(x)) {
        throw DomainError("evaluation point must be finite");
    }
    if (!s.finite_radius()) {
        return;
    }
    const double limit = eval_limit(s, guard);
    const double ax = std::fabs(x);
    if (ax >= s.radius() || (s.boundary_divergent() && ax > limit)) {
        throw DomainError("x = " + format_double(x) + " is outside the evaluation domain of " + s.name() + " (|x| < "
                          + format_double(s.boundary_divergent() ? limit : s.radius()) + ")");
    }
}

template <class Real>
struct Summed {
    Real sum = 0;
    // sum of |t_n| and of (n + 8)|t_n|, the latter bounding accumulated
    // rounding in the coefficient recurrence and in x^n.
    long double abs_sum = 0;
    long double weighted = 0;
    std::size_t terms = 0;
    double tail = 0;
};

// CoeffAt fills a block of coefficients converted to Real.
template <class Real, class CoeffAt>
Summed<Real> sum_series(const PowerSeries &s, double x, const EvalOptions &options, CoeffAt &&coeff_block)
{
    Summed<Real> out;
    const Real xr(x);
    Real xpow(1);
    Real compensation(0);
    const double limit_ratio = s.finite_radius() ? std::fabs(x) / s.radius() : 0.0;

    std::vector<double> ratios;
    ratios.reserve(options.window);
    std::size_t ring = 0;
    Real last_nonzero(0);

    const std::size_t limit = s.degree() ? *s.degree() + 1 : options.term_cap;
    std::vector<Real> block;
    std::size_t block_size = 64;
    for (std::size_t begin = 0; begin < limit; begin += block.size()) {
        const std::size_t end = std::min(limit, begin + block_size);
        coeff_block(begin, end, block);
        block_size = std::min<std::size_t>(block_size * 2, 4096);
        for (std::size_t k = 0; k < block.size(); ++k) {
            const std::size_t n = begin + k;
            const Real term = block[k] * xpow;
            xpow *= xr;

            // Neumaier summation.
            const Real updated = out.sum + term;
            if (abs(out.sum) >= abs(term)) {
                compensation += (out.sum - updated) + term;
            } else {
                compensation += (term - updated) + out.sum;
            }
            out.sum = updated;

            const long double magnitude = static_cast<long double>(abs(term));
            if (!std::isfinite(magnitude)) {
                throw ConvergenceError("series term overflow while evaluating " + s.name());
            }
            out.abs_sum += magnitude;
            out.weighted += magnitude * static_cast<long double>(n + 8);
            out.terms = n + 1;

            if (s.degree()) {
                continue;
            }
            if (term != 0) {
                if (last_nonzero != 0) {
                    const double r = static_cast<double>(abs(term) / last_nonzero);
                    if (ratios.size() < options.window) {
                        ratios.push_back(r);
                    } else {
                        ratios[ring] = r;
                        ring = (ring + 1) % options.window;
                    }
                }
                last_nonzero = abs(term);
            }
            if (ratios.size() == options.window && last_nonzero != 0) {
                const double q = std::max(*std::max_element(ratios.begin(), ratios.end()), limit_ratio);
                if (q <= options.max_ratio) {
                    const double tail = static_cast<double>(last_nonzero) / (1.0 - q);
                    const double current = static_cast<double>(abs(out.sum + compensation));
                    const double threshold = options.relative ? options.tol * current : options.tol;
                    if (tail <= threshold) {
                        out.sum += compensation;
                        out.tail = tail;
                        return out;
                    }
                }
            } else if (last_nonzero == 0 && n > 64 && xpow == 0) {
                // Every term so far vanished and x^n has underflowed.
                out.sum += compensation;
                return out;
            }
        }
    }
    if (s.degree()) {
        out.sum += compensation;
        return out;
    }
    throw ConvergenceError("no convergence detected for " + s.name() + " at x = " + format_double(x) + " within "
                           + std::to_string(options.term_cap) + " terms");
}

} // namespace

double eval_limit(const PowerSeries &s, double boundary_guard)
{
    if (!s.finite_radius()) {
        return infinity;
    }
    return s.boundary_divergent() ? (1.0 - boundary_guard) * s.radius() : s.radius();
}

EvalReport eval_report(const PowerSeries &s, double x, const EvalOptions &options)
{
    if (!(options.tol > 0.0)) {
        throw InvalidParameter("evaluation tolerance must be positive");
    }
    check_domain(s, x, options.boundary_guard);
    if (x == 0.0) {
        return {s.coeff_value(0), 1, 0.0, false};
    }

    const auto fast = sum_series<Wide>(s, x, options, [&](std::size_t b, std::size_t e, std::vector<Wide> &out) {
        s.coeff_block(b, e, out);
    });
    const double value = to_double(fast.sum);
    const double threshold = options.relative ? options.tol * std::fabs(value) : options.tol;
    const long double eps = std::numeric_limits<Wide>::epsilon().convert_to<long double>();
    const long double rounding = eps * fast.weighted;
    if (rounding <= threshold || fast.abs_sum <= 4.0L * std::fabs(static_cast<long double>(value))) {
        return {value, fast.terms, fast.tail, false};
    }

    // Alternating terms cancelled beyond what Wide can resolve.
    if (s.kind() != CoeffKind::exact_rational) {
        throw ConvergenceError("cancellation in " + s.name() + " at x = " + format_double(x)
                               + " exceeds the tolerance and exact coefficients are unavailable");
    }
    std::vector<Rational> exact;
    const auto precise = sum_series<HighPrec>(s, x, options, [&](std::size_t b, std::size_t e, std::vector<HighPrec> &out) {
        s.exact_block(b, e, exact);
        out.clear();
        for (const auto &c : exact) {
            out.emplace_back(c);
        }
    });
    const double precise_value = static_cast<double>(precise.sum);
    const long double hp_eps = std::numeric_limits<HighPrec>::epsilon().convert_to<long double>();
    const double precise_threshold = options.relative ? options.tol * std::fabs(precise_value) : options.tol;
    if (hp_eps * precise.weighted > precise_threshold) {
        throw ConvergenceError("cancellation in " + s.name() + " at x = " + format_double(x) + " exceeds extended precision");
    }
    return {precise_value, precise.terms, precise.tail, true};
}

double eval(const PowerSeries &s, double x, double tol)
{
    EvalOptions options;
    options.tol = tol;
    return eval_report(s, x, options).value;
}

double eval(const PowerSeries &s, double x, const EvalOptions &options)
{
    return eval_report(s, x, options).value;
}

PowerSeries derivative(const PowerSeries &s)
{
    PowerSeries::Shape shape;
    shape.radius = s.radius();
    // Convergence on |x| = R is not inherited by the derivative.
    shape.boundary_divergent = s.finite_radius();
    if (const auto d = s.degree()) {
        shape.degree = *d > 0 ? *d - 1 : 0;
    }
    PowerSeries::WideRule wide_rule = [s](std::size_t n, std::span<const Wide>) {
        return Wide(Wide(n + 1) * s.coeff(n + 1));
    };
    PowerSeries::ExactRule exact_rule;
    if (s.kind() == CoeffKind::exact_rational) {
        exact_rule = [s](std::size_t n, std::span<const Rational>) {
            return Rational(Rational(n + 1) * s.exact_coeff(n + 1));
        };
    }
    return PowerSeries("d/dx " + s.name(), shape, std::move(wide_rule), std::move(exact_rule));
}

PowerSeries cauchy_square(const PowerSeries &s)
{
    PowerSeries::Shape shape;
    shape.radius = s.radius();
    shape.boundary_divergent = s.boundary_divergent();
    if (const auto d = s.degree()) {
        shape.degree = 2 * *d;
    }
    PowerSeries::WideRule wide_rule = [s](std::size_t n, std::span<const Wide>) {
        const auto a = s.coeffs(n + 1);
        Wide total = 0;
        for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
            total += a[k] * a[n - k];
        }
        total *= 2;
        if (n % 2 == 0) {
            total += a[n / 2] * a[n / 2];
        }
        return total;
    };
    PowerSeries::ExactRule exact_rule;
    if (s.kind() == CoeffKind::exact_rational) {
        exact_rule = [s](std::size_t n, std::span<const Rational>) {
            const auto a = s.exact_coeffs(n + 1);
            Rational total = 0;
            for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
                total += a[k] * a[n - k];
            }
            total *= 2;
            if (n % 2 == 0) {
                total += a[n / 2] * a[n / 2];
            }
            return total;
        };
    }
    return PowerSeries("(" + s.name() + ")^2", shape, std::move(wide_rule), std::move(exact_rule));
}

RatioSequence ratio_sequence(const PowerSeries &f, const PowerSeries &g, std::size_t horizon)
{
    RatioSequence seq;
    const auto num = f.coeffs(horizon + 1);
    const auto den = g.coeffs(horizon + 1);
    seq.terms.reserve(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) {
        if (den[n] <= 0) {
            throw NonPositiveDenominator(n);
        }
        seq.terms.push_back(num[n] / den[n]);
    }
    if (f.kind() == CoeffKind::exact_rational && g.kind() == CoeffKind::exact_rational) {
        const auto exact_num = f.exact_coeffs(horizon + 1);
        const auto exact_den = g.exact_coeffs(horizon + 1);
        std::vector<Rational> exact;
        exact.reserve(horizon + 1);
        for (std::size_t n = 0; n <= horizon; ++n) {
            if (exact_den[n] <= 0) {
                throw NonPositiveDenominator(n);
            }
            exact.push_back(exact_num[n] / exact_den[n]);
        }
        seq.exact = std::move(exact);
    }
    return seq;
}

RatioSequence transform(const RatioSequence &seq, const std::function<Wide(std::size_t, const Wide &)> &wide_map,
                        const std::function<Rational(std::size_t, const Rational &)> &exact_map)
{
    RatioSequence out;
    out.start = seq.start;
    out.terms.reserve(seq.terms.size());
    for (std::size_t i = 0; i < seq.terms.size(); ++i) {
        out.terms.push_back(wide_map(seq.start + i, seq.terms[i]));
    }
    if (seq.exact && exact_map) {
        std::vector<Rational> exact;
        exact.reserve(seq.exact->size());
        for (std::size_t i = 0; i < seq.exact->size(); ++i) {
            exact.push_back(exact_map(seq.start + i, (*seq.exact)[i]));
        }
        out.exact = std::move(exact);
    }
    return out;
}

namespace
{

int compare_step(const Rational &prev, const Rational &next)
{
    return next > prev ? 1 : (next < prev ? -1 : 0);
}

int compare_step(const Wide &prev, const Wide &next, double tie_tol)
{
    const Wide diff = next - prev;
    const Wide scale = std::max(abs(prev), abs(next));
    if (abs(diff) <= Wide(tie_tol) * scale) {
        return 0;
    }
    return diff > 0 ? 1 : -1;
}

} // namespace

MonotoneVerdict monotone_verdict(const RatioSequence &seq, double float_tie_tol)
{
    if (seq.size() < 2) {
        throw InvalidParameter("monotonicity needs at least two terms");
    }
    MonotoneVerdict verdict;
    verdict.start = seq.start;
    verdict.horizon = seq.horizon();
    verdict.exact = seq.is_exact();

    int direction = 0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        const int step = seq.exact ? compare_step((*seq.exact)[i], (*seq.exact)[i + 1])
                                   : compare_step(seq.terms[i], seq.terms[i + 1], float_tie_tol);
        if (step == 0) {
            verdict.strict = false;
            continue;
        }
        if (direction == 0) {
            direction = step;
        } else if (step != direction) {
            verdict.kind = Monotonicity::not_monotone;
            verdict.violation_index = seq.start + i + 1;
            return verdict;
        }
    }
    if (direction > 0) {
        verdict.kind = Monotonicity::increasing;
    } else if (direction < 0) {
        verdict.kind = Monotonicity::decreasing;
    } else {
        verdict.kind = Monotonicity::constant;
        verdict.strict = false;
    }
    return verdict;
}

const char *to_string(Monotonicity m)
{
    switch (m) {
        case Monotonicity::increasing:
            return "increasing";
        case Monotonicity::decreasing:
            return "decreasing";
        case Monotonicity::constant:
            return "constant";
        case Monotonicity::not_monotone:
            return "not monotone";
    }
    return "unknown";
}

} // namespace mnconvex
