#ifndef MNCONVEX_POWERSERIES_HPP
#define MNCONVEX_POWERSERIES_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <mnconvex/numeric.hpp>

namespace mnconvex
{

// Rising factorial a(a+1)...(a+n-1), with (a,0) = 1 for a != 0.
// Throws UndefinedSymbol for (0,0) and InvalidParameter for n < 0.
Rational pochhammer(const Rational &a, long long n);
double pochhammer(double a, long long n);

enum class CoeffKind { exact_rational, floating };

// A Maclaurin series f(x) = sum a_n x^n, described by a radius and a rule
// producing a_n from the already computed prefix a_0..a_{n-1}.
//
// Coefficients are generated lazily and memoized behind a mutex; every copy of
// a series shares the same table. The table is an implementation detail: the
// result of coeff(n) does not depend on call order or on other threads.
class PowerSeries
{
public:
    using WideRule = std::function<Wide(std::size_t n, std::span<const Wide> prefix)>;
    using ExactRule = std::function<Rational(std::size_t n, std::span<const Rational> prefix)>;

    struct Shape {
        double radius = infinity;
        // The series is only summed on |x| <= (1 - guard) R.
        bool boundary_divergent = false;
        // Known degree for polynomials; coefficients past it are zero.
        std::optional<std::size_t> degree;
    };

    PowerSeries(std::string name, Shape shape, WideRule wide_rule, ExactRule exact_rule = {});

    // a_0 followed by a_{n+1} = a_n * ratio(n).
    static PowerSeries from_ratio(std::string name, Shape shape, Rational a0, std::function<Wide(std::size_t)> wide_ratio,
                                  std::function<Rational(std::size_t)> exact_ratio = {});
    static PowerSeries from_ratio(std::string name, Shape shape, Wide a0, std::function<Wide(std::size_t)> wide_ratio);

    // Finite coefficient list; the series is the polynomial they define.
    static PowerSeries from_coefficients(std::string name, double radius, std::vector<Rational> coefficients);
    static PowerSeries from_function(std::string name, Shape shape, std::function<Wide(std::size_t)> coefficient);

    const std::string &name() const;
    double radius() const;
    bool finite_radius() const;
    bool boundary_divergent() const;
    std::optional<std::size_t> degree() const;
    CoeffKind kind() const;

    Wide coeff(std::size_t n) const;
    double coeff_value(std::size_t n) const;
    // Throws InvalidParameter when the series has floating coefficients.
    Rational exact_coeff(std::size_t n) const;

    std::vector<Wide> coeffs(std::size_t count) const;
    std::vector<Rational> exact_coeffs(std::size_t count) const;
    // Copies a_begin..a_{end-1} into out (replacing its contents).
    void coeff_block(std::size_t begin, std::size_t end, std::vector<Wide> &out) const;
    void exact_block(std::size_t begin, std::size_t end, std::vector<Rational> &out) const;

    PowerSeries renamed(std::string name) const;

private:
    struct State;
    std::shared_ptr<State> m_state;
};

struct EvalOptions {
    double tol = 1e-15;
    // When set, the stopping rule compares the tail against tol * |sum|.
    bool relative = false;
    double boundary_guard = 1e-3;
    double max_ratio = 0.999;
    std::size_t window = 8;
    std::size_t term_cap = 1'000'000;
};

struct EvalReport {
    double value = 0.0;
    std::size_t terms = 0;
    double tail_bound = 0.0;
    // True when cancellation forced a re-summation with exact coefficients.
    bool high_precision = false;
};

// Sums the series at x until the geometric tail bound drops below tol.
// Throws DomainError for |x| >= R (or past the boundary guard for series that
// diverge on |x| = R) and ConvergenceError when the term cap is reached.
EvalReport eval_report(const PowerSeries &s, double x, const EvalOptions &options);
double eval(const PowerSeries &s, double x, double tol = 1e-15);
double eval(const PowerSeries &s, double x, const EvalOptions &options);

// Largest |x| accepted by eval for this series.
double eval_limit(const PowerSeries &s, double boundary_guard = 1e-3);

// Term-by-term derivative: coefficient n is (n+1) a_{n+1}.
PowerSeries derivative(const PowerSeries &s);

// Series of f^2: coefficient n is sum_{k=0}^n a_k a_{n-k}.
PowerSeries cauchy_square(const PowerSeries &s);

// A sequence indexed from `start`, stored in working precision and, when the
// inputs allowed it, exactly.
struct RatioSequence {
    std::size_t start = 0;
    std::vector<Wide> terms;
    std::optional<std::vector<Rational>> exact;

    std::size_t size() const
    {
        return terms.size();
    }
    // Last index inspected.
    std::size_t horizon() const
    {
        return start + terms.size() - 1;
    }
    bool is_exact() const
    {
        return exact.has_value();
    }
};

// T_n = a_n / b_n for n = 0..horizon. Throws NonPositiveDenominator at the
// first n with b_n <= 0.
RatioSequence ratio_sequence(const PowerSeries &f, const PowerSeries &g, std::size_t horizon);

// Applies a term-wise map; the exact map is used only when both the sequence
// and the map support it.
RatioSequence transform(const RatioSequence &seq, const std::function<Wide(std::size_t, const Wide &)> &wide_map,
                        const std::function<Rational(std::size_t, const Rational &)> &exact_map = {});

enum class Monotonicity { increasing, decreasing, constant, not_monotone };

struct MonotoneVerdict {
    Monotonicity kind = Monotonicity::constant;
    // First index whose term breaks the direction set by earlier terms.
    std::optional<std::size_t> violation_index;
    // False when some consecutive terms tied.
    bool strict = true;
    std::size_t start = 0;
    std::size_t horizon = 0;
    bool exact = false;
    // Always true: only the inspected prefix was examined.
    bool prefix_only = true;
};

// Exact comparison for exact sequences; otherwise differences within
// float_tie_tol * max(|t_n|, |t_{n+1}|) count as ties.
MonotoneVerdict monotone_verdict(const RatioSequence &seq, double float_tie_tol = 1e-15);

const char *to_string(Monotonicity m);

} // namespace mnconvex

#endif
