#ifndef MNCONVEX_CRITERIA_HPP
#define MNCONVEX_CRITERIA_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <mnconvex/convexity.hpp>
#include <mnconvex/powerseries.hpp>
#include <mnconvex/specialfn.hpp>

namespace mnconvex
{

// proven_by_criterion: a closed-form parameter condition was decided.
// prefix_checked: a coefficient sequence was inspected up to the horizon.
// A failed sufficient condition is inapplicable, never refuted; refuted is
// only produced together with a numeric witness.
enum class Verdict { proven_by_criterion, prefix_checked, refuted, inapplicable };

const char *to_string(Verdict verdict);

struct Hypothesis {
    std::string condition;
    bool held = false;
};

struct Certificate {
    std::string subject;
    std::string criterion;
    Verdict verdict = Verdict::inapplicable;
    std::vector<Conclusion> conclusions;
    std::vector<Hypothesis> hypotheses;
    // Largest coefficient index inspected; 0 when no prefix was examined.
    std::size_t horizon = 0;
    std::size_t start_index = 0;
    std::string reason;
    std::string note;
    std::optional<Witness> witness;

    bool granted() const
    {
        return verdict == Verdict::proven_by_criterion || verdict == Verdict::prefix_checked;
    }
    // Granted and concluding MN-convexity (concavity) for this pair.
    bool establishes(MeanPair pair, Sense sense) const;
};

nlohmann::ordered_json to_json(const Certificate &certificate);

enum class HypergeometricProperty {
    log_convex,              // ab/(a+b+1) < c
    log_concave_transformed, // (a-c)(b-c) > 0: log F(1 - e^{-t}) concave
    convex_transformed,      // a+b >= c: F(1 - e^{-t}) convex
    reciprocal_concave,      // a+b >= c >= 2ab and c > a+b-1/2: 1/F concave
};

// Throws ParseError for unknown names.
HypergeometricProperty parse_hypergeometric_property(const std::string &name);
const char *to_string(HypergeometricProperty property);

// Decides the parameter condition exactly when the parameters are exact.
Certificate certify_hypergeometric(const HypergeometricParams &params, HypergeometricProperty property);

// Coefficient sequences whose monotonicity yields a convexity property of a
// positive-coefficient series.
enum class SeriesCriterion {
    positive_coefficients,     // AA- and GG-convex, unconditionally
    derivative_ratio,          // (n+1)a_{n+1}/a_n -> AG
    square_ratio,              // (n+1)a_{n+1}/b_n, b = a*a -> AH
    weighted_square_ratio,     // n a_n/b_n -> GH (and HH)
    shifted_derivative_ratio,  // R(n+1)a_{n+1}/a_n - n -> log f(R(1-e^{-t}))
    scaled_coefficients,       // n a_n R^n -> f(R(1-e^{-t}))
    reciprocal_concavity,      // n a_n R^n up and n! a_n R^n/(1/2,n) down -> 1/f concave
};

// Numbered 1..7 in the order above; throws ParseError otherwise.
SeriesCriterion series_criterion_from_number(int number);
int number_of(SeriesCriterion criterion);

struct CertifyOptions {
    std::size_t horizon = 1000;
    // Radius used by the criteria that need 0 < R < infinity. Must not exceed
    // the radius of the series.
    std::optional<double> radius;
    double float_tie_tol = 1e-15;
};

// Throws NonPositiveCoefficient at the first a_n <= 0 with n <= horizon + 1.
Certificate certify_series(const PowerSeries &series, SeriesCriterion criterion, const CertifyOptions &options = {});

// The four properties of sum (-c/4)^n x^n/(n!(k,n)): GG-convex, AG-concave,
// AA-convex, and concavity of f(R(1 - e^{-t})) when k > -1 - cR/4.
// Throws InvalidParameter unless c < 0, k > 0 and R > 0.
std::vector<Certificate> certify_bessel(const BesselParams &params, const Param &radius);

// Log-convexity of pFq on (0,1) from a componentwise comparison of the
// parameters, after cancelling parameters common to both lists.
Certificate certify_pfq(const GeneralizedHypergeometricParams &params);

// Requires R(n+1)a_{n+1}/a_n - n to be decreasing (or constant); the
// certificate grants the two-sided inequality for m(x) = f(R - x^2/R)/f(x^2/R).
Certificate certify_mf(const PowerSeries &series, const CertifyOptions &options = {});

// Picks the coefficient criterion matching an (M,N) pair and sense.
Certificate certify_pair(const PowerSeries &series, MeanPair pair, Sense sense, const CertifyOptions &options = {});

} // namespace mnconvex

#endif
