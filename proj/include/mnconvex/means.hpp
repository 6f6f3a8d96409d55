#ifndef MNCONVEX_MEANS_HPP
#define MNCONVEX_MEANS_HPP

#include <array>
#include <string>

#include <mnconvex/powerseries.hpp>

namespace mnconvex
{

enum class MeanKind { arithmetic, geometric, harmonic, logarithmic, identric };

inline constexpr std::array<MeanKind, 3> classical_means{MeanKind::arithmetic, MeanKind::geometric, MeanKind::harmonic};

// 'A', 'G', 'H', 'L' or 'I'.
char mean_symbol(MeanKind kind);
// Inverse of mean_symbol; throws ParseError.
MeanKind parse_mean(char symbol);
const char *mean_name(MeanKind kind);

// Value of the mean of two positive reals. The logarithmic and identric means
// switch to a short expansion in u = (y - x)/(x + y) when |u| < 1e-6.
// Throws DomainError for non-positive or non-finite input.
double mean(MeanKind kind, double x, double y);

// L(x,y)/G(x,y) and A(x,y)/G(x,y) as series in t, where y/x = exp(2 sqrt(t)).
struct MeanRatioSeries {
    PowerSeries logarithmic_over_geometric; // sum t^n / (2n+1)!
    PowerSeries arithmetic_over_geometric;  // sum t^n / (2n)!
};

MeanRatioSeries mean_ratio_series();

} // namespace mnconvex

#endif
