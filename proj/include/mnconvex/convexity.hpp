#ifndef MNCONVEX_CONVEXITY_HPP
#define MNCONVEX_CONVEXITY_HPP

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include <mnconvex/means.hpp>

namespace mnconvex
{

enum class Sense { convex, concave };

const char *to_string(Sense sense);
// "convex" or "concave"; throws ParseError.
Sense parse_sense(std::string_view text);
Sense opposite(Sense sense);

// f is MN-convex when f(M(x,y)) <= N(f(x), f(y)).
struct MeanPair {
    MeanKind m;
    MeanKind n;

    std::string str() const;
    friend bool operator==(const MeanPair &, const MeanPair &) = default;
};

// Two letters from {A,G,H,L,I}, e.g. "AG"; throws ParseError.
MeanPair parse_pair(std::string_view text);

// A concrete pair of points with both sides of an inequality. gap >= 0 means
// the inequality holds; tol is the evaluation error bound at this pair.
struct Witness {
    double x = 0.0;
    double y = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double tol = 0.0;
    std::string context;
};

nlohmann::ordered_json to_json(const Witness &witness);

// One property a certificate establishes, e.g. AG-convex on (0,1).
struct Conclusion {
    std::string property;
    std::optional<MeanPair> pair;
    Sense sense = Sense::convex;

    std::string str() const;
};

} // namespace mnconvex

#endif
