#include <mnconvex/convexity.hpp>

#include <mnconvex/errors.hpp>

namespace mnconvex
{

const char *to_string(Sense sense)
{
    return sense == Sense::convex ? "convex" : "concave";
}

Sense parse_sense(std::string_view text)
{
    if (text == "convex") {
        return Sense::convex;
    }
    if (text == "concave") {
        return Sense::concave;
    }
    throw ParseError("sense must be 'convex' or 'concave', got '" + std::string(text) + "'");
}

Sense opposite(Sense sense)
{
    return sense == Sense::convex ? Sense::concave : Sense::convex;
}

std::string MeanPair::str() const
{
    return {mean_symbol(m), mean_symbol(n)};
}

MeanPair parse_pair(std::string_view text)
{
    if (text.size() != 2) {
        throw ParseError("mean pair must be two letters such as AG, got '" + std::string(text) + "'");
    }
    return {parse_mean(text[0]), parse_mean(text[1])};
}

std::string Conclusion::str() const
{
    return property;
}

nlohmann::ordered_json to_json(const Witness &w)
{
    nlohmann::ordered_json j;
    j["x"] = w.x;
    j["y"] = w.y;
    j["lhs"] = w.lhs;
    j["rhs"] = w.rhs;
    j["gap"] = w.gap;
    j["tol"] = w.tol;
    j["context"] = w.context;
    return j;
}

} // namespace mnconvex
