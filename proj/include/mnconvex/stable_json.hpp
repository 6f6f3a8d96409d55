#ifndef MNCONVEX_STABLE_JSON_HPP
#define MNCONVEX_STABLE_JSON_HPP

#include <string>

#include <json.hpp>

namespace mnconvex
{

// Serializes with insertion-ordered keys and every floating-point number
// printed with 17 significant digits. Non-finite numbers become the strings
// "nan", "inf" and "-inf".
std::string dump_stable(const nlohmann::ordered_json &value, int indent = 2);

} // namespace mnconvex

#endif
