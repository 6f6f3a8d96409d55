#include <mnconvex/stable_json.hpp>

#include <cmath>

#include <mnconvex/numeric.hpp>

namespace mnconvex
{

namespace
{

void write(const nlohmann::ordered_json &v, int indent, int depth, std::string &out)
{
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char *newline = indent > 0 ? "\n" : "";
    const char *colon = indent > 0 ? ": " : ":";
    switch (v.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            out += newline;
            bool first = true;
            for (const auto &[key, item] : v.items()) {
                if (!first) {
                    out += ',';
                    out += newline;
                }
                first = false;
                out += pad;
                out += nlohmann::ordered_json(key).dump();
                out += colon;
                write(item, indent, depth + 1, out);
            }
            out += newline;
            out += close_pad;
            out += '}';
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            out += newline;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) {
                    out += ',';
                    out += newline;
                }
                out += pad;
                write(v[i], indent, depth + 1, out);
            }
            out += newline;
            out += close_pad;
            out += ']';
            return;
        }
        case nlohmann::ordered_json::value_t::number_float: {
            const double d = v.get<double>();
            if (std::isfinite(d)) {
                out += format_double(d);
            } else {
                out += '"' + format_double(d) + '"';
            }
            return;
        }
        default:
            out += v.dump();
            return;
    }
}

} // namespace

std::string dump_stable(const nlohmann::ordered_json &value, int indent)
{
    std::string out;
    write(value, indent, 0, out);
    return out;
}

} // namespace mnconvex
