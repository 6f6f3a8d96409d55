#include <mnconvex/cli/function_spec.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <vector>

#include <mnconvex/errors.hpp>

namespace mnconvex::cli
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    while (true) {
        const auto pos = s.find(sep, begin);
        parts.push_back(trim(s.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin)));
        if (pos == std::string_view::npos) {
            return parts;
        }
        begin = pos + 1;
    }
}

std::vector<Param> parse_list(std::string_view s)
{
    std::vector<Param> out;
    if (trim(s).empty()) {
        return out;
    }
    for (auto item : split(s, ',')) {
        out.push_back(Param::parse(item));
    }
    return out;
}

// Splits "head(body)" into head and body; body is empty without parentheses.
bool call_form(std::string_view text, std::string_view &head, std::string_view &body)
{
    const auto open = text.find('(');
    if (open == std::string_view::npos) {
        head = text;
        body = {};
        return false;
    }
    if (text.back() != ')') {
        throw ParseError("missing ')' in '" + std::string(text) + "'");
    }
    head = trim(text.substr(0, open));
    body = text.substr(open + 1, text.size() - open - 2);
    return true;
}

bool is_integer_family_size(std::string_view head, std::size_t &p, std::size_t &q)
{
    // "<p>F<q>" with single-digit counts, or the literal "pFq".
    if (head == "pFq") {
        return false;
    }
    if (head.size() == 3 && std::isdigit(static_cast<unsigned char>(head[0])) && head[1] == 'F'
        && std::isdigit(static_cast<unsigned char>(head[2]))) {
        p = static_cast<std::size_t>(head[0] - '0');
        q = static_cast<std::size_t>(head[2] - '0');
        return true;
    }
    throw ParseError("unknown function family '" + std::string(head) + "'");
}

FunctionSpec parse_hypergeometric_family(std::string_view head, std::string_view body)
{
    auto parts = split(body, ';');
    if (parts.size() < 2 || parts.size() > 3) {
        throw ParseError("expected '" + std::string(head) + "(a..;b..[;x])'");
    }
    FunctionSpec spec;
    if (parts.size() == 3) {
        spec.x = Param::parse(parts[2]);
    }
    GeneralizedHypergeometricParams g{parse_list(parts[0]), parse_list(parts[1])};
    std::size_t p = 0;
    std::size_t q = 0;
    if (is_integer_family_size(head, p, q) && (g.numer.size() != p || g.denom.size() != q)) {
        throw ParseError(std::string(head) + " needs " + std::to_string(p) + " numerator and " + std::to_string(q)
                         + " denominator parameters");
    }
    if (head == "2F1") {
        spec.kind = FunctionKind::hypergeometric;
        spec.hypergeometric = HypergeometricParams{g.numer[0], g.numer[1], g.denom[0]};
        validate(*spec.hypergeometric);
        return spec;
    }
    validate(g);
    spec.kind = FunctionKind::generalized_hypergeometric;
    spec.generalized = std::move(g);
    return spec;
}

FunctionSpec parse_bessel(std::string_view body)
{
    auto parts = split(body, ';');
    if (parts.size() > 2) {
        throw ParseError("expected 'bessel(b=..,c=..,p=..[;x])'");
    }
    FunctionSpec spec;
    spec.kind = FunctionKind::bessel;
    if (parts.size() == 2) {
        spec.x = Param::parse(parts[1]);
    }
    std::optional<Param> b, c, p;
    for (auto item : split(parts[0], ',')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("bessel parameters are written key=value, got '" + std::string(item) + "'");
        }
        const auto key = trim(item.substr(0, eq));
        const auto value = Param::parse(item.substr(eq + 1));
        if (key == "b") {
            b = value;
        } else if (key == "c") {
            c = value;
        } else if (key == "p") {
            p = value;
        } else {
            throw ParseError("unknown bessel parameter '" + std::string(key) + "'");
        }
    }
    if (!b || !c || !p) {
        throw ParseError("bessel needs b, c and p");
    }
    spec.bessel = BesselParams{*b, *c, *p};
    if (!(*c < Param(0)) || !(spec.bessel->k() > Param(0))) {
        throw InvalidParameter("bessel series needs c < 0 and k = p + (b+1)/2 > 0");
    }
    return spec;
}

FunctionSpec parse_legendre(std::string_view body)
{
    auto parts = split(body, ';');
    if (parts.size() > 2 || parts[0].empty()) {
        throw ParseError("expected 'legendre(n[;x])'");
    }
    FunctionSpec spec;
    spec.kind = FunctionKind::legendre;
    const Rational n = parse_rational(parts[0]);
    if (denominator(n) != 1 || n < 0 || n > 10000) {
        throw ParseError("legendre degree must be a non-negative integer");
    }
    spec.legendre_degree = static_cast<int>(numerator(n).convert_to<long>());
    if (parts.size() == 2) {
        spec.x = Param::parse(parts[1]);
    }
    return spec;
}

bool is_named(std::string_view name)
{
    for (const auto &n : named_subject_names()) {
        if (n == name) {
            return true;
        }
    }
    return false;
}

// Builds a series from one rule written for both Rational and Wide prefixes.
template <class Rule>
PowerSeries exact_series(std::string name, double radius, Rule rule)
{
    PowerSeries::Shape shape;
    shape.radius = radius;
    PowerSeries::WideRule wide = [rule](std::size_t n, std::span<const Wide> prefix) { return rule(n, prefix); };
    PowerSeries::ExactRule exact = [rule](std::size_t n, std::span<const Rational> prefix) { return rule(n, prefix); };
    return PowerSeries(std::move(name), shape, std::move(wide), std::move(exact));
}

// Nonzero coefficients at first, first + step, ...; a_first = 1 / first! and
// a_n = a_{n-step} / (n (n-1) ... (n-step+1)), so a_n = 1/n! there.
PowerSeries factorial_series(std::string name, std::size_t first, std::size_t step, std::size_t shift = 0)
{
    return exact_series(std::move(name), infinity, [first, step, shift](std::size_t n, auto prefix) {
        using T = typename decltype(prefix)::value_type;
        if (n < first || (n - first) % step != 0) {
            return T(0);
        }
        if (n == first) {
            T a(1);
            for (std::size_t k = 2; k <= first + shift; ++k) {
                a /= T(static_cast<long>(k));
            }
            return a;
        }
        T a = prefix[n - step];
        for (std::size_t k = 0; k < step; ++k) {
            a /= T(static_cast<long>(n + shift - k));
        }
        return a;
    });
}

std::optional<PowerSeries> named_series(const std::string &name)
{
    using std::size_t;
    if (name == "exp") {
        return factorial_series(name, 0, 1);
    }
    if (name == "cosh") {
        return factorial_series(name, 0, 2);
    }
    if (name == "sinh") {
        return factorial_series(name, 1, 2);
    }
    if (name == "sinhc") {
        // a_{2m} = 1/(2m+1)!
        return factorial_series(name, 0, 2, 1);
    }
    if (name == "log1p") {
        return exact_series(name, 1.0, [](size_t n, auto prefix) {
            using T = typename decltype(prefix)::value_type;
            return n == 0 ? T(0) : T(n % 2 == 1 ? 1 : -1) / T(static_cast<long>(n));
        });
    }
    if (name == "arctan") {
        return exact_series(name, 1.0, [](size_t n, auto prefix) {
            using T = typename decltype(prefix)::value_type;
            return n % 2 == 0 ? T(0) : T(n % 4 == 1 ? 1 : -1) / T(static_cast<long>(n));
        });
    }
    return std::nullopt;
}

bool is_integer(const Param &p, long &value)
{
    if (!p.is_exact() || denominator(p.exact()) != 1) {
        return false;
    }
    value = numerator(p.exact()).convert_to<long>();
    return true;
}

Evaluation series_evaluation(const PowerSeries &s, double x, const EvalOptions &options)
{
    const auto report = eval_report(s, x, options);
    return {report.value, report.high_precision ? "series (high precision)" : "series", report.terms};
}

} // namespace

std::string FunctionSpec::str() const
{
    switch (kind) {
    case FunctionKind::hypergeometric:
        return hypergeometric->str();
    case FunctionKind::generalized_hypergeometric:
        return generalized->str();
    case FunctionKind::bessel:
        return bessel->str();
    case FunctionKind::elliptic_k:
        return "K";
    case FunctionKind::named:
        return name;
    case FunctionKind::legendre:
        return "legendre(" + std::to_string(legendre_degree) + ")";
    case FunctionKind::series_file:
        return "series:" + name;
    }
    return name;
}

PowerSeries read_series_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open coefficient file '" + path + "'");
    }
    std::optional<double> radius;
    std::vector<Rational> coefficients;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto where = path + ":" + std::to_string(line_no);
        if (!radius) {
            if (text.substr(0, 7) != "radius=") {
                throw ParseError(where + ": expected 'radius=<value>' header");
            }
            const auto value = trim(text.substr(7));
            if (value == "inf" || value == "infinity") {
                radius = infinity;
            } else {
                radius = to_double(parse_rational(value));
                if (!(*radius > 0.0)) {
                    throw ParseError(where + ": radius must be positive");
                }
            }
            continue;
        }
        try {
            coefficients.push_back(parse_rational(text));
        } catch (const ParseError &e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (!radius) {
        throw ParseError(path + ": missing 'radius=<value>' header");
    }
    if (coefficients.empty()) {
        throw ParseError(path + ": no coefficients");
    }
    return PowerSeries::from_coefficients("series:" + path, *radius, std::move(coefficients));
}

FunctionSpec parse_function_spec(std::string_view raw)
{
    const auto text = trim(raw);
    if (text.empty()) {
        throw ParseError("empty function spec");
    }
    if (text.substr(0, 7) == "series:") {
        FunctionSpec spec;
        spec.kind = FunctionKind::series_file;
        spec.name = std::string(trim(text.substr(7)));
        spec.file_series = read_series_file(spec.name);
        return spec;
    }
    std::string_view head;
    std::string_view body;
    const bool has_args = call_form(text, head, body);
    if (head == "bessel") {
        return parse_bessel(body);
    }
    if (head == "legendre") {
        if (!has_args) {
            throw ParseError("expected 'legendre(n[;x])'");
        }
        return parse_legendre(body);
    }
    if (head == "K" || is_named(head)) {
        FunctionSpec spec;
        spec.kind = head == "K" ? FunctionKind::elliptic_k : FunctionKind::named;
        spec.name = std::string(head);
        if (has_args) {
            spec.x = Param::parse(body);
        }
        return spec;
    }
    if (has_args && head.size() == 3 && head[1] == 'F') {
        return parse_hypergeometric_family(head, body);
    }
    throw ParseError("unknown function '" + std::string(text) + "'");
}

Evaluation evaluate(const FunctionSpec &spec, double x, const EvalOptions &options)
{
    switch (spec.kind) {
    case FunctionKind::hypergeometric:
        return series_evaluation(gauss_2f1_series(*spec.hypergeometric), x, options);
    case FunctionKind::generalized_hypergeometric:
        return series_evaluation(generalized_pfq_series(*spec.generalized), x, options);
    case FunctionKind::bessel:
        return series_evaluation(bessel_series(*spec.bessel), x, options);
    case FunctionKind::series_file:
        return series_evaluation(*spec.file_series, x, options);
    case FunctionKind::elliptic_k:
        return {elliptic_k(x), "agm", 0};
    case FunctionKind::legendre:
        return {legendre(spec.legendre_degree)(x), "polynomial", 0};
    case FunctionKind::named:
        break;
    }
    if ((spec.name == "log1p" && x <= -1.0) || !std::isfinite(x)) {
        throw DomainError(spec.name + " is undefined at " + format_double(x));
    }
    return {named_subject(spec.name).value(x), "closed-form", 0};
}

std::optional<Evaluation> alternate_evaluation(const FunctionSpec &spec, double x, const EvalOptions &options)
{
    if (spec.kind == FunctionKind::elliptic_k) {
        if (!(x >= 0.0 && x < 1.0)) {
            throw DomainError("K is defined for 0 <= x < 1");
        }
        return Evaluation{elliptic_k_by_series(x, options.tol), "series", 0};
    }
    if (spec.kind == FunctionKind::bessel) {
        const auto &p = *spec.bessel;
        if (x < 0.0 || !(p.c == Param(-1)) || !(p.b == Param(1))) {
            return std::nullopt;
        }
        const double r = std::sqrt(x);
        if (p.p == Param(Rational(-1, 2))) {
            return Evaluation{std::cosh(r), "closed-form", 0};
        }
        if (p.p == Param(Rational(1, 2))) {
            return Evaluation{r == 0.0 ? 1.0 : std::sinh(r) / r, "closed-form", 0};
        }
        return std::nullopt;
    }
    if (spec.kind != FunctionKind::hypergeometric) {
        return std::nullopt;
    }
    const auto &p = *spec.hypergeometric;
    const Param half(Rational(1, 2));
    if (p.a == half && p.b == half && p.c == Param(1) && x >= 0.0 && x < 1.0) {
        return Evaluation{2.0 / std::numbers::pi * elliptic_k(std::sqrt(x)), "agm", 0};
    }
    if (p.a == Param(3) && p.b == Param(3) && p.c == Param(1) && x < 1.0) {
        return Evaluation{f33_closed_form(x), "closed-form", 0};
    }
    if (p.a == Param(Rational(1, 4)) && p.b == Param(Rational(3, 4)) && p.c == Param(Rational(3, 2)) && x <= 1.0) {
        return Evaluation{f_quarter_closed_form(x), "closed-form", 0};
    }
    long n = 0;
    if (p.a == p.b && p.c == Param(1) && is_integer(p.a, n) && n >= 1 && n <= 64 && x > -1.0 && x < 0.5) {
        return Evaluation{fnn_via_legendre(static_cast<int>(n), x), "legendre", 0};
    }
    return std::nullopt;
}

std::optional<PowerSeries> as_series(const FunctionSpec &spec)
{
    switch (spec.kind) {
    case FunctionKind::hypergeometric:
        return gauss_2f1_series(*spec.hypergeometric);
    case FunctionKind::generalized_hypergeometric:
        return generalized_pfq_series(*spec.generalized);
    case FunctionKind::bessel:
        return bessel_series(*spec.bessel);
    case FunctionKind::series_file:
        return spec.file_series;
    case FunctionKind::legendre:
        return PowerSeries::from_coefficients(spec.str(), infinity, legendre(spec.legendre_degree).poly().coefficients());
    case FunctionKind::named:
        return named_series(spec.name);
    case FunctionKind::elliptic_k:
        return std::nullopt;
    }
    return std::nullopt;
}

Subject as_subject(const FunctionSpec &spec)
{
    switch (spec.kind) {
    case FunctionKind::elliptic_k:
        return named_subject("K");
    case FunctionKind::named:
        return named_subject(spec.name);
    case FunctionKind::legendre: {
        const auto poly = legendre(spec.legendre_degree).poly();
        const auto d = poly.derivative();
        Subject s;
        s.name = spec.str();
        s.value = [poly](double x) { return poly(x); };
        s.derivative = [d](double x) { return d(x); };
        s.eval_tol = 1e-14;
        return s;
    }
    default:
        return series_subject(*as_series(spec));
    }
}

} // namespace mnconvex::cli
