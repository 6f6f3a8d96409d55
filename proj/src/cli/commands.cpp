#include <mnconvex/cli/commands.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <mnconvex/cli/function_spec.hpp>
#include <mnconvex/cli/repro.hpp>
#include <mnconvex/criteria.hpp>
#include <mnconvex/errors.hpp>
#include <mnconvex/numcheck.hpp>
#include <mnconvex/stable_json.hpp>

namespace mnconvex::cli
{

namespace
{

using json = nlohmann::ordered_json;

struct Globals {
    double tol = 1e-15;
    std::size_t horizon = 1000;
    std::size_t points = 64;
    bool json = false;
    std::string csv;
    std::string plot;
};

struct GridFlags {
    std::optional<double> lo;
    std::optional<double> hi;
    std::string spacing = "log";
};

struct EvalArgs {
    std::string function;
    std::optional<std::string> x;
    bool relative = false;
    bool cross_check = false;
    GridFlags grid;
};

struct CertifyArgs {
    std::string subject;
    std::string pair;
    std::string sense = "convex";
    std::string which;
    std::optional<int> part;
    std::optional<std::string> radius;
    bool mf = false;
    bool cross_check = false;
    GridFlags grid;
};

struct VerifyArgs {
    std::string subject;
    std::string pair;
    std::string sense = "convex";
    std::string route = "direct";
    bool chain = false;
    bool mf = false;
    std::optional<int> part;
    std::optional<double> radius;
    bool strict = false;
    int refine = 0;
    GridFlags grid;
};

struct ScanArgs {
    std::string kind;
    int part = 2;
    std::vector<double> radii;
    std::optional<double> from;
    std::optional<double> to;
    double step = 0.1;
    std::size_t points = 2048;
};

struct ReproArgs {
    std::string id;
    bool list = false;
};

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream f(path);
    if (!f) {
        throw Error("cannot write '" + path + "'");
    }
    f << content;
}

Spacing parse_spacing(const std::string &s)
{
    if (s == "log") {
        return Spacing::log;
    }
    if (s == "uniform") {
        return Spacing::uniform;
    }
    throw ParseError("spacing must be 'log' or 'uniform', got '" + s + "'");
}

// (0.01, 3) clipped to 99% of the domain of the subject, unless overridden.
GridSpec grid_for(const Subject &subject, const GridFlags &flags, std::size_t points)
{
    GridSpec grid;
    grid.points = points;
    grid.spacing = parse_spacing(flags.spacing);
    if (std::isfinite(subject.domain_hi)) {
        grid.hi = std::min(grid.hi, 0.99 * subject.domain_hi);
    }
    grid.lo = std::min(grid.lo, 0.5 * grid.hi);
    grid.lo = flags.lo.value_or(grid.lo);
    grid.hi = flags.hi.value_or(grid.hi);
    grid.validate();
    return grid;
}

void emit_plot(const std::string &path, const Subject &subject, const GridSpec &grid)
{
    std::string csv = "x,f(x)\n";
    for (double x : grid.nodes()) {
        csv += format_double(x) + "," + format_double(subject.value(x)) + "\n";
    }
    write_file(path, csv);
}

std::string grid_text(const GridSpec &g)
{
    return "[" + format_short(g.lo) + ", " + format_short(g.hi) + "], " + std::to_string(g.points) + " points, "
           + (g.spacing == Spacing::log ? "log" : "uniform");
}

json grid_json(const GridSpec &g)
{
    json j;
    j["lo"] = g.lo;
    j["hi"] = g.hi;
    j["points"] = g.points;
    j["spacing"] = g.spacing == Spacing::log ? "log" : "uniform";
    return j;
}

std::string witness_text(const Witness &w)
{
    return "x = " + format_short(w.x) + ", y = " + format_short(w.y) + ", lhs = " + format_short(w.lhs)
           + ", rhs = " + format_short(w.rhs) + ", gap = " + format_short(w.gap) + " (tol " + format_short(w.tol) + ", "
           + w.context + ")";
}

int cmd_eval(const EvalArgs &a, const Globals &g, std::ostream &out)
{
    const FunctionSpec spec = parse_function_spec(a.function);
    std::optional<Param> x = spec.x;
    if (a.x) {
        x = Param::parse(*a.x);
    }
    if (!g.plot.empty()) {
        const Subject subject = as_subject(spec);
        emit_plot(g.plot, subject, grid_for(subject, a.grid, g.points));
    }
    if (!x) {
        if (!g.plot.empty()) {
            return exit_ok;
        }
        throw ParseError("no evaluation point: write it after ';' in the spec or pass --x");
    }
    EvalOptions options;
    options.tol = g.tol;
    options.relative = a.relative;
    const double xv = x->value();
    const Evaluation e = evaluate(spec, xv, options);
    std::optional<Evaluation> alt;
    if (a.cross_check) {
        alt = alternate_evaluation(spec, xv, options);
    }
    if (g.json) {
        json j;
        j["function"] = spec.str();
        j["x"] = xv;
        j["value"] = e.value;
        j["route"] = e.route;
        j["terms"] = e.terms;
        if (a.cross_check) {
            if (alt) {
                json c;
                c["route"] = alt->route;
                c["value"] = alt->value;
                c["difference"] = e.value - alt->value;
                j["cross_check"] = c;
            } else {
                j["cross_check"] = nullptr;
            }
        }
        out << dump_stable(j) << '\n';
        return exit_ok;
    }
    out << spec.str() << " at x = " << format_short(xv) << ": " << format_short(e.value) << " [" << e.route;
    if (e.terms) {
        out << ", " << e.terms << " terms";
    }
    out << "]\n";
    if (a.cross_check) {
        if (alt) {
            out << "cross-check: " << format_short(alt->value) << " [" << alt->route
                << "], difference " << format_short(e.value - alt->value) << '\n';
        } else {
            out << "cross-check: no independent route for this function\n";
        }
    }
    return exit_ok;
}

// Numeric counterparts of a certificate: the requested pair, plus every pair
// concluded by a granted certificate.
std::vector<std::pair<MeanPair, Sense>> cross_check_targets(const CertifyArgs &a, const Certificate &cert)
{
    std::vector<std::pair<MeanPair, Sense>> targets;
    auto add = [&](MeanPair p, Sense s) {
        if (std::find(targets.begin(), targets.end(), std::make_pair(p, s)) == targets.end()) {
            targets.emplace_back(p, s);
        }
    };
    if (!a.pair.empty()) {
        add(parse_pair(a.pair), parse_sense(a.sense));
    }
    if (a.which == "log-convex") {
        add(parse_pair("AG"), Sense::convex);
    }
    if (cert.granted()) {
        for (const auto &c : cert.conclusions) {
            if (c.pair) {
                add(*c.pair, c.sense);
            }
        }
    }
    return targets;
}

void cross_check(const CertifyArgs &a, const Globals &g, const FunctionSpec &spec, Certificate &cert)
{
    const auto targets = cross_check_targets(a, cert);
    if (targets.empty()) {
        cert.note += std::string(cert.note.empty() ? "" : "; ") + "no numeric check for this property";
        return;
    }
    const Subject subject = as_subject(spec);
    const GridSpec grid = grid_for(subject, a.grid, g.points);
    for (const auto &[pair, sense] : targets) {
        const auto r = verify_mn({subject, pair, sense}, grid);
        const std::string what = pair.str() + "-" + to_string(sense) + " on " + grid_text(grid);
        if (r.refuted) {
            cert.note += std::string(cert.note.empty() ? "" : "; ") + "numeric check refuted " + what + " (certificate verdict was "
                         + to_string(cert.verdict) + ")";
            cert.verdict = Verdict::refuted;
            cert.witness = r.witness;
            return;
        }
        cert.note += std::string(cert.note.empty() ? "" : "; ") + "numeric check " + (r.passed ? "passed " : "inconclusive for ")
                     + what;
    }
}

int exit_for(const std::vector<Certificate> &certs)
{
    if (std::any_of(certs.begin(), certs.end(), [](const Certificate &c) { return c.verdict == Verdict::refuted; })) {
        return exit_refuted;
    }
    return std::all_of(certs.begin(), certs.end(), [](const Certificate &c) { return c.granted(); }) ? exit_ok
                                                                                                      : exit_not_established;
}

int cmd_certify(const CertifyArgs &a, const Globals &g, std::ostream &out)
{
    const FunctionSpec spec = parse_function_spec(a.subject);
    CertifyOptions options;
    options.horizon = g.horizon;
    if (a.radius && spec.kind != FunctionKind::bessel) {
        options.radius = Param::parse(*a.radius).value();
    }
    std::vector<Certificate> certs;
    if (!a.which.empty()) {
        if (spec.kind != FunctionKind::hypergeometric) {
            throw ParseError("--which applies to 2F1(a,b;c) subjects");
        }
        certs.push_back(certify_hypergeometric(*spec.hypergeometric, parse_hypergeometric_property(a.which)));
    } else if (spec.kind == FunctionKind::bessel && a.pair.empty() && !a.mf) {
        if (!a.radius) {
            throw ParseError("bessel certificates need --R");
        }
        auto all = certify_bessel(*spec.bessel, Param::parse(*a.radius));
        if (a.part) {
            if (*a.part < 1 || *a.part > 4) {
                throw ParseError("bessel certificates have parts 1 to 4");
            }
            certs.push_back(all[static_cast<std::size_t>(*a.part - 1)]);
        } else {
            certs = std::move(all);
        }
    } else if (spec.kind == FunctionKind::generalized_hypergeometric && a.pair.empty() && !a.part && !a.mf) {
        certs.push_back(certify_pfq(*spec.generalized));
    } else {
        const auto series = as_series(spec);
        if (!series) {
            throw ParseError(spec.str() + " has no series form here; K(x) is (pi/2) 2F1(1/2,1/2;1) at x^2");
        }
        if (a.mf) {
            certs.push_back(certify_mf(*series, options));
        } else if (a.part) {
            certs.push_back(certify_series(*series, series_criterion_from_number(*a.part), options));
        } else if (!a.pair.empty()) {
            certs.push_back(certify_pair(*series, parse_pair(a.pair), parse_sense(a.sense), options));
        } else {
            throw ParseError("choose a criterion with --which, --part, --pair or --mf");
        }
    }
    if (a.cross_check) {
        for (auto &c : certs) {
            cross_check(a, g, spec, c);
        }
    }
    if (certs.size() == 1) {
        out << dump_stable(to_json(certs.front())) << '\n';
    } else {
        json arr = json::array();
        for (const auto &c : certs) {
            arr.push_back(to_json(c));
        }
        out << dump_stable(arr) << '\n';
    }
    return exit_for(certs);
}

int cmd_verify(const VerifyArgs &a, const Globals &g, std::ostream &out)
{
    const FunctionSpec spec = parse_function_spec(a.subject);
    CheckOptions options = (a.chain || a.mf || a.part) ? chain_options() : CheckOptions{};
    options.require_strict = options.require_strict || a.strict;
    options.refine_levels = a.refine;
    options.keep_rows = !g.csv.empty();

    CheckResult result;
    std::string test;
    GridSpec grid;
    if (a.part) {
        const int part = *a.part;
        const bool cosh_part = part == 1 || part == 2;
        const bool sinhc_part = part == 3 || part == 4;
        if (spec.kind != FunctionKind::named || !((spec.name == "cosh" && cosh_part) || (spec.name == "sinhc" && sinhc_part))) {
            throw ParseError("--part 1 and 2 apply to cosh, --part 3 and 4 to sinhc");
        }
        const bool needs_radius = part == 2 || part == 4;
        if (needs_radius && !a.radius) {
            throw ParseError("--part " + std::to_string(part) + " needs --R");
        }
        const double r = a.radius.value_or(0.0);
        grid = cosh_sinh_grid(part, r, g.points);
        grid.lo = a.grid.lo.value_or(grid.lo);
        grid.hi = a.grid.hi.value_or(grid.hi);
        grid.spacing = parse_spacing(a.grid.spacing);
        test = spec.name + " inequality part " + std::to_string(part) + (needs_radius ? ", R = " + format_short(r) : "");
        result = verify_cosh_sinh(part, r, grid, options);
    } else if (a.chain) {
        if (spec.kind != FunctionKind::hypergeometric) {
            throw ParseError("--chain applies to 2F1(a,b;a+b) subjects");
        }
        grid = GridSpec{a.grid.lo.value_or(0.05), a.grid.hi.value_or(0.95), g.points, parse_spacing(a.grid.spacing)};
        test = "mean chain for c = a + b";
        result = verify_hypergeometric_chain(*spec.hypergeometric, grid, options);
    } else if (a.mf) {
        const auto series = as_series(spec);
        if (!series) {
            throw ParseError("--mf needs a subject with a series form");
        }
        const double r = a.radius.value_or(series->radius());
        grid = GridSpec{a.grid.lo.value_or(0.1 * r), a.grid.hi.value_or(0.9 * r), g.points, parse_spacing(a.grid.spacing)};
        test = "two-sided inequality for m(x) = f(R - x^2/R)/f(x^2/R)";
        result = verify_mf_chain(*series, grid, options, a.radius);
    } else {
        if (a.pair.empty()) {
            throw ParseError("choose --pair, --chain, --mf or --part");
        }
        const Subject subject = as_subject(spec);
        grid = grid_for(subject, a.grid, g.points);
        const ConvexityQuery q{subject, parse_pair(a.pair), parse_sense(a.sense)};
        test = q.pair.str() + "-" + to_string(q.sense) + " (" + a.route + ")";
        if (a.route == "direct") {
            result = verify_mn(q, grid, options);
        } else if (a.route == "derivative") {
            result = verify_gencor(q, grid, options);
        } else if (a.route == "transform") {
            result = verify_transform(q, grid, options);
        } else {
            throw ParseError("route must be direct, derivative or transform");
        }
        if (!g.plot.empty()) {
            emit_plot(g.plot, subject, grid);
        }
    }
    if (!g.csv.empty()) {
        write_file(g.csv, to_csv(result.rows));
    }
    if (g.json) {
        json j;
        j["subject"] = spec.str();
        j["test"] = test;
        j["grid"] = grid_json(grid);
        const json summary = to_json(result);
        for (const auto &[k, v] : summary.items()) {
            j[k] = v;
        }
        out << dump_stable(j) << '\n';
    } else {
        out << spec.str() << ", " << test << " on " << grid_text(grid) << ": "
            << (result.passed ? "Pass" : (result.refuted ? "Refuted" : "Fail")) << " (" << result.pairs << " pairs"
            << (result.strict ? ", strict" : ", not strict") << (result.diagonal_ok ? "" : ", diagonal mismatch") << ")\n";
        if (result.witness) {
            out << (result.refuted ? "witness: " : "weakest pair: ") << witness_text(*result.witness) << '\n';
        }
    }
    if (result.passed) {
        return exit_ok;
    }
    return result.refuted ? exit_refuted : exit_not_established;
}

int cmd_scan(const ScanArgs &a, const Globals &g, std::ostream &out)
{
    if (a.kind == "elliptic") {
        const auto s = elliptic_product_scan(a.points);
        if (!g.plot.empty()) {
            std::string csv = "x,f(x)\n";
            for (std::size_t i = 1; i <= a.points; ++i) {
                const double x = static_cast<double>(i) / static_cast<double>(a.points + 1);
                const double xc2 = (1.0 - x) * (1.0 + x);
                csv += format_double(x) + "," + format_double(x * x * xc2 * elliptic_k(x) * elliptic_k(std::sqrt(xc2))) + "\n";
            }
            write_file(g.plot, csv);
        }
        if (g.json) {
            json j;
            j["scan"] = "elliptic";
            j["points"] = s.points;
            j["max"] = s.max_value;
            j["argmax"] = s.argmax;
            j["unimodal"] = s.unimodal;
            out << dump_stable(j) << '\n';
        } else {
            out << "max of x^2 x'^2 K(x) K(x') on " << s.points << " points: " << format_short(s.max_value) << " at x = "
                << format_short(s.argmax) << (s.unimodal ? " (increasing then decreasing)" : " (not unimodal)") << '\n';
        }
        return exit_ok;
    }
    if (a.kind != "sharpness") {
        throw ParseError("scan kind must be 'sharpness' or 'elliptic'");
    }
    if (a.part != 2 && a.part != 4) {
        throw ParseError("sharpness scans use --part 2 (cosh) or --part 4 (sinhc)");
    }
    std::vector<double> radii = a.radii;
    if (radii.empty()) {
        const double from = a.from.value_or(a.part == 2 ? 5.5 : 9.5);
        const double to = a.to.value_or(a.part == 2 ? 7.0 : 11.0);
        if (!(a.step > 0.0) || !(to >= from)) {
            throw ParseError("need --from <= --to and --step > 0");
        }
        const auto count = static_cast<std::size_t>(std::floor((to - from) / a.step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) {
            radii.push_back(from + a.step * static_cast<double>(i));
        }
    }
    const auto rows = sharpness_scan(a.part, radii, g.points);
    auto verdict = [](const SharpnessRow &r) { return r.passed ? "Pass" : (r.refuted ? "Refuted" : "Fail"); };
    if (!g.csv.empty()) {
        std::string csv = "R,verdict,x,y,lhs,rhs,gap\n";
        for (const auto &r : rows) {
            csv += format_double(r.radius) + "," + verdict(r);
            if (r.witness) {
                const auto &w = *r.witness;
                csv += "," + format_double(w.x) + "," + format_double(w.y) + "," + format_double(w.lhs) + "," + format_double(w.rhs)
                       + "," + format_double(w.gap);
            } else {
                csv += ",,,,,";
            }
            csv += '\n';
        }
        write_file(g.csv, csv);
    }
    if (g.json) {
        json arr = json::array();
        for (const auto &r : rows) {
            json j;
            j["R"] = r.radius;
            j["verdict"] = verdict(r);
            j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
            arr.push_back(j);
        }
        json j;
        j["scan"] = "sharpness";
        j["part"] = a.part;
        j["rows"] = arr;
        out << dump_stable(j) << '\n';
    } else {
        for (const auto &r : rows) {
            out << "R = " << format_short(r.radius) << ": " << verdict(r);
            if (r.witness) {
                out << (r.refuted ? ", witness " : ", weakest ") << witness_text(*r.witness);
            }
            out << '\n';
        }
    }
    return exit_ok;
}

int cmd_repro(const ReproArgs &a, const Globals &g, std::ostream &out, std::ostream &err)
{
    if (a.list) {
        for (const auto &c : repro_cases()) {
            out << c.id << "  " << c.description << '\n';
        }
        return exit_ok;
    }
    std::vector<const ReproCase *> selected;
    if (a.id == "all") {
        for (const auto &c : repro_cases()) {
            selected.push_back(&c);
        }
    } else if (const auto *c = find_repro_case(a.id)) {
        selected.push_back(c);
    } else {
        err << "error: unknown repro case '" << a.id << "' (use --list)\n";
        return exit_usage;
    }
    bool all_passed = true;
    json cases = json::array();
    for (const auto *c : selected) {
        const auto result = run_repro(*c);
        all_passed = all_passed && result.passed();
        if (g.json) {
            cases.push_back(to_json(result));
        } else {
            out << to_text(result);
        }
    }
    if (g.json) {
        json j;
        j["passed"] = all_passed;
        j["cases"] = cases;
        out << dump_stable(j) << '\n';
    } else {
        out << (all_passed ? "all checks passed" : "some checks failed") << '\n';
    }
    return all_passed ? exit_ok : exit_not_established;
}

void add_grid_flags(CLI::App *cmd, GridFlags &flags)
{
    cmd->add_option("--lo", flags.lo, "Lower end of the grid");
    cmd->add_option("--hi", flags.hi, "Upper end of the grid");
    cmd->add_option("--spacing", flags.spacing, "Grid spacing: log or uniform")->capture_default_str();
}

template <class F>
int guarded(std::ostream &err, F &&f)
{
    try {
        return f();
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InvalidParameter &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UndefinedSymbol &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DomainError &e) {
        err << "domain error: " << e.what() << '\n';
        return exit_domain;
    } catch (const ConvergenceError &e) {
        err << "domain error: " << e.what() << '\n';
        return exit_domain;
    } catch (const IndexedError &e) {
        err << "domain error: " << e.what() << '\n';
        return exit_domain;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Evaluate special functions, certify and verify convexity with respect to pairs of means"};
    app.name("mnconvex");
    app.set_config("--config", "", "Read option defaults from a key=value file");
    app.require_subcommand(1);

    Globals g;
    app.add_option("--tol", g.tol, "Summation tolerance for eval")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--horizon", g.horizon, "Coefficient horizon for certificates")->check(CLI::Range(2, 1000000))->capture_default_str();
    app.add_option("--grid", g.points, "Grid points per axis")->check(CLI::Range(16, 100000))->capture_default_str();
    app.add_flag("--json", g.json, "Print JSON");
    app.add_option("--csv", g.csv, "Write evaluated pairs (x,y,lhs,rhs,gap) to FILE");
    app.add_option("--emit-plot", g.plot, "Write x,f(x) columns to FILE");

    EvalArgs ea;
    auto *eval_cmd = app.add_subcommand("eval", "Evaluate a function");
    eval_cmd->add_option("function", ea.function, "Function spec, e.g. \"2F1(1/2,1/2;1;0.25)\"")->required();
    eval_cmd->add_option("--x", ea.x, "Evaluation point");
    eval_cmd->add_flag("--relative", ea.relative, "Treat --tol as relative to the value");
    eval_cmd->add_flag("--cross-check", ea.cross_check, "Also evaluate by an independent route");
    add_grid_flags(eval_cmd, ea.grid);

    CertifyArgs ca;
    auto *certify_cmd = app.add_subcommand("certify", "Apply a coefficient or parameter criterion");
    certify_cmd->add_option("subject", ca.subject, "Function spec")->required();
    certify_cmd->add_option("--pair", ca.pair, "Mean pair such as AG");
    certify_cmd->add_option("--sense", ca.sense, "convex or concave")->capture_default_str();
    certify_cmd->add_option("--which", ca.which,
                            "2F1 property: log-convex, log-concave-transformed, convex-transformed, reciprocal-concave");
    certify_cmd->add_option("--part", ca.part, "Series criterion 1-7, or Bessel part 1-4");
    certify_cmd->add_option("--R", ca.radius, "Radius R for criteria that use one");
    certify_cmd->add_flag("--mf", ca.mf, "Criterion for m(x) = f(R - x^2/R)/f(x^2/R)");
    certify_cmd->add_flag("--cross-check", ca.cross_check, "Run the direct numeric check; a violation gives Refuted");
    add_grid_flags(certify_cmd, ca.grid);

    VerifyArgs va;
    auto *verify_cmd = app.add_subcommand("verify", "Check an inequality numerically on a grid");
    verify_cmd->add_option("subject", va.subject, "Function spec")->required();
    verify_cmd->add_option("--pair", va.pair, "Mean pair such as AG");
    verify_cmd->add_option("--sense", va.sense, "convex or concave")->capture_default_str();
    verify_cmd->add_option("--route", va.route, "direct, derivative or transform")->capture_default_str();
    verify_cmd->add_flag("--chain", va.chain, "Mean chain for 2F1(a,b;a+b)");
    verify_cmd->add_flag("--mf", va.mf, "Two-sided inequality for m(x) = f(R - x^2/R)/f(x^2/R)");
    verify_cmd->add_option("--part", va.part, "cosh (1, 2) or sinhc (3, 4) inequality");
    verify_cmd->add_option("--R", va.radius, "Radius R");
    verify_cmd->add_flag("--strict", va.strict, "Fail when an off-diagonal pair is not strict");
    verify_cmd->add_option("--refine", va.refine, "Refinement levels around the weakest pair")->check(CLI::Range(0, 8));
    add_grid_flags(verify_cmd, va.grid);

    ScanArgs sa;
    auto *scan_cmd = app.add_subcommand("scan", "Sharpness and maximum scans");
    scan_cmd->add_option("kind", sa.kind, "sharpness or elliptic")->required();
    scan_cmd->add_option("--part", sa.part, "2 (cosh) or 4 (sinhc)")->capture_default_str();
    scan_cmd->add_option("--radii", sa.radii, "Explicit radii")->delimiter(',');
    scan_cmd->add_option("--from", sa.from, "First radius");
    scan_cmd->add_option("--to", sa.to, "Last radius");
    scan_cmd->add_option("--step", sa.step, "Radius step")->capture_default_str();
    scan_cmd->add_option("--points", sa.points, "Points for the elliptic scan")->capture_default_str();

    ReproArgs ra;
    auto *repro_cmd = app.add_subcommand("repro", "Run reproduction cases");
    repro_cmd->add_option("case", ra.id, "Case id or 'all'");
    repro_cmd->add_flag("--list", ra.list, "List case ids");

    for (auto *cmd : {eval_cmd, certify_cmd, verify_cmd, scan_cmd, repro_cmd}) {
        cmd->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        std::ostringstream help_out;
        std::ostringstream help_err;
        const int code = app.exit(e, help_out, help_err);
        out << help_out.str();
        err << help_err.str();
        return code == 0 ? exit_ok : exit_usage;
    }

    if (repro_cmd->parsed() && ra.id.empty() && !ra.list) {
        err << "error: repro needs a case id, 'all' or --list\n";
        return exit_usage;
    }
    return guarded(err, [&] {
        if (eval_cmd->parsed()) {
            return cmd_eval(ea, g, out);
        }
        if (certify_cmd->parsed()) {
            return cmd_certify(ca, g, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(va, g, out);
        }
        if (scan_cmd->parsed()) {
            return cmd_scan(sa, g, out);
        }
        return cmd_repro(ra, g, out, err);
    });
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

} // namespace mnconvex::cli
