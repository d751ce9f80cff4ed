#include <CLI11.hpp>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "confract/cli.hpp"
#include "confract/expression.hpp"
#include "confract/fd_oracle.hpp"
#include "confract/field_io.hpp"
#include "confract/inverse.hpp"

namespace confract::cli {

namespace {

struct RunConfig {
    double alpha = 1.0;
    double kappa = 1.0;
    double length = 1.0;
    double boundary_level = 1.0;
    std::string f;
    std::string g;
    std::string rational;
    std::string s = "1";
    std::string t = "1";
    std::string x;
    int x_nodes = 11;
    double x_max = 1.0;
    int t_steps = 400;
    int quad_nodes = 512;
    int series_terms = 200;
    bool fixed_terms = false;
    double region = 0.0;
    double lambda = 1.0;
    int power = 1;
    std::string problem;
    std::string method;
    std::string route = "similarity";
    std::string mapping = "tau";
    std::string suite = "all";
    std::uint64_t seed = 42;
    double tol_scale = 1.0;
    std::string out;
    std::string format = "csv";
    std::string from_csv;
};

void configure_logging() {
    static bool installed = false;
    if (!installed) {
        auto logger = std::make_shared<spdlog::logger>("confract", std::make_shared<spdlog::sinks::stderr_sink_st>());
        logger->set_pattern("[confract] [%l] %v");
        spdlog::set_default_logger(logger);
        installed = true;
    }
    const char* env = std::getenv("CONFRACT_LOG");
    const std::string level = env ? env : "";
    if (level == "quiet") spdlog::set_level(spdlog::level::off);
    else if (level == "info") spdlog::set_level(spdlog::level::info);
    else if (level == "debug") spdlog::set_level(spdlog::level::debug);
    else {
        spdlog::set_level(spdlog::level::warn);
        if (!level.empty()) spdlog::warn("CONFRACT_LOG='{}' not recognised (quiet, info, debug)", level);
    }
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size() || text.empty())
        throw ParseError("'" + text + "' is not a number", 1, {"number"});
    return v;
}

/// Adds the flag name and a caret under the error position.
[[noreturn]] void rethrow_located(const ParseError& e, const std::string& flag, const std::string& text) {
    std::ostringstream msg;
    msg << flag << ": " << e.what() << "\n  " << text << "\n  " << std::string(e.offset() - 1, ' ') << '^';
    throw ParseError(msg.str(), e.offset(), e.expected());
}

TimeFunction time_expression(const std::string& flag, const std::string& text, FractionalOrder alpha) {
    if (text.empty()) throw DomainError(flag + " is required");
    try {
        return parse_time_function(text, alpha);
    } catch (const ParseError& e) {
        rethrow_located(e, flag, text);
    }
}

ExpressionAst frequency_expression(const std::string& flag, const std::string& text) {
    if (text.empty()) throw DomainError(flag + " is required");
    try {
        return parse_expression(text, ExpressionDomain::frequency);
    } catch (const ParseError& e) {
        rethrow_located(e, flag, text);
    }
}

QuadratureSpec quadrature(const RunConfig& cfg) {
    if (cfg.quad_nodes < 16 || cfg.quad_nodes > 65536) throw DomainError("--quad-nodes must lie in [16, 65536]");
    QuadratureSpec q;
    q.n_nodes = cfg.quad_nodes;
    return q;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
    if (n > 1) v.back() = b;
    return v;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw DomainError("cannot open '" + cfg.out + "' for writing");
    file << text;
    if (!file) throw DomainError("failed writing '" + cfg.out + "'");
}

std::string render(const RunConfig& cfg, const Table& table) {
    std::ostringstream s;
    if (cfg.format == "json") s << table_to_json(table).dump(2) << '\n';
    else write_csv(s, table);
    return s.str();
}

std::vector<std::pair<std::string, std::string>> base_meta(const std::string& command, double alpha) {
    return {{"schema", kSchemaVersion}, {"command", command}, {"alpha", format_number(alpha)}};
}

int cmd_transform(const RunConfig& cfg, std::ostream& out) {
    const FractionalOrder alpha(cfg.alpha);
    const TimeFunction f = time_expression("--f", cfg.f, alpha);
    const QuadratureSpec quad = quadrature(cfg);
    Table table;
    table.meta = base_meta("transform", alpha);
    table.meta.emplace_back("f", cfg.f);
    table.meta.emplace_back("quad_nodes", std::to_string(cfg.quad_nodes));
    table.columns = {"s", "re", "im"};
    for (double s : parse_grid(cfg.s)) {
        const ForwardResult r = forward_transform_detailed(f, alpha, s, quad);
        spdlog::debug("transform s = {} truncated at u = {}", s, r.u_max);
        table.rows.push_back({s, r.value.real(), r.value.imag()});
    }
    emit(cfg, render(cfg, table), out);
    return kExitOk;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out) {
    const FractionalOrder alpha(cfg.alpha);
    const ExpressionAst ast = frequency_expression("--rational", cfg.rational);
    const std::string method = cfg.method.empty() ? "residue" : cfg.method;
    const std::vector<double> ts = parse_grid(cfg.t);

    Table table;
    table.meta = base_meta("invert", alpha);
    table.meta.emplace_back("F", cfg.rational);
    table.meta.emplace_back("method", method);
    table.columns = {"t", "f"};
    if (method == "residue") {
        const PoleSet poles = partial_fractions(to_rational(ast));
        for (double t : ts) table.rows.push_back({t, invert_residues(poles, alpha, t)});
    } else {
        std::optional<FrequencyExpression> F;
        try {
            F = to_rational(ast);
        } catch (const DomainError&) {
            if (method != "bromwich") throw;
            auto shared = std::make_shared<const ExpressionAst>(ast);
            F = FrequencyExpression::blackbox([shared](Complex s) { return evaluate_frequency(*shared, s); },
                                              cfg.region);
        }
        for (double t : ts) {
            const double v = method == "bromwich" ? invert_bromwich(*F, alpha, t)
                                                  : invert_via_classical(*F, alpha, t, InversionMethod::pair_table);
            table.rows.push_back({t, v});
        }
    }
    emit(cfg, render(cfg, table), out);
    return kExitOk;
}

int cmd_convolve(const RunConfig& cfg, std::ostream& out) {
    const FractionalOrder alpha(cfg.alpha);
    const TimeFunction f = time_expression("--f", cfg.f, alpha);
    const TimeFunction g = time_expression("--g", cfg.g, alpha);
    const QuadratureSpec quad = quadrature(cfg);
    Table table;
    table.meta = base_meta("convolve", alpha);
    table.meta.emplace_back("f", cfg.f);
    table.meta.emplace_back("g", cfg.g);
    table.meta.emplace_back("quad_nodes", std::to_string(cfg.quad_nodes));
    table.columns = {"t", "value"};
    for (double t : parse_grid(cfg.t)) table.rows.push_back({t, conv_alpha(f, g, alpha, t, quad)});
    emit(cfg, render(cfg, table), out);
    return kExitOk;
}

int cmd_solve(const RunConfig& cfg, bool t_steps_given, std::ostream& out) {
    DiffusionProblem p;
    p.kind = parse_problem_kind(cfg.problem);
    p.alpha = FractionalOrder(cfg.alpha);
    p.kappa = cfg.kappa;
    p.a_len = cfg.length;
    p.U = cfg.boundary_level;
    if (p.kind == ProblemKind::semi_infinite) p.boundary_f = time_expression("--f", cfg.f, p.alpha);
    p.validate();

    if (cfg.x_nodes < 2) throw DomainError("--x-nodes must be at least 2");
    const double x_hi = std::isfinite(p.x_upper()) ? p.x_upper() : cfg.x_max;
    const std::vector<double> xs = cfg.x.empty() ? linspace(0.0, x_hi, cfg.x_nodes) : parse_grid(cfg.x);
    const std::vector<double> ts = parse_grid(cfg.t);
    if (cfg.series_terms < 1) throw DomainError("--series-terms must be positive");
    SeriesSpec series;
    series.n_terms = cfg.series_terms;
    series.fixed_terms = cfg.fixed_terms;
    const std::string method = cfg.method.empty() ? "closed" : cfg.method;

    SpaceTimeField field;
    if (method == "closed" && p.kind == ProblemKind::semi_infinite && cfg.route != "similarity") {
        const SemiInfiniteRoute route =
            cfg.route == "checked" ? SemiInfiniteRoute::checked : SemiInfiniteRoute::convolution;
        field = evaluate_field(p, xs, ts, series, quadrature(cfg));
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < ts.size(); ++j)
                field.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    solve_semi_infinite(xs[i], ts[j], p.alpha, p.kappa, *p.boundary_f, route, quadrature(cfg));
    } else if (method == "closed") {
        field = evaluate_field(p, xs, ts, series, quadrature(cfg));
        if (p.kind == ProblemKind::finite_mixed && !cfg.fixed_terms) {
            double t_min = 0.0;
            for (double t : ts)
                if (t > 0.0) {
                    t_min = t;
                    break;
                }
            if (t_min > 0.0) {
                const SeriesResult r = solve_finite_mixed_detailed(0.0, t_min, p.alpha, p.kappa, p.a_len, p.U, series);
                if (r.truncated)
                    spdlog::warn("series stopped at {} terms before the tail fell below {:g} at t = {:g}",
                                 r.terms_used, series.tail_tol, t_min);
            }
        }
    } else if (method == "fd") {
        if (!cfg.x.empty()) throw DomainError("finite differences use a uniform grid; give --x-nodes, not --x");
        if (cfg.x_nodes < 3) throw DomainError("finite differences need --x-nodes >= 3");
        FDGrid grid;
        grid.x_nodes = cfg.x_nodes;
        grid.t_end = ts.back();
        grid.output_times = ts;
        grid.t_steps = cfg.t_steps;
        grid.mapping = cfg.mapping == "graded" ? TimeMapping::direct_graded : TimeMapping::tau_substituted;
        const double tau_end = p.alpha.to_u(grid.t_end);
        const double dx = x_hi / (cfg.x_nodes - 1);
        FDReport report;
        if (p.kind == ProblemKind::semi_infinite) {
            throw DomainError("no finite-difference solver for the semi-infinite problem");
        } else if (p.kind == ProblemKind::first_order) {
            if (!t_steps_given) grid.t_steps = std::max(grid.t_steps, static_cast<int>(std::ceil(x_hi * tau_end / dx)));
            report = fd_solve_first_order(p.alpha, x_hi, grid);
        } else {
            if (grid.mapping == TimeMapping::direct_graded && !t_steps_given)
                grid.t_steps = static_cast<int>(std::ceil(p.kappa * tau_end / (0.5 * dx * dx) * 1.05));
            report = fd_solve_diffusion(p, grid);
        }
        spdlog::info("finite differences: {} steps", report.step_times.size() - 1);
        field = report.field;
        field.problem = p;
    } else {
        throw DomainError("unknown --method '" + method + "' (closed, fd)");
    }

    std::ostringstream s;
    if (cfg.format == "json") {
        nlohmann::json j = field_to_json(field);
        j["command"] = "solve";
        j["method"] = method;
        if (p.kind == ProblemKind::semi_infinite) j["route"] = cfg.route;
        s << j.dump(2) << '\n';
    } else {
        Table table = field_to_table(field);
        table.meta.insert(table.meta.begin() + 1, {"command", "solve"});
        table.meta.emplace_back("method", method);
        if (p.kind == ProblemKind::semi_infinite) table.meta.emplace_back("route", cfg.route);
        write_csv(s, table);
    }
    emit(cfg, s.str(), out);
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::string> names;
    if (cfg.suite == "all") names = suite_names();
    else {
        const auto& known = suite_names();
        if (std::find(known.begin(), known.end(), cfg.suite) == known.end()) {
            std::string list;
            for (const auto& n : known) list += " " + n;
            throw DomainError("unknown suite '" + cfg.suite + "' (known:" + list + ", all)");
        }
        names = {cfg.suite};
    }
    bool pass = true;
    nlohmann::json report;
    if (names.size() == 1) {
        const auto checks = run_suite(names[0], cfg.seed, cfg.tol_scale);
        report = suite_report(names[0], cfg.seed, checks);
        pass = report["pass"].get<bool>();
    } else {
        report = {{"seed", cfg.seed}, {"suites", nlohmann::json::array()}};
        for (const auto& n : names) {
            nlohmann::json one = suite_report(n, cfg.seed, run_suite(n, cfg.seed, cfg.tol_scale));
            pass = pass && one["pass"].get<bool>();
            report["suites"].push_back(std::move(one));
        }
        report["pass"] = pass;
    }
    emit(cfg, report.dump(2) + "\n", out);
    return pass ? kExitOk : kExitVerification;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
    const FractionalOrder alpha(cfg.alpha);
    const std::pair<PairFamily, double> rows[] = {{PairFamily::constant, 0.0},
                                                  {PairFamily::exp_eigen, cfg.lambda},
                                                  {PairFamily::sin_eigen, cfg.lambda},
                                                  {PairFamily::cos_eigen, cfg.lambda},
                                                  {PairFamily::power_alpha, static_cast<double>(cfg.power)}};
    std::ostringstream s;
    if (cfg.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& [family, param] : rows) {
            const PairTableEntry e = pair_lookup(family, param, alpha);
            j.push_back({{"family", to_string(family)}, {"time", e.time_text}, {"frequency", e.freq_text}});
        }
        s << nlohmann::json{{"alpha", alpha.value()}, {"u", "t^alpha/alpha"}, {"pairs", j}}.dump(2) << '\n';
    } else {
        s << "# alpha: " << format_number(alpha) << "\n# u = t^alpha/alpha\n";
        for (const auto& [family, param] : rows) {
            const PairTableEntry e = pair_lookup(family, param, alpha);
            s << to_string(family) << "\t" << e.time_text << "\t<->\t" << e.freq_text << '\n';
        }
    }
    emit(cfg, s.str(), out);
    return kExitOk;
}

int cmd_convert(const RunConfig& cfg, std::ostream& out) {
    std::ifstream file(cfg.from_csv, std::ios::binary);
    if (!file) throw DomainError("cannot open '" + cfg.from_csv + "'");
    Table table = read_csv(file);
    if (table.meta_value("kind") == "field") {
        // Rebuild the field so the grid structure is validated.
        const SpaceTimeField field = table_to_field(table);
        Table rebuilt = field_to_table(field);
        std::vector<std::pair<std::string, std::string>> extra;
        for (const auto& kv : table.meta)
            if (rebuilt.meta_value(kv.first).empty()) extra.push_back(kv);
        table.rows = rebuilt.rows;
        if (cfg.format == "json") {
            nlohmann::json j = field_to_json(field);
            for (const auto& [k, v] : extra) j[k] = v;
            emit(cfg, j.dump(2) + "\n", out);
            return kExitOk;
        }
    }
    emit(cfg, render(cfg, table), out);
    return kExitOk;
}

}  // namespace

int exit_code(ErrorClass cls) {
    switch (cls) {
        case ErrorClass::parse: return kExitParse;
        case ErrorClass::domain: return kExitDomain;
        case ErrorClass::accuracy: return kExitAccuracy;
        case ErrorClass::verification: return kExitVerification;
    }
    return kExitInternal;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (text.empty() || parts.empty() || text.back() == ',')
        throw ParseError("grid '" + text + "' is empty or ends with ','", text.size() + 1, {"number"});
    std::vector<double> values;
    for (const auto& p : parts) values.push_back(parse_double(p));
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("grid '" + text + "' has a non-finite entry");
    if (values.size() == 3 && values[2] >= 2.0 && values[2] == std::floor(values[2]) && values[2] <= 1e6 &&
        values[1] > values[0])
        return linspace(values[0], values[1], static_cast<int>(values[2]));
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1])) throw DomainError("grid '" + text + "' must be strictly increasing");
    return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    configure_logging();
    RunConfig cfg;
    CLI::App app{"Conformable fractional Laplace transforms and fractional diffusion solutions", "confract"};
    app.require_subcommand(1);

    auto add_alpha = [&](CLI::App* sub) { sub->add_option("--alpha", cfg.alpha, "fractional order in (0, 1]"); };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* transform = app.add_subcommand("transform", "forward transform of --f over an s grid");
    add_alpha(transform);
    transform->add_option("--f", cfg.f, "time expression in t and u")->required();
    transform->add_option("--s", cfg.s, "real s values: v, a,b,n or a list");
    transform->add_option("--quad-nodes", cfg.quad_nodes, "quadrature nodes");
    add_output(transform);

    CLI::App* invert = app.add_subcommand("invert", "inverse transform of a function of s");
    add_alpha(invert);
    invert->add_option("--rational,--F", cfg.rational, "frequency expression in s")->required();
    invert->add_option("--t", cfg.t, "t values");
    invert->add_option("--method", cfg.method, "residue, bromwich or pair-table")
        ->check(CLI::IsMember({"residue", "bromwich", "pair-table"}));
    invert->add_option("--region", cfg.region, "abscissa of convergence for non-rational input (bromwich)");
    add_output(invert);

    CLI::App* convolve = app.add_subcommand("convolve", "fractional convolution of --f and --g");
    add_alpha(convolve);
    convolve->add_option("--f", cfg.f, "first time expression")->required();
    convolve->add_option("--g", cfg.g, "second time expression")->required();
    convolve->add_option("--t", cfg.t, "t values");
    convolve->add_option("--quad-nodes", cfg.quad_nodes, "quadrature nodes");
    add_output(convolve);

    CLI::App* solve = app.add_subcommand("solve", "closed-form or finite-difference solution of a model problem");
    add_alpha(solve);
    solve->add_option("--problem", cfg.problem, "first-order, semi-infinite, finite-mixed or dirichlet-sine")
        ->required();
    solve->add_option("--kappa", cfg.kappa, "diffusivity");
    solve->add_option("--length", cfg.length, "domain length (finite-mixed)");
    solve->add_option("--boundary-level", cfg.boundary_level, "boundary value U (finite-mixed)");
    solve->add_option("--f", cfg.f, "boundary function f(t) (semi-infinite)");
    solve->add_option("--x", cfg.x, "x values");
    solve->add_option("--x-nodes", cfg.x_nodes, "evenly spaced x nodes when --x is absent");
    solve->add_option("--x-max", cfg.x_max, "right end of the x grid on half-line problems");
    solve->add_option("--t", cfg.t, "t values");
    solve->add_option("--route", cfg.route, "similarity, convolution or checked (semi-infinite)")
        ->check(CLI::IsMember({"similarity", "convolution", "checked"}));
    solve->add_option("--method", cfg.method, "closed or fd")->check(CLI::IsMember({"closed", "fd"}));
    CLI::Option* t_steps_opt = solve->add_option("--t-steps", cfg.t_steps, "finite-difference time steps");
    solve->add_option("--time-mapping", cfg.mapping, "tau or graded (finite differences)")
        ->check(CLI::IsMember({"tau", "graded"}));
    solve->add_option("--series-terms", cfg.series_terms, "series term cap");
    solve->add_flag("--fixed-terms", cfg.fixed_terms, "sum exactly --series-terms terms");
    solve->add_option("--quad-nodes", cfg.quad_nodes, "quadrature nodes");
    add_output(solve);

    CLI::App* verify = app.add_subcommand("verify", "run an invariant suite and print a JSON report");
    verify->add_option("--suite", cfg.suite, "calculus, transform, inverse, convolution, diffusion, oracle or all");
    verify->add_option("--seed", cfg.seed, "seed for randomized instances");
    verify->add_option("--tol-scale", cfg.tol_scale, "multiply every tolerance by this factor");
    verify->add_option("--out", cfg.out, "output file (default stdout)");

    CLI::App* table = app.add_subcommand("table", "print the closed-form pair table");
    add_alpha(table);
    table->add_option("--lambda", cfg.lambda, "eigenvalue for the exp, sin and cos rows");
    table->add_option("--k", cfg.power, "power for the u^k row");
    add_output(table);

    CLI::App* convert = app.add_subcommand("convert", "re-read a CSV written by this tool and write it again");
    convert->add_option("--from-csv", cfg.from_csv, "input CSV")->required();
    add_output(convert);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }

    try {
        if (*transform) return cmd_transform(cfg, out);
        if (*invert) return cmd_invert(cfg, out);
        if (*convolve) return cmd_convolve(cfg, out);
        if (*solve) return cmd_solve(cfg, t_steps_opt->count() > 0, out);
        if (*verify) return cmd_verify(cfg, out);
        if (*table) return cmd_table(cfg, out);
        if (*convert) return cmd_convert(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.error_class());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace confract::cli
