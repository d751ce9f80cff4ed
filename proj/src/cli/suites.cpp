#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "confract/cli.hpp"
#include "confract/fd_oracle.hpp"
#include "confract/inverse.hpp"

namespace confract::cli {

namespace {

constexpr double kPi = std::numbers::pi;

enum class Measure { relative, absolute };

struct Suite {
    std::vector<CheckRecord> checks;
    std::mt19937_64 rng;
    double tol_scale;

    Suite(std::uint64_t seed, double scale) : rng(seed), tol_scale(scale) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

    void add(std::string name, Complex lhs, Complex rhs, double tol, Measure m = Measure::relative,
             double scale = 0.0) {
        CheckRecord r;
        r.name = std::move(name);
        r.lhs = lhs;
        r.rhs = rhs;
        r.abs_err = std::abs(lhs - rhs);
        const double denom = std::max({std::abs(lhs), std::abs(rhs), scale});
        r.rel_err = denom > 0.0 ? r.abs_err / denom : 0.0;
        r.tolerance = tol * tol_scale;
        r.pass = (m == Measure::relative ? r.rel_err : r.abs_err) <= r.tolerance;
        checks.push_back(std::move(r));
    }

    void add(const ComparisonReport& report, const std::string& name, double tol) {
        CheckRecord r;
        r.name = name;
        r.lhs = report.lhs;
        r.rhs = report.rhs;
        r.abs_err = report.abs_err;
        r.rel_err = report.rel_err;
        r.tolerance = tol * tol_scale;
        r.pass = report.agrees(r.tolerance);
        checks.push_back(std::move(r));
    }

    void add_flag(std::string name, bool value, bool expected) {
        add(std::move(name), value ? 1.0 : 0.0, expected ? 1.0 : 0.0, 0.0, Measure::absolute);
    }
};

std::string indexed(const std::string& base, int i) { return base + "[" + std::to_string(i) + "]"; }

/// Decaying test functions written in u, each with a growth certificate.
TimeFunction random_decaying(Suite& suite, FractionalOrder alpha, bool vanish_at_zero = false) {
    const int kind = static_cast<int>(suite.uniform(0.0, 3.0));
    const double a = suite.uniform(0.5, 2.0);
    const double b = suite.uniform(0.5, 3.0);
    if (vanish_at_zero || kind == 1) {
        // u e^(-a u) <= (2 / (e a)) e^(-a u / 2)
        return TimeFunction([=](double t) { const double u = alpha.to_u(t); return u * std::exp(-a * u); },
                            std::nullopt, GrowthBound{2.0 / (std::exp(1.0) * a), -0.5 * a});
    }
    if (kind == 0)
        return TimeFunction([=](double t) { return std::exp(-a * alpha.to_u(t)); }, std::nullopt, GrowthBound{1.0, -a});
    return TimeFunction([=](double t) { const double u = alpha.to_u(t); return std::cos(b * u) * std::exp(-a * u); },
                        std::nullopt, GrowthBound{1.0, -a});
}

void calculus_suite(Suite& s) {
    for (int i = 0; i < 5; ++i) {
        const FractionalOrder alpha(s.uniform(0.3, 1.0));
        const double beta = s.uniform(0.5, 2.5);
        const double t = s.uniform(0.2, 3.0);
        const TimeFunction f([beta](double x) { return std::pow(x, beta); });
        s.add(indexed("derivative_power", i), conformable_derivative(f, alpha, t),
              beta * std::pow(t, beta - alpha.value()), 1e-6);
    }
    for (int i = 0; i < 5; ++i) {
        const FractionalOrder beta(s.uniform(0.3, 1.0));
        const double k = s.uniform(0.0, 2.0);
        const double t = s.uniform(0.2, 3.0);
        const TimeFunction f([k](double x) { return std::pow(x, k); });
        s.add(indexed("integral_power", i), conformable_integral(f, beta, t),
              std::pow(t, k + beta.value()) / (k + beta.value()), 1e-8);
    }
    for (int i = 0; i < 3; ++i) {
        const FractionalOrder alpha(s.uniform(0.3, 1.0));
        const TimeFunction f([alpha](double x) { return std::pow(x, alpha.value()); });
        s.add(indexed("derivative_at_zero", i), conformable_derivative(f, alpha, 0.0), alpha.value(), 1e-6);
    }
    for (int i = 0; i < 3; ++i) {
        const FractionalOrder alpha(s.uniform(0.3, 1.0));
        const double t = s.uniform(0.0, 5.0);
        s.add(indexed("u_round_trip", i), alpha.from_u(alpha.to_u(t)), t, 1e-13);
    }
}

void transform_suite(Suite& s) {
    const PairFamily families[] = {PairFamily::constant, PairFamily::exp_eigen, PairFamily::sin_eigen,
                                   PairFamily::cos_eigen, PairFamily::power_alpha};
    int i = 0;
    for (PairFamily fam : families) {
        for (int rep = 0; rep < 2; ++rep, ++i) {
            const FractionalOrder alpha(s.uniform(0.3, 1.0));
            const double p = fam == PairFamily::power_alpha ? std::floor(s.uniform(1.0, 3.0)) : s.uniform(-2.0, 1.5);
            const double sv = std::max(p, 0.0) + s.uniform(1.0, 8.0);
            const PairTableEntry e = pair_lookup(fam, p, alpha);
            s.add(indexed("pair_" + to_string(fam), rep), forward_transform(e.time_form, alpha, sv), e.freq_form(sv),
                  1e-6);
        }
    }

    const PropertyId props[] = {PropertyId::linearity,    PropertyId::scaling,     PropertyId::first_shift,
                                PropertyId::second_shift, PropertyId::mul_t_alpha, PropertyId::div_t_alpha};
    for (PropertyId id : props) {
        for (int rep = 0; rep < 2; ++rep) {
            const FractionalOrder alpha(s.uniform(0.3, 1.0));
            const Complex sv = s.uniform(0.5, 4.0);
            PropertyCheck pc;
            pc.id = id;
            const TimeFunction f = random_decaying(s, alpha, id == PropertyId::div_t_alpha);
            pc.other = random_decaying(s, alpha);
            pc.c1 = s.uniform(-2.0, 2.0);
            pc.c2 = s.uniform(-2.0, 2.0);
            pc.a = id == PropertyId::first_shift ? s.uniform(-0.4, 0.4) : s.uniform(0.3, 2.0);
            s.add(check_property(pc, f, alpha, sv), indexed(to_string(id), rep), 1e-6);
        }
    }

    for (int rep = 0; rep < 2; ++rep) {
        const FractionalOrder alpha(s.uniform(0.3, 1.0));
        const double lambda = s.uniform(-2.0, 0.5);
        const Complex sv = std::max(lambda, 0.0) + s.uniform(1.0, 4.0);
        const PairTableEntry e = pair_lookup(PairFamily::exp_eigen, lambda, alpha);
        s.add(derivative_transform_check(e.time_form, alpha, alpha, sv), indexed("derivative_rule_equal_orders", rep),
              1e-6);
    }
    {
        const FractionalOrder alpha(s.uniform(0.5, 1.0));
        const FractionalOrder beta(s.uniform(0.5, 1.0));
        const TimeFunction f([](double t) { return t * t; });
        s.add(derivative_transform_check(f, alpha, beta, 2.0), "derivative_rule_general", 1e-5);
        s.add(integral_transform_check(f, alpha, beta, 2.0), "integral_rule_general", 1e-5);
    }

    const FractionalOrder half(0.5);
    for (double beta : {0.4, 0.6}) {
        const TimeFunction f([beta](double t) { return std::exp(std::pow(t, beta)); });
        const ExistenceProbe p = probe_existence(f, half, 1.0, 200.0);
        s.add_flag("existence_beta_" + std::to_string(beta).substr(0, 3), p.converges, beta <= 0.5);
    }
}

struct Corpus {
    const char* name;
    FrequencyExpression F;
    std::function<double(double)> inverse;  // in u
};

std::vector<Corpus> inverse_corpus() {
    return {
        {"1/(s+1)", FrequencyExpression::rational({1.0}, {1.0, 1.0}), [](double u) { return std::exp(-u); }},
        {"1/(s(s+1))", FrequencyExpression::rational({1.0}, {0.0, 1.0, 1.0}),
         [](double u) { return 1.0 - std::exp(-u); }},
        {"1/(s^2+1)", FrequencyExpression::rational({1.0}, {1.0, 0.0, 1.0}), [](double u) { return std::sin(u); }},
        {"s/(s^2+4)", FrequencyExpression::rational({0.0, 1.0}, {4.0, 0.0, 1.0}),
         [](double u) { return std::cos(2.0 * u); }},
        {"1/(s+2)^2", FrequencyExpression::rational({1.0}, {4.0, 4.0, 1.0}),
         [](double u) { return u * std::exp(-2.0 * u); }},
    };
}

void inverse_suite(Suite& s) {
    for (const Corpus& c : inverse_corpus()) {
        const PoleSet poles = partial_fractions(c.F);
        for (int rep = 0; rep < 2; ++rep) {
            const FractionalOrder alpha(s.uniform(0.3, 1.0));
            const double t = s.uniform(0.2, 3.0);
            const double exact = c.inverse(alpha.to_u(t));
            const double residue = invert_residues(poles, alpha, t);
            s.add(indexed(std::string("residue ") + c.name, rep), residue, exact, 1e-9, Measure::absolute);
            s.add(indexed(std::string("bromwich ") + c.name, rep), invert_bromwich(c.F, alpha, t), exact, 1e-6,
                  Measure::absolute);
        }
    }
    const FrequencyExpression first = FrequencyExpression::rational({1.0}, {1.0, 1.0});
    const FrequencyExpression second = FrequencyExpression::rational({1.0}, {0.0, 1.0, 1.0});
    s.add("initial_value 1/(s+1)", initial_value(first), 1.0, 1e-9, Measure::absolute);
    s.add("final_value 1/(s+1)", final_value(first), 0.0, 1e-9, Measure::absolute);
    s.add("initial_value 1/(s(s+1))", initial_value(second), 0.0, 1e-9, Measure::absolute);
    s.add("final_value 1/(s(s+1))", final_value(second), 1.0, 1e-9, Measure::absolute);
}

void convolution_suite(Suite& s) {
    const ConvolutionLaw laws[] = {ConvolutionLaw::commutativity, ConvolutionLaw::associativity,
                                   ConvolutionLaw::distributivity, ConvolutionLaw::scalar};
    for (ConvolutionLaw law : laws) {
        for (int rep = 0; rep < 3; ++rep) {
            const FractionalOrder alpha(s.uniform(0.3, 1.0));
            const TimeFunction f = random_decaying(s, alpha);
            const TimeFunction g = random_decaying(s, alpha);
            const TimeFunction h = random_decaying(s, alpha);
            const double c = s.uniform(-2.0, 2.0);
            const double t = s.uniform(0.3, 3.0);
            const double tol = law == ConvolutionLaw::associativity ? 1e-5 : 1e-7;
            s.add(check_convolution_algebra(law, f, g, h, c, alpha, t), indexed(to_string(law), rep), tol);
        }
    }
    for (int rep = 0; rep < 3; ++rep) {
        const FractionalOrder alpha(s.uniform(0.3, 1.0));
        const TimeFunction f = random_decaying(s, alpha);
        const TimeFunction g = random_decaying(s, alpha);
        s.add(check_convolution_theorem(f, g, alpha, s.uniform(0.5, 4.0)), indexed("convolution_theorem", rep), 1e-5);
    }
    for (int rep = 0; rep < 3; ++rep) {
        const FractionalOrder alpha(s.uniform(0.3, 1.0));
        const TimeFunction f = random_decaying(s, alpha);
        const TimeFunction g = random_decaying(s, alpha);
        const double n = rep == 0 ? 1.0 : s.uniform(1.0, 3.0);
        const InequalityReport r = check_young(f, g, n, alpha);
        CheckRecord rec;
        rec.name = indexed("young", rep);
        rec.lhs = r.lhs;
        rec.rhs = r.rhs;
        rec.abs_err = std::max(0.0, r.lhs - r.rhs);
        rec.rel_err = r.rhs > 0.0 ? rec.abs_err / r.rhs : 0.0;
        rec.tolerance = 1e-6 * s.tol_scale;
        rec.pass = r.lhs <= r.rhs * (1.0 + rec.tolerance);
        s.checks.push_back(rec);
    }
}

void diffusion_suite(Suite& s) {
    for (int rep = 0; rep < 3; ++rep) {
        const FractionalOrder alpha(s.uniform(0.3, 1.0));
        const double kappa = s.uniform(0.5, 2.0);
        const double x = s.uniform(0.05, 2.0);
        const double t = s.uniform(0.2, 3.0);
        const TimeFunction one = TimeFunction::constant(1.0);
        const TimeFunction decay([alpha](double tt) { return std::exp(-alpha.to_u(tt)); });
        for (const auto& [label, f] : {std::pair{"1", one}, std::pair{"exp(-u)", decay}}) {
            const double a = solve_semi_infinite(x, t, alpha, kappa, f, SemiInfiniteRoute::convolution);
            const double b = solve_semi_infinite(x, t, alpha, kappa, f, SemiInfiniteRoute::similarity);
            s.add(indexed(std::string("semi_infinite_routes f=") + label, rep), a, b, 1e-4);
        }
        const double erfc_ref = std::erfc(x / (2.0 * std::sqrt(kappa * alpha.to_u(t))));
        s.add(indexed("semi_infinite_erfc", rep),
              solve_semi_infinite(x, t, alpha, kappa, one, SemiInfiniteRoute::similarity), erfc_ref, 1e-6,
              Measure::absolute);
    }
    {
        const FractionalOrder alpha(0.6);
        const TimeFunction decay([alpha](double tt) { return std::exp(-alpha.to_u(tt)); });
        s.add("semi_infinite_boundary_x", solve_semi_infinite(1e-7, 1.0, alpha, 1.0, decay, SemiInfiniteRoute::similarity),
              decay(1.0), 1e-4, Measure::absolute);
        s.add("semi_infinite_initial_t", solve_semi_infinite(0.5, 1e-6, alpha, 1.0, decay, SemiInfiniteRoute::similarity),
              0.0, 1e-4, Measure::absolute);
    }
    for (int rep = 0; rep < 2; ++rep) {
        const FractionalOrder alpha(s.uniform(0.3, 1.0));
        const double U = s.uniform(0.5, 3.0);
        const double t = s.uniform(0.01, 2.0);
        s.add(indexed("finite_mixed_boundary", rep), solve_finite_mixed(0.0, t, alpha, 1.0, 1.0, U), U, 0.0,
              Measure::absolute);
    }
    for (double a : {0.4, 0.7}) {
        const FractionalOrder alpha(a);
        const FractionalOrder one(1.0);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 1; j <= 5; ++j) {
                const double x = kPi * (i + 0.5) / 5.0, t = 0.4 * j;
                worst = std::max(worst,
                                 std::abs(solve_dirichlet_sine(x, t, alpha) - solve_dirichlet_sine(x, alpha.to_u(t), one)));
            }
        s.add("alpha_collapse_sine_" + std::to_string(a).substr(0, 3), worst, 0.0, 1e-12, Measure::absolute);
    }
    {
        const ProbeGrid probes{{0.3, 0.8, 1.5}, {0.3, 1.0, 2.0}};
        DiffusionProblem p;
        p.kind = ProblemKind::first_order;
        p.alpha = FractionalOrder(0.6);
        const double r1 = residual_check([&](double x, double t) { return solve_first_order(x, t, p.alpha); }, p, probes);
        s.add("residual_first_order", r1, 0.0, 1e-4, Measure::absolute);
        p.kind = ProblemKind::dirichlet_sine;
        const double r2 =
            residual_check([&](double x, double t) { return solve_dirichlet_sine(x, t, p.alpha); }, p, probes);
        s.add("residual_dirichlet_sine", r2, 0.0, 1e-4, Measure::absolute);
    }
}

void oracle_suite(Suite& s) {
    const double alpha_value = s.uniform(0.4, 1.0);
    const FractionalOrder alpha(alpha_value);
    const std::vector<double> outs = {0.1, 0.25, 0.5, 0.75, 1.0};
    {
        DiffusionProblem p;
        p.kind = ProblemKind::dirichlet_sine;
        p.alpha = alpha;
        FDGrid grid;
        grid.x_nodes = 101;
        grid.t_steps = 200;
        grid.output_times = outs;
        FDReport r = fd_solve_diffusion(p, grid);
        attach_reference(r, [&](double x, double t) { return solve_dirichlet_sine(x, t, alpha); });
        s.add("fd_dirichlet_sine", *r.max_abs_err, 0.0, 2e-3, Measure::absolute);
    }
    {
        DiffusionProblem p;
        p.kind = ProblemKind::finite_mixed;
        p.alpha = alpha;
        FDGrid grid;
        grid.x_nodes = 101;
        grid.t_steps = 200;
        grid.output_times = outs;
        FDReport r = fd_solve_diffusion(p, grid);
        attach_reference(r, [&](double x, double t) { return solve_finite_mixed(x, t, alpha, 1.0, 1.0, 1.0); });
        s.add("fd_finite_mixed_tau", *r.max_abs_err, 0.0, 5e-3, Measure::absolute);

        grid.x_nodes = 41;
        grid.mapping = TimeMapping::direct_graded;
        const double dx = 1.0 / (grid.x_nodes - 1);
        grid.t_steps = static_cast<int>(std::ceil(alpha.to_u(1.0) / (0.5 * dx * dx) * 1.05));
        r = fd_solve_diffusion(p, grid);
        attach_reference(r, [&](double x, double t) { return solve_finite_mixed(x, t, alpha, 1.0, 1.0, 1.0); });
        s.add("fd_finite_mixed_graded", *r.max_abs_err, 0.0, 5e-3, Measure::absolute);
    }
    {
        FDGrid grid;
        grid.x_nodes = 201;
        grid.t_steps = 400;
        grid.output_times = outs;
        FDReport r = fd_solve_first_order(alpha, 1.0, grid);
        attach_reference(r, [&](double x, double t) { return solve_first_order(x, t, alpha); });
        s.add("fd_first_order", *r.max_abs_err, 0.0, 5e-3, Measure::absolute);
    }
}

nlohmann::json number_or_pair(Complex z) {
    if (z.imag() == 0.0) return z.real();
    return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"calculus",    "transform", "inverse",
                                                   "convolution", "diffusion", "oracle"};
    return names;
}

std::vector<CheckRecord> run_suite(const std::string& name, std::uint64_t seed, double tol_scale) {
    if (!(tol_scale >= 0.0)) throw DomainError("tolerance scale must be non-negative");
    Suite s(seed, tol_scale);
    if (name == "calculus") calculus_suite(s);
    else if (name == "transform") transform_suite(s);
    else if (name == "inverse") inverse_suite(s);
    else if (name == "convolution") convolution_suite(s);
    else if (name == "diffusion") diffusion_suite(s);
    else if (name == "oracle") oracle_suite(s);
    else throw DomainError("unknown suite '" + name + "'");
    return s.checks;
}

nlohmann::json suite_report(const std::string& name, std::uint64_t seed, const std::vector<CheckRecord>& checks) {
    nlohmann::json list = nlohmann::json::array();
    bool pass = true;
    for (const auto& c : checks) {
        pass = pass && c.pass;
        list.push_back({{"name", c.name},
                        {"lhs", number_or_pair(c.lhs)},
                        {"rhs", number_or_pair(c.rhs)},
                        {"abs_err", c.abs_err},
                        {"rel_err", c.rel_err},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
    }
    return {{"suite", name}, {"seed", seed}, {"pass", pass}, {"checks", list}};
}

}  // namespace confract::cli
