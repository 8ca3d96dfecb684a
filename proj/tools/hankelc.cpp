#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hankelc/hankelc.hpp"

namespace {

using namespace hankelc;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3, kHypothesis = 4 };

struct Options {
    std::string spec;
    std::string grid;
    std::uint32_t degree = 2;
    std::string quad;
    double tol = 0.0;
    unsigned threads = 0;
    std::string out;
    std::string format = "csv";
    bool negative_controls = false;
    std::string suite;
};

struct GridArg {
    double lo, hi;
    std::size_t count;
};

GridArg parse_grid(const std::string& text) {
    GridArg g{};
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.count) || c1 != ':' || c2 != ':' || !is.eof())
        throw SpecError("--grid expects lo:hi:count, got '" + text + "'");
    if (!(g.lo > 0.0) || !(g.hi > g.lo) || g.count < 1) throw SpecError("--grid needs 0 < lo < hi and count >= 1");
    return g;
}

QuadratureConfig quadrature_config(const Options& o) {
    QuadratureConfig cfg;
    if (!o.quad.empty()) {
        std::istringstream is(o.quad);
        char c1 = 0, c2 = 0;
        if (!(is >> cfg.points_per_panel >> c1 >> cfg.panels >> c2 >> cfg.radius) || c1 != ':' || c2 != ':' ||
            !is.eof())
            throw SpecError("--quad expects points:panels:radius (radius 0 = automatic), got '" + o.quad + "'");
        if (cfg.points_per_panel == 0 || cfg.panels == 0 || cfg.radius < 0)
            throw SpecError("--quad values must be positive");
    }
    if (o.tol > 0.0) cfg.tail_tolerance = o.tol;
    return cfg;
}

ProblemSpec load(const Options& o) {
    if (o.spec.empty()) throw SpecError("--spec FILE is required");
    return load_problem(o.spec);
}

const SymbolicHFunction& need_function(const ProblemSpec& s) {
    if (!s.function) throw SpecError("spec needs a 'function'");
    return *s.function;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw SpecError("cannot write " + o.out);
    f << text;
}

void emit_json(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

int cmd_transform(const Options& o) {
    const ProblemSpec s = load(o);
    const SymbolicHFunction& f = need_function(s);
    const GridArg g = parse_grid(o.grid.empty() ? "0.1:4:32" : o.grid);
    const GridSpec grid = GridSpec::uniform_axes(s.dim(), linspace(g.lo, g.hi, g.count));
    GridFunction out;
    if (f.poly.is_zero())
        out = GridFunction(grid, std::vector<double>(grid.total(), 0.0), f.mu);
    else
        out = hankel_symbolic(f, grid, default_rule(f, quadrature_config(o)), o.threads);
    if (o.format == "json") {
        emit_json(o, out.to_json());
    } else {
        std::ostringstream os;
        out.write_csv(os);
        emit(o, os.str());
    }
    return kOk;
}

int cmd_kernel(const Options& o) {
    const ProblemSpec s = load(o);
    if (!s.P) throw SpecError("spec needs 'P'");
    const auto r = liouville_solve(*s.P, s.mu, o.degree, true, quadrature_config(o), o.threads);
    json j = liouville_to_json(r, o.degree);
    j["P"] = operator_to_json(*s.P);
    emit_json(o, j);
    return kOk;
}

int cmd_verify(const Options& o) {
    VerifyOptions v;
    v.threads = o.threads;
    v.negative_controls = o.negative_controls;
    std::vector<CheckResult> results;
    if (o.suite == "acceptance") {
        for (const auto& c : acceptance_criteria()) results.push_back(c(v));
    } else {
        results = run_suite(o.suite, v);
    }
    bool ok = true;
    json checks = json::array();
    for (const auto& r : results) {
        ok = ok && r.ok();
        checks.push_back(r.to_json());
    }
    emit_json(o, {{"suite", o.suite}, {"ok", ok}, {"checks", checks}});
    return ok ? kOk : kVerifyFailed;
}

int cmd_seminorm(const Options& o) {
    const ProblemSpec s = load(o);
    const SymbolicHFunction& f = need_function(s);
    GridSpec grid;
    if (o.grid.empty()) {
        grid = default_sup_grid(f);
    } else {
        const GridArg g = parse_grid(o.grid);
        std::vector<double> axis{0.0};
        for (double x : geomspace(g.lo, g.hi, g.count)) axis.push_back(x);
        grid = GridSpec::uniform_axes(s.dim(), axis);
    }
    const std::string kind = s.seminorm.value_or("gamma");
    const std::uint32_t m = s.m.value_or(0);
    const MultiIndex k = s.k.value_or(MultiIndex(s.dim()));
    json j{{"seminorm", kind}, {"grid_points", grid.total()}};
    if (kind == "rho") {
        const std::uint32_t R = s.R.value_or(1);
        j["R"] = R;
        j["value"] = seminorm_rho(R, s.mu, f, grid, o.threads);
    } else {
        j["m"] = m;
        j["k"] = multiindex_to_json(k);
        j["value"] = kind == "gamma" ? seminorm_gamma(m, k, s.mu, f, grid, o.threads)
                                     : seminorm_lambda(m, k, s.mu, f, grid, o.threads);
        if (kind == "lambda") {
            const auto c = compare_seminorms(m, k, s.mu, f, grid, o.threads);
            j["gamma_bound"] = c.bound;
            j["bound_holds"] = c.holds;
        }
    }
    emit_json(o, j);
    return kOk;
}

int cmd_taylor(const Options& o) {
    const ProblemSpec s = load(o);
    emit_json(o, taylor_to_json(taylor_coeffs(s.mu, need_function(s), s.order.value_or(o.degree))));
    return kOk;
}

int cmd_pair_delta(const Options& o) {
    const ProblemSpec s = load(o);
    const SymbolicHFunction& f = need_function(s);
    json j;
    if (s.delta) {
        j["delta"] = s.delta->to_json();
        j["value"] = s.delta->pair(f);
    } else {
        const MultiIndex k = s.k.value_or(MultiIndex(s.dim()));
        j["k"] = multiindex_to_json(k);
        j["value"] = pair_delta(k, s.mu, f);
        j["limit_exact"] = rational_to_json(delta_limit_exact(k, f));
        j["C_mu"] = c_mu(s.mu);
        j["hankel_delta"] = symbolic_to_json(hankel_delta(k, s.mu));
        if (f.decay != 0) {
            const auto p = pair_delta_transform(k, s.mu, f, default_rule(f, quadrature_config(o)), o.threads);
            j["transform"] = {{"lhs", p.lhs}, {"rhs", p.rhs}, {"scale", p.scale}};
        }
    }
    emit_json(o, j);
    return kOk;
}

int cmd_multiplier(const Options& o) {
    const ProblemSpec s = load(o);
    if (!s.multiplier) throw SpecError("spec needs 'multiplier'");
    const MultiplierFunction f = multiplier_from_json(*s.multiplier, s.dim());
    std::optional<GridSpec> grid;
    if (!o.grid.empty()) {
        const GridArg g = parse_grid(o.grid);
        std::vector<double> axis{0.0};
        for (double x : geomspace(g.lo, g.hi, g.count)) axis.push_back(x);
        grid = GridSpec::uniform_axes(s.dim(), axis);
    }
    emit_json(o, multiplier_to_json(multiplier_check(f, o.degree, grid, o.threads)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hankel transforms, Bessel operators and point-supported distributions"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--spec", o.spec, "problem JSON file");
    app.add_option("--grid", o.grid, "output grid lo:hi:count");
    app.add_option("--degree", o.degree, "polynomial degree D, Taylor order, or multiplier order K");
    app.add_option("--quad", o.quad, "quadrature points:panels:radius");
    app.add_option("--tol", o.tol, "quadrature tail tolerance");
    app.add_option("--threads", o.threads, "worker threads (default HANKELC_THREADS or 1)");
    app.add_option("--out", o.out, "output file (default stdout)");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--negative-controls", o.negative_controls, "include negative controls in verify");

    std::function<int(const Options&)> action;
    auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        auto* s = app.add_subcommand(name, help);
        s->callback([&action, fn] { action = fn; });
        return s;
    };
    sub("transform", "sample h_mu of a symbolic function on a grid", cmd_transform);
    sub("kernel", "polynomial solutions of P(-S) f = 0 with certificates", cmd_kernel);
    sub("verify", "run a verification suite", cmd_verify)
        ->add_option("suite", o.suite, "identities, roundtrip, taylor, seminorms, liouville or acceptance")
        ->required();
    sub("seminorm", "gamma, lambda or rho seminorms", cmd_seminorm);
    sub("taylor", "Taylor coefficients at the origin and remainder samples", cmd_taylor);
    sub("pair-delta", "pair T^k delta_mu (or a combination) with a function", cmd_pair_delta);
    sub("multiplier", "multiplier exponents and bounds", cmd_multiplier);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    try {
        return action(o);
    } catch (const HypothesisFailed& e) {
        std::cerr << "hypothesis failed";
        if (e.axis() >= 0) std::cerr << " (axis " << e.axis() + 1 << ")";
        std::cerr << ": " << e.what() << "\n";
        return kHypothesis;
    } catch (const SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    }
}
