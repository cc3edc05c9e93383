#ifndef WIGNER_TOOLS_CLI_HPP
#define WIGNER_TOOLS_CLI_HPP

// Command-line front end. Exit codes: 0 ok, 2 usage, 3 convergence, 4 unsupported.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wigner/wigner.hpp"

namespace wigner::cli {

enum ExitCode : int { ok = 0, usage = 2, convergence = 3, unsupported = 4 };

enum class Format { json, csv, text };

struct RunConfig {
    std::string command;
    int n = 2;
    double d = 1.0;
    std::optional<double> g;
    std::optional<int> magic_n;
    int n_max = 8;
    std::optional<int> grid_k;
    std::optional<double> grid_c;
    double dy = 0.25;
    std::string integrator = "auto";
    std::uint64_t seed = MonteCarloSettings{}.seed;
    long long samples = MonteCarloSettings{}.samples;
    std::optional<double> alpha;
    std::string format = "text";
    std::string out;
};

namespace detail {

using nlohmann::json;

inline Format parse_format(const std::string& f)
{
    if (f == "json")
        return Format::json;
    if (f == "csv")
        return Format::csv;
    return Format::text;
}

inline json config_json(const RunConfig& c)
{
    json j{{"command", c.command}, {"format", c.format}};
    if (c.command == "sweep") {
        j["d"] = c.d;
        j["n_max"] = c.n_max;
        return j;
    }
    j["n"] = c.n;
    j["d"] = c.d;
    if (c.g)
        j["g"] = *c.g;
    return j;
}

inline void emit_config_comments(std::ostream& os, const json& cfg)
{
    for (const auto& [key, value] : cfg.items())
        os << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

inline std::string num(double v, int prec = 10)
{
    std::ostringstream s;
    s << std::setprecision(prec) << v;
    return s.str();
}

// ---------------------------------------------------------------------------

inline void cmd_equilibrium(const RunConfig& c, std::ostream& os)
{
    const SystemSpec spec{c.n, c.d, c.g};
    spec.validate();
    const EquilibriumConfig eq = solve_equilibrium(spec);
    std::vector<double> scaled;
    if (c.g)
        scaled = scale_positions(eq, c.d, *c.g);

    json cfg = config_json(c);
    cfg["tolerance"] = EquilibriumOptions{}.tolerance;
    cfg["max_iterations"] = EquilibriumOptions{}.max_iterations;
    switch (parse_format(c.format)) {
    case Format::json: {
        json j{{"config", cfg}, {"beta", eq.beta}, {"gradient_norm", eq.gradient_norm}, {"iterations", eq.iterations}};
        if (c.g)
            j["positions"] = scaled;
        os << j.dump(2) << '\n';
        break;
    }
    case Format::csv:
        emit_config_comments(os, cfg);
        os << "i,beta" << (c.g ? ",x" : "") << '\n';
        for (std::size_t i = 0; i < eq.beta.size(); ++i) {
            os << i + 1 << ',' << num(eq.beta[i], 15);
            if (c.g)
                os << ',' << num(scaled[i], 15);
            os << '\n';
        }
        break;
    case Format::text:
        emit_config_comments(os, cfg);
        os << "gradient norm " << eq.gradient_norm << " after " << eq.iterations << " Newton steps\n";
        for (std::size_t i = 0; i < eq.beta.size(); ++i) {
            os << std::setw(4) << i + 1 << std::setw(20) << num(eq.beta[i], 12);
            if (c.g)
                os << std::setw(20) << num(scaled[i], 12);
            os << '\n';
        }
        break;
    }
}

inline void cmd_modes(const RunConfig& c, std::ostream& os)
{
    const SystemSpec spec{c.n, c.d, std::nullopt};
    spec.validate();
    const EquilibriumConfig eq = solve_equilibrium(spec);
    const NormalModes m = normal_modes(eq, c.d);
    const json cfg = config_json(c);

    switch (parse_format(c.format)) {
    case Format::json: {
        json rows = json::array();
        for (int i = 0; i < m.size(); ++i) {
            std::vector<double> r(m.U.cols());
            for (Eigen::Index j = 0; j < m.U.cols(); ++j)
                r[static_cast<std::size_t>(j)] = m.U(i, j);
            rows.push_back(r);
        }
        std::vector<std::string> par;
        for (Parity p : m.parity)
            par.emplace_back(to_string(p));
        os << json{{"config", cfg}, {"beta", eq.beta}, {"omega_sq", m.omega_sq}, {"U", rows}, {"parity", par}}.dump(2)
           << '\n';
        break;
    }
    case Format::csv:
        emit_config_comments(os, cfg);
        os << "mode,omega_sq,parity";
        for (int j = 0; j < m.size(); ++j)
            os << ",u" << j + 1;
        os << '\n';
        for (int i = 0; i < m.size(); ++i) {
            os << i + 1 << ',' << num(m.omega_sq[static_cast<std::size_t>(i)], 15) << ','
               << to_string(m.parity[static_cast<std::size_t>(i)]);
            for (int j = 0; j < m.size(); ++j)
                os << ',' << num(m.U(i, j), 15);
            os << '\n';
        }
        break;
    case Format::text:
        emit_config_comments(os, cfg);
        for (int i = 0; i < m.size(); ++i) {
            os << std::setw(4) << i + 1 << std::setw(20) << num(m.omega_sq[static_cast<std::size_t>(i)], 12)
               << std::setw(15) << to_string(m.parity[static_cast<std::size_t>(i)]) << "  [";
            for (int j = 0; j < m.size(); ++j)
                os << (j ? " " : "") << num(m.U(i, j), 6);
            os << "]\n";
        }
        break;
    }
}

inline std::vector<double> ladder(const SchmidtSite& s)
{
    std::vector<double> out;
    for (int l = 0; l <= s.truncation(); ++l)
        out.push_back(s.occupancy(l));
    return out;
}

inline void cmd_asymptotic(const RunConfig& c, std::ostream& os)
{
    const AsymptoticSolution sol = solve_asymptotic(c.n, c.d);
    const EntropyReport rep = total_entropy(sol);
    const json cfg = config_json(c);

    switch (parse_format(c.format)) {
    case Format::json: {
        json sites = json::array();
        for (std::size_t i = 0; i < sol.sites.size(); ++i) {
            json s = sol.sites[i];
            s["a"] = sol.kernels[i].a;
            s["b"] = sol.kernels[i].b;
            s["s_bits"] = rep.per_site_s[i];
            s["occupancies"] = ladder(sol.sites[i]);
            sites.push_back(s);
        }
        json j{{"config", cfg},
               {"beta", sol.equilibrium.beta},
               {"omega_sq", sol.modes.omega_sq},
               {"sites", sites},
               {"entropy", rep}};
        if (c.g)
            j["positions"] = scale_positions(sol.equilibrium, c.d, *c.g);
        os << j.dump(2) << '\n';
        break;
    }
    case Format::csv:
        emit_config_comments(os, cfg);
        os << "# s_total_bits=" << num(rep.s_total, 15) << "\n# linear_entropy=" << num(rep.linear_entropy, 15)
           << "\n# lambda0_sum=" << num(rep.lambda0_sum, 15) << '\n';
        os << "site,beta,omega_sq,A,a,b,w,y,lambda0,site_trace,s_bits\n";
        for (std::size_t i = 0; i < sol.sites.size(); ++i) {
            const SchmidtSite& s = sol.sites[i];
            const GaussianKernel& k = sol.kernels[i];
            os << s.site << ',' << num(sol.equilibrium.beta[i], 15) << ',' << num(sol.modes.omega_sq[i], 15) << ','
               << num(k.A, 15) << ',' << num(k.a, 15) << ',' << num(k.b, 15) << ',' << num(s.w, 15) << ','
               << num(s.y, 15) << ',' << num(s.lambda0, 15) << ',' << num(s.site_trace, 15) << ','
               << num(rep.per_site_s[i], 15) << '\n';
        }
        break;
    case Format::text:
        emit_config_comments(os, cfg);
        os << "beta    ";
        for (double b : sol.equilibrium.beta)
            os << ' ' << num(b, 8);
        os << "\nomega^2 ";
        for (double w : sol.modes.omega_sq)
            os << ' ' << num(w, 8);
        os << "\n\n"
           << std::setw(5) << "site" << std::setw(14) << "A" << std::setw(14) << "a" << std::setw(14) << "b"
           << std::setw(14) << "w" << std::setw(14) << "y" << std::setw(14) << "lambda0" << std::setw(14)
           << "S_i [bits]" << '\n';
        for (std::size_t i = 0; i < sol.sites.size(); ++i) {
            const SchmidtSite& s = sol.sites[i];
            const GaussianKernel& k = sol.kernels[i];
            os << std::setw(5) << s.site << std::setw(14) << num(k.A, 7) << std::setw(14) << num(k.a, 7)
               << std::setw(14) << num(k.b, 7) << std::setw(14) << num(s.w, 7) << std::setw(14) << num(s.y, 7)
               << std::setw(14) << num(s.lambda0, 7) << std::setw(14) << num(rep.per_site_s[i], 7) << '\n';
        }
        os << "\noccupancy ladders lambda_l = lambda0 y^l\n";
        for (const SchmidtSite& s : sol.sites) {
            os << std::setw(5) << s.site << ":";
            for (double l : ladder(s))
                os << ' ' << num(l, 6);
            os << '\n';
        }
        os << "\nS_total      " << num(rep.s_total, 10) << " bits\n"
           << "L            " << num(rep.linear_entropy, 10) << '\n'
           << "lambda0_sum  " << num(rep.lambda0_sum, 10) << '\n';
        break;
    }
}

inline void cmd_sweep(const RunConfig& c, std::ostream& os)
{
    if (c.n_max < 2 || c.n_max > 20)
        throw InvalidArgument("sweep: --n-max must lie in [2, 20]");
    std::vector<EntropyReport> rows;
    for (int n = 2; n <= c.n_max; ++n)
        rows.push_back(total_entropy(solve_asymptotic(n, c.d)));
    const json cfg = config_json(c);

    switch (parse_format(c.format)) {
    case Format::json:
        os << json{{"config", cfg}, {"rows", rows}}.dump(2) << '\n';
        break;
    case Format::csv:
    case Format::text:
        emit_config_comments(os, cfg);
        os << "N,S_total_bits,L,lambda0_sum\n";
        for (const EntropyReport& r : rows)
            os << r.n << ',' << num(r.s_total, 12) << ',' << num(r.linear_entropy, 12) << ','
               << num(r.lambda0_sum, 12) << '\n';
        break;
    }
}

inline void cmd_magic(const RunConfig& c, std::ostream& os)
{
    const int n = c.magic_n.value_or(c.n);
    const OddSeries s = magic_g(n);
    json cfg{{"command", c.command}, {"n", n}, {"format", c.format}};
    switch (parse_format(c.format)) {
    case Format::json:
        os << json{{"config", cfg}, {"series", s}}.dump(2) << '\n';
        break;
    case Format::csv:
        emit_config_comments(os, cfg);
        os << "# g=" << num(s.g_magic, 15) << "\n# e_rel=" << num(s.e_rel, 15) << "\nk,a_k\n";
        for (std::size_t k = 0; k < s.coeffs.size(); ++k)
            os << k << ',' << num(s.coeffs[k], 15) << '\n';
        break;
    case Format::text:
        emit_config_comments(os, cfg);
        os << "g      " << num(s.g_magic, 15) << "\nE_rel  " << num(s.e_rel, 15) << "\na_k   ";
        for (double a : s.coeffs)
            os << ' ' << num(a, 12);
        os << '\n';
        break;
    }
}

inline void cmd_finite(const RunConfig& c, std::ostream& os)
{
    if (c.d != 1.0)
        throw Unsupported("finite: only d = 1 is supported");
    if (!c.g && !c.magic_n)
        throw InvalidArgument("finite: give --g or --magic-n");

    FiniteGConfig fc;
    fc.n = c.n;
    fc.d = c.d;
    fc.g = c.g.value_or(0.0);
    fc.magic_n = c.magic_n;
    fc.grid_c = c.grid_c;
    fc.grid_k = c.grid_k;
    fc.dy = c.dy;
    fc.alpha = c.alpha;
    fc.monte_carlo.seed = c.seed;
    fc.monte_carlo.samples = c.samples;
    if (c.integrator == "quadrature")
        fc.integrator = Integrator::quadrature;
    else if (c.integrator == "monte-carlo")
        fc.integrator = Integrator::monte_carlo;

    const FiniteGResult r = run_finite_g(fc);
    const FiniteGConfig& rc = r.config;

    json cfg = config_json(c);
    cfg["g"] = rc.g;
    if (rc.magic_n)
        cfg["magic_n"] = *rc.magic_n;
    cfg["factor"] = r.factor;
    cfg["basis_size"] = rc.basis_size;
    cfg["grid_c"] = r.grid.c;
    cfg["grid_k"] = r.grid.k;
    cfg["dy"] = r.grid.dy();
    cfg["integrator"] = to_string(*rc.integrator);
    cfg["alpha_interval"] = {rc.alpha_lo, rc.alpha_hi};
    if (rc.alpha)
        cfg["alpha_fixed"] = *rc.alpha;
    if (*rc.integrator == Integrator::monte_carlo) {
        cfg["seed"] = rc.monte_carlo.seed;
        cfg["samples"] = rc.monte_carlo.samples;
        cfg["thermalization"] = rc.monte_carlo.thermalization;
        cfg["optimization_samples"] = rc.monte_carlo.optimization_samples;
        cfg["optimization_rounds"] = rc.monte_carlo.optimization_rounds;
    } else {
        cfg["quadrature_order"] = r.optimum.quadrature_order;
        cfg["rdm_order"] = rc.quadrature.rdm_order;
    }

    std::vector<double> occ;
    for (double l : r.occupancies.lambda)
        if (l >= 1e-12)
            occ.push_back(l);

    switch (parse_format(c.format)) {
    case Format::json:
        os << json{{"config", cfg},
                   {"alpha", r.optimum.alpha},
                   {"energy", r.optimum.energy},
                   {"relative_energy", r.relative_energy},
                   {"trace_raw", r.rdm.trace_raw},
                   {"trace_raw_error", r.rdm.trace_raw_error},
                   {"occupancies", occ},
                   {"linear_entropy", r.report.linear_entropy},
                   {"s_bits", r.report.vn_entropy},
                   {"warnings", r.warnings}}
                  .dump(2)
           << '\n';
        break;
    case Format::csv:
        emit_config_comments(os, cfg);
        os << "# alpha=" << num(r.optimum.alpha) << "\n# energy=" << num(r.optimum.energy)
           << "\n# trace_raw=" << num(r.rdm.trace_raw) << "\n# linear_entropy=" << num(r.report.linear_entropy)
           << "\n# s_bits=" << num(r.report.vn_entropy) << '\n';
        for (const std::string& w : r.warnings)
            os << "# warning: " << w << '\n';
        os << "s,lambda\n";
        for (std::size_t s = 0; s < occ.size(); ++s)
            os << s << ',' << num(occ[s], 12) << '\n';
        break;
    case Format::text:
        emit_config_comments(os, cfg);
        for (const std::string& w : r.warnings)
            os << "warning: " << w << '\n';
        os << "alpha*     " << num(r.optimum.alpha, 6) << "\nenergy     " << num(r.optimum.energy, 8)
           << "\ntrace_raw  " << num(r.rdm.trace_raw, 8) << "\nL          " << num(r.report.linear_entropy, 6)
           << "\nS          " << num(r.report.vn_entropy, 6) << " bits\noccupancies";
        for (std::size_t s = 0; s < occ.size() && s < 12; ++s)
            os << ' ' << num(occ[s], 6);
        os << '\n';
        break;
    }
}

} // namespace detail

/// Parses argv, runs the subcommand, returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    RunConfig cfg;
    CLI::App app{"Entanglement of 1D Wigner crystals: asymptotic and finite-g one-particle RDMs"};
    app.require_subcommand(1);

    const std::vector<std::string> formats{"json", "csv", "text"};
    auto common = [&](CLI::App* sub, bool with_n) {
        if (with_n)
            sub->add_option("--n", cfg.n, "particle count N (>= 2)")->capture_default_str();
        sub->add_option("--d", cfg.d, "interaction exponent d (> 0)")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember(formats))
            ->capture_default_str();
        sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
    };

    auto* eq = app.add_subcommand("equilibrium", "classical equilibrium positions beta_i (and x_i^c at --g)");
    common(eq, true);
    eq->add_option("--g", cfg.g, "interaction strength for scaled positions");

    auto* modes = app.add_subcommand("modes", "Hessian normal modes at equilibrium");
    common(modes, true);

    auto* asym = app.add_subcommand("asymptotic", "strong-coupling occupancies, orbitals and entropies");
    common(asym, true);
    asym->add_option("--g", cfg.g, "also report site centres at this g");

    auto* sweep = app.add_subcommand("sweep", "S_total(g -> inf) for N = 2..n-max");
    common(sweep, false);
    sweep->add_option("--n-max", cfg.n_max, "largest N (<= 20)")->capture_default_str();

    auto* fin = app.add_subcommand("finite", "finite-g Jastrow + Nystrom occupancies (d = 1)");
    common(fin, true);
    fin->add_option("--g", cfg.g, "interaction strength (0 = Tonks-Girardeau limit, f = |x|)");
    fin->add_option("--magic-n", cfg.magic_n, "use the magic g of termination index n and its closed-form f");
    fin->add_option("--grid-k", cfg.grid_k, "Nystrom points K");
    fin->add_option("--grid-c", cfg.grid_c, "Nystrom half-extent c (default: outermost classical position + 4)");
    fin->add_option("--dy", cfg.dy, "Nystrom spacing")->capture_default_str();
    fin->add_option("--integrator", cfg.integrator, "auto | quadrature | monte-carlo")
        ->check(CLI::IsMember({"auto", "quadrature", "monte-carlo"}))
        ->capture_default_str();
    fin->add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
    fin->add_option("--samples", cfg.samples, "Monte Carlo moves for the RDM")->capture_default_str();
    fin->add_option("--alpha", cfg.alpha, "fixed Jastrow scale (skips optimization)");

    auto* magic = app.add_subcommand("magic-g", "magic interaction strengths of the two-body problem");
    magic->add_option("--n", cfg.magic_n, "termination index n (>= 1)")->required();
    magic->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(formats))->capture_default_str();
    magic->add_option("--out", cfg.out, "write output to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();

    std::ostringstream buffer;
    try {
        if (chosen == eq)
            detail::cmd_equilibrium(cfg, buffer);
        else if (chosen == modes)
            detail::cmd_modes(cfg, buffer);
        else if (chosen == asym)
            detail::cmd_asymptotic(cfg, buffer);
        else if (chosen == sweep)
            detail::cmd_sweep(cfg, buffer);
        else if (chosen == fin)
            detail::cmd_finite(cfg, buffer);
        else
            detail::cmd_magic(cfg, buffer);
    } catch (const Unsupported& e) {
        err << "unsupported: " << e.what() << '\n';
        return ExitCode::unsupported;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const Error& e) {
        err << "convergence failure: " << e.what() << '\n';
        return ExitCode::convergence;
    }

    if (cfg.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            err << "cannot open output file " << cfg.out << '\n';
            return ExitCode::usage;
        }
        f << buffer.str();
    }
    return ExitCode::ok;
}

} // namespace wigner::cli

#endif // WIGNER_TOOLS_CLI_HPP
