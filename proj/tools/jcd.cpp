// jcd.cpp — command-line front end
//
// Subcommands:
//   evolve   solve an initial state and write state/moments/generating CSVs
//   verify   run the mode, adjoint, and orthonormality self-checks
//   compare  cross-validate the spectral solution against the RK4 reference
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jcd/adjoint.hpp"
#include "jcd/errors.hpp"
#include "jcd/evolve.hpp"
#include "jcd/modes.hpp"
#include "jcd/oracle.hpp"
#include "jcd/projection.hpp"

namespace {

struct RunConfig {
    double a = 5.0;
    int n0 = 6;
    std::string init_file;
    double tau_max = 3.0;
    int tau_steps = 40;
    int u_steps = 20;
    int n_max = 20;
    int m_max = 10;
    std::string out_dir = ".";
    int k_max = 10;
    int n_trunc = 60;
    double step = 1e-4;
    double perturb = 0.0;  // verify-only test hook
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> linspace(double hi, int steps) {
    std::vector<double> out(steps + 1);
    for (int i = 0; i <= steps; ++i) out[i] = hi * static_cast<double>(i) / steps;
    return out;
}

jcd::InitialState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw jcd::Error("cannot open initial-state file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    const auto g = doc.at("g").get<std::vector<double>>();
    const auto e = doc.at("e").get<std::vector<double>>();
    std::vector<jcd::cplx> coh;
    for (const auto& pair : doc.at("coh")) {
        if (!pair.is_array() || pair.size() != 2) {
            throw jcd::Error("initial-state file: coh entries must be [re, im] pairs");
        }
        coh.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return jcd::ingest(g, e, coh);
}

jcd::InitialState make_state(const RunConfig& cfg) {
    if (!cfg.init_file.empty()) return load_state_file(cfg.init_file);
    return jcd::fock_ground(cfg.n0);
}

double eval_real(const jcd::PolyU& p, double u) {
    const jcd::cplx v = jcd::eval(p, u);
    if (std::abs(v.imag()) > 1e-6) {
        throw jcd::RealityViolation("generating-function value has a large imaginary part");
    }
    return v.real();
}

int cmd_evolve(const RunConfig& cfg) {
    const jcd::ModelParams params(cfg.a);
    const jcd::InitialState state = make_state(cfg);
    const jcd::SpectralDecomposition dec = jcd::project(params, state);
    const std::vector<double> taus = linspace(cfg.tau_max, cfg.tau_steps);

    const auto slices = jcd::state_series(dec, taus, cfg.n_max);
    const auto moments = jcd::moments_series(dec, taus, cfg.m_max);
    const auto gens = jcd::generating_series(dec, taus);

    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);

    std::ofstream st(fs::path(cfg.out_dir) / "state.csv");
    st << "tau,n,e_n,g_n,h_n,f_n,d_n\n";
    for (const auto& sl : slices) {
        for (int n = 0; n <= cfg.n_max; ++n) {
            st << fmt17(sl.tau) << ',' << n << ',' << fmt17(sl.e[n]) << ',' << fmt17(sl.g[n])
               << ',' << fmt17(sl.h[n]) << ',' << fmt17(sl.f[n]) << ',' << fmt17(sl.d[n])
               << '\n';
        }
    }

    std::ofstream mo(fs::path(cfg.out_dir) / "moments.csv");
    mo << "tau,m,e_bar,g_bar\n";
    for (const auto& fm : moments) {
        for (int m = 0; m <= cfg.m_max; ++m) {
            mo << fmt17(fm.tau) << ',' << m << ',' << fmt17(fm.e_bar[m]) << ','
               << fmt17(fm.g_bar[m]) << '\n';
        }
    }

    std::ofstream ge(fs::path(cfg.out_dir) / "generating.csv");
    ge << "tau,u,E,G,D,H,F\n";
    for (const auto& gs : gens) {
        for (int j = 0; j <= cfg.u_steps; ++j) {
            const double u = static_cast<double>(j) / cfg.u_steps;
            ge << fmt17(gs.tau) << ',' << fmt17(u) << ',' << fmt17(eval_real(gs.E, u)) << ','
               << fmt17(eval_real(gs.G, u)) << ',' << fmt17(eval_real(gs.D, u)) << ','
               << fmt17(eval_real(gs.H, u)) << ',' << fmt17(eval_real(gs.F, u)) << '\n';
        }
    }

    std::cout << "wrote state.csv, moments.csv, generating.csv to " << cfg.out_dir << "\n";
    return 0;
}

struct Check {
    const char* name;
    double value;
    double tol;
};

int cmd_verify(const RunConfig& cfg) {
    const jcd::ModelParams params(cfg.a);
    const int k_max = cfg.k_max;
    constexpr jcd::Branch branches[3] = {jcd::Branch::zero, jcd::Branch::plus,
                                         jcd::Branch::minus};

    std::vector<jcd::ModeTriple> modes;
    std::vector<jcd::AdjointTriple> adjoints;
    for (int k = 0; k <= k_max; ++k) {
        for (auto b : branches) {
            modes.push_back(jcd::build_mode(params, {b, k}));
            auto adj = jcd::build_adjoint(params, {b, k}, k_max - k + 2);
            if (cfg.perturb != 0.0) {
                adj.c_dprime *= 1.0 + cfg.perturb;
                adj.Hhat = jcd::cplx{1.0 + cfg.perturb} * adj.Hhat;
            }
            adjoints.push_back(std::move(adj));
        }
    }

    double ortho = 0.0;
    for (std::size_t r = 0; r < adjoints.size(); ++r) {
        for (std::size_t s = 0; s < modes.size(); ++s) {
            const jcd::cplx expect = (r == s) ? jcd::cplx{1.0} : jcd::cplx{0.0};
            ortho = std::max(ortho,
                             std::abs(jcd::pair_mode(adjoints[r], modes[s], params) - expect));
        }
    }

    double fsec = 0.0;
    for (int m = 0; m <= 20; ++m) {
        const jcd::LaurentX fhat = jcd::build_f_adjoint(params, m);
        for (int k = 0; k <= 20; ++k) {
            const double expect = (m == k) ? 1.0 : 0.0;
            fsec = std::max(fsec,
                            std::abs(jcd::pair_f(fhat, jcd::build_f_mode(k), params) - expect));
        }
    }

    double mode_res = 0.0, mode_ode = 0.0;
    for (const auto& mode : modes) {
        mode_res = std::max(mode_res, jcd::verify_mode_system(mode, params));
        mode_ode = std::max(mode_ode, jcd::third_order_residual(mode.E, mode.lambda, params));
    }

    double adj_res = 0.0, adj_ode = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        for (auto b : branches) {
            auto adj = jcd::build_adjoint(params, {b, k}, 10);
            if (cfg.perturb != 0.0) {
                adj.c_dprime *= 1.0 + cfg.perturb;
                adj.Hhat = jcd::cplx{1.0 + cfg.perturb} * adj.Hhat;
            }
            adj_res = std::max(adj_res, jcd::verify_adjoint_system(adj, params));
            if (b == jcd::Branch::zero) {
                adj_ode = std::max(
                    adj_ode, jcd::adjoint_third_order_residual(
                                 adj.Ehat, jcd::eigenvalue(params, adj.label), params));
            }
        }
    }

    std::mt19937 rng(20260810u);
    std::uniform_real_distribution<double> dist(1e-3, 1.0);
    std::vector<double> us(20);
    double rep = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        for (auto b : branches) {
            for (auto& u : us) u = dist(rng);
            rep = std::max(rep, jcd::representation_identity_deviation(params, {b, k}, us));
        }
    }

    const Check checks[] = {
        {"orthonormality max |pairing - identity|", ortho, 1e-9},
        {"decoupled-sector pairing max deviation", fsec, 1e-12},
        {"mode system residual max", mode_res, 1e-10},
        {"mode third-order equation residual max", mode_ode, 1e-10},
        {"adjoint system residual max", adj_res, 1e-10},
        {"adjoint third-order equation residual max", adj_ode, 1e-10},
        {"representation identity max deviation", rep, 1e-9},
    };
    bool ok = true;
    for (const auto& c : checks) {
        const bool pass = c.value <= c.tol;
        ok = ok && pass;
        std::printf("%-45s %10.3e  (tol %.0e)  %s\n", c.name, c.value, c.tol,
                    pass ? "ok" : "FAIL");
    }
    return ok ? 0 : 1;
}

int cmd_compare(const RunConfig& cfg) {
    const jcd::ModelParams params(cfg.a);
    const jcd::InitialState state = make_state(cfg);
    const jcd::SpectralDecomposition dec = jcd::project(params, state);
    const std::vector<double> taus = linspace(cfg.tau_max, cfg.tau_steps);

    const auto spectral = jcd::state_series(dec, taus, cfg.n_trunc);
    const auto reference = jcd::integrate(state, params, taus, cfg.n_trunc, cfg.step);
    const double dev = jcd::max_deviation(spectral, reference);
    std::printf("max deviation spectral vs RK4: %.3e  (tol 1e-06)\n", dev);
    return dev <= 1e-6 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Damped Jaynes-Cummings diagonal-sector solver"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--a", cfg.a, "squared scaled coupling a = (f/kappa)^2");
    };
    const auto add_init = [&](CLI::App* sub) {
        auto* n0 = sub->add_option("--n0", cfg.n0, "ground-state photon number");
        auto* file = sub->add_option("--init-file", cfg.init_file,
                                     "JSON file with arrays g, e, coh ([re,im] pairs)");
        n0->excludes(file);
        sub->add_option("--tau-max", cfg.tau_max, "largest output time");
        sub->add_option("--tau-steps", cfg.tau_steps, "output grid intervals")
            ->check(CLI::PositiveNumber);
    };

    auto* evolve = app.add_subcommand("evolve", "solve and write CSV output");
    add_common(evolve);
    add_init(evolve);
    evolve->add_option("--u-steps", cfg.u_steps, "u grid intervals")->check(CLI::PositiveNumber);
    evolve->add_option("--n-max", cfg.n_max, "largest photon index in state.csv");
    evolve->add_option("--m-max", cfg.m_max, "largest moment order in moments.csv");
    evolve->add_option("--out", cfg.out_dir, "output directory");

    auto* verify = app.add_subcommand("verify", "run self-checks");
    add_common(verify);
    verify->add_option("--k-max", cfg.k_max, "largest mode index checked");
    verify->add_option("--inject-perturbation", cfg.perturb,
                       "test hook: relative perturbation of the adjoint constants");

    auto* compare = app.add_subcommand("compare", "spectral vs RK4 cross-validation");
    add_common(compare);
    add_init(compare);
    compare->add_option("--n-trunc", cfg.n_trunc, "RK4 truncation level");
    compare->add_option("--step", cfg.step, "RK4 step");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(evolve)) return cmd_evolve(cfg);
        if (app.got_subcommand(verify)) return cmd_verify(cfg);
        if (app.got_subcommand(compare)) return cmd_compare(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
