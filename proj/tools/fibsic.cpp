// SPDX-License-Identifier: Apache-2.0
//
// Command-line frontend: dims, symmetry, search, verify, selftest.
// Exit codes: 0 success, 1 usage, 2 non-convergence, 3 verification
// failure, 4 I/O or parse error.

#include <fibsic/fibsic.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitIo = 4;

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string g3(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

/// Parses "a,b,c,d" or "a,b,c,d:m"; the modulus defaults to default_m.
fibsic::ModMatrix parse_matrix(const std::string& text, long long default_m) {
    std::string body = text;
    long long m = default_m;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        body = text.substr(0, colon);
        m = std::stoll(text.substr(colon + 1));
    }
    std::array<long long, 4> e{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t used = 0;
        e[static_cast<std::size_t>(i)] = std::stoll(body.substr(pos), &used);
        pos += used;
        if (i < 3) {
            if (pos >= body.size() || body[pos] != ',')
                throw std::invalid_argument("matrix must be 'a,b,c,d' with optional ':m'");
            ++pos;
        }
    }
    if (pos != body.size()) throw std::invalid_argument("trailing characters in matrix spec");
    return fibsic::ModMatrix(m, e[0], e[1], e[2], e[3]);
}

/// k for a dimension in the Lucas sequence, or 0 if it is not a member.
long lucas_index_of(long long d) {
    for (long k = 1; k <= 90; ++k) {
        const fibsic::BigInt dk = fibsic::dimension(k).d;
        if (dk == d) return k;
        if (dk > d) return 0;
    }
    return 0;
}

int cmd_dims(long kmax) {
    std::printf("%3s  %22s  %7s  %7s  %14s\n", "k", "d = L_2k + 1", "d mod 3", "d mod 9", "symmetry order");
    for (long k = 1; k <= kmax; ++k) {
        const auto e = fibsic::dimension(k);
        std::ostringstream ds;
        ds << e.d;
        std::string mod9 = "-";
        if (e.d_mod3 == 0) mod9 = std::to_string(static_cast<int>(e.d % 9));
        std::printf("%3ld  %22s  %7d  %7s  %14ld\n", k, ds.str().c_str(), e.d_mod3, mod9.c_str(), 6 * k);
    }
    return kExitOk;
}

int cmd_symmetry(long k, bool witness, const std::string& conjugate_spec, long long order_cap) {
    using namespace fibsic;
    const auto a = analyze_fibonacci_symmetry(k, order_cap);
    std::cout << "d = " << a.d << " (k = " << a.k << "), symmetry matrix "
              << fibonacci_matrix(a.d).str() << "\n";
    if (a.order)
        std::cout << "order: " << *a.order << "\n";
    else
        std::cout << "order: exceeds cap\n";
    std::cout << "det: " << a.det << " (= -1 mod d)\n";
    std::cout << "trace of the 2k-th power: " << a.trace_at_2k << " (= -1 mod d)\n";
    if (a.scalar_at_3k)
        std::cout << "3k-th power: scalar " << *a.scalar_at_3k << " x identity\n";
    std::cout << "order-3 class of the 2k-th power: " << to_string(a.order3.cls) << "\n";
    if (witness && a.order3.witness)
        std::cout << "conjugator witness: " << a.order3.witness->str() << "\n";
    if (!conjugate_spec.empty()) {
        const ModMatrix f1 = parse_matrix(conjugate_spec, a.d);
        const ModMatrix target = fibonacci_matrix(f1.m);
        if (const auto g = solve_conjugator(f1, target)) {
            std::cout << "conjugator G with G " << f1.str() << " G^-1 = " << target.str() << ": "
                      << g->str() << "\n";
        } else {
            std::cout << "no invertible conjugator onto " << target.str() << " exists\n";
        }
    }
    return kExitOk;
}

fibsic::RunReport::Verification verification_section(const fibsic::CVector& psi, double tol,
                                                     const std::vector<fibsic::ModMatrix>& probes,
                                                     std::optional<int> phase_divisor) {
    using namespace fibsic;
    const int d = static_cast<int>(psi.size());
    const VerificationReport rep = gram_check(psi, tol);
    RunReport::Verification v;
    v.d = d;
    v.tolerance = tol;
    v.passed = rep.passed;
    v.max_gram_deviation = rep.max_gram_deviation;
    v.overlap_modulus_deviation = rep.overlap_modulus_deviation;
    v.phases = rep.phases;
    const CMatrix u = antiunitary_unitary_part(fibonacci_matrix(clifford_modulus(d)), d);
    v.coneigen_residual_ff = coneigen_residual(psi, u);
    if (phase_divisor) {
        v.phase_divisor = phase_divisor;
        v.max_phase_on_divisor = max_phase_on_sublattice(rep, *phase_divisor);
    }
    // symmetry detection presumes a certified fiducial
    if (!probes.empty() && gram_check(psi, 1e-8).passed) {
        const auto probe = stabilizer_probe(psi, probes);
        if (probe.generated_order) v.detected_antiunitary_order = probe.generated_order;
        for (const auto& o : probe.outcomes)
            std::cout << "probe " << o.candidate.str() << ": " << (o.accepted ? "accepted" : "rejected")
                      << "\n";
    }
    return v;
}

int cmd_search(long long d, std::uint64_t seed, int restarts, int max_iter, double gap,
               const std::string& out_path, std::string report_path, bool use_fft, int jobs) {
    using namespace fibsic;
    SearchConfig cfg;
    cfg.d = static_cast<int>(d);
    cfg.master_seed = seed;
    cfg.max_restarts = restarts;
    cfg.max_iterations = max_iter;
    cfg.convergence_gap = gap;
    cfg.use_fft = use_fft;
    cfg.jobs = jobs;

    const SearchResult res = search(cfg);

    FiducialFile file;
    file.d = cfg.d;
    file.seed = seed;
    file.symmetry_label = "Ff";
    file.potential = res.achieved_potential;
    file.psi = res.fiducial;
    save_fiducial(out_path, file);

    RunReport report;
    RunReport::Search s;
    s.d = cfg.d;
    s.symmetry = "Ff";
    s.seed = seed;
    s.max_restarts = restarts;
    s.max_iterations = max_iter;
    s.convergence_gap = gap;
    s.restarts_used = res.restarts_used;
    s.winning_restart = res.winning_restart;
    s.converged = res.converged;
    s.achieved_potential = res.achieved_potential;
    s.welch_bound = welch_bound(cfg.d);
    s.gap = res.achieved_potential - welch_bound(cfg.d);
    s.coneigen_order = res.coneigen_order;
    s.coneigen_rank = res.coneigen_rank;
    s.coneigen_residual = res.coneigen_residual;
    report.search = s;
    report.verification =
        verification_section(res.fiducial, 1e-9, {fibonacci_matrix(clifford_modulus(cfg.d))}, std::nullopt);

    if (report_path.empty()) report_path = out_path + ".report.json";
    std::ofstream rout(report_path, std::ios::binary);
    rout << to_json(report).dump(2) << "\n";
    if (!rout) throw std::runtime_error("cannot write report " + report_path);

    std::cout << "d = " << cfg.d << ", con-eigenspace order n = " << res.coneigen_order
              << ", rank " << res.coneigen_rank << "\n";
    std::cout << "restarts used: " << res.restarts_used << " (winner " << res.winning_restart << ")\n";
    std::cout << "achieved potential: " << g17(res.achieved_potential) << "  (bound "
              << g17(welch_bound(cfg.d)) << ", gap " << g3(s.gap) << ")\n";
    std::cout << "con-eigen residual: " << g3(res.coneigen_residual) << "\n";
    std::cout << "converged: " << (res.converged ? "yes" : "no") << "\n";
    std::cout << "fiducial: " << out_path << "\nreport: " << report_path << "\n";
    return res.converged ? kExitOk : kExitNoConvergence;
}

int cmd_verify(const std::string& path, double tol, bool no_probe,
               const std::vector<std::string>& probe_specs, std::optional<int> phase_divisor,
               const std::string& report_path) {
    using namespace fibsic;
    const FiducialFile file = load_fiducial(path);
    const int d = file.d;
    std::vector<ModMatrix> probes;
    if (!no_probe) {
        probes.push_back(fibonacci_matrix(clifford_modulus(d)));
        for (const auto& sp : probe_specs) probes.push_back(parse_matrix(sp, clifford_modulus(d)));
    }
    RunReport report;
    report.verification = verification_section(file.psi, tol, probes, phase_divisor);
    const auto& v = *report.verification;

    std::cout << "d = " << d << ", tolerance " << g3(tol) << "\n";
    std::cout << "max gram deviation: " << g3(v.max_gram_deviation) << "\n";
    std::cout << "overlap modulus deviation: " << g3(v.overlap_modulus_deviation) << "\n";
    std::cout << "con-eigen residual (Ff): " << g3(v.coneigen_residual_ff) << "\n";
    if (v.detected_antiunitary_order)
        std::cout << "detected symmetry order: " << *v.detected_antiunitary_order << "\n";
    if (v.phase_divisor)
        std::cout << "max |phase| on the " << *v.phase_divisor
                  << "-sublattice: " << g3(v.max_phase_on_divisor.value_or(0.0)) << "\n";
    std::cout << "passed: " << (v.passed ? "yes" : "no") << "\n";

    if (!report_path.empty()) {
        std::ofstream rout(report_path, std::ios::binary);
        rout << to_json(report).dump(2) << "\n";
        if (!rout) throw std::runtime_error("cannot write report " + report_path);
        std::cout << "report: " << report_path << "\n";
    }
    return v.passed ? kExitOk : kExitVerifyFailed;
}

int cmd_selftest() {
    using namespace fibsic;
    int failures = 0;
    auto line = [&failures](const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    line("fibonacci/lucas identities to n = 60", check_identities(60).all_passed());
    line("dimension properties to k = 20", check_dimension_properties(20).all_passed());

    bool conj_ok = true;
    for (const auto& c : recorded_conjugation_cases()) conj_ok = conj_ok && verify_conjugation_case(c);
    line("recorded conjugations onto F_f", conj_ok);

    bool weyl_ok = true;
    for (int d : {2, 3, 4, 5, 8, 13, 19}) {
        const auto g = shift_and_clock(d);
        const CMatrix zx = mat_mul(g.Z, g.X);
        CMatrix xz = mat_mul(g.X, g.Z);
        const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
        for (auto& z : xz.a) z *= omega;
        weyl_ok = weyl_ok && max_abs(mat_sub(zx, xz)) < 1e-13;
    }
    line("weyl commutation ZX = wXZ", weyl_ok);

    bool grad_ok = true;
    {
        const int d = 4;
        const CMatrix u = antiunitary_unitary_part(fibonacci_matrix(8), d);
        const SymmetricObjective obj(coneigen_projector(u));
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<double> x(2 * static_cast<std::size_t>(d));
            for (auto& v : x) v = std::uniform_real_distribution<>(-1, 1)(rng);
            std::vector<double> g;
            obj.value_and_grad(x, g);
            const double h = 1e-6;
            long double num = 0.0L, den = 0.0L;
            for (std::size_t i = 0; i < x.size(); ++i) {
                std::vector<double> xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                const double fd = (obj.value(xp) - obj.value(xm)) / (2 * h);
                num += (g[i] - fd) * (g[i] - fd);
                den += fd * fd;
            }
            grad_ok = grad_ok && std::sqrt(static_cast<double>(num)) <=
                                     1e-6 * std::max(1.0, std::sqrt(static_cast<double>(den)));
        }
    }
    line("analytic gradient vs finite differences (d = 4)", grad_ok);

    std::cout << (failures == 0 ? "all self-tests passed" : "self-tests FAILED") << "\n";
    return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fibonacci-symmetric SIC-POVM fiducial search and verification"};
    app.require_subcommand(1);

    // dims
    auto* dims = app.add_subcommand("dims", "print the Lucas dimension table");
    long kmax = 10;
    dims->add_option("kmax", kmax, "largest index k")->check(CLI::PositiveNumber);

    // symmetry
    auto* symmetry = app.add_subcommand("symmetry", "analyze the Fibonacci symmetry matrix");
    long sym_k = 0;
    long long sym_d = 0;
    bool witness = false;
    std::string conjugate_spec;
    long long order_cap = 0;
    auto* sym_k_opt = symmetry->add_option("--k", sym_k, "dimension index k");
    symmetry->add_option("--dim", sym_d, "dimension (must lie in the Lucas sequence)")
        ->excludes(sym_k_opt);
    symmetry->add_flag("--witness", witness, "print the order-3 conjugator witness");
    symmetry->add_option("--conjugate", conjugate_spec,
                         "matrix 'a,b,c,d[:m]' to conjugate onto F_f (m defaults to d)");
    symmetry->add_option("--order-cap", order_cap, "iteration cap for the order computation");

    // search
    auto* search_cmd = app.add_subcommand("search", "search for a symmetric fiducial vector");
    long long search_dim = 0;
    long search_k = 0;
    std::uint64_t seed = 0;
    int restarts = 1000;
    int max_iter = 10000;
    double gap = 1e-13;
    std::string out_path;
    std::string report_path;
    bool use_fft = false;
    int jobs = 0;
    auto* search_dim_opt = search_cmd->add_option("--dim", search_dim, "dimension d");
    search_cmd->add_option("--k", search_k, "dimension index k (d = L_2k + 1)")
        ->excludes(search_dim_opt);
    search_cmd->add_option("--seed", seed, "master seed");
    search_cmd->add_option("--restarts", restarts, "maximum restarts")->check(CLI::PositiveNumber);
    search_cmd->add_option("--max-iter", max_iter, "iteration cap per restart")->check(CLI::PositiveNumber);
    search_cmd->add_option("--gap", gap, "convergence gap above 2/(d+1)")->check(CLI::PositiveNumber);
    search_cmd->add_option("--out", out_path, "fiducial output path");
    search_cmd->add_option("--report", report_path, "report output path (default <out>.report.json)");
    search_cmd->add_flag("--fft", use_fft, "evaluate the frame potential through the FFT path");
    search_cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verify a fiducial file");
    std::string verify_path;
    double tol = 1e-9;
    bool no_probe = false;
    std::vector<std::string> probe_specs;
    int phase_divisor = 0;
    verify_cmd->add_option("file", verify_path, "fiducial file")->required();
    verify_cmd->add_option("--tol", tol, "pass/fail tolerance")->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--no-probe", no_probe, "skip symmetry detection");
    verify_cmd->add_option("--probe", probe_specs, "extra candidate matrices 'a,b,c,d[:m]'");
    verify_cmd->add_option("--phase-divisor", phase_divisor,
                           "report max |phase| over (a,b) both divisible by this");
    std::string verify_report_path;
    verify_cmd->add_option("--report", verify_report_path, "write the JSON report here");

    // selftest
    app.add_subcommand("selftest", "run the built-in verification suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (dims->parsed()) return cmd_dims(kmax);
        if (symmetry->parsed()) {
            long k = sym_k;
            if (k == 0 && sym_d != 0) {
                k = lucas_index_of(sym_d);
                if (k == 0) {
                    std::cerr << "error: " << sym_d << " is not in the Lucas dimension sequence\n";
                    return kExitUsage;
                }
            }
            if (k <= 0) {
                std::cerr << "error: pass --k or --dim\n";
                return kExitUsage;
            }
            return cmd_symmetry(k, witness, conjugate_spec, order_cap);
        }
        if (search_cmd->parsed()) {
            long long d = search_dim;
            if (d == 0 && search_k > 0) d = fibsic::dimension_ll(search_k);
            if (d < 2) {
                std::cerr << "error: pass --dim or --k\n";
                return kExitUsage;
            }
            if (out_path.empty()) out_path = "fiducial_d" + std::to_string(d) + ".fid";
            return cmd_search(d, seed, restarts, max_iter, gap, out_path, report_path, use_fft, jobs);
        }
        if (verify_cmd->parsed()) {
            std::optional<int> pd;
            if (phase_divisor > 0) pd = phase_divisor;
            return cmd_verify(verify_path, tol, no_probe, probe_specs, pd, verify_report_path);
        }
        return cmd_selftest();
    } catch (const fibsic::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        const std::string what = e.what();
        if (what.find("cannot open") != std::string::npos ||
            what.find("cannot write") != std::string::npos) {
            std::cerr << "i/o error: " << what << "\n";
            return kExitIo;
        }
        std::cerr << "error: " << what << "\n";
        return kExitUsage;
    }
}
