// Command-line front end: `sweep` runs a user config, `reproduce` runs a
// shipped preset by id, `validate` runs a fast self-check of the library.
// Exit codes: 0 clean, 1 failed points or runtime errors, 2 bad config or
// bad invocation.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "figures.hpp"
#include "kerrsync/classical.hpp"
#include "kerrsync/config.hpp"
#include "kerrsync/liouvillian.hpp"
#include "kerrsync/perturbation.hpp"
#include "kerrsync/steadystate.hpp"
#include "kerrsync/sweep.hpp"
#include "kerrsync/sync_measure.hpp"
#include "kerrsync/table.hpp"
#include "kerrsync/version.hpp"

namespace {

using namespace kerrsync;

struct RunFlags {
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
    cmd->add_option("--out", flags.out, "output CSV path (metadata lands at <out>.meta.json)");
    cmd->add_option("--seed", flags.seed, "override the config seed");
    cmd->add_option("--threads", flags.threads,
                    "worker threads (default: KERRSYNC_THREADS or all cores)");
}

int run_config(SweepConfig config, const RunFlags& flags, const std::string& fallback_name) {
    if (flags.seed_set) {
        config.seed = flags.seed;
        refresh_canonical(config);
    }
    std::string out = !flags.out.empty() ? flags.out
                      : !config.output_path.empty() ? config.output_path
                                                    : fallback_name + ".csv";

    const ResultTable table = run_sweep(config, flags.threads);
    write_csv(table, out);
    write_metadata(table, out + ".meta.json");

    std::printf("wrote %s and %s.meta.json\n", out.c_str(), out.c_str());
    std::printf("mode %s, %zu points, %d thread(s), %.1f s\n", table.mode.c_str(),
                table.rows.size(), table.threads_used, table.runtime_seconds);
    if (table.point_errors.empty()) return 0;
    std::fprintf(stderr, "%zu of %zu points failed:\n", table.point_errors.size(),
                 table.rows.size());
    for (const auto& message : table.point_errors)
        std::fprintf(stderr, "  %s\n", message.c_str());
    return 1;
}

OscillatorParams reference_site() {
    OscillatorParams p;
    p.kerr = 10.0;
    p.gamma_plus = 1.0;
    p.gamma_minus = 1.0;
    p.n_plus = 2.0;
    p.n_minus = 3.0;
    p.sigma_plus = 0.2;
    p.sigma_minus = 0.2;
    return p;
}

NetworkSpec two_site_net(double delta, double v, int d) {
    NetworkSpec net;
    net.oscillators = {reference_site(), reference_site()};
    net.oscillators[1].omega = -delta;
    net.coupling = Eigen::MatrixXd::Zero(2, 2);
    net.coupling(0, 1) = net.coupling(1, 0) = v;
    net.layout = make_layout({d, d});
    return net;
}

double solve_sync(const NetworkSpec& net, double* residual = nullptr) {
    SolveInfo info;
    const DensityMatrix dm =
        solve_steady_state(build_network_liouvillian(net), net.layout, {}, &info);
    if (residual) *residual = info.residual;
    return pairwise_sync(dm, 0, 1);
}

int run_validate() {
    int failures = 0;
    auto check = [&failures](bool ok, const std::string& name, const std::string& detail) {
        std::printf("[%s] %s%s%s%s\n", ok ? "ok" : "FAIL", name.c_str(),
                    detail.empty() ? "" : " (", detail.c_str(), detail.empty() ? "" : ")");
        if (!ok) ++failures;
    };
    char buf[160];

    {
        NetworkSpec net;
        net.oscillators = {reference_site()};
        net.coupling = Eigen::MatrixXd::Zero(1, 1);
        net.layout = make_layout({10});
        SolveInfo info;
        const DensityMatrix dm =
            solve_steady_state(build_network_liouvillian(net), net.layout, {}, &info);
        assert_valid_state(dm);
        const Eigen::VectorXd pops = uncoupled_fock_populations(net.oscillators[0], 10);
        const double diff = (dm.rho.diagonal().real() - pops).cwiseAbs().maxCoeff();
        std::snprintf(buf, sizeof buf, "max deviation %.2e, residual %.2e", diff, info.residual);
        check(diff < 1e-12 && info.residual <= 1e-10,
              "uncoupled steady state matches the detailed-balance populations", buf);
    }

    {
        double res_plus = 0.0;
        const double k2 = 2.0 * reference_site().kerr;
        const double s_plus = solve_sync(two_site_net(k2, 0.1, 8), &res_plus);
        const double s_minus = solve_sync(two_site_net(-k2, 0.1, 8));
        const double s_zero = solve_sync(two_site_net(0.0, 0.1, 8));
        std::snprintf(buf, sizeof buf, "S(+2K) %.4e, S(-2K) %.4e, S(0) %.4e", s_plus, s_minus,
                      s_zero);
        check(std::abs(s_plus - s_minus) < 1e-8 && s_plus > 2.0 * s_zero &&
                  res_plus <= 1e-10,
              "blockade: S symmetric in the detuning sign and suppressed at zero", buf);
    }

    {
        const double s_null = solve_sync(two_site_net(3.0, 0.0, 8));
        std::snprintf(buf, sizeof buf, "S %.2e", s_null);
        check(s_null < 1e-10, "uncoupled pair carries no phase preference", buf);
    }

    {
        const auto site = reference_site();
        auto detuned = site;
        detuned.omega = -2.0 * site.kerr;
        const double s_full = solve_sync(two_site_net(2.0 * site.kerr, 0.05, 10));
        const double s_pert = perturbative_sync(site, detuned, 0.05, 10, 10);
        const double rel = std::abs(s_pert - s_full) / s_full;
        std::snprintf(buf, sizeof buf, "full %.4e, first order %.4e, rel diff %.1e", s_full,
                      s_pert, rel);
        check(rel < 0.1, "first-order coherences track the weak-coupling steady state", buf);
    }

    {
        NetworkSpec net;
        net.oscillators = {reference_site()};
        net.oscillators[0].kerr = 2.0;
        const double n_lc = limit_cycle_occupation(net.oscillators[0]);
        net.oscillators[0].omega = 2.0 * net.oscillators[0].kerr * n_lc;
        net.coupling = Eigen::MatrixXd::Zero(1, 1);
        ClassicalState state;
        state.amplitudes = {cplx(std::sqrt(1.5 * n_lc), 0.0)};
        for (int i = 0; i < 50000; ++i) euler_step(state, net, 1e-3, 0.0, nullptr, nullptr);
        const double occ = std::norm(state.amplitudes[0]);
        std::snprintf(buf, sizeof buf, "|n - n_lc|/n_lc = %.2e", std::abs(occ - n_lc) / n_lc);
        check(std::abs(occ - n_lc) / n_lc < 1e-9,
              "noiseless trajectory locks onto the limit-cycle radius", buf);
    }

    {
        const double delta = 3.0;
        NetworkSpec net;
        net.oscillators = {reference_site(), reference_site()};
        net.oscillators[0].kerr = net.oscillators[1].kerr = 2.0;
        const double n_lc = limit_cycle_occupation(net.oscillators[0]);
        // Offsetting omega by 2 K n_lc keeps the on-cycle phase velocity small,
        // so the Euler winding error stays far below the tolerance.
        net.oscillators[0].omega = 2.0 * 2.0 * n_lc + delta / 2.0;
        net.oscillators[1].omega = 2.0 * 2.0 * n_lc - delta / 2.0;
        net.coupling = Eigen::MatrixXd::Zero(2, 2);
        ClassicalState state;
        state.amplitudes = {cplx(std::sqrt(n_lc), 0.0), cplx(std::sqrt(n_lc), 0.0)};
        for (int i = 0; i < 20000; ++i) euler_step(state, net, 1e-3, 0.0, nullptr, nullptr);
        const double before = std::arg(state.amplitudes[0]) - std::arg(state.amplitudes[1]);
        const double tau = 1.0;
        for (int i = 0; i < 1000; ++i) euler_step(state, net, 1e-3, 0.0, nullptr, nullptr);
        const double after = std::arg(state.amplitudes[0]) - std::arg(state.amplitudes[1]);
        // The relative phase advances by -delta * tau modulo 2 pi.
        const double err = std::remainder(after - before + delta * tau, 2.0 * M_PI);
        std::snprintf(buf, sizeof buf, "winding deviation %.2e over tau = %g", err, tau);
        check(std::abs(err) < 1e-3, "uncoupled relative phase winds at the detuning rate",
              buf);
    }

    {
        const SweepConfig a = parse_config_text(
            "mode = quantum-detuning\nseed = 5\n[oscillator 1]\nkerr = 10\ngamma = 1\n"
            "n_plus = 2\nsigma = 0.2\n[oscillator 2]\nkerr = 10\ngamma = 1\nn_plus = 2\n"
            "sigma = 0.2\n[coupling]\nrow = 0 0.1\nrow = 0.1 0\n[sweep]\naxis = delta\n"
            "values = 0 10 20\n",
            "a");
        const SweepConfig b = parse_config_text(
            "# comment\nmode  =  quantum-detuning\nseed = 5\n\n[oscillator 1]\nkerr = 10\n"
            "gamma = 1\nn_plus = 2\nsigma = 0.2   # inline\n[oscillator 2]\nkerr = 10\n"
            "gamma = 1\nn_plus = 2\nsigma = 0.2\n[coupling]\nrow = 0 0.1\nrow = 0.1 0\n"
            "[sweep]\naxis = delta\nvalues = 0 10 20\n",
            "b");
        SweepConfig c = a;
        c.seed = 6;
        refresh_canonical(c);
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(config_hash(a)));
        check(config_hash(a) == config_hash(b) && config_hash(a) != config_hash(c),
              "config hash ignores formatting and tracks values", buf);
    }

    {
        ResultTable table;
        table.columns = {"x", "y"};
        table.rows = {{0.1, std::nan("")}, {-3e200, 7.0 / 3.0}};
        table.mode = "quantum-detuning";
        const auto path =
            (std::filesystem::temp_directory_path() / "kerrsync_validate.csv").string();
        write_csv(table, path);
        const ResultTable back = read_csv(path);
        std::filesystem::remove(path);
        check(same_numbers(table, back), "CSV round-trips cells bit for bit", "");
    }

    std::printf(failures == 0 ? "all checks passed\n" : "%d check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state sweeps for stabilized Kerr self-oscillator networks"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    std::string config_path;
    RunFlags sweep_flags;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a sweep from a config file");
    sweep_cmd->add_option("--config", config_path, "sweep config file")->required();
    add_run_flags(sweep_cmd, sweep_flags);

    std::string figure_id;
    RunFlags repro_flags;
    std::string figure_help = "preset id, one of:";
    for (const auto& preset : figure_presets())
        figure_help += std::string(" ") + preset.id;
    CLI::App* repro_cmd = app.add_subcommand("reproduce", "run a shipped sweep preset");
    repro_cmd->add_option("figure", figure_id, figure_help)->required();
    add_run_flags(repro_cmd, repro_flags);

    CLI::App* validate_cmd = app.add_subcommand("validate", "run fast library self-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    sweep_flags.seed_set = sweep_cmd->count("--seed") > 0;
    repro_flags.seed_set = repro_cmd->count("--seed") > 0;

    try {
        if (sweep_cmd->parsed())
            return run_config(parse_config_file(config_path), sweep_flags, "sweep");
        if (repro_cmd->parsed()) {
            const FigurePreset* preset = find_figure(figure_id);
            if (!preset) {
                std::fprintf(stderr, "unknown figure id '%s'; known ids:\n", figure_id.c_str());
                for (const auto& p : figure_presets())
                    std::fprintf(stderr, "  %-7s %s\n", p.id, p.summary);
                return 2;
            }
            return run_config(parse_config_text(preset->config, preset->id), repro_flags,
                              preset->id);
        }
        if (validate_cmd->parsed()) return run_validate();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
