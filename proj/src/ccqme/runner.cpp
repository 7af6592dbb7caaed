#include "ccqme/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <thread>

#include <json.hpp>

#include "ccqme/canonical_map.hpp"
#include "ccqme/equilibrium.hpp"
#include "ccqme/errors.hpp"
#include "ccqme/heom.hpp"
#include "ccqme/metrics.hpp"
#include "ccqme/units.hpp"

namespace ccqme {

namespace fs = std::filesystem;
using nlohmann::json;
using Eigen::MatrixXcd;

namespace {

std::string coupling_tag(double g)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "g%g", g);
    return buf;
}

PotentialCurve base_potential(const SystemConfig& s)
{
    switch (s.potential) {
    case PotentialKind::surrogate_taa: return surrogate_taa_potential();
    case PotentialKind::harmonic: return harmonic_potential(s.harmonic_omega, s.mass.value);
    case PotentialKind::file: return load_potential_file(s.potential_path);
    }
    throw ConfigError("unknown potential");
}

struct Task {
    Method method;
    double coupling;
};

struct TaskResult {
    std::optional<Trajectory> trajectory;
    std::optional<MatrixXcd> steady;
    std::optional<double> steady_residual;
    std::vector<std::string> files;
    std::vector<std::string> warnings;
    std::optional<std::string> failure;
    std::optional<double> leakage;
    std::optional<double> center;
    std::optional<double> momentum;
};

bool propagates(Scenario s) { return s != Scenario::steady_compare; }

void write_matrix(const fs::path& path, const MatrixXcd& rho)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << "# n m re im\n";
    char buf[96];
    for (int a = 0; a < rho.rows(); ++a)
        for (int b = 0; b < rho.cols(); ++b) {
            std::snprintf(buf, sizeof buf, "%d %d %.12e %.12e\n", a, b, rho(a, b).real(), rho(a, b).imag());
            out << buf;
        }
}

TaskResult run_task(const RunConfig& cfg, const Task& task, const fs::path& dir)
{
    TaskResult res;
    const std::string stem = std::string(method_name(task.method)) + "_" + coupling_tag(task.coupling);
    try {
        const BathSpec bath = cfg.bath(task.coupling);
        const PreparedSystem prep = prepare_system(cfg, task.coupling);
        const NLevelSystem& sys = prep.system;

        std::unique_ptr<LinearGenerator> gen;
        std::optional<Superoperator> dense;
        if (task.method == Method::redfield) {
            dense = redfield_generator(sys, bath, cfg.secular);
        } else if (task.method == Method::ccqme) {
            CcqmeOptions opt;
            opt.secular = cfg.secular;
            opt.secular_map_coherences = cfg.secular_map_coherences;
            dense = ccqme_generator(sys, bath, opt);
        }
        if (dense) gen = std::make_unique<DenseGenerator>(*dense);
        else gen = std::make_unique<HeomGenerator>(sys, bath, cfg.heom);

        if (propagates(cfg.scenario)) {
            MatrixXcd rho0;
            if (cfg.scenario == Scenario::relax_excited) {
                rho0 = initial_eigenstate(sys, 1);
            } else if (cfg.scenario == Scenario::wavepacket) {
                const PotentialCurve bare = base_potential(cfg.system);
                WavepacketSpec wp;
                wp.center = cfg.wavepacket_center ? *cfg.wavepacket_center : left_well_minimum(*prep.grid, bare);
                wp.width = cfg.wavepacket_width.value;
                wp.mass = cfg.system.mass.value;
                wp.momentum = momentum_for_energy(cfg.wavepacket_energy.value, wp.mass);
                auto packet = initial_wavepacket(*prep.solution, *prep.grid, wp, sys.size());
                res.leakage = packet.leakage;
                res.center = wp.center;
                res.momentum = wp.momentum;
                if (packet.leakage > cfg.leakage_bound) {
                    char buf[128];
                    std::snprintf(buf, sizeof buf, "%s: wavepacket leakage %.3g exceeds bound %.3g", stem.c_str(),
                                  packet.leakage, cfg.leakage_bound);
                    res.warnings.emplace_back(buf);
                }
                rho0 = packet.rho;
            } else {
                rho0 = initial_eigenstate(sys, 0);
            }
            PropagationSettings ps;
            ps.t_max = cfg.t_max.value;
            ps.dt = cfg.dt.value;
            ps.stride = cfg.stride;
            ps.coherences = cfg.coherences;
            Trajectory traj = propagate(*gen, sys, rho0, ps);
            double worst = 0.0;
            for (double v : traj.min_eig) worst = std::min(worst, v);
            if (worst < -1e-8) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "%s: state lost positivity (min eigenvalue %.3g)", stem.c_str(), worst);
                res.warnings.emplace_back(buf);
            }
            const std::string name = "traj_" + stem + ".csv";
            std::ofstream out(dir / name);
            if (!out) throw IoError("cannot write '" + (dir / name).string() + "'");
            write_trajectory_csv(out, traj);
            res.files.push_back(name);
            traj.final_state.resize(0);
            res.trajectory = std::move(traj);
        }

        try {
            if (dense) {
                res.steady = stationary_state(*dense);
            } else {
                auto ss = heom_steady_state(sys, bath, cfg.heom, cfg.heom_steady);
                res.steady = ss.rho;
                res.steady_residual = ss.residual;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::not_available && e.kind() != ErrorKind::numerical_failure) throw;
            res.warnings.push_back(stem + ": no steady state (" + e.what() + ")");
        }
        if (res.steady) {
            const std::string name = "steady_" + stem + ".txt";
            write_matrix(dir / name, *res.steady);
            res.files.push_back(name);
        }
    } catch (const std::exception& e) {
        res.failure = stem + ": " + e.what();
    }
    return res;
}

json array_of(const Eigen::VectorXd& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

template <class T>
json tracked(const Tracked<T>& t)
{
    return {{"value", t.value}, {"provenance", provenance_name(t.provenance)}};
}

std::string timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string_view renormalization_name(Renormalization r)
{
    switch (r) {
    case Renormalization::none: return "none";
    case Renormalization::truncated: return "truncated";
    case Renormalization::potential: return "potential";
    }
    return "?";
}

std::string_view terminator_name(Terminator t)
{
    switch (t) {
    case Terminator::none: return "none";
    case Terminator::white: return "white";
    case Terminator::resolved: return "resolved";
    }
    return "?";
}

}  // namespace

PreparedSystem prepare_system(const RunConfig& cfg, double coupling)
{
    const auto& s = cfg.system;
    const bool renorm = coupling > 0.0;
    switch (s.source) {
    case SystemSource::builtin:
    case SystemSource::file: {
        NLevelSystem base = s.source == SystemSource::builtin ? taa6_system() : load_system_file(s.path);
        if (s.levels > base.size()) throw ConfigError("system has fewer levels than requested");
        NLevelSystem sys = truncate(base, s.levels);
        if (renorm && cfg.renormalization == Renormalization::truncated)
            sys = renormalize(sys, coupling, cfg.cutoff.value);
        return {sys, std::nullopt, std::nullopt};
    }
    case SystemSource::dvr: {
        Grid1D grid(s.grid_min, s.grid_max, s.grid_points);
        PotentialCurve v = base_potential(s);
        if (renorm && cfg.renormalization == Renormalization::potential)
            v = with_counterterm(v, coupling * cfg.cutoff.value);
        EigenSolution sol = solve_schroedinger(grid, v, s.mass.value, s.levels);
        NLevelSystem sys = system_from_dvr(sol, grid, s.levels, v.label);
        if (renorm && cfg.renormalization == Renormalization::truncated)
            sys = renormalize(sys, coupling, cfg.cutoff.value);
        return {sys, grid, sol};
    }
    }
    throw ConfigError("unknown system source");
}

std::vector<BuiltinEntry> list_builtins()
{
    return {
        {"system", "taa6", "six-level proton-transfer model (tabulated energies and coordinate matrix)"},
        {"potential", "surrogate-taa", "quartic double well fitted to the taa6 spectrum and barrier"},
        {"potential", "harmonic", "0.5 m w^2 q^2, needs system.harmonic_omega"},
        {"scenario", "relax-ground", "start in |0><0|"},
        {"scenario", "relax-excited", "start in |1><1|"},
        {"scenario", "wavepacket", "Gaussian packet from the left well with barrier-height kinetic energy"},
        {"scenario", "steady-compare", "steady states only, against Gibbs and mean-force states"},
        {"scenario", "sweep", "ground-state relaxation over a coupling list, with error curves"},
        {"method", "redfield", "second-order Redfield generator"},
        {"method", "ccqme", "Redfield corrected by the canonical map"},
        {"method", "heom", "hierarchical equations of motion"},
    };
}

RunOutcome run(const RunConfig& cfg, const RunOptions& options)
{
    RunOutcome outcome;
    const fs::path dir = options.output_directory ? *options.output_directory : cfg.output_directory;
    outcome.output_directory = dir.string();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

    std::vector<Task> tasks;
    for (double g : cfg.couplings)
        for (Method m : cfg.methods) tasks.push_back({m, g});
    std::vector<TaskResult> results(tasks.size());

    const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(tasks.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = run_task(cfg, tasks[i], dir);
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    auto find = [&](Method m, double g) -> const TaskResult* {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            if (tasks[i].method == m && tasks[i].coupling == g) return &results[i];
        return nullptr;
    };

    json points = json::array();
    std::vector<std::array<std::optional<double>, 3>> error_rows;
    const double t0 = 0.0, t1 = cfg.t_max.value;
    for (double g : cfg.couplings) {
        json p;
        p["coupling"] = g;
        try {
            const BathSpec bath = cfg.bath(g);
            const NLevelSystem sys = prepare_system(cfg, g).system;
            const EquilibriumStates eq = mean_force_gibbs2(sys, bath);
            p["energies_hartree"] = array_of(sys.energies());
            p["gibbs_populations"] = array_of(eq.gibbs.diagonal().real());
            p["mean_force_populations"] = array_of(eq.mean_force.diagonal().real());
            p["mean_force_min_eigenvalue"] = eq.min_eigenvalue;
            if (eq.min_eigenvalue < -1e-10)
                outcome.warnings.push_back(coupling_tag(g) + ": second-order mean-force state is not positive");
            p["gibbs_vs_mean_force_trace_distance"] = steady_state_distance(eq.gibbs, eq.mean_force);

            const TaskResult* heom = find(Method::heom, g);
            const MatrixXcd* ref = heom && heom->steady ? &*heom->steady : nullptr;
            const RegimeReport rr = classify_regime(sys, bath, ref);
            json regime{{"label", regime_name(rr.label)},
                        {"gibbs_vs_mean_force", rr.gibbs_vs_mean_force},
                        {"intermediate_checked", rr.intermediate_checked}};
            if (rr.mean_force_vs_reference) regime["mean_force_vs_reference"] = *rr.mean_force_vs_reference;
            else regime["mean_force_vs_reference"] = "not available: no HEOM steady state";
            p["regime"] = regime;

            json steady = json::object();
            for (Method m : cfg.methods) {
                const TaskResult* r = find(m, g);
                if (!r || !r->steady) continue;
                json s{{"populations", array_of(r->steady->diagonal().real())},
                       {"trace_distance_to_gibbs", steady_state_distance(*r->steady, eq.gibbs)},
                       {"trace_distance_to_mean_force", steady_state_distance(*r->steady, eq.mean_force)}};
                if (r->steady_residual) s["residual"] = *r->steady_residual;
                steady[std::string(method_name(m))] = s;
            }
            p["steady_states"] = steady;
        } catch (const std::exception& e) {
            outcome.failures.push_back(coupling_tag(g) + ": equilibrium analysis failed: " + e.what());
        }

        if (propagates(cfg.scenario)) {
            auto delta = [&](Method a, Method b) -> std::optional<double> {
                const TaskResult* ra = find(a, g);
                const TaskResult* rb = find(b, g);
                if (!ra || !rb || !ra->trajectory || !rb->trajectory) return std::nullopt;
                return time_averaged_error(*ra->trajectory, *rb->trajectory, 0, t0, t1, cfg.averaging);
            };
            std::array<std::optional<double>, 3> row{delta(Method::ccqme, Method::heom),
                                                     delta(Method::redfield, Method::heom),
                                                     delta(Method::redfield, Method::ccqme)};
            json errs = json::object();
            const char* names[] = {"ccqme_heom", "redfield_heom", "redfield_ccqme"};
            for (int k = 0; k < 3; ++k)
                if (row[k]) errs[names[k]] = *row[k];
            p["population_error_percent"] = errs;
            error_rows.push_back(row);
        }
        for (Method m : cfg.methods) {
            const TaskResult* r = find(m, g);
            if (r && r->leakage) {
                p["wavepacket"] = {{"center_bohr", *r->center}, {"momentum_au", *r->momentum}, {"leakage", *r->leakage}};
                break;
            }
        }
        points.push_back(p);
    }

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        for (auto& f : results[i].files) outcome.files.push_back(f);
        for (auto& w : results[i].warnings) outcome.warnings.push_back(w);
        if (results[i].failure) outcome.failures.push_back(*results[i].failure);
    }

    if (propagates(cfg.scenario) && cfg.methods.size() > 1) {
        std::ofstream out(dir / "errors.csv");
        if (!out) throw IoError("cannot write errors.csv");
        out << "gamma,delta_ccqme_heom,delta_redfield_heom,delta_redfield_ccqme\n";
        char buf[32];
        for (std::size_t i = 0; i < cfg.couplings.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.12e", cfg.couplings[i]);
            out << buf;
            for (const auto& v : error_rows[i]) {
                out << ',';
                if (v) {
                    std::snprintf(buf, sizeof buf, "%.12e", *v);
                    out << buf;
                }
            }
            out << '\n';
        }
        outcome.files.push_back("errors.csv");
    }

    json summary;
    if (!options.seedless) summary["generated_at"] = timestamp();
    summary["scenario"] = scenario_name(cfg.scenario);
    json methods = json::array();
    for (Method m : cfg.methods) methods.push_back(method_name(m));
    summary["methods"] = methods;
    summary["secular"] = cfg.secular;
    json sys{{"levels", cfg.system.levels}, {"renormalization", renormalization_name(cfg.renormalization)}};
    switch (cfg.system.source) {
    case SystemSource::builtin: sys["source"] = "builtin:" + cfg.system.builtin; break;
    case SystemSource::file: sys["source"] = "file:" + cfg.system.path; break;
    case SystemSource::dvr:
        sys["source"] = "dvr";
        sys["grid"] = {{"q_min_bohr", cfg.system.grid_min},
                       {"q_max_bohr", cfg.system.grid_max},
                       {"points", cfg.system.grid_points}};
        sys["mass"] = tracked(cfg.system.mass);
        break;
    }
    summary["system"] = sys;
    summary["parameters"] = {
        {"cutoff_hartree", tracked(cfg.cutoff)},
        {"temperature_kelvin", tracked(cfg.temperature)},
        {"beta_per_hartree", units::beta_from_kelvin(cfg.temperature.value)},
        {"n_matsubara", tracked(cfg.n_matsubara)},
        {"t_max_au", tracked(cfg.t_max)},
        {"dt_au", tracked(cfg.dt)},
        {"stride", cfg.stride},
        {"averaging", cfg.averaging == Averaging::mean_absolute ? "mean-absolute" : "rms"},
        {"heom",
         {{"depth", cfg.heom.depth},
          {"n_exponentials", cfg.heom.n_exponentials},
          {"terminator", terminator_name(cfg.heom.terminator)},
          {"steady_state", cfg.heom_steady == SteadyStateMethod::direct ? "direct" : "propagate"}}},
    };
    if (cfg.scenario == Scenario::wavepacket)
        summary["parameters"]["wavepacket"] = {{"width_bohr", tracked(cfg.wavepacket_width)},
                                               {"energy_hartree", tracked(cfg.wavepacket_energy)},
                                               {"mass", tracked(cfg.system.mass)}};
    summary["points"] = points;
    summary["files"] = outcome.files;
    summary["warnings"] = outcome.warnings;
    summary["failures"] = outcome.failures;

    std::ofstream out(dir / "summary.json");
    if (!out) throw IoError("cannot write summary.json");
    out << summary.dump(2) << '\n';
    outcome.files.push_back("summary.json");
    return outcome;
}

}  // namespace ccqme
