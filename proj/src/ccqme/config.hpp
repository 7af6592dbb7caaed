// config.hpp: run configuration: JSON document with unit-tagged quantities
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccqme/bath.hpp"
#include "ccqme/grid_dvr.hpp"
#include "ccqme/heom.hpp"
#include "ccqme/metrics.hpp"

namespace ccqme {

// Where a resolved parameter came from.
enum class Provenance { literature, assumed, user };
std::string_view provenance_name(Provenance p);

template <class T>
struct Tracked {
    T value{};
    Provenance provenance = Provenance::assumed;
};

enum class SystemSource { builtin, file, dvr };
enum class PotentialKind { surrogate_taa, harmonic, file };
enum class Method { redfield, ccqme, heom };
enum class Scenario { relax_ground, relax_excited, wavepacket, steady_compare, sweep };
enum class Renormalization { none, truncated, potential };

std::string_view method_name(Method m);
std::string_view scenario_name(Scenario s);

struct SystemConfig {
    SystemSource source = SystemSource::builtin;
    std::string builtin = "taa6";
    std::string path;  // system file
    int levels = 6;

    PotentialKind potential = PotentialKind::surrogate_taa;
    std::string potential_path;
    double harmonic_omega = 0.0;
    double grid_min = -1.5;
    double grid_max = 2.1;
    int grid_points = 121;
    Tracked<double> mass{1836.15, Provenance::assumed};
};

struct RunConfig {
    SystemConfig system;
    Renormalization renormalization = Renormalization::truncated;

    std::vector<double> couplings;
    Tracked<double> cutoff{2.28e-3, Provenance::assumed};
    Tracked<double> temperature{300.0, Provenance::literature};
    Tracked<int> n_matsubara{1000, Provenance::assumed};

    std::vector<Method> methods;
    bool secular = true;
    bool secular_map_coherences = false;
    Scenario scenario = Scenario::relax_ground;

    Tracked<double> t_max{2500.0 / 0.02418884, Provenance::literature};
    Tracked<double> dt{1.0, Provenance::assumed};
    int stride = 10;
    std::vector<std::pair<int, int>> coherences;

    HeomConfig heom;
    SteadyStateMethod heom_steady = SteadyStateMethod::direct;

    Tracked<double> wavepacket_width{0.5, Provenance::literature};
    std::optional<double> wavepacket_center;  // default: left-well minimum
    Tracked<double> wavepacket_energy{1573.3 * 4.556335e-6, Provenance::literature};
    double leakage_bound = 0.05;

    Averaging averaging = Averaging::mean_absolute;
    std::string output_directory = "ccqme_out";

    BathSpec bath(double coupling) const;
    bool has(Method m) const;
};

struct ConfigResult {
    std::optional<RunConfig> config;  // set only when diagnostics is empty
    std::vector<std::string> diagnostics;
};

// Parses and validates a JSON document, collecting every problem found.
ConfigResult parse_config(const std::string& json_text);
ConfigResult load_config(const std::string& path);

}  // namespace ccqme
