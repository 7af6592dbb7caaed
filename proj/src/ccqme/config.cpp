#include "ccqme/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ccqme/errors.hpp"
#include "ccqme/units.hpp"

namespace ccqme {

using nlohmann::json;
using units::Dimension;

std::string_view provenance_name(Provenance p)
{
    switch (p) {
    case Provenance::literature: return "literature";
    case Provenance::assumed: return "assumed";
    case Provenance::user: return "user";
    }
    return "?";
}

std::string_view method_name(Method m)
{
    switch (m) {
    case Method::redfield: return "redfield";
    case Method::ccqme: return "ccqme";
    case Method::heom: return "heom";
    }
    return "?";
}

std::string_view scenario_name(Scenario s)
{
    switch (s) {
    case Scenario::relax_ground: return "relax-ground";
    case Scenario::relax_excited: return "relax-excited";
    case Scenario::wavepacket: return "wavepacket";
    case Scenario::steady_compare: return "steady-compare";
    case Scenario::sweep: return "sweep";
    }
    return "?";
}

BathSpec RunConfig::bath(double coupling) const
{
    return BathSpec(coupling, cutoff.value, units::beta_from_kelvin(temperature.value), n_matsubara.value);
}

bool RunConfig::has(Method m) const
{
    for (Method x : methods)
        if (x == m) return true;
    return false;
}

namespace {

// Reads fields out of one JSON object, recording problems instead of throwing.
class Reader {
public:
    Reader(const json& node, std::string path, std::vector<std::string>& diag)
        : node_(node), path_(std::move(path)), diag_(diag)
    {
        if (!node_.is_object()) problem(path_.empty() ? "top level" : path_, "must be an object");
    }

    bool has(const std::string& key) const { return node_.is_object() && node_.contains(key); }
    const json& at(const std::string& key) const { return node_.at(key); }
    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void problem(const std::string& where, const std::string& what) { diag_.push_back(where + ": " + what); }

    void quantity(const std::string& key, Dimension dim, Tracked<double>& out)
    {
        if (!has(key)) return;
        if (auto v = parse(key, dim)) out = {*v, Provenance::user};
    }

    void quantity(const std::string& key, Dimension dim, double& out)
    {
        if (!has(key)) return;
        if (auto v = parse(key, dim)) out = *v;
    }

    template <class T>
    void integer(const std::string& key, T& out)
    {
        if (!has(key)) return;
        const json& v = at(key);
        if (!v.is_number_integer()) return problem(where(key), "must be an integer");
        out = v.get<int>();
    }

    void integer(const std::string& key, Tracked<int>& out)
    {
        int v = out.value;
        const auto before = diag_.size();
        integer(key, v);
        if (has(key) && diag_.size() == before) out = {v, Provenance::user};
    }

    void boolean(const std::string& key, bool& out)
    {
        if (!has(key)) return;
        if (!at(key).is_boolean()) return problem(where(key), "must be true or false");
        out = at(key).get<bool>();
    }

    std::optional<std::string> text(const std::string& key)
    {
        if (!has(key)) return std::nullopt;
        if (!at(key).is_string()) {
            problem(where(key), "must be a string");
            return std::nullopt;
        }
        return at(key).get<std::string>();
    }

    void reject_unknown(std::initializer_list<const char*> known)
    {
        if (!node_.is_object()) return;
        std::set<std::string> k(known.begin(), known.end());
        for (auto it = node_.begin(); it != node_.end(); ++it)
            if (!k.count(it.key())) problem(where(it.key()), "unknown key");
    }

    std::optional<double> parse(const std::string& key, Dimension dim) { return parse_value(at(key), where(key), dim); }

    std::optional<double> parse_value(const json& v, const std::string& w, Dimension dim)
    {
        try {
            if (v.is_number()) return v.get<double>();
            if (v.is_string()) return units::parse_quantity(v.get<std::string>(), dim);
            problem(w, "must be a number or a string with a unit");
        } catch (const Error& e) {
            problem(w, e.what());
        }
        return std::nullopt;
    }

private:
    const json& node_;
    std::string path_;
    std::vector<std::string>& diag_;
};

template <class E>
std::optional<E> pick(Reader& r, const std::string& key, std::initializer_list<std::pair<const char*, E>> options)
{
    auto s = r.text(key);
    if (!s) return std::nullopt;
    for (const auto& [name, value] : options)
        if (*s == name) return value;
    std::string list;
    for (const auto& [name, value] : options) list += (list.empty() ? "" : ", ") + std::string(name);
    r.problem(r.where(key), "'" + *s + "' is not one of: " + list);
    return std::nullopt;
}

void read_system(Reader& r, RunConfig& cfg, std::vector<std::string>& diag)
{
    if (!r.has("system")) return;
    Reader s(r.at("system"), "system", diag);
    s.reject_unknown({"source", "name", "path", "levels", "potential", "potential_path", "harmonic_omega", "grid",
                      "mass"});
    auto& sys = cfg.system;
    if (auto v = pick<SystemSource>(s, "source", {{"builtin", SystemSource::builtin}, {"file", SystemSource::file},
                                                   {"dvr", SystemSource::dvr}}))
        sys.source = *v;
    if (auto v = s.text("name")) sys.builtin = *v;
    if (auto v = s.text("path")) sys.path = *v;
    if (sys.source == SystemSource::dvr) sys.levels = 12;
    s.integer("levels", sys.levels);
    if (auto v = pick<PotentialKind>(s, "potential", {{"surrogate-taa", PotentialKind::surrogate_taa},
                                                      {"harmonic", PotentialKind::harmonic},
                                                      {"file", PotentialKind::file}}))
        sys.potential = *v;
    if (auto v = s.text("potential_path")) sys.potential_path = *v;
    s.quantity("harmonic_omega", Dimension::energy, sys.harmonic_omega);
    s.quantity("mass", Dimension::dimensionless, sys.mass);
    if (s.has("grid")) {
        Reader g(s.at("grid"), "system.grid", diag);
        g.reject_unknown({"q_min", "q_max", "points"});
        g.quantity("q_min", Dimension::length, sys.grid_min);
        g.quantity("q_max", Dimension::length, sys.grid_max);
        g.integer("points", sys.grid_points);
    }
}

void read_couplings(Reader& b, RunConfig& cfg)
{
    if (!b.has("coupling")) {
        b.problem("bath.coupling", "missing");
        return;
    }
    const json& v = b.at("coupling");
    if (v.is_number()) {
        cfg.couplings = {v.get<double>()};
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) b.problem("bath.coupling[" + std::to_string(i) + "]", "must be a number");
            else cfg.couplings.push_back(v[i].get<double>());
        }
    } else if (v.is_object()) {
        double lo = 0, hi = 0, step = 0;
        bool ok = true;
        const std::pair<const char*, double*> fields[] = {{"from", &lo}, {"to", &hi}, {"step", &step}};
        for (auto [key, dst] : fields) {
            if (!v.contains(key) || !v[key].is_number()) {
                b.problem(std::string("bath.coupling.") + key, "must be a number");
                ok = false;
            } else {
                *dst = v[key].get<double>();
            }
        }
        if (ok && !(step > 0.0)) b.problem("bath.coupling.step", "must be positive");
        else if (ok && hi < lo) b.problem("bath.coupling", "'to' is below 'from'");
        else if (ok) {
            const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
            for (long i = 0; i <= n; ++i) cfg.couplings.push_back(std::round((lo + i * step) * 1e12) / 1e12);
        }
    } else {
        b.problem("bath.coupling", "must be a number, a list, or {from, to, step}");
    }
    if (cfg.couplings.empty() && (v.is_array() || v.is_object())) b.problem("bath.coupling", "no coupling values");
    for (double g : cfg.couplings)
        if (!(g >= 0.0) || !std::isfinite(g)) b.problem("bath.coupling", "values must be finite and non-negative");
}

void validate(RunConfig& cfg, std::vector<std::string>& diag)
{
    auto& sys = cfg.system;
    auto problem = [&](const std::string& w, const std::string& what) { diag.push_back(w + ": " + what); };

    if (cfg.methods.empty()) problem("methods", "at least one method is required");
    if (!(cfg.dt.value > 0.0)) problem("propagation.dt", "must be positive");
    if (!(cfg.t_max.value > 0.0)) problem("propagation.t_max", "must be positive");
    else if (cfg.dt.value > 0.0 && cfg.t_max.value < cfg.dt.value) problem("propagation.t_max", "shorter than one step");
    if (cfg.stride < 1) problem("propagation.stride", "must be at least 1");
    if (!(cfg.temperature.value > 0.0))
        problem("bath.temperature", "must be positive (zero temperature gives an infinite beta)");
    if (!(cfg.cutoff.value > 0.0)) problem("bath.cutoff", "must be positive");
    if (cfg.n_matsubara.value < 1) problem("bath.n_matsubara", "must be at least 1");
    if (cfg.heom.depth < 1) problem("heom.depth", "must be at least 1");
    if (cfg.heom.n_exponentials < 1) problem("heom.n_exponentials", "must be at least 1");
    if (cfg.secular_map_coherences && !cfg.secular) problem("secular_map_coherences", "requires secular = true");
    if (!(cfg.leakage_bound >= 0.0)) problem("wavepacket.leakage_bound", "must be non-negative");
    if (!(cfg.wavepacket_width.value > 0.0)) problem("wavepacket.width", "must be positive");
    if (!(cfg.wavepacket_energy.value >= 0.0)) problem("wavepacket.energy", "must be non-negative");

    if (sys.levels < 1) problem("system.levels", "must be at least 1");
    switch (sys.source) {
    case SystemSource::builtin:
        if (sys.builtin != "taa6") problem("system.name", "unknown builtin '" + sys.builtin + "' (available: taa6)");
        else if (sys.levels > 6) problem("system.levels", "builtin taa6 has 6 levels");
        break;
    case SystemSource::file:
        if (sys.path.empty()) problem("system.path", "required for source 'file'");
        break;
    case SystemSource::dvr:
        if (!(sys.grid_max > sys.grid_min)) problem("system.grid", "q_max must exceed q_min");
        if (sys.grid_points < 2) problem("system.grid.points", "must be at least 2");
        else if (sys.levels > sys.grid_points) problem("system.levels", "exceeds the number of grid points");
        if (!(sys.mass.value > 0.0)) problem("system.mass", "must be positive");
        if (sys.potential == PotentialKind::file && sys.potential_path.empty())
            problem("system.potential_path", "required for potential 'file'");
        if (sys.potential == PotentialKind::harmonic && !(sys.harmonic_omega > 0.0))
            problem("system.harmonic_omega", "must be positive for the harmonic potential");
        break;
    }
    if (cfg.renormalization == Renormalization::potential && sys.source != SystemSource::dvr)
        problem("renormalization", "'potential' needs a DVR system source");
    if (cfg.scenario == Scenario::wavepacket) {
        if (sys.source != SystemSource::dvr) problem("scenario", "wavepacket needs a DVR system source");
        else if (sys.levels < 12) problem("system.levels", "wavepacket needs at least 12 levels");
        if (cfg.renormalization == Renormalization::truncated)
            problem("renormalization", "wavepacket needs 'potential' or 'none' so the packet and basis agree");
    }
    if (cfg.scenario == Scenario::relax_excited && sys.levels < 2)
        problem("scenario", "relax-excited needs at least two levels");
    for (auto [a, b] : cfg.coherences)
        if (a < 0 || b < 0 || a >= sys.levels || b >= sys.levels)
            problem("output.coherences", "pair (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range");

    if (cfg.temperature.value > 0.0 && cfg.cutoff.value > 0.0 && cfg.n_matsubara.value >= 1) {
        for (double g : cfg.couplings) {
            if (!(g >= 0.0)) continue;
            try {
                (void)cfg.bath(g);
            } catch (const Error& e) {
                problem("bath", e.what());
                break;
            }
        }
    }
}

}  // namespace

ConfigResult parse_config(const std::string& json_text)
{
    ConfigResult result;
    auto& diag = result.diagnostics;
    json doc;
    try {
        doc = json::parse(json_text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        diag.push_back(std::string("syntax: ") + e.what());
        return result;
    }
    RunConfig cfg;
    Reader r(doc, "", diag);
    if (!doc.is_object()) return result;
    r.reject_unknown({"system", "renormalization", "bath", "methods", "secular", "secular_map_coherences", "scenario",
                      "propagation", "heom", "wavepacket", "output", "averaging"});

    read_system(r, cfg, diag);
    cfg.renormalization =
        cfg.system.source == SystemSource::dvr ? Renormalization::potential : Renormalization::truncated;
    if (auto v = pick<Renormalization>(r, "renormalization", {{"none", Renormalization::none},
                                                              {"truncated", Renormalization::truncated},
                                                              {"potential", Renormalization::potential}}))
        cfg.renormalization = *v;

    if (!r.has("bath")) {
        diag.push_back("bath: missing");
    } else {
        Reader b(r.at("bath"), "bath", diag);
        b.reject_unknown({"coupling", "cutoff", "temperature", "n_matsubara"});
        read_couplings(b, cfg);
        b.quantity("cutoff", Dimension::energy, cfg.cutoff);
        b.quantity("temperature", Dimension::temperature, cfg.temperature);
        b.integer("n_matsubara", cfg.n_matsubara);
    }

    if (!r.has("methods")) {
        diag.push_back("methods: missing");
    } else if (!r.at("methods").is_array()) {
        diag.push_back("methods: must be a list");
    } else {
        std::set<Method> seen;
        for (const auto& m : r.at("methods")) {
            const std::string s = m.is_string() ? m.get<std::string>() : m.dump();
            std::optional<Method> v;
            for (Method k : {Method::redfield, Method::ccqme, Method::heom})
                if (s == method_name(k)) v = k;
            if (!v) diag.push_back("methods: unknown method " + s + " (available: redfield, ccqme, heom)");
            else if (seen.insert(*v).second) cfg.methods.push_back(*v);
        }
    }

    r.boolean("secular", cfg.secular);
    r.boolean("secular_map_coherences", cfg.secular_map_coherences);
    if (auto v = pick<Scenario>(r, "scenario", {{"relax-ground", Scenario::relax_ground},
                                                {"relax-excited", Scenario::relax_excited},
                                                {"wavepacket", Scenario::wavepacket},
                                                {"steady-compare", Scenario::steady_compare},
                                                {"sweep", Scenario::sweep}}))
        cfg.scenario = *v;

    if (r.has("propagation")) {
        Reader p(r.at("propagation"), "propagation", diag);
        p.reject_unknown({"t_max", "dt", "stride"});
        p.quantity("t_max", Dimension::time, cfg.t_max);
        p.quantity("dt", Dimension::time, cfg.dt);
        p.integer("stride", cfg.stride);
    }
    if (r.has("heom")) {
        Reader h(r.at("heom"), "heom", diag);
        h.reject_unknown({"depth", "n_exponentials", "terminator", "steady_state"});
        h.integer("depth", cfg.heom.depth);
        h.integer("n_exponentials", cfg.heom.n_exponentials);
        if (auto v = pick<Terminator>(h, "terminator", {{"none", Terminator::none}, {"white", Terminator::white},
                                                        {"resolved", Terminator::resolved}}))
            cfg.heom.terminator = *v;
        if (auto v = pick<SteadyStateMethod>(h, "steady_state", {{"direct", SteadyStateMethod::direct},
                                                                 {"propagate", SteadyStateMethod::propagate}}))
            cfg.heom_steady = *v;
    }
    if (r.has("wavepacket")) {
        Reader w(r.at("wavepacket"), "wavepacket", diag);
        w.reject_unknown({"width", "center", "energy", "leakage_bound"});
        w.quantity("width", Dimension::length, cfg.wavepacket_width);
        if (w.has("center"))
            if (auto v = w.parse("center", Dimension::length)) cfg.wavepacket_center = *v;
        w.quantity("energy", Dimension::energy, cfg.wavepacket_energy);
        w.quantity("leakage_bound", Dimension::dimensionless, cfg.leakage_bound);
    }
    if (r.has("output")) {
        Reader o(r.at("output"), "output", diag);
        o.reject_unknown({"directory", "coherences"});
        if (auto v = o.text("directory")) cfg.output_directory = *v;
        if (o.has("coherences")) {
            const json& c = o.at("coherences");
            bool ok = c.is_array();
            if (ok)
                for (const auto& pair : c) {
                    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                        !pair[1].is_number_integer()) {
                        ok = false;
                        break;
                    }
                    cfg.coherences.emplace_back(pair[0].get<int>(), pair[1].get<int>());
                }
            if (!ok) diag.push_back("output.coherences: must be a list of [n, m] integer pairs");
        }
    }
    if (auto v = pick<Averaging>(r, "averaging", {{"mean-absolute", Averaging::mean_absolute},
                                                  {"rms", Averaging::root_mean_square}}))
        cfg.averaging = *v;

    validate(cfg, diag);
    if (diag.empty()) result.config = std::move(cfg);
    return result;
}

ConfigResult load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        ConfigResult r;
        r.diagnostics.push_back("config: cannot open '" + path + "'");
        return r;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace ccqme
