#include "ccqme/ccqme.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "ccqme/config.hpp"
#include "ccqme/equilibrium.hpp"
#include "ccqme/errors.hpp"
#include "ccqme/runner.hpp"
#include "ccqme/units.hpp"

struct ccqme_config {
    ccqme::RunConfig value;
};

struct ccqme_system {
    ccqme::NLevelSystem value;
};

namespace {

thread_local std::string last_error;

ccqme_status fail(ccqme_status s, std::string msg)
{
    last_error = std::move(msg);
    return s;
}

ccqme_status status_of(ccqme::ErrorKind k)
{
    using ccqme::ErrorKind;
    switch (k) {
    case ErrorKind::invalid_input: return CCQME_ERR_INVALID_INPUT;
    case ErrorKind::numerical_failure: return CCQME_ERR_NUMERICAL;
    case ErrorKind::configuration: return CCQME_ERR_CONFIG;
    case ErrorKind::io: return CCQME_ERR_IO;
    case ErrorKind::not_available: return CCQME_ERR_NOT_AVAILABLE;
    }
    return CCQME_ERR_INTERNAL;
}

char* duplicate(const std::string& s)
{
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

// Runs f, translating exceptions into status codes.
template <class F>
ccqme_status guarded(F&& f)
{
    try {
        last_error.clear();
        return f();
    } catch (const ccqme::Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(CCQME_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CCQME_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CCQME_ERR_INTERNAL, "unknown error");
    }
}

ccqme_status finish_config(ccqme::ConfigResult&& r, ccqme_config** out, char** diagnostics)
{
    if (!r.config) {
        std::string joined;
        for (const auto& d : r.diagnostics) joined += d + "\n";
        if (diagnostics) *diagnostics = duplicate(joined);
        return fail(CCQME_ERR_CONFIG, std::to_string(r.diagnostics.size()) + " configuration problem(s)");
    }
    if (diagnostics) *diagnostics = nullptr;
    *out = new ccqme_config{std::move(*r.config)};
    return CCQME_OK;
}

}  // namespace

extern "C" {

const char* ccqme_version(void) { return "1.0.0"; }

const char* ccqme_status_name(ccqme_status status)
{
    switch (status) {
    case CCQME_OK: return "ok";
    case CCQME_ERR_ARGUMENT: return "invalid argument";
    case CCQME_ERR_INVALID_INPUT: return "invalid input";
    case CCQME_ERR_NUMERICAL: return "numerical failure";
    case CCQME_ERR_CONFIG: return "configuration error";
    case CCQME_ERR_IO: return "i/o error";
    case CCQME_ERR_NOT_AVAILABLE: return "not available";
    case CCQME_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ccqme_last_error(void) { return last_error.c_str(); }

void ccqme_string_free(char* s) { std::free(s); }

ccqme_status ccqme_config_load(const char* path, ccqme_config** out, char** diagnostics)
{
    if (!path || !out) return fail(CCQME_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { return finish_config(ccqme::load_config(path), out, diagnostics); });
}

ccqme_status ccqme_config_parse(const char* json_text, ccqme_config** out, char** diagnostics)
{
    if (!json_text || !out) return fail(CCQME_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { return finish_config(ccqme::parse_config(json_text), out, diagnostics); });
}

void ccqme_config_free(ccqme_config* cfg) { delete cfg; }

ccqme_status ccqme_run(const ccqme_config* cfg, const char* output_dir, int threads, int seedless, char** report)
{
    if (!cfg) return fail(CCQME_ERR_ARGUMENT, "null config");
    if (report) *report = nullptr;
    return guarded([&] {
        ccqme::RunOptions opt;
        if (output_dir) opt.output_directory = output_dir;
        opt.threads = threads < 1 ? 1 : threads;
        opt.seedless = seedless != 0;
        const auto outcome = ccqme::run(cfg->value, opt);
        if (report) {
            nlohmann::json j{{"output_directory", outcome.output_directory},
                             {"files", outcome.files},
                             {"warnings", outcome.warnings},
                             {"failures", outcome.failures}};
            *report = duplicate(j.dump(2));
        }
        if (!outcome.failures.empty())
            return fail(CCQME_ERR_NUMERICAL, std::to_string(outcome.failures.size()) + " task(s) failed; first: " +
                                                 outcome.failures.front());
        return CCQME_OK;
    });
}

ccqme_status ccqme_list_builtins(char** text)
{
    if (!text) return fail(CCQME_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        std::string s;
        for (const auto& b : ccqme::list_builtins()) s += b.kind + " " + b.name + " " + b.description + "\n";
        *text = duplicate(s);
        return CCQME_OK;
    });
}

ccqme_status ccqme_system_builtin(const char* name, ccqme_system** out)
{
    if (!name || !out) return fail(CCQME_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    if (std::string(name) != "taa6") return fail(CCQME_ERR_INVALID_INPUT, std::string("unknown builtin '") + name + "'");
    return guarded([&] {
        *out = new ccqme_system{ccqme::taa6_system()};
        return CCQME_OK;
    });
}

ccqme_status ccqme_system_load(const char* path, ccqme_system** out)
{
    if (!path || !out) return fail(CCQME_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new ccqme_system{ccqme::load_system_file(path)};
        return CCQME_OK;
    });
}

void ccqme_system_free(ccqme_system* sys) { delete sys; }

ccqme_status ccqme_system_size(const ccqme_system* sys, int* n)
{
    if (!sys || !n) return fail(CCQME_ERR_ARGUMENT, "null argument");
    *n = sys->value.size();
    return CCQME_OK;
}

ccqme_status ccqme_system_energies(const ccqme_system* sys, double* out, int capacity)
{
    if (!sys || !out) return fail(CCQME_ERR_ARGUMENT, "null argument");
    const int n = sys->value.size();
    if (capacity < n) return fail(CCQME_ERR_ARGUMENT, "buffer holds fewer than N values");
    for (int i = 0; i < n; ++i) out[i] = sys->value.energies()(i);
    return CCQME_OK;
}

ccqme_status ccqme_equilibrium_populations(const ccqme_system* sys, double coupling, double cutoff,
                                           double temperature_kelvin, double* gibbs, double* mean_force, int capacity)
{
    if (!sys || !gibbs || !mean_force) return fail(CCQME_ERR_ARGUMENT, "null argument");
    const int n = sys->value.size();
    if (capacity < n) return fail(CCQME_ERR_ARGUMENT, "buffer holds fewer than N values");
    return guarded([&] {
        const ccqme::BathSpec bath(coupling, cutoff, ccqme::units::beta_from_kelvin(temperature_kelvin));
        const auto renormalized = ccqme::renormalize(sys->value, coupling, cutoff);
        const auto eq = ccqme::mean_force_gibbs2(renormalized, bath);
        for (int i = 0; i < n; ++i) {
            gibbs[i] = eq.gibbs(i, i).real();
            mean_force[i] = eq.mean_force(i, i).real();
        }
        return CCQME_OK;
    });
}

}  // extern "C"
