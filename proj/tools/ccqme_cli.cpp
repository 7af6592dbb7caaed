// Command-line front end: run, validate, list-builtins.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "ccqme/ccqme.h"

namespace {

int report_error(ccqme_status s)
{
    std::fprintf(stderr, "error (%s): %s\n", ccqme_status_name(s), ccqme_last_error());
    return static_cast<int>(s);
}

// Loads the config, printing every diagnostic on rejection.
ccqme_config* load(const std::string& path, int& code)
{
    ccqme_config* cfg = nullptr;
    char* diag = nullptr;
    const ccqme_status s = ccqme_config_load(path.c_str(), &cfg, &diag);
    if (diag) {
        std::fputs(diag, stderr);
        ccqme_string_free(diag);
    }
    code = s == CCQME_OK ? 0 : report_error(s);
    return cfg;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Open-system dynamics: Redfield, canonically consistent master equation, HEOM"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ccqme_version()));

    std::string config_path;
    std::string out_dir;
    int threads = 1;
    bool seedless = false;

    auto* run = app.add_subcommand("run", "execute a configuration and write its artifacts");
    run->add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory (overrides the config)");
    run->add_option("--threads", threads, "worker threads, one task per (method, coupling)")
        ->check(CLI::PositiveNumber);
    run->add_flag("--seedless", seedless, "omit the timestamp so repeated runs are byte-identical");

    auto* validate = app.add_subcommand("validate", "check a configuration and list every problem");
    validate->add_option("--config", config_path, "JSON configuration file")->required();

    auto* builtins = app.add_subcommand("list-builtins", "show built-in systems, potentials, scenarios and methods");

    CLI11_PARSE(app, argc, argv);

    if (*builtins) {
        char* text = nullptr;
        if (ccqme_status s = ccqme_list_builtins(&text); s != CCQME_OK) return report_error(s);
        std::fputs(text, stdout);
        ccqme_string_free(text);
        return 0;
    }

    int code = 0;
    ccqme_config* cfg = load(config_path, code);
    if (!cfg) return code;
    if (*validate) {
        std::puts("configuration is valid");
        ccqme_config_free(cfg);
        return 0;
    }

    char* report = nullptr;
    const ccqme_status s = ccqme_run(cfg, out_dir.empty() ? nullptr : out_dir.c_str(), threads, seedless ? 1 : 0, &report);
    ccqme_config_free(cfg);
    if (report) {
        std::puts(report);
        ccqme_string_free(report);
    }
    return s == CCQME_OK ? 0 : report_error(s);
}
