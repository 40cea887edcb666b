// softqed command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "softqed/softqed.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

int report_error(sq_status s) {
    std::cerr << "softqed: " << sq_status_name(s) << ": " << sq_last_error() << "\n";
    return s == SQ_ERR_CONFIG_PARSE ? kExitConfig : kExitFailure;
}

bool write_output(const std::string& path, const char* data, size_t size) {
    if (path.empty()) {
        std::fwrite(data, 1, size, stdout);
        return std::fflush(stdout) == 0;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(data, static_cast<std::streamsize>(size));
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Soft-photon QED numerics: identity suites, currents, pole decompositions, coherent states"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    bool list_checks = false;
    app.add_option("--config", config_path, "JSON config; defaults apply when omitted");
    app.add_option("--seed", seed, "Overrides the config seed");
    app.add_option("--out", out_path, "Output file; overrides output_path, stdout when neither is set");
    app.set_version_flag("--version", std::string(sq_version()));

    struct Sub {
        const char* name;
        const char* help;
        sq_command command;
    };
    const Sub subs[] = {
        {"verify", "Run every registered check and write the JSON report", SQ_CMD_VERIFY},
        {"current", "Tabulate the loop current on the photon grid (CSV)", SQ_CMD_CURRENT},
        {"decompose", "Pole and theta decomposition of the configured chain (JSON)", SQ_CMD_DECOMPOSE},
        {"coherent", "Photon number, norm factor and phase over a k_min ladder (CSV)", SQ_CMD_COHERENT},
        {"action", "Eta-extrapolated classical action with self-pair diagnostics (JSON)", SQ_CMD_ACTION},
    };
    CLI::App* verify = nullptr;
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        if (s.command == SQ_CMD_VERIFY) verify = sub;
    }
    verify->add_flag("--list-checks", list_checks, "Print the registered check names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (list_checks) {
        sq_buffer* names = nullptr;
        if (const auto s = sq_check_names(&names); s != SQ_OK) return report_error(s);
        std::fwrite(sq_buffer_data(names), 1, sq_buffer_size(names), stdout);
        sq_buffer_free(names);
        return kExitOk;
    }

    sq_config* config = nullptr;
    sq_status s = config_path.empty() ? sq_config_default(&config) : sq_config_load(config_path.c_str(), &config);
    if (s == SQ_ERR_IO) {
        std::cerr << "softqed: " << sq_last_error() << "\n";
        return kExitConfig;
    }
    if (s != SQ_OK) return report_error(s);
    if (seed) sq_config_set_seed(config, *seed);

    sq_command command = SQ_CMD_VERIFY;
    for (const auto& sub : subs) {
        if (app.got_subcommand(sub.name)) command = sub.command;
    }

    sq_buffer* result = nullptr;
    int passed = 0;
    s = sq_run(config, command, &result, &passed);
    const std::string destination = out_path.empty() ? sq_config_output_path(config) : out_path;
    sq_config_free(config);
    if (s != SQ_OK) return report_error(s);

    const bool written = write_output(destination, sq_buffer_data(result), sq_buffer_size(result));
    sq_buffer_free(result);
    if (!written) {
        std::cerr << "softqed: cannot write " << destination << "\n";
        return kExitFailure;
    }
    if (!passed) {
        std::cerr << "softqed: " << (command == SQ_CMD_VERIFY ? "one or more checks failed" : "did not converge")
                  << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
