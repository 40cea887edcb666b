#include "softqed/softqed.h"

#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "core/action.hpp"
#include "core/current.hpp"
#include "core/error.hpp"
#include "harness/checks.hpp"
#include "harness/commands.hpp"
#include "harness/config.hpp"
#include "harness/report.hpp"

struct sq_config {
    softqed::harness::SuiteConfig value;
};

struct sq_buffer {
    std::string text;
};

struct sq_loop {
    softqed::LoopPath value;
};

namespace {

thread_local std::string last_error;

sq_status fail(sq_status s, const std::string& what) {
    last_error = what;
    return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
sq_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const softqed::Error& e) {
        return fail(static_cast<sq_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::bad_alloc&) {
        return fail(SQ_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SQ_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SQ_ERR_INTERNAL, "unknown exception");
    }
}

sq_status null_arg(const char* name) { return fail(SQ_ERR_INVALID_ARGUMENT, std::string(name) + " is null"); }

}  // namespace

extern "C" {

const char* sq_version(void) { return softqed::harness::kToolVersion; }

const char* sq_status_name(sq_status status) {
    switch (status) {
        case SQ_OK: return "ok";
        case SQ_ERR_INTERNAL: return "internal";
        default: break;
    }
    const int code = static_cast<int>(status);
    if (code >= 1 && code <= 13) return softqed::error_code_name(static_cast<softqed::ErrorCode>(code));
    return "unknown";
}

const char* sq_last_error(void) { return last_error.c_str(); }

sq_status sq_config_parse(const char* json, size_t length, sq_config** out) {
    if (!json) return null_arg("json");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        *out = new sq_config{softqed::harness::parse_config(std::string_view(json, length))};
        return SQ_OK;
    });
}

sq_status sq_config_load(const char* path, sq_config** out) {
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(SQ_ERR_IO, std::string("cannot open config ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    return sq_config_parse(text.data(), text.size(), out);
}

sq_status sq_config_default(sq_config** out) {
    if (!out) return null_arg("out");
    return guarded([&] {
        *out = new sq_config{};
        return SQ_OK;
    });
}

void sq_config_free(sq_config* config) { delete config; }

sq_status sq_config_set_seed(sq_config* config, uint64_t seed) {
    if (!config) return null_arg("config");
    config->value.seed = seed;
    return SQ_OK;
}

const char* sq_config_output_path(const sq_config* config) {
    return config ? config->value.output_path.c_str() : "";
}

sq_status sq_run(const sq_config* config, sq_command command, sq_buffer** out, int* passed) {
    if (!config) return null_arg("config");
    if (!out) return null_arg("out");
    *out = nullptr;
    if (passed) *passed = 0;
    return guarded([&] {
        namespace h = softqed::harness;
        h::CommandOutput r;
        switch (command) {
            case SQ_CMD_VERIFY: r = h::run_verify(config->value); break;
            case SQ_CMD_CURRENT: r = h::run_current(config->value); break;
            case SQ_CMD_DECOMPOSE: r = h::run_decompose(config->value); break;
            case SQ_CMD_COHERENT: r = h::run_coherent(config->value); break;
            case SQ_CMD_ACTION: r = h::run_action(config->value); break;
            default: return fail(SQ_ERR_INVALID_ARGUMENT, "unknown command");
        }
        *out = new sq_buffer{std::move(r.text)};
        if (passed) *passed = r.ok ? 1 : 0;
        return SQ_OK;
    });
}

sq_status sq_run_check(const sq_config* config, const char* name, double* residual, double* tolerance,
                       int* passed) {
    if (!config) return null_arg("config");
    if (!name) return null_arg("name");
    return guarded([&] {
        const auto r = softqed::harness::run_check(config->value, std::string_view(name));
        if (residual) *residual = r.residual;
        if (tolerance) *tolerance = r.tolerance;
        if (passed) *passed = r.pass ? 1 : 0;
        if (!r.error.empty()) last_error = r.error;
        return SQ_OK;
    });
}

sq_status sq_check_names(sq_buffer** out) {
    if (!out) return null_arg("out");
    return guarded([&] {
        std::string text;
        for (const auto& n : softqed::harness::check_names()) text += n + "\n";
        *out = new sq_buffer{std::move(text)};
        return SQ_OK;
    });
}

const char* sq_buffer_data(const sq_buffer* buffer) { return buffer ? buffer->text.c_str() : ""; }

size_t sq_buffer_size(const sq_buffer* buffer) { return buffer ? buffer->text.size() : 0; }

void sq_buffer_free(sq_buffer* buffer) { delete buffer; }

sq_status sq_loop_create(const double* vertices, size_t n_vertices, sq_loop** out) {
    if (!vertices) return null_arg("vertices");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        std::vector<softqed::FourVector> xs;
        for (size_t i = 0; i < n_vertices; ++i) {
            const double* v = vertices + 4 * i;
            xs.push_back(softqed::FourVector{v[0], v[1], v[2], v[3]});
        }
        *out = new sq_loop{softqed::LoopPath(std::move(xs))};
        return SQ_OK;
    });
}

void sq_loop_free(sq_loop* loop) { delete loop; }

sq_status sq_loop_current(const sq_loop* loop, const double k[4], double re[4], double im[4]) {
    if (!loop) return null_arg("loop");
    if (!k || !re || !im) return null_arg("k/re/im");
    return guarded([&] {
        const auto j = softqed::loop_current(loop->value, softqed::FourVector{k[0], k[1], k[2], k[3]});
        for (std::size_t mu = 0; mu < 4; ++mu) {
            re[mu] = j[mu].real();
            im[mu] = j[mu].imag();
        }
        return SQ_OK;
    });
}

sq_status sq_loop_action(const sq_loop* loop, double charge, double* value, double* error) {
    if (!loop) return null_arg("loop");
    if (!value) return null_arg("value");
    return guarded([&] {
        softqed::ActionOptions o;
        o.charge = charge;
        const auto r = softqed::classical_action_extrapolated(loop->value, o);
        *value = r.value;
        if (error) *error = r.error;
        return SQ_OK;
    });
}

}  // extern "C"
