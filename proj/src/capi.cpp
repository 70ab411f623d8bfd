// SPDX-License-Identifier: Apache-2.0
//
// extern "C" surface. Opaque handles wrap the C++ types; every entry
// point catches and maps exceptions onto status codes.

#include "molab.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "molab/config.hpp"
#include "molab/fixtures.hpp"
#include "molab/grid.hpp"
#include "molab/phi.hpp"
#include "molab/runner.hpp"

namespace {

thread_local std::string g_last_error = "ok";

molab_status set_error(molab_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename F>
molab_status guarded(F&& f) {
    try {
        return f();
    } catch (const std::domain_error& e) {
        return set_error(MOLAB_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        // Config diagnostics are tagged by parse_config.
        if (std::string_view(e.what()).find("config error") != std::string_view::npos)
            return set_error(MOLAB_ERR_PARSE, e.what());
        return set_error(MOLAB_ERR_NUMERIC, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(MOLAB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(MOLAB_ERR_INTERNAL, e.what());
    }
}

molab::Point to_point(const double* x, int dim) {
    molab::Point p;
    p.dim = dim;
    for (int d = 0; d < dim && d < 2; ++d) p.x[static_cast<size_t>(d)] = x[d];
    return p;
}

} // namespace

struct molab_phi {
    molab::PhiPtr impl;
};

struct molab_domain {
    molab::GridDomainPtr impl;
};

struct molab_func {
    std::unique_ptr<molab::GridFunction> impl;
};

extern "C" {

const char* molab_version(void) { return "0.1.0"; }

const char* molab_last_error(void) { return g_last_error.c_str(); }

molab_status molab_phi_create(const char* family_json, int dim, const double* lo,
                              const double* hi, molab_phi** out) {
    if (!family_json || !lo || !hi || !out || dim < 1 || dim > 2)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_phi_create");
    return guarded([&]() {
        // Reuse the config parser with a synthetic two-node domain so the
        // descriptor schema stays in one place.
        nlohmann::json cfg;
        cfg["family"] = nlohmann::json::parse(family_json);
        cfg["domain"]["dim"] = dim;
        for (int d = 0; d < dim; ++d) {
            cfg["domain"]["lo"].push_back(lo[d]);
            cfg["domain"]["hi"].push_back(hi[d]);
            cfg["domain"]["resolution"].push_back(2);
        }
        const molab::ExperimentConfig parsed = molab::parse_config(cfg.dump());
        *out = new molab_phi{parsed.family};
        return MOLAB_OK;
    });
}

void molab_phi_destroy(molab_phi* phi) { delete phi; }

molab_status molab_phi_eval(const molab_phi* phi, const double* x, int dim, double s,
                            double* out) {
    if (!phi || !x || !out || dim < 1 || dim > 2)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_phi_eval");
    return guarded([&]() {
        *out = (*phi->impl)(to_point(x, dim), s);
        return MOLAB_OK;
    });
}

molab_status molab_domain_create(int dim, const double* lo, const double* hi,
                                 const int* resolution, molab_domain** out) {
    if (!lo || !hi || !resolution || !out)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_domain_create");
    return guarded([&]() {
        molab::Box box;
        box.dim = dim;
        for (int d = 0; d < dim && d < 2; ++d) {
            box.lo[static_cast<size_t>(d)] = lo[d];
            box.hi[static_cast<size_t>(d)] = hi[d];
        }
        std::array<int, 2> res{resolution[0], dim == 2 ? resolution[1] : 1};
        *out = new molab_domain{
            std::make_shared<const molab::GridDomain>(dim, box, res)};
        return MOLAB_OK;
    });
}

void molab_domain_destroy(molab_domain* domain) { delete domain; }

molab_status molab_domain_node_count(const molab_domain* domain, int64_t* out) {
    if (!domain || !out)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument");
    *out = domain->impl->node_count();
    return MOLAB_OK;
}

molab_status molab_func_from_values(const molab_domain* domain, const double* values,
                                    int64_t count, molab_func** out) {
    if (!domain || !values || !out)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_func_from_values");
    return guarded([&]() {
        std::vector<double> v(values, values + count);
        *out = new molab_func{std::make_unique<molab::GridFunction>(domain->impl,
                                                                    std::move(v))};
        return MOLAB_OK;
    });
}

molab_status molab_func_fixture(const molab_domain* domain, const char* fixture_json,
                                molab_func** out) {
    if (!domain || !fixture_json || !out)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_func_fixture");
    return guarded([&]() {
        const auto j = nlohmann::json::parse(fixture_json);
        molab::FixtureSpec spec;
        spec.shape = j.value("shape", "hat");
        if (j.contains("center")) {
            spec.center.dim = domain->impl->dim();
            const auto& c = j.at("center");
            for (int d = 0; d < spec.center.dim && d < static_cast<int>(c.size()); ++d)
                spec.center.x[static_cast<size_t>(d)] = c[static_cast<size_t>(d)].get<double>();
        } else {
            spec.center.dim = domain->impl->dim();
        }
        spec.width = j.value("width", 0.5);
        spec.amplitude = j.value("amplitude", 1.0);
        spec.theta = j.value("theta", 2.0);
        spec.inner = j.value("inner", 0.3);
        spec.outer = j.value("outer", 0.6);
        spec.path = j.value("path", "");
        *out = new molab_func{std::make_unique<molab::GridFunction>(
            molab::make_fixture(domain->impl, spec))};
        return MOLAB_OK;
    });
}

void molab_func_destroy(molab_func* func) { delete func; }

molab_status molab_func_values(const molab_func* func, double* buffer,
                               int64_t capacity) {
    if (!func || !buffer)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_func_values");
    const auto& v = func->impl->values();
    if (capacity < static_cast<int64_t>(v.size()))
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(buffer, v.data(), v.size() * sizeof(double));
    return MOLAB_OK;
}

molab_status molab_modular(const molab_phi* phi, const molab_func* u, double lambda,
                           double* out) {
    if (!phi || !u || !out)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_modular");
    return guarded([&]() {
        *out = molab::modular(*phi->impl, *u->impl, lambda);
        return MOLAB_OK;
    });
}

molab_status molab_luxemburg_norm(const molab_phi* phi, const molab_func* u,
                                  double rel_tol, double* out) {
    if (!phi || !u || !out)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_luxemburg_norm");
    return guarded([&]() {
        molab::LuxemburgOptions opts;
        if (rel_tol > 0.0) opts.rel_tol = rel_tol;
        *out = molab::luxemburg_norm(*phi->impl, *u->impl, opts);
        return MOLAB_OK;
    });
}

molab_status molab_lp_norm(const molab_func* u, double p, double* out) {
    if (!u || !out)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_lp_norm");
    return guarded([&]() {
        *out = molab::lp_norm(*u->impl, p);
        return MOLAB_OK;
    });
}

molab_status molab_mollify(const molab_func* u, double eps, molab_func** out) {
    if (!u || !out)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_mollify");
    return guarded([&]() {
        *out = new molab_func{std::make_unique<molab::GridFunction>(
            molab::mollify(*u->impl, eps))};
        return MOLAB_OK;
    });
}

molab_status molab_run(const char* subcommand, const char* config_json,
                       const char* config_dir, const char* out_dir, uint64_t seed,
                       int threads, char** report_json) {
    if (!subcommand || !config_json)
        return set_error(MOLAB_ERR_INVALID_ARGUMENT, "bad argument to molab_run");
    return guarded([&]() {
        const molab::RunResult result = molab::run_subcommand(
            subcommand, config_json, out_dir ? out_dir : ".",
            seed ? std::optional<std::uint64_t>(seed) : std::nullopt,
            threads ? std::optional<int>(threads) : std::nullopt,
            config_dir ? config_dir : "");
        if (report_json) {
            *report_json = static_cast<char*>(std::malloc(result.report_json.size() + 1));
            if (!*report_json) return set_error(MOLAB_ERR_INTERNAL, "out of memory");
            std::memcpy(*report_json, result.report_json.c_str(),
                        result.report_json.size() + 1);
        }
        if (!result.ok)
            return set_error(MOLAB_ERR_NUMERIC,
                             result.worst_witness.empty() ? "certification failed"
                                                          : result.worst_witness.c_str());
        return MOLAB_OK;
    });
}

void molab_string_free(char* s) { std::free(s); }

} // extern "C"
