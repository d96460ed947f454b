// capi.cpp - extern "C" surface of the shared library. Thin translation
// layer: exceptions become status codes, strings cross the boundary as
// malloc'ed buffers, instances as opaque handles.
#include "vpmatch.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "vpm/bench.hpp"
#include "vpm/errors.hpp"
#include "vpm/json_io.hpp"
#include "vpm/matching.hpp"
#include "vpm/model.hpp"
#include "vpm/moments.hpp"
#include "vpm/oracle.hpp"
#include "vpm/policy.hpp"
#include "vpm/pricing.hpp"
#include "vpm/rng.hpp"

struct vpm_instance {
  vpm::MarketInstance inst;
};

namespace {

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& message) {
  if (err) *err = copy_out(message);
}

template <class Fn>
int guarded(char** err, Fn&& fn) {
  if (err) *err = nullptr;
  try {
    return fn();
  } catch (const vpm::ParseError& e) {
    set_err(err, e.what());
    return VPM_ERR_VALIDATION;
  } catch (const vpm::ValidationError& e) {
    set_err(err, e.what());
    return VPM_ERR_VALIDATION;
  } catch (const vpm::LimitError& e) {
    set_err(err, e.what());
    return VPM_ERR_LIMIT;
  } catch (const vpm::ConvergenceError& e) {
    set_err(err, e.what());
    return VPM_ERR_NO_CONVERGENCE;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return VPM_ERR_INTERNAL;
  } catch (...) {
    set_err(err, "unknown error");
    return VPM_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* vpm_status_name(int status) {
  switch (status) {
    case VPM_OK:
      return "ok";
    case VPM_ERR_INTERNAL:
      return "internal error";
    case VPM_ERR_VALIDATION:
      return "validation error";
    case VPM_ERR_LIMIT:
      return "size limit exceeded";
    case VPM_ERR_NO_CONVERGENCE:
      return "no convergence";
    default:
      return "unknown status";
  }
}

void vpm_string_free(char* s) { std::free(s); }

int vpm_instance_from_json(const char* json, vpm_instance** out, char** err) {
  return guarded(err, [&] {
    if (!json || !out) throw vpm::ValidationError("null argument");
    auto handle = std::make_unique<vpm_instance>();
    handle->inst = vpm::instance_from_json(json);
    vpm::require_valid(handle->inst);
    *out = handle.release();
    return VPM_OK;
  });
}

int vpm_instance_to_json(const vpm_instance* instance, char** out) {
  return guarded(nullptr, [&] {
    if (!instance || !out) return static_cast<int>(VPM_ERR_VALIDATION);
    *out = copy_out(vpm::instance_to_json(instance->inst));
    return static_cast<int>(VPM_OK);
  });
}

void vpm_instance_free(vpm_instance* instance) { delete instance; }

int vpm_instance_validate(const vpm_instance* instance, char** violations_json) {
  return guarded(nullptr, [&] {
    if (!instance) return static_cast<int>(VPM_ERR_VALIDATION);
    const auto violations = vpm::validate_instance(instance->inst);
    if (violations_json) *violations_json = copy_out(vpm::violations_to_json(violations));
    return violations.empty() ? static_cast<int>(VPM_OK)
                              : static_cast<int>(VPM_ERR_VALIDATION);
  });
}

int vpm_gen_lower_bound(int n, vpm_instance** out, char** order_json, char** err) {
  return guarded(err, [&] {
    if (!out) throw vpm::ValidationError("null argument");
    vpm::LowerBoundInstance lb = vpm::gen_lower_bound(n);
    auto handle = std::make_unique<vpm_instance>();
    handle->inst = std::move(lb.instance);
    if (order_json) *order_json = copy_out(vpm::order_to_json(lb.order));
    *out = handle.release();
    return VPM_OK;
  });
}

int vpm_gen_random(int n_left, int n_right, int edges, int max_support,
                   double value_scale, uint64_t seed, vpm_instance** out, char** err) {
  return guarded(err, [&] {
    if (!out) throw vpm::ValidationError("null argument");
    auto handle = std::make_unique<vpm_instance>();
    handle->inst =
        vpm::gen_random(n_left, n_right, edges, max_support, value_scale, seed);
    *out = handle.release();
    return VPM_OK;
  });
}

int vpm_moments_exact(const vpm_instance* instance, uint64_t profile_limit,
                      char** moments_json, char** err) {
  return guarded(err, [&] {
    if (!instance || !moments_json) throw vpm::ValidationError("null argument");
    const std::uint64_t limit =
        profile_limit == 0 ? vpm::kDefaultEnumerationLimit : profile_limit;
    const auto moments = vpm::compute_moments_exact(instance->inst, limit);
    *moments_json = copy_out(vpm::moments_to_json(moments));
    return VPM_OK;
  });
}

int vpm_moments_mc(const vpm_instance* instance, uint64_t trials, uint64_t seed,
                   int threads, char** moments_json, char** err) {
  return guarded(err, [&] {
    if (!instance || !moments_json) throw vpm::ValidationError("null argument");
    const auto moments = vpm::compute_moments_mc(instance->inst, trials, seed, threads);
    *moments_json = copy_out(vpm::moments_to_json(moments));
    return VPM_OK;
  });
}

int vpm_solve_prices(const char* moments_json, double eps, char** solution_json,
                     char** err) {
  return guarded(err, [&] {
    if (!moments_json || !solution_json) throw vpm::ValidationError("null argument");
    const auto moments = vpm::moments_from_json(moments_json);
    const double effective_eps = eps > 0.0 ? eps : vpm::default_eps(moments);
    const auto solution = vpm::solve_prices(moments, effective_eps);
    *solution_json = copy_out(vpm::solution_to_json(solution));
    return VPM_OK;
  });
}

int vpm_expand_orders(const vpm_instance* instance, const char* orders_spec,
                      uint64_t seed, char** orders_json, char** err) {
  return guarded(err, [&] {
    if (!instance || !orders_spec || !orders_json)
      throw vpm::ValidationError("null argument");
    const auto orders = vpm::expand_orders(instance->inst, orders_spec, seed);
    *orders_json = copy_out(vpm::orders_to_json(orders));
    return VPM_OK;
  });
}

int vpm_simulate(const vpm_instance* instance, const char* prices_json,
                 const char* orders_json, uint64_t trials, uint64_t seed, int threads,
                 char** report_json, char** err) {
  return guarded(err, [&] {
    if (!instance || !prices_json || !orders_json || !report_json)
      throw vpm::ValidationError("null argument");
    const vpm::PriceVector prices = vpm::prices_from_json(prices_json);
    const auto orders = vpm::orders_from_json(orders_json);
    const auto set = vpm::simulate(instance->inst, prices, orders, trials, seed, threads);
    *report_json = copy_out(vpm::simulation_to_json(set));
    return VPM_OK;
  });
}

int vpm_report_to_csv(const char* report_json, char** csv, char** err) {
  return guarded(err, [&] {
    if (!report_json || !csv) throw vpm::ValidationError("null argument");
    const auto set = vpm::simulation_from_json(report_json);
    *csv = copy_out(vpm::simulation_to_csv(set));
    return VPM_OK;
  });
}

int vpm_lower_bound_report(int n, uint64_t trials, uint64_t seed, int threads,
                           double eps, char** report_json, char** err) {
  return guarded(err, [&] {
    if (!report_json) throw vpm::ValidationError("null argument");
    if (trials == 0) throw vpm::ValidationError("trials must be >= 1");

    const vpm::LowerBoundInstance lb = vpm::gen_lower_bound(n);
    const auto profile_count =
        vpm::support_product(lb.instance, vpm::kDefaultEnumerationLimit);
    const bool exact_mode =
        profile_count.has_value() && *profile_count <= vpm::kDefaultEnumerationLimit;

    nlohmann::ordered_json report;
    report["n"] = n;
    report["mode"] = exact_mode ? "exact" : "mc";
    report["trials"] = trials;
    report["seed"] = seed;

    double opt_value = 0.0, policy_value = 0.0;
    double opt_stderr = 0.0, policy_stderr = 0.0;
    if (exact_mode) {
      const auto moments = vpm::compute_moments_exact(lb.instance);
      const double effective_eps = eps > 0.0 ? eps : vpm::default_eps(moments);
      const auto solution = vpm::solve_prices(moments, effective_eps);
      const auto expectation =
          vpm::exact_expected_welfare(lb.instance, solution.prices, lb.order);
      opt_value = expectation.opt;
      policy_value = expectation.welfare;
    } else {
      const auto moments =
          vpm::compute_moments_mc(lb.instance, trials, seed, threads);
      const double effective_eps = eps > 0.0 ? eps : vpm::default_eps(moments);
      const auto solution = vpm::solve_prices(moments, effective_eps);
      const std::vector<vpm::TaggedOrder> orders = {{"batch-lb", lb.order}};
      const auto set = vpm::simulate(lb.instance, solution.prices, orders, trials,
                                     vpm::derive_seed(seed, 1), threads);
      const vpm::SimulationReport& r = set.reports.front();
      opt_value = r.mean_opt;
      policy_value = r.mean_welfare;
      opt_stderr = r.stderr_opt;
      policy_stderr = r.stderr_welfare;
    }

    report["E_opt_est"] = opt_value;
    report["stderr_opt"] = opt_stderr;
    report["vadd_value"] = policy_value;
    report["stderr_vadd"] = policy_stderr;
    if (lb.instance.n_left + lb.instance.n_right <= vpm::kDpVertexLimit)
      report["dp_value"] = vpm::optimal_online_value(lb.instance, lb.order);
    report["ratio"] = opt_value / policy_value;

    *report_json = copy_out(report.dump());
    return VPM_OK;
  });
}

}  // extern "C"
