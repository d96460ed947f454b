// vpmatch_main.cpp - command-line front end for the vpmatch shared library.
//
// Subcommands mirror the pipeline: gen-lb / gen-random produce instances,
// moments estimates the contribution matrices, solve prices the vertices,
// simulate runs the priced policy against the offline optimum, lowerbound
// runs the whole separation experiment, report converts artifacts to CSV.
//
// Exit codes: 0 success, 2 validation failure, 3 size limit exceeded,
// 4 non-convergence, 1 anything else.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "vpmatch.h"

namespace {

struct StringGuard {
  char* ptr = nullptr;
  ~StringGuard() { vpm_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct InstanceGuard {
  vpm_instance* ptr = nullptr;
  ~InstanceGuard() { vpm_instance_free(ptr); }
};

int fail(int status, const StringGuard& err) {
  std::cerr << "error (" << vpm_status_name(status) << ")";
  if (err.ptr && *err.ptr) std::cerr << ": " << err.ptr;
  std::cerr << "\n";
  return status;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

int write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << "\n";
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 1;
  }
  out << content << "\n";
  return 0;
}

int load_instance(const std::string& path, InstanceGuard& instance) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return VPM_ERR_VALIDATION;
  }
  StringGuard err;
  const int status = vpm_instance_from_json(text.c_str(), &instance.ptr, &err.ptr);
  if (status != VPM_OK) return fail(status, err);
  return VPM_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex-priced online bipartite matching toolkit"};
  app.require_subcommand(1);

  // --- moments ---
  auto* cmd_moments = app.add_subcommand("moments", "estimate contribution matrices");
  std::string moments_instance, moments_out;
  bool moments_exact = false;
  std::uint64_t moments_mc = 0, moments_seed = 0, moments_limit = 0;
  int moments_threads = 1;
  cmd_moments->add_option("instance", moments_instance, "instance JSON file")->required();
  cmd_moments->add_flag("--exact", moments_exact, "exact support enumeration");
  cmd_moments->add_option("--mc", moments_mc, "Monte Carlo with this many trials");
  cmd_moments->add_option("--seed", moments_seed, "Monte Carlo seed");
  cmd_moments->add_option("--threads", moments_threads, "worker threads");
  cmd_moments->add_option("--limit", moments_limit, "enumeration profile limit");
  cmd_moments->add_option("-o,--out", moments_out, "output file (default stdout)");

  // --- solve ---
  auto* cmd_solve = app.add_subcommand("solve", "solve vertex prices from moments");
  std::string solve_moments, solve_out;
  double solve_eps = 0.0;
  cmd_solve->add_option("moments", solve_moments, "moments JSON file")->required();
  cmd_solve->add_option("--eps", solve_eps,
                        "L1 residual target (default 1e-9 * max(1, sum M))");
  cmd_solve->add_option("-o,--out", solve_out, "output file (default stdout)");

  // --- simulate ---
  auto* cmd_sim = app.add_subcommand("simulate", "run the priced policy");
  std::string sim_instance, sim_prices, sim_orders = "random:5", sim_format = "json";
  std::string sim_out;
  std::vector<std::string> sim_order_files;
  std::uint64_t sim_trials = 1000, sim_seed = 0;
  int sim_threads = 1;
  cmd_sim->add_option("instance", sim_instance, "instance JSON file")->required();
  cmd_sim->add_option("prices", sim_prices, "price solution JSON file")->required();
  cmd_sim->add_option("--orders", sim_orders,
                      "strategy spec: random:K, batch-lb, ascending-mean, "
                      "descending-mean, exhaustive");
  cmd_sim->add_option("--order-file", sim_order_files,
                      "explicit arrival order file (JSON array), repeatable");
  cmd_sim->add_option("--trials", sim_trials, "Monte Carlo trials");
  cmd_sim->add_option("--seed", sim_seed, "simulation seed");
  cmd_sim->add_option("--threads", sim_threads, "worker threads");
  cmd_sim->add_option("--format", sim_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_sim->add_option("-o,--out", sim_out, "output file (default stdout)");

  // --- gen-lb ---
  auto* cmd_genlb = app.add_subcommand("gen-lb", "generate the separation family");
  int genlb_n = 1;
  std::string genlb_out, genlb_order_out;
  cmd_genlb->add_option("--n", genlb_n, "size parameter")->required();
  cmd_genlb->add_option("-o,--out", genlb_out, "instance output (default stdout)");
  cmd_genlb->add_option("--order-out", genlb_order_out, "batch arrival order output");

  // --- gen-random ---
  auto* cmd_genrand = app.add_subcommand("gen-random", "generate a random instance");
  int genrand_n = 3, genrand_m = 3, genrand_edges = 6, genrand_support = 2;
  double genrand_scale = 1.0;
  std::uint64_t genrand_seed = 0;
  std::string genrand_out;
  cmd_genrand->add_option("--n", genrand_n, "left vertices")->required();
  cmd_genrand->add_option("--m", genrand_m, "right vertices")->required();
  cmd_genrand->add_option("--edges", genrand_edges, "edge count")->required();
  cmd_genrand->add_option("--max-support", genrand_support, "atoms per edge, <= 8");
  cmd_genrand->add_option("--value-scale", genrand_scale, "value grid multiplier");
  cmd_genrand->add_option("--seed", genrand_seed, "generator seed");
  cmd_genrand->add_option("-o,--out", genrand_out, "output file (default stdout)");

  // --- lowerbound ---
  auto* cmd_lb = app.add_subcommand("lowerbound", "run the separation experiment");
  int lb_n = 1, lb_threads = 1;
  std::uint64_t lb_trials = 10000, lb_seed = 0;
  double lb_eps = 0.0;
  std::string lb_out;
  cmd_lb->add_option("--n", lb_n, "size parameter")->required();
  cmd_lb->add_option("--trials", lb_trials, "Monte Carlo trials");
  cmd_lb->add_option("--seed", lb_seed, "seed");
  cmd_lb->add_option("--threads", lb_threads, "worker threads");
  cmd_lb->add_option("--eps", lb_eps, "price solver tolerance");
  cmd_lb->add_option("-o,--out", lb_out, "output file (default stdout)");

  // --- report ---
  auto* cmd_report = app.add_subcommand("report", "convert a simulation report");
  std::string report_in, report_format = "csv", report_out;
  cmd_report->add_option("report", report_in, "simulation report JSON file")->required();
  cmd_report->add_option("--format", report_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_report->add_option("-o,--out", report_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (cmd_moments->parsed()) {
    if (moments_exact == (moments_mc > 0)) {
      std::cerr << "error: choose exactly one of --exact or --mc N\n";
      return VPM_ERR_VALIDATION;
    }
    InstanceGuard instance;
    if (const int status = load_instance(moments_instance, instance); status != VPM_OK)
      return status;
    StringGuard out, err;
    const int status =
        moments_exact
            ? vpm_moments_exact(instance.ptr, moments_limit, &out.ptr, &err.ptr)
            : vpm_moments_mc(instance.ptr, moments_mc, moments_seed, moments_threads,
                             &out.ptr, &err.ptr);
    if (status != VPM_OK) return fail(status, err);
    return write_output(moments_out, out.str());
  }

  if (cmd_solve->parsed()) {
    std::string moments_text;
    if (!read_file(solve_moments, moments_text)) {
      std::cerr << "error: cannot read " << solve_moments << "\n";
      return VPM_ERR_VALIDATION;
    }
    StringGuard out, err;
    const int status =
        vpm_solve_prices(moments_text.c_str(), solve_eps, &out.ptr, &err.ptr);
    if (status != VPM_OK) return fail(status, err);
    return write_output(solve_out, out.str());
  }

  if (cmd_sim->parsed()) {
    InstanceGuard instance;
    if (const int status = load_instance(sim_instance, instance); status != VPM_OK)
      return status;
    std::string prices_text;
    if (!read_file(sim_prices, prices_text)) {
      std::cerr << "error: cannot read " << sim_prices << "\n";
      return VPM_ERR_VALIDATION;
    }

    nlohmann::ordered_json orders = nlohmann::ordered_json::array();
    if (!sim_orders.empty()) {
      StringGuard expanded, err;
      const int status = vpm_expand_orders(instance.ptr, sim_orders.c_str(), sim_seed,
                                           &expanded.ptr, &err.ptr);
      if (status != VPM_OK) return fail(status, err);
      orders = nlohmann::ordered_json::parse(expanded.str());
    }
    for (std::size_t k = 0; k < sim_order_files.size(); ++k) {
      std::string text;
      if (!read_file(sim_order_files[k], text)) {
        std::cerr << "error: cannot read " << sim_order_files[k] << "\n";
        return VPM_ERR_VALIDATION;
      }
      nlohmann::ordered_json sequence =
          nlohmann::ordered_json::parse(text, nullptr, false);
      if (sequence.is_discarded() || !sequence.is_array()) {
        std::cerr << "error: " << sim_order_files[k] << " is not a JSON array\n";
        return VPM_ERR_VALIDATION;
      }
      nlohmann::ordered_json entry;
      entry["tag"] = "given-" + std::to_string(k);
      entry["sequence"] = std::move(sequence);
      orders.push_back(std::move(entry));
    }

    StringGuard report, err;
    const int status =
        vpm_simulate(instance.ptr, prices_text.c_str(), orders.dump().c_str(),
                     sim_trials, sim_seed, sim_threads, &report.ptr, &err.ptr);
    if (status != VPM_OK) return fail(status, err);

    if (sim_format == "csv") {
      StringGuard csv, csv_err;
      const int csv_status = vpm_report_to_csv(report.ptr, &csv.ptr, &csv_err.ptr);
      if (csv_status != VPM_OK) return fail(csv_status, csv_err);
      return write_output(sim_out, csv.str());
    }
    return write_output(sim_out, report.str());
  }

  if (cmd_genlb->parsed()) {
    InstanceGuard instance;
    StringGuard order, err;
    const int status = vpm_gen_lower_bound(genlb_n, &instance.ptr, &order.ptr, &err.ptr);
    if (status != VPM_OK) return fail(status, err);
    StringGuard inst_json;
    vpm_instance_to_json(instance.ptr, &inst_json.ptr);
    if (!genlb_order_out.empty())
      if (const int rc = write_output(genlb_order_out, order.str()); rc != 0) return rc;
    return write_output(genlb_out, inst_json.str());
  }

  if (cmd_genrand->parsed()) {
    InstanceGuard instance;
    StringGuard err;
    const int status = vpm_gen_random(genrand_n, genrand_m, genrand_edges,
                                      genrand_support, genrand_scale, genrand_seed,
                                      &instance.ptr, &err.ptr);
    if (status != VPM_OK) return fail(status, err);
    StringGuard inst_json;
    vpm_instance_to_json(instance.ptr, &inst_json.ptr);
    return write_output(genrand_out, inst_json.str());
  }

  if (cmd_lb->parsed()) {
    StringGuard out, err;
    const int status = vpm_lower_bound_report(lb_n, lb_trials, lb_seed, lb_threads,
                                              lb_eps, &out.ptr, &err.ptr);
    if (status != VPM_OK) return fail(status, err);
    return write_output(lb_out, out.str());
  }

  if (cmd_report->parsed()) {
    std::string text;
    if (!read_file(report_in, text)) {
      std::cerr << "error: cannot read " << report_in << "\n";
      return VPM_ERR_VALIDATION;
    }
    if (report_format == "csv") {
      StringGuard csv, err;
      const int status = vpm_report_to_csv(text.c_str(), &csv.ptr, &err.ptr);
      if (status != VPM_OK) return fail(status, err);
      return write_output(report_out, csv.str());
    }
    // json format: canonical re-dump of the document.
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) {
      std::cerr << "error: " << report_in << " is not valid JSON\n";
      return VPM_ERR_VALIDATION;
    }
    return write_output(report_out, j.dump());
  }

  return 0;
}
