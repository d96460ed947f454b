#include "vpm/json_io.hpp"

#include <json.hpp>

#include "vpm/errors.hpp"

namespace vpm {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse(const std::string& text, const char* what) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ParseError(std::string(what) + ": not valid JSON");
  return j;
}

// Library type errors (wrong JSON type under a known key) surface as
// ParseError like every other malformed-document problem.
template <class Fn>
auto guard_types(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const ordered_json& field(const ordered_json& j, const char* key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

double as_number(const ordered_json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  return j.get<double>();
}

std::vector<double> as_number_array(const ordered_json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(as_number(v, what));
  return out;
}

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const ordered_json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected a matrix");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) throw ParseError(std::string(what) + ": expected rows");
    cols = j[0].size();
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ParseError(std::string(what) + ": ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = as_number(j[i][k], what);
  }
  return m;
}

std::string dump(const ordered_json& j) { return j.dump(); }

}  // namespace

std::string number_to_string(double x) { return ordered_json(x).dump(); }

std::string instance_to_json(const MarketInstance& instance) {
  ordered_json j;
  j["n_left"] = instance.n_left;
  j["n_right"] = instance.n_right;
  ordered_json edges = ordered_json::array();
  for (const EdgeSpec& e : instance.edges) {
    ordered_json je;
    je["id"] = e.edge_id;
    je["left"] = e.left;
    je["right"] = e.right;
    ordered_json dist;
    dist["values"] = e.dist.values;
    dist["probs"] = e.dist.probs;
    je["dist"] = std::move(dist);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return dump(j);
}

MarketInstance instance_from_json(const std::string& text) {
  return guard_types("instance", [&] {
    const ordered_json j = parse(text, "instance");
    if (!j.is_object()) throw ParseError("instance: expected an object");
    MarketInstance instance;
    instance.n_left = field(j, "n_left", "instance").get<int>();
    instance.n_right = field(j, "n_right", "instance").get<int>();
    const ordered_json& edges = field(j, "edges", "instance");
    if (!edges.is_array()) throw ParseError("instance: 'edges' must be an array");
    for (const auto& je : edges) {
      EdgeSpec e;
      e.edge_id = field(je, "id", "edge").get<int>();
      e.left = field(je, "left", "edge").get<int>();
      e.right = field(je, "right", "edge").get<int>();
      const ordered_json& dist = field(je, "dist", "edge");
      e.dist.values = as_number_array(field(dist, "values", "dist"), "dist.values");
      e.dist.probs = as_number_array(field(dist, "probs", "dist"), "dist.probs");
      instance.edges.push_back(std::move(e));
    }
    return instance;
  });
}

std::string violations_to_json(const std::vector<Violation>& violations) {
  ordered_json arr = ordered_json::array();
  for (const Violation& v : violations) {
    ordered_json j;
    j["code"] = v.code;
    j["message"] = v.message;
    j["edge_id"] = v.edge_id;
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

std::string profile_to_json(const ValuationProfile& profile) {
  return dump(ordered_json(profile));
}

ValuationProfile profile_from_json(const std::string& text) {
  return guard_types("profile", [&] {
    return as_number_array(parse(text, "profile"), "profile");
  });
}

std::string order_to_json(const ArrivalOrder& order) {
  return dump(ordered_json(order));
}

ArrivalOrder order_from_json(const std::string& text) {
  return guard_types("order", [&] {
    const ordered_json j = parse(text, "order");
    if (!j.is_array()) throw ParseError("order: expected an array");
    ArrivalOrder order;
    order.reserve(j.size());
    for (const auto& v : j) {
      if (!v.is_number_integer()) throw ParseError("order: entries must be integers");
      order.push_back(v.get<int>());
    }
    return order;
  });
}

std::string moments_to_json(const ContributionMatrices& moments) {
  ordered_json j;
  j["n"] = moments.M.rows();
  j["m"] = moments.M.cols();
  j["M"] = matrix_to_json(moments.M);
  j["Q"] = matrix_to_json(moments.Q);
  if (moments.exact())
    j["trials"] = "exact";
  else
    j["trials"] = moments.trials;
  if (moments.stderr_M) j["stderr_M"] = matrix_to_json(*moments.stderr_M);
  if (moments.stderr_Q) j["stderr_Q"] = matrix_to_json(*moments.stderr_Q);
  return dump(j);
}

ContributionMatrices moments_from_json(const std::string& text) {
  return guard_types("moments", [&] {
    const ordered_json j = parse(text, "moments");
    ContributionMatrices moments;
    moments.M = matrix_from_json(field(j, "M", "moments"), "moments.M");
    moments.Q = matrix_from_json(field(j, "Q", "moments"), "moments.Q");
    const std::size_t n = field(j, "n", "moments").get<std::size_t>();
    const std::size_t m = field(j, "m", "moments").get<std::size_t>();
    if (moments.M.rows() != n || moments.M.cols() != m || !moments.M.same_shape(moments.Q))
      throw ParseError("moments: matrix shapes disagree with n, m");
    const ordered_json& trials = field(j, "trials", "moments");
    if (trials.is_string()) {
      if (trials.get<std::string>() != "exact")
        throw ParseError("moments: 'trials' must be an integer or \"exact\"");
      moments.trials = 0;
    } else {
      moments.trials = trials.get<std::uint64_t>();
    }
    if (j.contains("stderr_M"))
      moments.stderr_M = matrix_from_json(j["stderr_M"], "moments.stderr_M");
    if (j.contains("stderr_Q"))
      moments.stderr_Q = matrix_from_json(j["stderr_Q"], "moments.stderr_Q");
    return moments;
  });
}

std::string solution_to_json(const PriceSolution& solution) {
  ordered_json j;
  j["l"] = solution.prices.l;
  j["r"] = solution.prices.r;
  j["iterations"] = solution.iterations;
  j["final_residual"] = solution.final_residual;
  j["trace"] = solution.trace;
  ordered_json cert;
  cert["s"] = solution.certificate.s;
  cert["opt"] = solution.certificate.opt;
  cert["gap"] = solution.certificate.gap;
  j["certificate"] = std::move(cert);
  if (solution.q_rescaled) j["q_rescaled"] = true;
  return dump(j);
}

PriceSolution solution_from_json(const std::string& text) {
  return guard_types("solution", [&] {
    const ordered_json j = parse(text, "solution");
    PriceSolution solution;
    solution.prices.l = as_number_array(field(j, "l", "solution"), "solution.l");
    solution.prices.r = as_number_array(field(j, "r", "solution"), "solution.r");
    solution.iterations = field(j, "iterations", "solution").get<std::uint64_t>();
    solution.final_residual = as_number(field(j, "final_residual", "solution"), "solution");
    solution.trace = as_number_array(field(j, "trace", "solution"), "solution.trace");
    const ordered_json& cert = field(j, "certificate", "solution");
    solution.certificate.s = as_number(field(cert, "s", "certificate"), "certificate");
    solution.certificate.opt = as_number(field(cert, "opt", "certificate"), "certificate");
    solution.certificate.gap = as_number(field(cert, "gap", "certificate"), "certificate");
    solution.q_rescaled = j.value("q_rescaled", false);
    return solution;
  });
}

PriceVector prices_from_json(const std::string& text) {
  return guard_types("prices", [&] {
    const ordered_json j = parse(text, "prices");
    PriceVector prices;
    prices.l = as_number_array(field(j, "l", "prices"), "prices.l");
    prices.r = as_number_array(field(j, "r", "prices"), "prices.r");
    return prices;
  });
}

std::string orders_to_json(const std::vector<TaggedOrder>& orders) {
  ordered_json arr = ordered_json::array();
  for (const TaggedOrder& tagged : orders) {
    ordered_json j;
    j["tag"] = tagged.tag;
    j["sequence"] = tagged.order;
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

std::vector<TaggedOrder> orders_from_json(const std::string& text) {
  return guard_types("orders", [&] {
    const ordered_json j = parse(text, "orders");
    if (!j.is_array()) throw ParseError("orders: expected an array");
    std::vector<TaggedOrder> orders;
    for (const auto& jt : j) {
      TaggedOrder tagged;
      tagged.tag = field(jt, "tag", "orders").get<std::string>();
      const ordered_json& seq = field(jt, "sequence", "orders");
      if (!seq.is_array()) throw ParseError("orders: 'sequence' must be an array");
      for (const auto& v : seq) {
        if (!v.is_number_integer())
          throw ParseError("orders: sequence entries must be integers");
        tagged.order.push_back(v.get<int>());
      }
      orders.push_back(std::move(tagged));
    }
    return orders;
  });
}

std::string simulation_to_json(const SimulationSet& set) {
  ordered_json j;
  j["trials"] = set.reports.empty() ? 0 : set.reports.front().trials;
  ordered_json reports = ordered_json::array();
  for (const SimulationReport& r : set.reports) {
    ordered_json jr;
    jr["order"] = r.order_tag;
    jr["mean_welfare"] = r.mean_welfare;
    jr["stderr_welfare"] = r.stderr_welfare;
    jr["mean_revenue"] = r.mean_revenue;
    jr["mean_surplus"] = r.mean_surplus;
    jr["mean_opt"] = r.mean_opt;
    jr["stderr_opt"] = r.stderr_opt;
    jr["ratio"] = r.ratio;
    reports.push_back(std::move(jr));
  }
  j["reports"] = std::move(reports);
  j["worst_order"] =
      set.reports.empty() ? "" : set.reports[set.worst_index].order_tag;
  return dump(j);
}

SimulationSet simulation_from_json(const std::string& text) {
  return guard_types("simulation", [&] {
    const ordered_json j = parse(text, "simulation");
    SimulationSet set;
    const std::uint64_t trials = field(j, "trials", "simulation").get<std::uint64_t>();
    const ordered_json& reports = field(j, "reports", "simulation");
    if (!reports.is_array()) throw ParseError("simulation: 'reports' must be an array");
    for (const auto& jr : reports) {
      SimulationReport r;
      r.order_tag = field(jr, "order", "report").get<std::string>();
      r.trials = trials;
      r.mean_welfare = as_number(field(jr, "mean_welfare", "report"), "report");
      r.stderr_welfare = as_number(field(jr, "stderr_welfare", "report"), "report");
      r.mean_revenue = as_number(field(jr, "mean_revenue", "report"), "report");
      r.mean_surplus = as_number(field(jr, "mean_surplus", "report"), "report");
      r.mean_opt = as_number(field(jr, "mean_opt", "report"), "report");
      r.stderr_opt = as_number(field(jr, "stderr_opt", "report"), "report");
      const ordered_json& ratio = field(jr, "ratio", "report");
      r.ratio = ratio.is_null() ? std::numeric_limits<double>::infinity()
                                : as_number(ratio, "report");
      set.reports.push_back(std::move(r));
    }
    const std::string worst = field(j, "worst_order", "simulation").get<std::string>();
    for (std::size_t o = 0; o < set.reports.size(); ++o)
      if (set.reports[o].order_tag == worst) {
        set.worst_index = o;
        break;
      }
    return set;
  });
}

std::string simulation_to_csv(const SimulationSet& set) {
  std::string csv =
      "order,mean_welfare,stderr_welfare,mean_revenue,mean_surplus,mean_opt,"
      "stderr_opt,ratio\n";
  for (const SimulationReport& r : set.reports) {
    csv += r.order_tag;
    for (double x : {r.mean_welfare, r.stderr_welfare, r.mean_revenue, r.mean_surplus,
                     r.mean_opt, r.stderr_opt, r.ratio}) {
      csv += ',';
      csv += number_to_string(x);
    }
    csv += '\n';
  }
  return csv;
}

}  // namespace vpm
