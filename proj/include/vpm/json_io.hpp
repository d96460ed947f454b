// json_io.hpp - canonical JSON (and CSV) forms of every pipeline artifact.
//
// Writers emit keys in a fixed order and rely on shortest round-trip number
// formatting, so serialize -> parse -> serialize is byte-identical and
// reruns diff clean. Parsers accept any key order.
#pragma once

#include <string>

#include "vpm/model.hpp"
#include "vpm/moments.hpp"
#include "vpm/policy.hpp"
#include "vpm/pricing.hpp"

namespace vpm {

std::string instance_to_json(const MarketInstance& instance);
MarketInstance instance_from_json(const std::string& text);

std::string violations_to_json(const std::vector<Violation>& violations);

std::string profile_to_json(const ValuationProfile& profile);
ValuationProfile profile_from_json(const std::string& text);

std::string order_to_json(const ArrivalOrder& order);
ArrivalOrder order_from_json(const std::string& text);

std::string moments_to_json(const ContributionMatrices& moments);
ContributionMatrices moments_from_json(const std::string& text);

std::string solution_to_json(const PriceSolution& solution);
PriceSolution solution_from_json(const std::string& text);

// Reads just the price vectors out of a solution document.
PriceVector prices_from_json(const std::string& text);

std::string orders_to_json(const std::vector<TaggedOrder>& orders);
std::vector<TaggedOrder> orders_from_json(const std::string& text);

std::string simulation_to_json(const SimulationSet& set);
SimulationSet simulation_from_json(const std::string& text);
std::string simulation_to_csv(const SimulationSet& set);

// One double, formatted exactly as it would appear inside a JSON document.
std::string number_to_string(double x);

}  // namespace vpm
