#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "wb/density.hpp"
#include "wb/droplets.hpp"
#include "wb/energy.hpp"
#include "wb/kernel.hpp"
#include "wb/search.hpp"
#include "wb/toy.hpp"

namespace wb {

// Double with 17 significant digits, enough to reproduce the bit pattern.
std::string format17(double x);

// JSON dump that prints every number through format17.
std::string dump17(const nlohmann::json& j, int indent = 2);

// Kernel specs are stored as a key/value text config with [well], [barrier]
// and [tail] sections; see configs/ for samples.
KernelPtr parse_kernel_config(std::istream& in);
KernelPtr load_kernel_config(const std::string& path);
std::string kernel_config_string(const Kernel& kernel);

// Grid density text format: one header line
//   <dim> <origin...> <h> <counts...>
// followed by whitespace-separated cell values.
void save_grid_text(const GridDensity& density, const std::string& path);
GridDensity load_grid_text(const std::string& path);
void save_grid_csv(const GridDensity& density, const std::string& path);

nlohmann::json to_json(const IntervalConfig& config);
IntervalConfig interval_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DropletConfig& config);
DropletConfig droplet_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EnergyResult& result);
nlohmann::json to_json(const ELReport& report);
nlohmann::json to_json(const SeparationReport& report);
nlohmann::json to_json(const ToyMinimum& minimum);
nlohmann::json to_json(const ClusterSet& clusters);

}  // namespace wb
