#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fppa/pa_graph.hpp"

namespace fppa {

// Edge-list text format:
//   #pa-graph v1 variant=<tag> t=<t> seed=<seed>
//   born src dst [weight]
// Weights are printed with 17 significant digits and reload bit-exactly.
inline constexpr const char* kGraphFormatMagic = "#pa-graph";
inline constexpr const char* kGraphFormatVersion = "v1";

struct LoadedGraph {
  GrowthGraph graph;
  std::vector<std::string> warnings;
};

void write_graph(std::ostream& out, const GrowthGraph& g);
// expected_variant, when non-empty, is compared against the header tag; a
// mismatch is reported as a warning, not an error.
LoadedGraph read_graph(std::istream& in, const std::string& expected_variant = {});

void save_graph(const GrowthGraph& g, const std::filesystem::path& path);
LoadedGraph load_graph(const std::filesystem::path& path, const std::string& expected_variant = {});

}  // namespace fppa
