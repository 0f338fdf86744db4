#pragma once

#include <json.hpp>
#include <string>

#include "qgraph/graph.hpp"
#include "qgraph/matching.hpp"
#include "qgraph/secular.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph {

struct GraphSpec {
  MetricGraph graph;
  MatchingConditions conditions;
};

// Parse with every numeric token captured as its exact decimal text, so the
// asymptotics layer never sees rounded doubles.  Rationals may be written as
// JSON numbers, decimal strings, or "p/q" strings.
nlohmann::json load_exact_json_text(const std::string& text);
nlohmann::json load_exact_json_file(const std::string& path);

GraphSpec graph_spec_from_json(const nlohmann::json& j);
GraphSpec parse_graph_spec_file(const std::string& path);
GraphSpec parse_graph_spec_text(const std::string& text);

nlohmann::json emit_graph_spec(const GraphSpec& spec);

nlohmann::json determinant_to_json(const DeterminantResult& r);
nlohmann::json zeta_to_json(const ZetaResult& r);
nlohmann::json spectrum_to_json(const Spectrum& s);
nlohmann::json profile_to_json(const AsymptoticProfile& p);

// Deterministic serialization: sorted keys, floats as %.12e.
std::string dump_fixed(const nlohmann::json& j, int indent = 2);

}  // namespace qgraph
