// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symred/catalog.hpp"
#include "symred/model.hpp"
#include "symred/orbitmap.hpp"
#include "symred/releq.hpp"
#include "symred/semialg.hpp"
#include "symred/strata.hpp"

namespace symred {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "symred";
inline constexpr const char* kToolVersion = "0.1.0";

/// Where a document came from. Thread counts and timings are deliberately
/// absent so that documents are byte-identical across runs.
struct Provenance {
  std::string command;
  std::string model_source;  // as given on the command line
  std::string model_name;
  CatalogParams params;      // normalized catalog parameters (empty for files)
  std::vector<std::pair<std::string, std::string>> options;
};

Json to_json(const Provenance& p);

/// Exact rational text: "3", "-1/2".
std::string rational_text(const Rational& r);

/// Accepts "3", "-1/2", "0.25", "1e-3". Decimal forms are converted exactly.
Rational parse_rational_text(std::string_view text);

Json to_json(const InducedStructure& w);
Json to_json(const ReducedSpace& rs);
Json to_json(const SemiAlgebraicSet& s);
Json to_json(const RankReport& r);
Json to_json(const PrincipalEstimate& e);
Json to_json(const EquilibriumResult& r);
Json to_json(const SolveReport& r);
Json to_json(const Mesh& m);
Json to_json(const InvarianceReport& r, const SymmetryModel& m);
Json to_json(const RelationReport& r, const SymmetryModel& m);
Json to_json(const InequalityReport& r);

/// {"provenance": ..., <kind>: body} rendered with two-space indentation and
/// a trailing newline.
std::string render_document(const Provenance& p, std::string_view kind, const Json& body);

}  // namespace symred
