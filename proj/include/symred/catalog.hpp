// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symred/model.hpp"
#include "symred/semialg.hpp"

namespace symred {

struct ParamSpec {
  std::string name;
  std::string default_value;
  std::string constraint;
};

struct ModelDescriptor {
  std::string key;
  std::vector<ParamSpec> params;
  std::string summary;
};

/// Parameter values as text (integers or rationals, e.g. "3/2").
using CatalogParams = std::map<std::string, std::string>;

const std::vector<ModelDescriptor>& catalog_descriptors();

/// Throws PreconditionError for an unknown key or invalid parameters.
SymmetryModel catalog_model(const std::string& key, const CatalogParams& params = {});

/// The image of the orbit map when it is not just the model's relations and
/// inequalities. so3_diag_r9_scaled lives directly in invariant coordinates,
/// so its orbit space (the unit-vector Gram set) is a Casimir level there.
std::optional<SemiAlgebraicSet> catalog_orbit_space(const std::string& key,
                                                    const CatalogParams& params = {});

/// The perturbed-oscillator Hamiltonian on R^8, written in the invariants
/// (H2, Xi, L1, N, K, S).
Polynomial oscillator_hamiltonian(const Rational& beta);

/// Parses "k=1,l=2" or "k=1&l=2".
CatalogParams parse_catalog_params(const std::string& text);

/// Fills defaults and normalizes values to canonical rational text.
CatalogParams normalized_params(const std::string& key, const CatalogParams& params);

}  // namespace symred
