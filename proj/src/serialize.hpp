// SPDX-License-Identifier: Apache-2.0
// JSON forms of library objects. Internal to the shared library.
#pragma once

#include "json.hpp"
#include "setfam/distance.hpp"
#include "setfam/hardness.hpp"
#include "setfam/testers.hpp"
#include "setfam/violations.hpp"

namespace setfam::serialize {

using nlohmann::json;

json to_json(const Certificate& cert);
/// Points are given as indices; arity supplies their length.
Certificate certificate_from_json(const json& j, int arity);

json to_json(const TesterReport& report);
json to_json(const DistanceResult& result);
json to_json(const TalagrandDnf& dnf);

/// {"format": "setfam-instance", "version": 1, "kind", "n", "eps", "seed"}.
json instance_spec_json(const InstanceSpec& spec);
InstanceSpec instance_spec_from_json(const json& j);

/// Spec plus the hidden randomness (A, T, b, s / r).
json describe(const InstanceSpec& spec, const IntersectInstance& inst);
json describe(const InstanceSpec& spec, const UcInstance& inst);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace setfam::serialize
