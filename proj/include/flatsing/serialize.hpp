// Copyright 2026 The flatsing Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "flatsing/affine.hpp"
#include "flatsing/measures.hpp"

namespace flatsing {

using Json = nlohmann::json;

inline constexpr int kSurfaceFormatVersion = 1;
inline constexpr const char* kReportSchema = "flatsing-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

Json surface_json(const Surface& s);
SurfacePtr surface_from_json(const Json& j);
std::string surface_to_string(const Surface& s);
SurfacePtr surface_from_string(const std::string& text);

/// FNV-1a 64 of the canonical surface document, as 16 hex digits.
std::string surface_digest(const Surface& s);

Json affine_map_json(const AffineMap& f);
AffineMap affine_map_from_json(const Json& j, SurfacePtr source, SurfacePtr target);

Json vec_json(const Vec2& v);
Vec2 vec_from_json(const Json& j);
Json edge_json(const EdgeRef& e);
Json corner_json(const CornerKey& k);
Json angle_json(const Angle& a);

Json validation_json(const ValidationReport& r);
Json path_json(const GeodesicPath& p);
Json approach_json(const LinearApproach& a);
Json component_json(const RotationalComponent& c);
Json class_json(const SingularityClass& c);
Json saddles_json(const SaddleConnectionList& l);
Json certificate_json(const EquivalenceCertificate& c);

/// Serialization with sorted keys and floats printed as %.15g; non-finite
/// floats become strings.
std::string dump_stable(const Json& j, int indent = 2);

}  // namespace flatsing
