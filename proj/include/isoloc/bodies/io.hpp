#pragma once

#include <filesystem>

#include "json.hpp"

#include "isoloc/bodies/constructors.hpp"

namespace isoloc {

/// Body literal:
///   {"type":"hpoly","A":[[...]],"b":[...]}
///   {"type":"vpoly","vertices":[[...]]}
///   {"type":"ball","n":3,"r":2.0}
///   {"type":"named","name":"cube","n":4,"rep":"h"|"v"|"both"}
/// Unknown keys are rejected.
BodyPtr body_from_json(const nlohmann::json& j);
BodyPtr load_body(const std::filesystem::path& path);

/// Literal for a polytope (facets and/or vertices) or ball; throws
/// InvalidBodyError for bodies without a finite description.
nlohmann::json body_to_json(const Body& body);

Representation representation_from_string(const std::string& s);

}  // namespace isoloc
