#pragma once

#include <string>

#include "json.hpp"

#include "gaugelab/geometry.hpp"
#include "gaugelab/potentials.hpp"

namespace gaugelab {

// JSON descriptors for potentials, paths and surfaces; the schema is written
// up in docs/potentials.md. Unknown keys and wrong types raise
// InvalidArgument.

PotentialSpec potential_from_json(const nlohmann::json& j);
nlohmann::json potential_to_json(const PotentialSpec& spec);

// Accepts an object descriptor or the shorthand "unit-circle".
ParamPath path_from_json(const nlohmann::json& j);

// Accepts an object descriptor or the shorthands "unit-disk" and
// "unit-sphere". `shell_radii` are added as radial splits when the surface is
// an axis-centred horizontal disk (ignored otherwise).
ParamSurface surface_from_json(const nlohmann::json& j, std::span<const double> shell_radii = {});

// Radii of every cylinder shell in the potential's patch.
std::vector<double> shell_radii(const PotentialSpec& spec);

// Parses text as JSON, falling back to a bare string for shorthands.
nlohmann::json parse_descriptor(const std::string& text);

// "x,y,z" or "[x,y,z]".
Point3 parse_point(const std::string& text);

}  // namespace gaugelab
