#pragma once

#include "isoloc/bodies/polytope.hpp"

namespace isoloc {

/// Which descriptions a named polytope carries. `automatic` attaches every
/// description with at most 1024 elements. `h` and `v` give the bare
/// description with no closed-form gauge or exact sampler.
enum class Representation { h, v, both, automatic };

/// [−s, s]ⁿ
std::shared_ptr<const Polytope> cube(std::size_t n, double half_width = 1.0,
                                     Representation rep = Representation::automatic);
/// conv(±s·eᵢ), the ℓ¹ ball of radius s.
std::shared_ptr<const Polytope> cross_polytope(std::size_t n, double radius = 1.0,
                                               Representation rep = Representation::automatic);
/// Regular simplex with barycentre at the origin and circumradius R.
std::shared_ptr<const Polytope> simplex(std::size_t n, double circumradius = 1.0,
                                        Representation rep = Representation::automatic);
BodyPtr ball(std::size_t n, double r = 1.0);

/// Vertices of the regular simplex with unit circumradius, barycentre 0.
std::vector<Vector> regular_simplex_vertices(std::size_t n);

/// Named standard body: "cube", "ball", "crosspoly" (alias "cross-polytope")
/// or "simplex", all at unit scale.
BodyPtr named_body(const std::string& name, std::size_t n, Representation rep = Representation::automatic);
/// Canonical spelling of a body name; throws InvalidBodyError for unknown names.
std::string canonical_body_name(const std::string& name);
std::vector<std::string> named_body_list();

}  // namespace isoloc
