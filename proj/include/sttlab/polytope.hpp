#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sttlab/lp_model.hpp"
#include "sttlab/rational.hpp"

namespace sttlab {

// A halfspace normal.x >= offset supporting a polyhedron on a full
// (dimension-1)-face. The normal entries are coprime integers;
// spanning_vertices indexes the input points lying on the facet.
struct Facet {
  IntVector normal;
  Rational offset = 0;
  std::vector<int> spanning_vertices;
};

// Facets of conv(points) + the nonnegative orthant, computed exactly by the
// double description method on the polar cone. Every normal comes out
// componentwise nonnegative; facets are sorted by normal, then offset. The
// ray cap bounds the intermediate ray count (std::length_error beyond it).
std::vector<Facet> dominance_hull_facets(const std::vector<RatVector>& points,
                                         std::size_t ray_cap = 4000000);

// normal.point < offset, exactly.
bool point_below_facet(const Facet& facet, const RatVector& point);

// All vertices of the model's polyhedron: explicit rows, every implicit
// family member, and nonnegativity of every variable. Sorted
// lexicographically by coordinate vector. Models with more variables than
// the cap are refused; sample directions instead of enumerating.
std::vector<RatVector> enumerate_vertices(const LpModel& model, int var_cap = 40);

// All vertices of {x : facet.normal . x >= facet.offset for every facet}.
// The system must be pointed.
std::vector<RatVector> enumerate_vertices(const std::vector<Facet>& facets, int dim);

// One facet per line, "offset ; n1 n2 ... nk". Spanning sets are not stored
// in the text form.
std::string facets_to_text(const std::vector<Facet>& facets);
std::vector<Facet> facets_from_text(const std::string& text);

}  // namespace sttlab
