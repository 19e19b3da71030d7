#pragma once

// Data shared by several test binaries: the seven-node three-legged topology
// from the catalog, the weight vector whose LP optimum is fractional there,
// and that optimum itself.

#include <string>

#include "sttlab/lp_model.hpp"
#include "sttlab/rational.hpp"
#include "sttlab/topology.hpp"

namespace sttlab::fixtures {

inline const Topology& long_star_7() { return catalog_entry(7, 3).topology; }

inline RatVector long_star_weights() { return make_rat_vector({3, 2, 0, 2, 3, 3, 10}); }

// X and D coordinates of the half-integer optimum for long_star_weights.
inline const char* const kHalfIntegerVertexXD = R"(
X_1_2=1/2
X_1_3=1/2
X_2_1=1/2
X_2_3=1
X_2_4=1/2
X_2_5=1/2
X_2_6=1/2
X_4_1=1/2
X_4_2=1/2
X_4_3=1
X_4_5=1/2
X_4_6=1/2
X_5_3=1/2
X_5_4=1/2
X_6_1=1/2
X_6_2=1/2
X_6_3=1
X_6_4=1/2
X_6_5=1/2
X_6_7=1/2
X_7_1=1/2
X_7_2=1/2
X_7_3=1/2
X_7_4=1/2
X_7_5=1/2
X_7_6=1/2
D_1=2
D_2=2
D_3=9/2
D_4=2
D_5=2
D_6=3/2
D_7=1/2
)";

// The thirteen nonzero Z coordinates of the same point.
inline const char* const kHalfIntegerVertexZ = R"(
Z_2_1_3=1/2
Z_2_1_4=1/2
Z_2_1_5=1/2
Z_2_1_6=1/2
Z_4_1_5=1/2
Z_6_1_7=1/2
Z_4_2_5=1/2
Z_6_2_7=1/2
Z_4_3_5=1/2
Z_6_3_7=1/2
Z_6_4_7=1/2
Z_4_5_6=1/2
Z_6_5_7=1/2
)";

// The full point in the coordinates of the given model; models without Z
// variables get just the X, D part.
inline RatVector half_integer_vertex(const LpModel& model) {
  std::string text = kHalfIntegerVertexXD;
  if (!model.vars.of_kind(VarKind::Z).empty()) text += kHalfIntegerVertexZ;
  return point_from_text(model.vars, text);
}

}  // namespace sttlab::fixtures
