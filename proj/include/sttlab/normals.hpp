#pragma once

#include <set>
#include <string>
#include <vector>

#include "sttlab/lp_model.hpp"
#include "sttlab/polytope.hpp"
#include "sttlab/rational.hpp"
#include "sttlab/topology.hpp"

namespace sttlab {

// One fractional depth point uncovered by a scan, with every facet whose
// direction revealed it. The stored full point is the solver's optimum for
// the first such direction.
struct DiscoveredVertex {
  RatVector depths;
  RatVector point;
  std::vector<Facet> directions;
};

struct ScanReport {
  std::string topology;
  int phase = 1;
  int stt_count = 0;
  int primary_direction_count = 0;
  int false_facet_count = 0;
  std::vector<DiscoveredVertex> new_vertices;
  // Depth vectors carried over from earlier phases, part of this phase's hull.
  std::vector<RatVector> known_fractional;
  // Automorphism orbits over known_fractional plus new_vertices.
  int vertex_classes = 0;
  // Coordinate denominators across every scanned optimum.
  std::set<Integer> denominators_D;
  std::set<Integer> denominators_XZD;
  // False when a budget stopped the scan before every direction was solved.
  bool complete = true;
};

struct ScanOptions {
  int jobs = 0;                     // worker threads, 0 = hardware concurrency
  long facet_budget = -1;           // max directions to solve, -1 = all
  double time_budget_seconds = -1;  // wall clock per phase, -1 = unlimited
};

// Phase 1: hull the STT depth vectors of u, solve the primal LP in every
// facet-normal direction, and collect the optima lying strictly below their
// facet.
ScanReport scan(const Topology& u, const ScanOptions& options = {});

// Next phase: hull over the STT depth vectors plus everything discovered so
// far, then rescan. A report with no false facets is closed.
ScanReport iterate(const Topology& u, const ScanReport& prior, const ScanOptions& options = {});

// Orbits of depth vectors under the coordinate action of the topology's
// automorphisms. Each orbit lists indices into `depths`, ascending; orbits
// are ordered by their smallest member.
std::vector<std::vector<int>> orbit_classes(const std::vector<RatVector>& depths,
                                            const Topology& u);

// The scan core: hull the known depth points and probe the given model in
// each facet direction, applied to the model's depth variables. Exposed so
// synthetic point sets can be scanned without a topology.
ScanReport scan_directions(const std::string& name, const LpModel& model,
                           const std::vector<RatVector>& known_depths, int phase,
                           const ScanOptions& options = {});

// One header line and one data line shaped like the summary table.
std::string report_to_tsv(const ScanReport& report);

// Full detail: every false-facet normal and every discovered vertex.
std::string report_to_json(const ScanReport& report);

}  // namespace sttlab
