#include "sttlab/normals.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"

#include "sttlab/search_tree.hpp"
#include "sttlab/simplex.hpp"

namespace sttlab {

namespace {

std::vector<RatVector> stt_depth_rows(const Topology& u) {
  const RatMatrix m = stt_depth_matrix(u);
  std::vector<RatVector> rows;
  rows.reserve(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(m.row(r).transpose());
  return rows;
}

std::vector<Rational> as_key(const RatVector& v) {
  return std::vector<Rational>(v.data(), v.data() + v.size());
}

struct ProbeResult {
  Rational value;
  RatVector point;
};

int resolved_jobs(const ScanOptions& options, long work) {
  int jobs = options.jobs > 0 ? options.jobs
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  if (work < jobs) jobs = static_cast<int>(work);
  return jobs;
}

std::string join_denominators(const std::set<Integer>& values) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const Integer& v : values) {
    if (!first) out << ',';
    out << v;
    first = false;
  }
  out << '}';
  return out.str();
}

int orbit_count(const ScanReport& report, const Topology& u) {
  std::vector<RatVector> depths = report.known_fractional;
  for (const DiscoveredVertex& v : report.new_vertices) depths.push_back(v.depths);
  return static_cast<int>(orbit_classes(depths, u).size());
}

// The depth variables are unbounded above, so a direction with a zero
// component leaves the optimum degenerate and the solver may return a point
// whose projection is not minimal. Pinning the optimal face and minimizing
// the depth coordinates in index order lands on the lexicographically least
// point of the face, which is a vertex of the projection.
RatVector pin_to_projection_vertex(const LpModel& model, const std::vector<int>& depth_vars,
                                   const RatVector& objective, const OptResult& first) {
  LpModel pinned = model;
  LinearRow face;
  face.relation = Relation::Equal;
  face.rhs = first.value;
  face.label = "discovery-face";
  for (int v : depth_vars)
    if (objective(v) != 0) face.terms.emplace_back(v, objective(v));
  pinned.rows.push_back(std::move(face));

  RatVector point = first.point;
  const int nvars = static_cast<int>(model.vars.size());
  for (const int var : depth_vars) {
    RatVector axis = RatVector::Zero(nvars);
    axis(var) = 1;
    const OptResult res = solve_with_separation(pinned, axis, Sense::Minimize);
    if (res.status != OptStatus::Optimal)
      throw std::runtime_error("a discovered point could not be pinned to a vertex");
    point = res.point;
    LinearRow pin;
    pin.relation = Relation::Equal;
    pin.rhs = res.value;
    pin.label = "discovery-pin";
    pin.terms.emplace_back(var, Rational(1));
    pinned.rows.push_back(std::move(pin));
  }
  return point;
}

}  // namespace

ScanReport scan_directions(const std::string& name, const LpModel& model,
                           const std::vector<RatVector>& known_depths, int phase,
                           const ScanOptions& options) {
  const std::vector<Facet> facets = dominance_hull_facets(known_depths);
  const int dim = static_cast<int>(known_depths.front().size());
  const std::vector<int> depth_vars = model.vars.of_kind(VarKind::D);
  if (static_cast<int>(depth_vars.size()) != dim)
    throw std::invalid_argument("the model's depth variables do not match the point dimension");

  ScanReport report;
  report.topology = name;
  report.phase = phase;
  report.primary_direction_count = static_cast<int>(facets.size());

  long scanned = static_cast<long>(facets.size());
  if (options.facet_budget >= 0 && options.facet_budget < scanned) {
    scanned = options.facet_budget;
    report.complete = false;
  }

  std::vector<std::optional<ProbeResult>> results(facets.size());
  std::atomic<long> next{0};
  std::atomic<bool> stop{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  const auto started = std::chrono::steady_clock::now();
  const auto over_time = [&] {
    if (options.time_budget_seconds < 0) return false;
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    return elapsed.count() > options.time_budget_seconds;
  };

  const auto worker = [&] {
    const int nvars = static_cast<int>(model.vars.size());
    while (!stop.load()) {
      const long i = next.fetch_add(1);
      if (i >= scanned) break;
      if (over_time()) {
        stop.store(true);
        break;
      }
      try {
        RatVector objective = RatVector::Zero(nvars);
        for (int c = 0; c < dim; ++c)
          objective(depth_vars[c]) = Rational(facets[i].normal(c));
        OptResult res = solve_with_separation(model, objective, Sense::Minimize);
        if (res.status != OptStatus::Optimal)
          throw std::runtime_error("a facet direction did not reach an optimum");
        if (res.value < facets[i].offset)
          res.point = pin_to_projection_vertex(model, depth_vars, objective, res);
        results[i] = ProbeResult{std::move(res.value), std::move(res.point)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        stop.store(true);
        break;
      }
    }
  };

  std::vector<std::thread> pool;
  const int jobs = resolved_jobs(options, scanned);
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::map<std::vector<Rational>, int> discovered;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (!results[i]) {
      report.complete = false;
      continue;
    }
    const ProbeResult& probe = *results[i];
    if (probe.value > facets[i].offset)
      throw std::logic_error("a hull facet was violated by its own direction's optimum");

    RatVector projection(dim);
    for (int c = 0; c < dim; ++c) projection(c) = probe.point(depth_vars[c]);
    for (Eigen::Index c = 0; c < probe.point.size(); ++c)
      report.denominators_XZD.insert(Integer(denominator(probe.point(c))));

    if (probe.value == facets[i].offset) continue;

    ++report.false_facet_count;
    const auto [it, fresh] = discovered.try_emplace(as_key(projection),
                                                    static_cast<int>(report.new_vertices.size()));
    if (fresh)
      report.new_vertices.push_back({projection, probe.point, {}});
    report.new_vertices[it->second].directions.push_back(facets[i]);
  }

  for (const RatVector& p : known_depths)
    for (Eigen::Index c = 0; c < p.size(); ++c)
      report.denominators_D.insert(Integer(denominator(p(c))));
  for (const DiscoveredVertex& v : report.new_vertices)
    for (int c = 0; c < dim; ++c)
      report.denominators_D.insert(Integer(denominator(v.depths(c))));

  report.vertex_classes = static_cast<int>(discovered.size());
  return report;
}

ScanReport scan(const Topology& u, const ScanOptions& options) {
  const LpModel model = build_primal(u);
  const std::vector<RatVector> known = stt_depth_rows(u);
  ScanReport report = scan_directions(catalog_display_name(u), model, known, 1, options);
  report.stt_count = static_cast<int>(known.size());
  report.vertex_classes = orbit_count(report, u);
  return report;
}

ScanReport iterate(const Topology& u, const ScanReport& prior, const ScanOptions& options) {
  std::vector<RatVector> carried = prior.known_fractional;
  for (const DiscoveredVertex& v : prior.new_vertices) carried.push_back(v.depths);

  std::vector<RatVector> known = stt_depth_rows(u);
  const int stts = static_cast<int>(known.size());
  known.insert(known.end(), carried.begin(), carried.end());

  const LpModel model = build_primal(u);
  ScanReport report =
      scan_directions(catalog_display_name(u), model, known, prior.phase + 1, options);
  report.stt_count = stts;
  report.known_fractional = std::move(carried);
  report.vertex_classes = orbit_count(report, u);
  return report;
}

std::vector<std::vector<int>> orbit_classes(const std::vector<RatVector>& depths,
                                            const Topology& u) {
  const int n = u.size();
  for (const RatVector& d : depths)
    if (static_cast<int>(d.size()) != n)
      throw std::invalid_argument("depth vectors do not match the topology size");

  std::map<std::vector<Rational>, std::vector<int>> positions;
  for (std::size_t i = 0; i < depths.size(); ++i)
    positions[as_key(depths[i])].push_back(static_cast<int>(i));

  const std::vector<std::vector<int>> autos = automorphisms(u);
  std::map<std::vector<Rational>, bool> assigned;
  std::vector<std::vector<int>> orbits;

  for (std::size_t i = 0; i < depths.size(); ++i) {
    const std::vector<Rational> seed = as_key(depths[i]);
    if (assigned[seed]) continue;

    std::vector<std::vector<Rational>> queue{seed};
    assigned[seed] = true;
    std::vector<int> orbit;
    while (!queue.empty()) {
      const std::vector<Rational> current = std::move(queue.back());
      queue.pop_back();
      const auto hit = positions.find(current);
      if (hit != positions.end())
        orbit.insert(orbit.end(), hit->second.begin(), hit->second.end());
      for (const std::vector<int>& perm : autos) {
        std::vector<Rational> image(n);
        for (int k = 0; k < n; ++k) image[perm[k]] = current[k];
        if (!assigned[image] && positions.count(image)) {
          assigned[image] = true;
          queue.push_back(std::move(image));
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::string report_to_tsv(const ScanReport& report) {
  const int fractional =
      static_cast<int>(report.known_fractional.size() + report.new_vertices.size());
  std::ostringstream out;
  out << "topology\tstts\tprimary_directions\tfalse_facets\tfrac_vertices"
         "\tvertex_classes\tdenominators_D\tdenominators_XZD\tphase\tcomplete\n";
  out << report.topology << '\t' << report.stt_count << '\t'
      << report.primary_direction_count << '\t' << report.false_facet_count << '\t'
      << fractional << '\t' << report.vertex_classes << '\t'
      << join_denominators(report.denominators_D) << '\t'
      << join_denominators(report.denominators_XZD) << '\t' << report.phase << '\t'
      << (report.complete ? "yes" : "no") << '\n';
  return out.str();
}

std::string report_to_json(const ScanReport& report) {
  nlohmann::json j;
  j["topology"] = report.topology;
  j["phase"] = report.phase;
  j["stt_count"] = report.stt_count;
  j["primary_directions"] = report.primary_direction_count;
  j["false_facets"] = report.false_facet_count;
  j["vertex_classes"] = report.vertex_classes;
  j["complete"] = report.complete;

  const auto rational_array = [](const RatVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_string(v(i)));
    return arr;
  };
  const auto integer_array = [](const IntVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i).str());
    return arr;
  };

  j["denominators_D"] = nlohmann::json::array();
  for (const Integer& d : report.denominators_D) j["denominators_D"].push_back(d.str());
  j["denominators_XZD"] = nlohmann::json::array();
  for (const Integer& d : report.denominators_XZD) j["denominators_XZD"].push_back(d.str());

  j["known_fractional"] = nlohmann::json::array();
  for (const RatVector& v : report.known_fractional)
    j["known_fractional"].push_back(rational_array(v));

  j["new_vertices"] = nlohmann::json::array();
  for (const DiscoveredVertex& v : report.new_vertices) {
    nlohmann::json entry;
    entry["depths"] = rational_array(v.depths);
    entry["point"] = rational_array(v.point);
    entry["directions"] = nlohmann::json::array();
    for (const Facet& facet : v.directions) {
      nlohmann::json f;
      f["offset"] = to_string(facet.offset);
      f["normal"] = integer_array(facet.normal);
      entry["directions"].push_back(std::move(f));
    }
    j["new_vertices"].push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

}  // namespace sttlab
