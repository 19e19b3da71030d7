#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sttlab/lp_model.hpp"
#include "sttlab/polytope.hpp"
#include "sttlab/search_tree.hpp"
#include "sttlab/simplex.hpp"
#include "sttlab/topology.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

using namespace sttlab;

namespace {

bool same_vec(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

bool lex_less(const RatVector& a, const RatVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

bool same_ivec(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

RatVector rat_point(std::initializer_list<long> entries) {
  return make_rat_vector(entries);
}

IntVector int_normal(std::initializer_list<long> entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long e : entries) v(i++) = e;
  return v;
}

std::vector<RatVector> depth_rows(const Topology& u) {
  const RatMatrix m = stt_depth_matrix(u);
  std::vector<RatVector> points;
  points.reserve(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) points.push_back(m.row(r).transpose());
  return points;
}

// Membership of a point in conv(generators) + the nonnegative orthant,
// decided by an exact feasibility LP over mixing weights and slack per
// coordinate. An independent route to the same geometry the hull code
// computes combinatorially.
bool in_dominance_hull(const RatVector& point, const std::vector<RatVector>& generators) {
  LpModel lp;
  const int dim = static_cast<int>(point.size());
  const int count = static_cast<int>(generators.size());
  for (int g = 0; g < count; ++g) lp.vars.add({VarKind::Freq, g, -1, -1});
  for (int c = 0; c < dim; ++c) lp.vars.add({VarKind::D, c, -1, -1});

  LinearRow mix;
  mix.relation = Relation::Equal;
  mix.rhs = 1;
  mix.label = "mix";
  for (int g = 0; g < count; ++g) mix.terms.emplace_back(g, 1);
  lp.rows.push_back(std::move(mix));

  for (int c = 0; c < dim; ++c) {
    LinearRow row;
    row.relation = Relation::Equal;
    row.rhs = point(c);
    row.label = "coordinate-" + std::to_string(c);
    for (int g = 0; g < count; ++g)
      if (generators[g](c) != 0) row.terms.emplace_back(g, generators[g](c));
    row.terms.emplace_back(count + c, 1);
    lp.rows.push_back(std::move(row));
  }

  const OptResult res = solve(lp, RatVector::Zero(count + dim), Sense::Minimize);
  return res.status == OptStatus::Optimal;
}

Rational facet_activity(const Facet& facet, const RatVector& point) {
  Rational activity = 0;
  for (Eigen::Index i = 0; i < point.size(); ++i)
    activity += Rational(facet.normal(i)) * point(i);
  return activity;
}

}  // namespace

TEST_CASE("the dominance hull of the two smallest tree points") {
  const std::vector<RatVector> points{rat_point({0, 1}), rat_point({1, 0})};
  const std::vector<Facet> facets = dominance_hull_facets(points);

  REQUIRE(facets.size() == 3);
  CHECK(same_ivec(facets[0].normal, int_normal({0, 1})));
  CHECK(facets[0].offset == 0);
  CHECK(facets[0].spanning_vertices == std::vector<int>{1});
  CHECK(same_ivec(facets[1].normal, int_normal({1, 0})));
  CHECK(facets[1].offset == 0);
  CHECK(facets[1].spanning_vertices == std::vector<int>{0});
  CHECK(same_ivec(facets[2].normal, int_normal({1, 1})));
  CHECK(facets[2].offset == 1);
  CHECK(facets[2].spanning_vertices == std::vector<int>{0, 1});
}

TEST_CASE("single point hulls have one facet per coordinate") {
  const std::vector<Facet> shifted = dominance_hull_facets({rat_point({3})});
  REQUIRE(shifted.size() == 1);
  CHECK(same_ivec(shifted[0].normal, int_normal({1})));
  CHECK(shifted[0].offset == 3);
  CHECK(shifted[0].spanning_vertices == std::vector<int>{0});

  const std::vector<Facet> origin = dominance_hull_facets({rat_point({0, 0})});
  REQUIRE(origin.size() == 2);
  CHECK(same_ivec(origin[0].normal, int_normal({0, 1})));
  CHECK(same_ivec(origin[1].normal, int_normal({1, 0})));
  CHECK(origin[0].offset == 0);
  CHECK(origin[1].offset == 0);
}

TEST_CASE("the nine point illustration has seven facets") {
  const std::vector<RatVector> points{
      rat_point({4, 0, 0}), rat_point({0, 4, 0}), rat_point({0, 0, 4}),
      rat_point({0, 1, 2}), rat_point({0, 2, 1}), rat_point({1, 0, 2}),
      rat_point({1, 2, 0}), rat_point({2, 0, 1}), rat_point({2, 1, 0})};
  const std::vector<Facet> facets = dominance_hull_facets(points);

  REQUIRE(facets.size() == 7);
  CHECK(same_ivec(facets[0].normal, int_normal({0, 0, 1})));
  CHECK(facets[0].spanning_vertices == std::vector<int>({0, 1, 6, 8}));
  CHECK(same_ivec(facets[1].normal, int_normal({0, 1, 0})));
  CHECK(facets[1].spanning_vertices == std::vector<int>({0, 2, 5, 7}));
  CHECK(same_ivec(facets[2].normal, int_normal({1, 0, 0})));
  CHECK(facets[2].spanning_vertices == std::vector<int>({1, 2, 3, 4}));
  CHECK(same_ivec(facets[3].normal, int_normal({1, 1, 1})));
  CHECK(facets[3].offset == 3);
  CHECK(facets[3].spanning_vertices == std::vector<int>({3, 4, 5, 6, 7, 8}));
  CHECK(same_ivec(facets[4].normal, int_normal({1, 2, 2})));
  CHECK(facets[4].offset == 4);
  CHECK(facets[4].spanning_vertices == std::vector<int>({0, 7, 8}));
  CHECK(same_ivec(facets[5].normal, int_normal({2, 1, 2})));
  CHECK(facets[5].offset == 4);
  CHECK(facets[5].spanning_vertices == std::vector<int>({1, 4, 6}));
  CHECK(same_ivec(facets[6].normal, int_normal({2, 2, 1})));
  CHECK(facets[6].offset == 4);
  CHECK(facets[6].spanning_vertices == std::vector<int>({2, 3, 5}));

  RatVector center(3);
  center << Rational(1, 2), Rational(1, 2), Rational(1, 2);
  int below = 0;
  for (const Facet& facet : facets) below += point_below_facet(facet, center);
  CHECK(below == 4);

  CHECK_FALSE(point_below_facet(facets[3], points[3]));
}

TEST_CASE("hull facet counts match the direction table") {
  CHECK(dominance_hull_facets(depth_rows(make_path(3))).size() == 9);
  CHECK(dominance_hull_facets(depth_rows(make_path(4))).size() == 32);
  CHECK(dominance_hull_facets(depth_rows(catalog_entry(4, 1).topology)).size() == 32);
  CHECK(dominance_hull_facets(depth_rows(make_path(5))).size() == 145);
  CHECK(dominance_hull_facets(depth_rows(catalog_entry(5, 1).topology)).size() == 152);
  CHECK(dominance_hull_facets(depth_rows(make_star(5))).size() == 161);
}

TEST_CASE("the long star direction supports every tree but not the optimum") {
  const Topology u = catalog_entry(7, 3).topology;
  Facet facet{int_normal({3, 2, 0, 2, 3, 3, 10}), 30, {}};

  int tight = 0;
  for (const RatVector& depths : depth_rows(u)) {
    CHECK_FALSE(point_below_facet(facet, depths));
    tight += facet_activity(facet, depths) == facet.offset;
  }
  CHECK(tight > 0);

  RatVector optimum(7);
  optimum << 2, 2, Rational(9, 2), 2, 2, Rational(3, 2), Rational(1, 2);
  CHECK(point_below_facet(facet, optimum));
}

TEST_CASE("primal vertices of the three node path match the census") {
  const Topology u = make_path(3);
  const LpModel model = build_primal(u);
  const int nv = static_cast<int>(model.vars.size());

  const long table[9][7] = {
      {0, 1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 1, 0, 0}, {0, 1, 1, 0, 0, 0, 1},
      {0, 1, 1, 0, 0, 1, 0}, {0, 1, 1, 0, 1, 0, 0}, {1, 0, 0, 1, 0, 1, 0},
      {1, 0, 0, 1, 1, 0, 0}, {1, 0, 1, 0, 1, 0, 0}, {1, 0, 1, 0, 0, 1, 0}};

  std::vector<RatVector> expected;
  for (const auto& row : table) {
    RatVector v = RatVector::Zero(nv);
    v(model.vars.x(0, 1)) = row[0];
    v(model.vars.x(1, 0)) = row[1];
    v(model.vars.x(1, 2)) = row[2];
    v(model.vars.x(2, 1)) = row[3];
    v(model.vars.x(0, 2)) = row[4];
    v(model.vars.x(2, 0)) = row[5];
    v(model.vars.z(1, 0, 2)) = row[6];
    v(model.vars.d(0)) = Rational(row[1] + row[5]);
    v(model.vars.d(1)) = Rational(row[0] + row[3]);
    v(model.vars.d(2)) = Rational(row[2] + row[4]);
    expected.push_back(std::move(v));
  }
  std::sort(expected.begin(), expected.end(), lex_less);

  const std::vector<RatVector> vertices = enumerate_vertices(model);
  REQUIRE(vertices.size() == 9);
  for (int i = 0; i < 9; ++i) CHECK(same_vec(vertices[i], expected[i]));

  int tree_rows = 0;
  for (const SearchTree& t : enumerate_stts(u)) {
    const RatVector induced = induced_point(model, t, u);
    tree_rows += std::count_if(vertices.begin(), vertices.end(),
                               [&](const RatVector& v) { return same_vec(v, induced); });
  }
  CHECK(tree_rows == 5);

  for (const RatVector& v : vertices) {
    CHECK(check_feasible(model, v).empty());
    CHECK(is_vertex(model, v));
  }
}

TEST_CASE("eliminating z turns the lca abusing points into non-vertices") {
  const Topology u = make_path(3);
  const LpModel model = build_z_eliminated(u);
  const int nv = static_cast<int>(model.vars.size());

  const long kept[7][6] = {{0, 1, 0, 1, 0, 1}, {0, 1, 0, 1, 1, 0}, {0, 1, 1, 0, 0, 0},
                           {1, 0, 0, 1, 0, 1}, {1, 0, 0, 1, 1, 0}, {1, 0, 1, 0, 1, 0},
                           {1, 0, 1, 0, 0, 1}};
  const long dropped[2][6] = {{0, 1, 1, 0, 0, 1}, {0, 1, 1, 0, 1, 0}};

  const auto lift = [&](const long* row) {
    RatVector v = RatVector::Zero(nv);
    v(model.vars.x(0, 1)) = row[0];
    v(model.vars.x(1, 0)) = row[1];
    v(model.vars.x(1, 2)) = row[2];
    v(model.vars.x(2, 1)) = row[3];
    v(model.vars.x(0, 2)) = row[4];
    v(model.vars.x(2, 0)) = row[5];
    v(model.vars.d(0)) = Rational(row[1] + row[5]);
    v(model.vars.d(1)) = Rational(row[0] + row[3]);
    v(model.vars.d(2)) = Rational(row[2] + row[4]);
    return v;
  };

  std::vector<RatVector> expected;
  for (const auto& row : kept) expected.push_back(lift(row));
  std::sort(expected.begin(), expected.end(), lex_less);

  const std::vector<RatVector> vertices = enumerate_vertices(model);
  REQUIRE(vertices.size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(same_vec(vertices[i], expected[i]));

  for (const auto& row : dropped) {
    const RatVector point = lift(row);
    CHECK(check_feasible(model, point).empty());
    CHECK_FALSE(is_vertex(model, point));
  }
}

TEST_CASE("the two node path has one vertex per tree") {
  const Topology u = make_path(2);
  const LpModel model = build_primal(u);
  const std::vector<RatVector> vertices = enumerate_vertices(model);
  REQUIRE(vertices.size() == 2);
  for (const SearchTree& t : enumerate_stts(u)) {
    const RatVector induced = induced_point(model, t, u);
    CHECK(std::any_of(vertices.begin(), vertices.end(),
                      [&](const RatVector& v) { return same_vec(v, induced); }));
  }
}

TEST_CASE("hull facets recover exactly the extreme inputs") {
  std::mt19937_64 rng(555111);
  std::uniform_int_distribution<long> entry(0, 6);
  std::uniform_int_distribution<int> extra(0, 3);

  for (int dim = 2; dim <= 4; ++dim) {
    for (int round = 0; round < 3; ++round) {
      std::vector<RatVector> points;
      const int count = 5 + extra(rng);
      for (int p = 0; p < count; ++p) {
        RatVector v(dim);
        for (int c = 0; c < dim; ++c) v(c) = entry(rng);
        points.push_back(std::move(v));
      }
      std::sort(points.begin(), points.end(), lex_less);
      points.erase(std::unique(points.begin(), points.end(), same_vec), points.end());

      const std::vector<Facet> facets = dominance_hull_facets(points);
      for (const Facet& facet : facets) {
        Integer content = 0;
        bool positive = false;
        for (Eigen::Index i = 0; i < facet.normal.size(); ++i) {
          CHECK(facet.normal(i) >= 0);
          positive = positive || facet.normal(i) > 0;
          content = gcd(content, facet.normal(i));
        }
        CHECK(positive);
        CHECK(content == 1);

        for (const RatVector& p : points) CHECK_FALSE(point_below_facet(facet, p));

        // The tight points and the axis rays of the zero normal entries
        // must together span the facet, one dimension below the hull.
        REQUIRE_FALSE(facet.spanning_vertices.empty());
        std::vector<RatVector> directions;
        const RatVector& anchor = points[facet.spanning_vertices.front()];
        for (std::size_t s = 1; s < facet.spanning_vertices.size(); ++s)
          directions.push_back(points[facet.spanning_vertices[s]] - anchor);
        for (int c = 0; c < dim; ++c) {
          if (facet.normal(c) != 0) continue;
          RatVector axis = RatVector::Zero(dim);
          axis(c) = 1;
          directions.push_back(std::move(axis));
        }
        RatMatrix span(static_cast<Eigen::Index>(directions.size()), dim);
        for (std::size_t r = 0; r < directions.size(); ++r)
          span.row(static_cast<Eigen::Index>(r)) = directions[r].transpose();
        CHECK(exact_rank(span) == dim - 1);
      }

      const std::vector<RatVector> recovered = enumerate_vertices(facets, dim);
      for (const RatVector& v : recovered)
        CHECK(std::any_of(points.begin(), points.end(),
                          [&](const RatVector& p) { return same_vec(p, v); }));

      for (const RatVector& p : points) {
        const bool is_recovered =
            std::any_of(recovered.begin(), recovered.end(),
                        [&](const RatVector& v) { return same_vec(p, v); });
        std::vector<RatVector> others;
        for (const RatVector& q : points)
          if (!same_vec(p, q)) others.push_back(q);
        CHECK(in_dominance_hull(p, others) == !is_recovered);
      }
    }
  }
}

TEST_CASE("facet text round trips") {
  const std::vector<Facet> facets = dominance_hull_facets(depth_rows(make_path(3)));
  const std::string text = facets_to_text(facets);
  const std::vector<Facet> parsed = facets_from_text("# directions\n\n" + text);
  REQUIRE(parsed.size() == facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    CHECK(parsed[i].offset == facets[i].offset);
    CHECK(same_ivec(parsed[i].normal, facets[i].normal));
    CHECK(parsed[i].spanning_vertices.empty());
  }

  CHECK_THROWS_AS(facets_from_text("3 1 1"), std::invalid_argument);
  CHECK_THROWS_AS(facets_from_text("3 ; 1/2 1"), std::invalid_argument);
  CHECK_THROWS_AS(facets_from_text("3 ;"), std::invalid_argument);
}

TEST_CASE("oversized inputs are refused") {
  CHECK_THROWS_AS(dominance_hull_facets({}), std::invalid_argument);

  const LpModel big = build_primal(catalog_entry(7, 3).topology);
  CHECK_THROWS_AS(enumerate_vertices(big), std::invalid_argument);

  const std::vector<RatVector> points{
      rat_point({4, 0, 0}), rat_point({0, 4, 0}), rat_point({0, 0, 4}),
      rat_point({0, 1, 2}), rat_point({0, 2, 1}), rat_point({1, 0, 2}),
      rat_point({1, 2, 0}), rat_point({2, 0, 1}), rat_point({2, 1, 0})};
  CHECK_THROWS_AS(dominance_hull_facets(points, 3), std::length_error);
}
