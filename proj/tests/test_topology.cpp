#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sttlab/topology.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace sttlab;

namespace {

std::set<std::string> key_set(const std::vector<Topology>& ts) {
  std::set<std::string> keys;
  for (const auto& t : ts) keys.insert(canonical_key(t));
  return keys;
}

}  // namespace

TEST_CASE("construction validates tree shape") {
  CHECK_NOTHROW(Topology(3, {{1, 2}, {2, 3}}));
  CHECK_NOTHROW(Topology(1, {}));
  CHECK_THROWS_AS(Topology(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(3, {{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(3, {{1, 2}, {2, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(3, {{1, 2}, {2, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(3, {{1, 2}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(4, {{1, 2}, {2, 3}, {1, 3}}), std::invalid_argument);
}

TEST_CASE("edges are stored sorted, 0-based, low end first") {
  Topology t(3, {{3, 2}, {2, 1}});
  const std::vector<std::pair<int, int>> expected{{0, 1}, {1, 2}};
  CHECK(t.edges() == expected);
  CHECK(t.adjacent(0, 1));
  CHECK(t.adjacent(1, 0));
  CHECK_FALSE(t.adjacent(0, 2));
  CHECK(t.degree(1) == 2);
  CHECK(t.neighbors(1) == std::vector<int>{0, 2});
}

TEST_CASE("paths, distances and diameters") {
  const Topology& u = catalog_entry(7, 3).topology;  // legs 1-2-3, 5-4-3, 7-6-3
  CHECK(u.path_between(0, 4) == std::vector<int>{1, 2, 3});
  CHECK(u.path_between(0, 6) == std::vector<int>{1, 2, 5});
  CHECK(u.path_between(2, 3).empty());
  CHECK(u.path_inclusive(0, 4) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(u.distance(0, 4) == 4);
  CHECK(u.distance(0, 0) == 0);
  CHECK(u.diameter() == 4);
  CHECK_THROWS_AS(u.path_between(3, 3), std::invalid_argument);

  for (int a = 0; a < u.size(); ++a)
    for (int b = 0; b < u.size(); ++b) {
      if (a == b) continue;
      auto fwd = u.path_between(a, b);
      auto bwd = u.path_between(b, a);
      std::reverse(bwd.begin(), bwd.end());
      CHECK(fwd == bwd);
    }

  CHECK(make_path(6).diameter() == 5);
  CHECK(make_star(6).diameter() == 2);
}

TEST_CASE("text round trip") {
  CHECK(make_path(3).to_text() == "3\n1 2\n2 3\n");
  Topology parsed = parse_topology("3\n1 2\n2 3\n");
  CHECK(parsed.edges() == make_path(3).edges());
  CHECK(parse_topology(make_star(5).to_text()).edges() == make_star(5).edges());
  CHECK_THROWS_AS(parse_topology("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_topology("4\n1 2\n2 3\n"), std::invalid_argument);
}

TEST_CASE("star helper puts the center at node 2") {
  Topology s = make_star(5);
  CHECK(s.degree(1) == 4);
  for (int v : {0, 2, 3, 4}) CHECK(s.degree(v) == 1);
}

TEST_CASE("catalog holds all 47 topologies in published order") {
  const auto& catalog = topology_catalog();
  REQUIRE(catalog.size() == 47);

  const std::map<int, int> counts{{2, 1}, {3, 1}, {4, 2}, {5, 3}, {6, 6}, {7, 11}, {8, 23}};
  std::map<int, int> seen;
  std::set<std::string> keys;
  for (const auto& entry : catalog) {
    CHECK(entry.name ==
          "U_(" + std::to_string(entry.n) + "," + std::to_string(entry.index) + ")");
    CHECK(entry.index == seen[entry.n]++);
    CHECK(entry.diameter == entry.topology.diameter());
    keys.insert(canonical_key(entry.topology));
  }
  CHECK(std::map<int, int>(seen) == counts);
  CHECK(keys.size() == 47);  // pairwise non-isomorphic

  for (auto [n, count] : counts) {
    CHECK(isomorphic(catalog_entry(n, 0).topology, make_path(n)));
    CHECK(isomorphic(catalog_entry(n, count - 1).topology, make_star(n)));
    for (int i = 1; i < count; ++i)
      CHECK(catalog_entry(n, i).diameter <= catalog_entry(n, i - 1).diameter);
  }

  CHECK_THROWS_AS(catalog_entry(9, 0), std::out_of_range);
}

TEST_CASE("catalog lookup accepts the common spellings") {
  const CatalogEntry* e = find_catalog_entry("U_(7,3)");
  REQUIRE(e != nullptr);
  CHECK(e->n == 7);
  CHECK(e->index == 3);
  CHECK(find_catalog_entry("U_7_3") == e);
  CHECK(find_catalog_entry("(7,3)") == e);
  CHECK(find_catalog_entry("7,3") == e);
  CHECK(find_catalog_entry("U_(9,0)") == nullptr);
  CHECK(find_catalog_entry("garbage") == nullptr);
  CHECK(find_catalog_entry("7") == nullptr);
}

TEST_CASE("enumeration sizes and catalog cross-check") {
  CHECK_THROWS_AS(enumerate_topologies(1), std::invalid_argument);
  CHECK(enumerate_topologies(7).size() == 11);
  CHECK(enumerate_topologies(8).size() == 23);

  auto catalog_slice = [](int n) {
    std::vector<Topology> out;
    for (const auto& entry : topology_catalog())
      if (entry.n == n) out.push_back(entry.topology);
    return out;
  };

  const std::vector<std::size_t> expected_sizes{1, 1, 2, 3, 6, 11};
  for (int n = 2; n <= 7; ++n) {
    auto scratch = enumerate_topologies_from_scratch(n);
    CHECK(scratch.size() == expected_sizes[n - 2]);
    CHECK(key_set(scratch) == key_set(catalog_slice(n)));
  }

  // pairwise isomorphism really fails, not just key inequality
  auto sixes = enumerate_topologies(6);
  for (std::size_t a = 0; a < sixes.size(); ++a)
    for (std::size_t b = a + 1; b < sixes.size(); ++b)
      CHECK_FALSE(isomorphic(sixes[a], sixes[b]));
}

TEST_CASE("automorphism groups") {
  CHECK(automorphisms(make_path(5)).size() == 2);
  CHECK(automorphisms(make_star(5)).size() == 24);
  CHECK(automorphisms(Topology(1, {})).size() == 1);

  const Topology path = make_path(4);
  CHECK(is_automorphism(path, {0, 1, 2, 3}));
  CHECK(is_automorphism(path, {3, 2, 1, 0}));
  CHECK_FALSE(is_automorphism(path, {1, 0, 2, 3}));

  // independent route: sweep all 7! permutations
  const Topology& u = catalog_entry(7, 3).topology;
  std::vector<int> perm{0, 1, 2, 3, 4, 5, 6};
  std::set<std::vector<int>> swept;
  do {
    if (is_automorphism(u, perm)) swept.insert(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(swept.size() == 6);

  auto found = automorphisms(u);
  CHECK(std::set<std::vector<int>>(found.begin(), found.end()) == swept);
}

TEST_CASE("automorphisms form a group") {
  const Topology star = make_star(4);
  auto auts = automorphisms(star);
  CHECK(auts.size() == 6);
  std::set<std::vector<int>> group(auts.begin(), auts.end());
  CHECK(group.count({0, 1, 2, 3}) == 1);
  for (const auto& p : auts) {
    std::vector<int> inverse(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) inverse[p[v]] = static_cast<int>(v);
    CHECK(group.count(inverse) == 1);
    for (const auto& q : auts) {
      std::vector<int> composed(p.size());
      for (std::size_t v = 0; v < p.size(); ++v) composed[v] = q[p[v]];
      CHECK(group.count(composed) == 1);
    }
  }
}

TEST_CASE("isomorphism search") {
  const Topology a = make_path(4);
  const Topology b(4, {{2, 4}, {4, 1}, {1, 3}});  // path 2-4-1-3
  auto iso = find_isomorphism(a, b);
  REQUIRE(iso.has_value());
  std::set<int> image(iso->begin(), iso->end());
  CHECK(image.size() == 4);
  for (auto [x, y] : a.edges()) CHECK(b.adjacent((*iso)[x], (*iso)[y]));

  CHECK_FALSE(find_isomorphism(make_path(4), make_star(4)).has_value());
  CHECK_FALSE(isomorphic(make_path(4), make_path(5)));
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(make_path(4)) != canonical_key(make_star(4)));
}

TEST_CASE("leaf and subdivision extensions") {
  CHECK(isomorphic(extend_leaf(make_path(2), 0), make_path(3)));
  CHECK(isomorphic(extend_subdivide(make_path(2), 0, 1), make_path(3)));
  CHECK(extend_subdivide(make_path(2), 0, 1).degree(2) == 2);

  // a leaf on the degree-3 center of U_(7,3) gives the (2,2,2,1) spider
  const Topology& u73 = catalog_entry(7, 3).topology;
  Topology spider = extend_leaf(u73, 2);
  CHECK(isomorphic(spider, catalog_entry(8, 11).topology));
  CHECK_FALSE(isomorphic(spider, catalog_entry(8, 16).topology));

  CHECK_THROWS_AS(extend_leaf(make_path(2), 5), std::invalid_argument);
  CHECK_THROWS_AS(extend_subdivide(make_path(3), 0, 2), std::invalid_argument);
}

TEST_CASE("extend then shrink returns the original") {
  const Topology u = catalog_entry(5, 1).topology;

  Topology grown = extend_leaf(u, 3);
  std::vector<std::pair<int, int>> trimmed;
  for (auto [a, b] : grown.edges())
    if (a != u.size() && b != u.size()) trimmed.emplace_back(a + 1, b + 1);
  CHECK(Topology(u.size(), trimmed).edges() == u.edges());

  auto [a0, b0] = u.edges()[1];
  Topology split = extend_subdivide(u, a0, b0);
  std::vector<std::pair<int, int>> merged;
  for (auto [a, b] : split.edges())
    if (a != u.size() && b != u.size()) merged.emplace_back(a + 1, b + 1);
  merged.emplace_back(a0 + 1, b0 + 1);
  CHECK(Topology(u.size(), merged).edges() == u.edges());
}

TEST_CASE("combine glues parts through a fresh root") {
  const Topology path2 = make_path(2);
  const Topology single(1, {});

  auto five = combine({{path2, 0}, {path2, 0}});
  CHECK(five.combined.size() == 5);
  CHECK(five.root == 4);
  CHECK(isomorphic(five.combined, catalog_entry(5, 0).topology));

  auto tee = combine({{make_path(3), 1}, {single, 0}});
  CHECK(isomorphic(tee.combined, catalog_entry(5, 1).topology));

  auto spider = combine({{path2, 0}, {path2, 0}, {path2, 0}});
  CHECK(isomorphic(spider.combined, catalog_entry(7, 3).topology));

  auto tiny = combine({{single, 0}, {single, 0}});
  CHECK(isomorphic(tiny.combined, make_path(3)));

  // relabel maps embed each part and the root touches every attach node
  const std::vector<CombinePart> parts{{make_path(3), 1}, {single, 0}};
  auto r = combine(parts);
  REQUIRE(r.relabel.size() == 2);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (auto [a, b] : parts[p].topology.edges())
      CHECK(r.combined.adjacent(r.relabel[p][a], r.relabel[p][b]));
    CHECK(r.combined.adjacent(r.root, r.relabel[p][parts[p].attach]));
  }

  CHECK_THROWS_AS(combine({{path2, 0}}), std::invalid_argument);
}
