#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sttlab/search_tree.hpp"
#include "sttlab/topology.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

using namespace sttlab;

TEST_CASE("masks and component splitting") {
  CHECK(full_mask(1) == 1u);
  CHECK(full_mask(3) == 7u);

  const Topology& u = catalog_entry(7, 3).topology;
  auto comps = split_components(u, full_mask(7) & ~(NodeMask(1) << 2));
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == 0b0000011u);
  CHECK(comps[1] == 0b0011000u);
  CHECK(comps[2] == 0b1100000u);
}

TEST_CASE("enumeration order is pinned") {
  auto trees = enumerate_stts(make_path(3));
  std::vector<std::string> texts;
  for (const auto& t : trees) texts.push_back(stt_to_text(t));
  CHECK(texts == std::vector<std::string>{"1(2(3))", "1(3(2))", "2(1,3)", "3(1(2))", "3(2(1))"});
}

TEST_CASE("search tree counts match the published table") {
  CHECK(count_stts(make_path(2)) == 2);

  const std::map<std::pair<int, int>, std::uint64_t> expected{
      {{3, 0}, 5},
      {{4, 0}, 14},    {{4, 1}, 16},
      {{5, 0}, 42},    {{5, 1}, 51},    {{5, 2}, 65},
      {{6, 0}, 132},   {{6, 1}, 166},   {{6, 2}, 176},   {{6, 3}, 214},
      {{6, 4}, 236},   {{6, 5}, 326},
      {{7, 0}, 429},   {{7, 1}, 552},   {{7, 2}, 605},   {{7, 3}, 662},
      {{7, 4}, 836},   {{7, 5}, 807},   {{7, 6}, 930},   {{7, 7}, 721},
      {{7, 8}, 1135},  {{7, 9}, 1337},  {{7, 10}, 1957},
      {{8, 0}, 1430},  {{8, 1}, 1870},  {{8, 2}, 2094},  {{8, 3}, 2164},
      {{8, 4}, 2416},  {{8, 5}, 2952},  {{8, 6}, 2802},  {{8, 7}, 3232},
      {{8, 8}, 2952},  {{8, 9}, 3490},  {{8, 10}, 2470}, {{8, 11}, 3988},
      {{8, 12}, 3332}, {{8, 13}, 4076}, {{8, 14}, 4674}, {{8, 15}, 4884},
      {{8, 16}, 3996}, {{8, 17}, 5940}, {{8, 18}, 5142}, {{8, 19}, 6842},
      {{8, 20}, 7284}, {{8, 21}, 8970}, {{8, 22}, 13700},
  };
  for (const auto& [key, count] : expected)
    CHECK(count_stts(catalog_entry(key.first, key.second).topology) == count);

  // counting and enumeration agree
  for (const auto& entry : topology_catalog()) {
    if (entry.n > 6) continue;
    CHECK(enumerate_stts(entry.topology).size() == count_stts(entry.topology));
  }
  CHECK(enumerate_stts(catalog_entry(7, 3).topology).size() == 662);
}

TEST_CASE("depths follow the root-at-zero convention") {
  const Topology path3 = make_path(3);
  SearchTree t = parse_stt("2(1,3)", path3);
  CHECK(stt_depths(t, 3) == std::vector<int>{1, 0, 1});

  RatVector d = stt_depth_vector(t, 3);
  CHECK(d(1) == Rational(0));

  SearchTree incomplete{0, {}};
  CHECK_THROWS_AS(stt_depths(incomplete, 2), std::invalid_argument);
}

TEST_CASE("depth matrix rows are pairwise distinct") {
  for (const auto& entry : topology_catalog()) {
    if (entry.n > 6) continue;
    std::set<std::vector<int>> seen;
    for (const auto& t : enumerate_stts(entry.topology))
      seen.insert(stt_depths(t, entry.n));
    CHECK(seen.size() == count_stts(entry.topology));
  }
  const Topology& u = catalog_entry(7, 3).topology;
  RatMatrix m = stt_depth_matrix(u);
  CHECK(m.rows() == 662);
  CHECK(m.cols() == 7);
}

TEST_CASE("total depth is at least n-1") {
  for (const auto& entry : topology_catalog()) {
    if (entry.n > 6) continue;
    for (const auto& t : enumerate_stts(entry.topology)) {
      int total = 0;
      for (int d : stt_depths(t, entry.n)) total += d;
      CHECK(total >= entry.n - 1);
    }
  }
}

TEST_CASE("serialization round trips and rejects malformed input") {
  const Topology u = catalog_entry(5, 1).topology;
  for (const auto& t : enumerate_stts(u)) {
    const std::string text = stt_to_text(t);
    SearchTree back = parse_stt(text, u);
    CHECK(stt_to_text(back) == text);
    CHECK(stt_depths(back, 5) == stt_depths(t, 5));
  }

  const Topology path3 = make_path(3);
  CHECK(stt_to_text(parse_stt(" 2 ( 1 , 3 ) ", path3)) == "2(1,3)");
  CHECK_THROWS_AS(parse_stt("1(2)", path3), std::invalid_argument);
  CHECK_THROWS_AS(parse_stt("1(2,3)", path3), std::invalid_argument);
  CHECK_THROWS_AS(parse_stt("2(1,3)x", path3), std::invalid_argument);
  CHECK_THROWS_AS(parse_stt("2(1,3", path3), std::invalid_argument);
  CHECK_THROWS_AS(parse_stt("2(1,1)", path3), std::invalid_argument);
  CHECK_THROWS_AS(parse_stt("", path3), std::invalid_argument);
}

TEST_CASE("cost adds one visit for the root") {
  SearchTree single{0, {}};
  CHECK(stt_cost(single, make_rat_vector({1})) == Rational(1));

  const Topology& u = catalog_entry(7, 3).topology;
  const RatVector w = make_rat_vector({3, 2, 0, 2, 3, 3, 10});
  SearchTree rounded = parse_stt("7(6(3(2(1),4(5))))", u);
  CHECK(stt_depths(rounded, 7) == std::vector<int>{4, 3, 2, 3, 4, 1, 0});
  CHECK(stt_cost(rounded, w) == Rational(62));

  RatVector negative = make_rat_vector({1, -1, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS(stt_cost(rounded, negative), std::invalid_argument);
}

TEST_CASE("brute-force optimum") {
  const Topology& u = catalog_entry(7, 3).topology;
  const RatVector w = make_rat_vector({3, 2, 0, 2, 3, 3, 10});
  BestSttResult best = best_stt(u, w);
  CHECK(best.value == Rational(30));
  CHECK(best.depths == std::vector<int>{1, 2, 0, 2, 1, 2, 1});
  CHECK(stt_cost(best.tree, w) == Rational(53));
  CHECK(std::count(best.optimal_roots.begin(), best.optimal_roots.end(), 2) == 1);

  BestSttResult p3 = best_stt(make_path(3), make_rat_vector({3, 1, 2}));
  CHECK(p3.value == Rational(4));
  CHECK(p3.depths == std::vector<int>{0, 2, 1});
  CHECK(p3.optimal_roots == std::vector<int>{0});

  BestSttResult lone = best_stt(Topology(1, {}), make_rat_vector({5}));
  CHECK(lone.value == Rational(0));
  CHECK(lone.optimal_roots == std::vector<int>{0});

  CHECK_THROWS_AS(best_stt(make_path(9), RatVector::Zero(9)), std::invalid_argument);
  CHECK_THROWS_AS(best_stt(make_path(3), RatVector::Zero(2)), std::invalid_argument);
}

TEST_CASE("optimal trees respect the depth-by-weight bound") {
  const std::vector<std::pair<int, int>> instances{{5, 1}, {6, 3}};
  std::mt19937_64 rng(202406);
  std::uniform_int_distribution<int> pick(1, 9);
  for (auto [n, index] : instances) {
    const Topology& u = catalog_entry(n, index).topology;
    for (int trial = 0; trial < 5; ++trial) {
      RatVector f(n);
      Rational total = 0;
      for (int i = 0; i < n; ++i) {
        f(i) = Rational(pick(rng));
        total += f(i);
      }
      for (int i = 0; i < n; ++i) f(i) /= total;
      BestSttResult best = best_stt(u, f);
      for (int i = 0; i < n; ++i) CHECK(f(i) * (best.depths[i] + 1) <= 1);
    }
  }
}

TEST_CASE("direct star optimum matches brute force") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> pick(0, 12);
  for (int n = 2; n <= 7; ++n) {
    const Topology star = make_star(n);
    for (int trial = 0; trial < 4; ++trial) {
      Rational center(pick(rng));
      std::vector<Rational> leaves;
      RatVector f = RatVector::Zero(n);
      f(1) = center;
      for (int i = 0; i < n - 1; ++i) {
        leaves.emplace_back(pick(rng));
        f(i == 0 ? 0 : i + 1) = leaves.back();
      }
      StarOptimum direct = optimal_star_stt(center, leaves);
      BestSttResult brute = best_stt(star, f);
      CHECK(direct.cost == brute.value + f.sum());
      CHECK(direct.cost == stt_cost(direct.tree, f));
      CHECK(stt_to_text(parse_stt(stt_to_text(direct.tree), star)) ==
            stt_to_text(direct.tree));
    }
  }
}

TEST_CASE("star corner cases") {
  StarOptimum lone = optimal_star_stt(Rational(7), {});
  CHECK(lone.cost == Rational(7));
  CHECK(lone.tree.root == 0);

  // both leaves go above the light center
  StarOptimum tiny = optimal_star_stt(Rational(0), {Rational(2), Rational(1)});
  CHECK(tiny.cost == Rational(4));

  // a dominant center is queried first
  StarOptimum heavy = optimal_star_stt(Rational(100), {Rational(1), Rational(2), Rational(3)});
  CHECK(heavy.tree.root == 1);
  CHECK(heavy.cost == Rational(112));
}
