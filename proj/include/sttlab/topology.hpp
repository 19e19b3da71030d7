#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sttlab {

// Unweighted tree over nodes 0..n-1. Node ids are 1-based in every file
// format and report, 0-based in code.
class Topology {
 public:
  Topology(int n, const std::vector<std::pair<int, int>>& edges_one_based);

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  bool adjacent(int a, int b) const;

  // Interior of the unique a..b path, ordered from a's side; empty when adjacent.
  std::vector<int> path_between(int a, int b) const;
  // Same path including both endpoints.
  std::vector<int> path_inclusive(int a, int b) const;
  int distance(int a, int b) const;
  int diameter() const;

  std::string to_text() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

Topology make_path(int n);
Topology make_star(int n);  // catalog shape: center is node 2 (1-based)

// First whitespace-separated token is n, followed by n-1 edges "i j" (1-based).
Topology parse_topology(const std::string& text);

// perm maps node v to perm[v]; true iff the edge set is preserved.
bool is_automorphism(const Topology& u, const std::vector<int>& perm);
std::vector<std::vector<int>> automorphisms(const Topology& u);
std::optional<std::vector<int>> find_isomorphism(const Topology& a, const Topology& b);
bool isomorphic(const Topology& a, const Topology& b);

// AHU string of the free tree (canonical over center rootings); equal keys
// iff isomorphic.
std::string canonical_key(const Topology& u);

struct CatalogEntry {
  std::string name;  // "U_(n,i)"
  int n = 0;
  int index = 0;
  int diameter = 0;
  Topology topology;
};

// All 47 named topologies with 2..8 nodes, ordered by n then index.
const std::vector<CatalogEntry>& topology_catalog();
const CatalogEntry& catalog_entry(int n, int index);
// Accepts "U_(7,3)", "U_7_3", "(7,3)" or "7,3"; null when unknown.
const CatalogEntry* find_catalog_entry(const std::string& name);
// Catalog name of any isomorphic entry, "n=<size>" when none matches.
std::string catalog_display_name(const Topology& u);

// Catalog order for n <= 8; larger sizes enumerated from scratch.
std::vector<Topology> enumerate_topologies(int n);
// Independent enumeration (all Pruefer sequences, deduplicated by canonical
// key); used to cross-check the catalog.
std::vector<Topology> enumerate_topologies_from_scratch(int n);

// The new node gets id n+1 (1-based).
Topology extend_leaf(const Topology& u, int attach);
Topology extend_subdivide(const Topology& u, int a, int b);

struct CombinePart {
  Topology topology;
  int attach = 0;
};

struct CombineResult {
  Topology combined;
  std::vector<std::vector<int>> relabel;  // relabel[p][old node] = new node
  int root = 0;                           // always the last id
};

// Disjoint union of the parts plus a fresh root adjacent to each attach node.
CombineResult combine(const std::vector<CombinePart>& parts);

}  // namespace sttlab
