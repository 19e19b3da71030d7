#include "sttlab/topology.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace sttlab {

Topology::Topology(int n, const std::vector<std::pair<int, int>>& edges_one_based) : n_(n) {
  if (n < 1) throw std::invalid_argument("topology needs at least one node");
  if (static_cast<int>(edges_one_based.size()) != n - 1)
    throw std::invalid_argument("a tree on " + std::to_string(n) + " nodes needs exactly " +
                                std::to_string(n - 1) + " edges");
  adjacency_.assign(n, {});
  for (auto [a, b] : edges_one_based) {
    if (a < 1 || a > n || b < 1 || b > n)
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    if (a == b) throw std::invalid_argument("self-loop at node " + std::to_string(a));
    int lo = std::min(a, b) - 1, hi = std::max(a, b) - 1;
    edges_.emplace_back(lo, hi);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");
  for (auto [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : adjacency_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
  }
  if (reached != n) throw std::invalid_argument("graph is disconnected (or has a cycle)");
}

bool Topology::adjacent(int a, int b) const {
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::vector<int> Topology::path_inclusive(int a, int b) const {
  if (a == b) throw std::invalid_argument("path endpoints must differ");
  std::vector<int> parent(n_, -1);
  std::queue<int> frontier;
  frontier.push(a);
  parent[a] = a;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    if (v == b) break;
    for (int w : adjacency_[v])
      if (parent[w] < 0) {
        parent[w] = v;
        frontier.push(w);
      }
  }
  std::vector<int> path;
  for (int v = b; v != a; v = parent[v]) path.push_back(v);
  path.push_back(a);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> Topology::path_between(int a, int b) const {
  std::vector<int> path = path_inclusive(a, b);
  return {path.begin() + 1, path.end() - 1};
}

int Topology::distance(int a, int b) const {
  if (a == b) return 0;
  return static_cast<int>(path_inclusive(a, b).size()) - 1;
}

int Topology::diameter() const {
  int best = 0;
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) best = std::max(best, distance(a, b));
  return best;
}

std::string Topology::to_text() const {
  std::ostringstream out;
  out << n_ << "\n";
  for (auto [a, b] : edges_) out << (a + 1) << " " << (b + 1) << "\n";
  return out.str();
}

Topology make_path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return Topology(n, edges);
}

Topology make_star(int n) {
  std::vector<std::pair<int, int>> edges;
  if (n >= 2) edges.emplace_back(1, 2);
  for (int i = 3; i <= n; ++i) edges.emplace_back(2, i);
  return Topology(n, edges);
}

Topology parse_topology(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n)) throw std::invalid_argument("topology text must start with the node count");
  std::vector<std::pair<int, int>> edges;
  int a, b;
  while (in >> a >> b) edges.emplace_back(a, b);
  return Topology(n, edges);
}

bool is_automorphism(const Topology& u, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != u.size()) return false;
  for (auto [a, b] : u.edges())
    if (!u.adjacent(perm[a], perm[b])) return false;
  return true;
}

namespace {

// Backtracking over images of a's nodes inside b, pruning on degree and on
// adjacency with already-placed nodes.
struct IsomorphismSearch {
  const Topology& a;
  const Topology& b;
  std::vector<std::vector<int>>& found;
  bool stop_at_first;

  bool run(std::vector<int>& image, std::vector<char>& used, int next) {
    const int n = a.size();
    if (next == n) {
      found.push_back(image);
      return stop_at_first;
    }
    for (int cand = 0; cand < n; ++cand) {
      if (used[cand] || b.degree(cand) != a.degree(next)) continue;
      bool ok = true;
      for (int prev = 0; prev < next && ok; ++prev)
        if (a.adjacent(next, prev) != b.adjacent(cand, image[prev])) ok = false;
      if (!ok) continue;
      image[next] = cand;
      used[cand] = 1;
      if (run(image, used, next + 1)) return true;
      used[cand] = 0;
    }
    return false;
  }
};

std::vector<std::vector<int>> isomorphisms_between(const Topology& a, const Topology& b,
                                                   bool stop_at_first) {
  std::vector<std::vector<int>> found;
  if (a.size() != b.size()) return found;
  std::vector<int> image(a.size(), -1);
  std::vector<char> used(a.size(), 0);
  IsomorphismSearch{a, b, found, stop_at_first}.run(image, used, 0);
  return found;
}

}  // namespace

std::vector<std::vector<int>> automorphisms(const Topology& u) {
  return isomorphisms_between(u, u, false);
}

std::optional<std::vector<int>> find_isomorphism(const Topology& a, const Topology& b) {
  auto found = isomorphisms_between(a, b, true);
  if (found.empty()) return std::nullopt;
  return found.front();
}

bool isomorphic(const Topology& a, const Topology& b) {
  return find_isomorphism(a, b).has_value();
}

namespace {

std::string ahu_key(const Topology& u, int root, int parent) {
  std::vector<std::string> child_keys;
  for (int w : u.neighbors(root))
    if (w != parent) child_keys.push_back(ahu_key(u, w, root));
  std::sort(child_keys.begin(), child_keys.end());
  std::string key = "(";
  for (const auto& k : child_keys) key += k;
  key += ")";
  return key;
}

std::vector<int> tree_centers(const Topology& u) {
  const int n = u.size();
  if (n == 1) return {0};
  std::vector<int> degree(n), order;
  for (int v = 0; v < n; ++v) degree[v] = u.degree(v);
  std::vector<char> removed(n, 0);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) layer.push_back(v);
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = 1;
      --remaining;
      for (int w : u.neighbors(v))
        if (!removed[w] && --degree[w] == 1) next.push_back(w);
    }
    layer = std::move(next);
  }
  std::vector<int> centers;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) centers.push_back(v);
  return centers;
}

}  // namespace

std::string canonical_key(const Topology& u) {
  std::vector<std::string> keys;
  for (int c : tree_centers(u)) keys.push_back(ahu_key(u, c, -1));
  return *std::min_element(keys.begin(), keys.end());
}

namespace {

std::vector<CatalogEntry> build_catalog() {
  struct Row {
    int n, index, diameter;
    std::vector<std::pair<int, int>> edges;
  };
  const std::vector<Row> rows = {
      {2, 0, 1, {{1, 2}}},
      {3, 0, 2, {{1, 2}, {2, 3}}},
      {4, 0, 3, {{1, 2}, {2, 3}, {3, 4}}},
      {4, 1, 2, {{1, 2}, {2, 3}, {2, 4}}},
      {5, 0, 4, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}},
      {5, 1, 3, {{1, 2}, {2, 3}, {2, 5}, {3, 4}}},
      {5, 2, 2, {{1, 2}, {2, 3}, {2, 4}, {2, 5}}},
      {6, 0, 5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}},
      {6, 1, 4, {{1, 2}, {2, 3}, {2, 6}, {3, 4}, {4, 5}}},
      {6, 2, 4, {{1, 2}, {2, 3}, {3, 4}, {3, 6}, {4, 5}}},
      {6, 3, 3, {{1, 2}, {2, 3}, {2, 5}, {3, 4}, {3, 6}}},
      {6, 4, 3, {{1, 2}, {2, 3}, {2, 5}, {2, 6}, {3, 4}}},
      {6, 5, 2, {{1, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}}},
      {7, 0, 6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}}},
      {7, 1, 5, {{1, 2}, {2, 3}, {2, 7}, {3, 4}, {4, 5}, {5, 6}}},
      {7, 2, 5, {{1, 2}, {2, 3}, {3, 4}, {3, 7}, {4, 5}, {5, 6}}},
      {7, 3, 4, {{1, 2}, {2, 3}, {3, 4}, {3, 6}, {4, 5}, {6, 7}}},
      {7, 4, 4, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {4, 7}}},
      {7, 5, 4, {{1, 2}, {2, 3}, {3, 4}, {3, 6}, {4, 5}, {4, 7}}},
      {7, 6, 4, {{1, 2}, {2, 3}, {3, 4}, {3, 6}, {3, 7}, {4, 5}}},
      {7, 7, 4, {{1, 2}, {2, 3}, {2, 6}, {3, 4}, {4, 5}, {4, 7}}},
      {7, 8, 3, {{1, 2}, {2, 3}, {2, 5}, {3, 4}, {3, 6}, {3, 7}}},
      {7, 9, 3, {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {3, 6}, {3, 7}}},
      {7, 10, 2, {{1, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}}},
      {8, 0, 7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}}},
      {8, 1, 6, {{1, 2}, {2, 3}, {2, 8}, {3, 4}, {4, 5}, {5, 6}, {6, 7}}},
      {8, 2, 6, {{1, 2}, {2, 3}, {3, 4}, {3, 8}, {4, 5}, {5, 6}, {6, 7}}},
      {8, 3, 6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 8}, {5, 6}, {6, 7}}},
      {8, 4, 5, {{1, 2}, {2, 3}, {3, 4}, {3, 7}, {4, 5}, {5, 6}, {7, 8}}},
      {8, 5, 5, {{1, 2}, {2, 3}, {2, 7}, {3, 4}, {3, 8}, {4, 5}, {5, 6}}},
      {8, 6, 5, {{1, 2}, {2, 3}, {2, 7}, {3, 4}, {4, 5}, {4, 8}, {5, 6}}},
      {8, 7, 5, {{1, 2}, {2, 3}, {3, 4}, {3, 7}, {4, 5}, {4, 8}, {5, 6}}},
      {8, 8, 5, {{1, 2}, {2, 3}, {2, 7}, {2, 8}, {3, 4}, {4, 5}, {5, 6}}},
      {8, 9, 5, {{1, 2}, {2, 3}, {3, 4}, {3, 7}, {3, 8}, {4, 5}, {5, 6}}},
      {8, 10, 5, {{1, 2}, {2, 3}, {2, 7}, {3, 4}, {4, 5}, {5, 6}, {5, 8}}},
      {8, 11, 4, {{1, 2}, {2, 3}, {3, 4}, {3, 6}, {3, 7}, {4, 5}, {7, 8}}},
      {8, 12, 4, {{1, 2}, {2, 3}, {2, 6}, {3, 4}, {3, 7}, {4, 5}, {7, 8}}},
      {8, 13, 4, {{1, 2}, {2, 3}, {2, 6}, {3, 4}, {3, 7}, {4, 5}, {4, 8}}},
      {8, 14, 4, {{1, 2}, {2, 3}, {2, 6}, {2, 7}, {3, 4}, {3, 8}, {4, 5}}},
      {8, 15, 4, {{1, 2}, {2, 3}, {2, 6}, {3, 4}, {3, 7}, {3, 8}, {4, 5}}},
      {8, 16, 4, {{1, 2}, {2, 3}, {2, 6}, {3, 4}, {4, 5}, {4, 7}, {4, 8}}},
      {8, 17, 4, {{1, 2}, {2, 3}, {3, 4}, {3, 6}, {3, 7}, {3, 8}, {4, 5}}},
      {8, 18, 4, {{1, 2}, {2, 3}, {2, 6}, {2, 7}, {2, 8}, {3, 4}, {4, 5}}},
      {8, 19, 3, {{1, 2}, {2, 3}, {2, 5}, {2, 6}, {3, 4}, {3, 7}, {3, 8}}},
      {8, 20, 3, {{1, 2}, {2, 3}, {2, 5}, {2, 6}, {2, 7}, {3, 4}, {3, 8}}},
      {8, 21, 3, {{1, 2}, {2, 3}, {2, 5}, {2, 6}, {2, 7}, {2, 8}, {3, 4}}},
      {8, 22, 2, {{1, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8}}},
  };
  std::vector<CatalogEntry> catalog;
  catalog.reserve(rows.size());
  for (const auto& row : rows) {
    CatalogEntry entry{"U_(" + std::to_string(row.n) + "," + std::to_string(row.index) + ")",
                       row.n, row.index, row.diameter, Topology(row.n, row.edges)};
    catalog.push_back(std::move(entry));
  }
  return catalog;
}

}  // namespace

const std::vector<CatalogEntry>& topology_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

const CatalogEntry& catalog_entry(int n, int index) {
  for (const auto& entry : topology_catalog())
    if (entry.n == n && entry.index == index) return entry;
  throw std::out_of_range("no catalog topology U_(" + std::to_string(n) + "," +
                          std::to_string(index) + ")");
}

const CatalogEntry* find_catalog_entry(const std::string& name) {
  std::string digits;
  std::vector<int> nums;
  for (char c : name) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else if (!digits.empty()) {
      nums.push_back(std::stoi(digits));
      digits.clear();
    }
  }
  if (!digits.empty()) nums.push_back(std::stoi(digits));
  if (nums.size() != 2) return nullptr;
  for (const auto& entry : topology_catalog())
    if (entry.n == nums[0] && entry.index == nums[1]) return &entry;
  return nullptr;
}

std::string catalog_display_name(const Topology& u) {
  for (const CatalogEntry& entry : topology_catalog())
    if (entry.n == u.size() && isomorphic(entry.topology, u)) return entry.name;
  return "n=" + std::to_string(u.size());
}

std::vector<Topology> enumerate_topologies(int n) {
  if (n < 2) throw std::invalid_argument("enumeration starts at n=2");
  if (n <= 8) {
    std::vector<Topology> out;
    for (const auto& entry : topology_catalog())
      if (entry.n == n) out.push_back(entry.topology);
    return out;
  }
  return enumerate_topologies_from_scratch(n);
}

std::vector<Topology> enumerate_topologies_from_scratch(int n) {
  if (n < 2) throw std::invalid_argument("enumeration starts at n=2");
  if (n == 2) return {make_path(2)};
  std::map<std::string, Topology> by_key;
  std::vector<int> pruefer(n - 2, 0);
  while (true) {
    // standard Pruefer decode: repeatedly join the smallest leaf to the
    // next sequence element
    std::vector<int> work(n, 1);
    for (int v : pruefer) ++work[v];
    std::vector<std::pair<int, int>> edges;
    std::vector<char> done(n, 0);
    for (int v : pruefer) {
      int leaf = -1;
      for (int w = 0; w < n; ++w)
        if (!done[w] && work[w] == 1) {
          leaf = w;
          break;
        }
      edges.emplace_back(leaf + 1, v + 1);
      done[leaf] = 1;
      --work[v];
    }
    std::vector<int> last;
    for (int w = 0; w < n; ++w)
      if (!done[w]) last.push_back(w);
    edges.emplace_back(last[0] + 1, last[1] + 1);
    Topology t(n, edges);
    by_key.emplace(canonical_key(t), std::move(t));

    int pos = n - 3;
    while (pos >= 0 && pruefer[pos] == n - 1) pruefer[pos--] = 0;
    if (pos < 0) break;
    ++pruefer[pos];
  }
  std::vector<Topology> out;
  std::vector<std::pair<int, std::string>> order;
  std::vector<Topology> all;
  for (auto& [key, t] : by_key) {
    order.emplace_back(-t.diameter(), key);
    all.push_back(t);
  }
  std::vector<std::size_t> idx(all.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return order[a] < order[b]; });
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

Topology extend_leaf(const Topology& u, int attach) {
  if (attach < 0 || attach >= u.size()) throw std::invalid_argument("attach node out of range");
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : u.edges()) edges.emplace_back(a + 1, b + 1);
  edges.emplace_back(attach + 1, u.size() + 1);
  return Topology(u.size() + 1, edges);
}

Topology extend_subdivide(const Topology& u, int a, int b) {
  if (!u.adjacent(a, b)) throw std::invalid_argument("subdivision needs an existing edge");
  const int fresh = u.size();
  std::vector<std::pair<int, int>> edges;
  for (auto [x, y] : u.edges())
    if (!((x == a && y == b) || (x == b && y == a))) edges.emplace_back(x + 1, y + 1);
  edges.emplace_back(a + 1, fresh + 1);
  edges.emplace_back(b + 1, fresh + 1);
  return Topology(u.size() + 1, edges);
}

CombineResult combine(const std::vector<CombinePart>& parts) {
  if (parts.size() < 2) throw std::invalid_argument("combine needs at least two parts");
  int total = 0;
  for (const auto& part : parts) total += part.topology.size();
  const int root = total;  // 0-based id of the fresh node
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> relabel;
  int offset = 0;
  for (const auto& part : parts) {
    if (part.attach < 0 || part.attach >= part.topology.size())
      throw std::invalid_argument("attach node out of range");
    std::vector<int> map(part.topology.size());
    for (int v = 0; v < part.topology.size(); ++v) map[v] = offset + v;
    for (auto [a, b] : part.topology.edges()) edges.emplace_back(map[a] + 1, map[b] + 1);
    edges.emplace_back(map[part.attach] + 1, root + 1);
    relabel.push_back(std::move(map));
    offset += part.topology.size();
  }
  return CombineResult{Topology(total + 1, edges), std::move(relabel), root};
}

}  // namespace sttlab
