#include "sttlab/search_tree.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sttlab {

NodeMask full_mask(int n) { return (n >= 32) ? ~NodeMask(0) : ((NodeMask(1) << n) - 1); }

std::vector<NodeMask> split_components(const Topology& u, NodeMask nodes) {
  std::vector<NodeMask> components;
  NodeMask remaining = nodes;
  while (remaining) {
    const int seed = std::countr_zero(remaining);
    NodeMask comp = 0, frontier = NodeMask(1) << seed;
    while (frontier) {
      comp |= frontier;
      NodeMask next = 0;
      NodeMask scan = frontier;
      while (scan) {
        const int v = std::countr_zero(scan);
        scan &= scan - 1;
        for (int w : u.neighbors(v)) {
          const NodeMask bit = NodeMask(1) << w;
          if ((nodes & bit) && !(comp & bit)) next |= bit;
        }
      }
      frontier = next;
    }
    components.push_back(comp);
    remaining &= ~comp;
  }
  return components;
}

namespace {

class SttEnumerator {
 public:
  explicit SttEnumerator(const Topology& u) : u_(u) {}

  const std::vector<SearchTree>& trees(NodeMask mask) {
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    std::vector<SearchTree> out;
    NodeMask roots = mask;
    while (roots) {
      const int r = std::countr_zero(roots);
      roots &= roots - 1;
      const auto components = split_components(u_, mask & ~(NodeMask(1) << r));
      std::vector<const std::vector<SearchTree>*> options;
      options.reserve(components.size());
      for (NodeMask comp : components) options.push_back(&trees(comp));
      std::vector<std::size_t> pick(options.size(), 0);
      while (true) {
        SearchTree t;
        t.root = r;
        for (std::size_t c = 0; c < options.size(); ++c)
          t.children.push_back((*options[c])[pick[c]]);
        out.push_back(std::move(t));
        bool advanced = false;
        for (std::size_t c = options.size(); c-- > 0;) {
          if (++pick[c] < options[c]->size()) {
            advanced = true;
            break;
          }
          pick[c] = 0;
        }
        if (!advanced) break;
      }
    }
    return memo_.emplace(mask, std::move(out)).first->second;
  }

 private:
  const Topology& u_;
  std::map<NodeMask, std::vector<SearchTree>> memo_;
};

std::uint64_t count_components(const Topology& u, NodeMask mask,
                               std::map<NodeMask, std::uint64_t>& memo) {
  if (auto it = memo.find(mask); it != memo.end()) return it->second;
  std::uint64_t total = 0;
  NodeMask roots = mask;
  while (roots) {
    const int r = std::countr_zero(roots);
    roots &= roots - 1;
    std::uint64_t ways = 1;
    for (NodeMask comp : split_components(u, mask & ~(NodeMask(1) << r)))
      ways *= count_components(u, comp, memo);
    total += ways;
  }
  memo.emplace(mask, total);
  return total;
}

}  // namespace

std::vector<SearchTree> enumerate_stts(const Topology& u) {
  if (u.size() > 31) throw std::invalid_argument("enumeration capped at 31 nodes");
  SttEnumerator e(u);
  return e.trees(full_mask(u.size()));
}

std::uint64_t count_stts(const Topology& u) {
  if (u.size() > 31) throw std::invalid_argument("enumeration capped at 31 nodes");
  std::map<NodeMask, std::uint64_t> memo;
  return count_components(u, full_mask(u.size()), memo);
}

namespace {

void fill_depths(const SearchTree& t, int depth, std::vector<int>& out) {
  out[t.root] = depth;
  for (const SearchTree& child : t.children) fill_depths(child, depth + 1, out);
}

}  // namespace

std::vector<int> stt_depths(const SearchTree& t, int n) {
  std::vector<int> out(n, -1);
  fill_depths(t, 0, out);
  for (int d : out)
    if (d < 0) throw std::invalid_argument("search tree does not cover every node");
  return out;
}

RatVector stt_depth_vector(const SearchTree& t, int n) {
  const auto depths = stt_depths(t, n);
  RatVector out(n);
  for (int i = 0; i < n; ++i) out(i) = Rational(depths[i]);
  return out;
}

RatMatrix stt_depth_matrix(const Topology& u) {
  const auto trees = enumerate_stts(u);
  RatMatrix m(static_cast<Eigen::Index>(trees.size()), u.size());
  for (std::size_t r = 0; r < trees.size(); ++r)
    m.row(static_cast<Eigen::Index>(r)) = stt_depth_vector(trees[r], u.size()).transpose();
  return m;
}

Rational stt_cost(const SearchTree& t, const RatVector& f) {
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (f(i) < 0) throw std::invalid_argument("weights must be nonnegative");
  const RatVector d = stt_depth_vector(t, static_cast<int>(f.size()));
  return f.dot(d) + f.sum();
}

std::string stt_to_text(const SearchTree& t) {
  std::string out = std::to_string(t.root + 1);
  if (t.children.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ",";
    out += stt_to_text(t.children[i]);
  }
  out += ")";
  return out;
}

namespace {

SearchTree parse_stt_at(const std::string& text, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == start) throw std::invalid_argument("expected a node id in search-tree text");
  SearchTree t;
  t.root = std::stoi(text.substr(start, pos - start)) - 1;
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    while (true) {
      t.children.push_back(parse_stt_at(text, pos));
      if (pos >= text.size()) throw std::invalid_argument("unterminated subtree list");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      throw std::invalid_argument("malformed subtree list");
    }
  }
  return t;
}

NodeMask collect_nodes(const SearchTree& t) {
  NodeMask mask = NodeMask(1) << t.root;
  for (const SearchTree& child : t.children) {
    const NodeMask sub = collect_nodes(child);
    if (mask & sub) throw std::invalid_argument("node repeated in search tree");
    mask |= sub;
  }
  return mask;
}

void validate_structure(const SearchTree& t, const Topology& u, NodeMask component) {
  auto expected = split_components(u, component & ~(NodeMask(1) << t.root));
  if (expected.size() != t.children.size())
    throw std::invalid_argument("subtree count does not match the components under the root");
  std::vector<NodeMask> got;
  for (const SearchTree& child : t.children) got.push_back(collect_nodes(child));
  for (NodeMask comp : expected) {
    const auto it = std::find(got.begin(), got.end(), comp);
    if (it == got.end())
      throw std::invalid_argument("subtree node set is not a component under the root");
    validate_structure(t.children[it - got.begin()], u, comp);
  }
}

}  // namespace

SearchTree parse_stt(const std::string& text, const Topology& u) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  std::size_t pos = 0;
  SearchTree t = parse_stt_at(compact, pos);
  if (pos != compact.size()) throw std::invalid_argument("trailing characters after search tree");
  if (collect_nodes(t) != full_mask(u.size()))
    throw std::invalid_argument("search tree must cover all nodes exactly once");
  validate_structure(t, u, full_mask(u.size()));
  return t;
}

BestSttResult best_stt(const Topology& u, const RatVector& f, int node_cap) {
  if (u.size() > node_cap)
    throw std::invalid_argument("topology exceeds the brute-force node cap");
  if (f.size() != u.size()) throw std::invalid_argument("weight vector length mismatch");
  for (Eigen::Index i = 0; i < f.size(); ++i)
    if (f(i) < 0) throw std::invalid_argument("weights must be nonnegative");
  const auto trees = enumerate_stts(u);
  BestSttResult best;
  bool have = false;
  std::vector<char> root_optimal(u.size(), 0);
  for (const SearchTree& t : trees) {
    const auto depths = stt_depths(t, u.size());
    Rational value = 0;
    for (int i = 0; i < u.size(); ++i) value += f(i) * depths[i];
    if (!have || value < best.value) {
      best = BestSttResult{t, value, depths, {}};
      have = true;
      std::fill(root_optimal.begin(), root_optimal.end(), 0);
      root_optimal[t.root] = 1;
    } else if (value == best.value) {
      root_optimal[t.root] = 1;
      if (depths < best.depths) {
        best.tree = t;
        best.depths = depths;
      }
    }
  }
  for (int r = 0; r < u.size(); ++r)
    if (root_optimal[r]) best.optimal_roots.push_back(r);
  return best;
}

StarOptimum optimal_star_stt(const Rational& center_weight,
                             const std::vector<Rational>& leaf_weights) {
  const int leaves = static_cast<int>(leaf_weights.size());
  const int n = leaves + 1;
  const auto leaf_node = [](int leaf_index) { return leaf_index == 0 ? 0 : leaf_index + 1; };
  std::vector<int> order(leaves);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return leaf_weights[a] > leaf_weights[b]; });

  StarOptimum best;
  bool have = false;
  for (int k = 0; k <= leaves; ++k) {
    // chain the k heaviest leaves, then the center, then the rest flat
    Rational cost = center_weight * (k + 1);
    for (int t = 0; t < k; ++t) cost += leaf_weights[order[t]] * (t + 1);
    for (int t = k; t < leaves; ++t) cost += leaf_weights[order[t]] * (k + 2);
    if (have && cost >= best.cost) continue;
    SearchTree center;
    center.root = n == 1 ? 0 : 1;
    for (int t = k; t < leaves; ++t)
      center.children.push_back(SearchTree{leaf_node(order[t]), {}});
    SearchTree tree = center;
    for (int t = k - 1; t >= 0; --t) {
      SearchTree link{leaf_node(order[t]), {}};
      link.children.push_back(std::move(tree));
      tree = std::move(link);
    }
    best = StarOptimum{std::move(tree), cost};
    have = true;
  }
  return best;
}

}  // namespace sttlab
