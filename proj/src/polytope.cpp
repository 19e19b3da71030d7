#include "sttlab/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sttlab {

namespace {

void reduce_content(IntVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  if (g > 1)
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) /= g;
}

class TightSet {
 public:
  explicit TightSet(int capacity) : words_((capacity + 63) / 64, 0) {}

  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  bool subset_of(const TightSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w]) return false;
    return true;
  }

  int count() const {
    int total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  static TightSet intersection(TightSet a, const TightSet& b) {
    for (std::size_t w = 0; w < a.words_.size(); ++w) a.words_[w] &= b.words_[w];
    return a;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  IntVector dir;
  TightSet tight;
  // Sign of halfspace(h).dir for every input halfspace, cached once at
  // creation so that cutoff counts stay incremental.
  std::vector<signed char> sign;
};

signed char sign_of(const Integer& value) {
  if (value > 0) return 1;
  if (value < 0) return -1;
  return 0;
}

std::vector<signed char> signs_against(const IntVector& dir,
                                       const std::vector<IntVector>& halfspaces) {
  std::vector<signed char> out(halfspaces.size());
  for (std::size_t h = 0; h < halfspaces.size(); ++h)
    out[h] = sign_of(halfspaces[h].dot(dir));
  return out;
}

// Gauss-Jordan inverse of the square matrix whose rows are the given
// normals. The caller guarantees independence.
RatMatrix invert_rows(const std::vector<IntVector>& rows) {
  const int d = static_cast<int>(rows.size());
  RatMatrix work(d, 2 * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      work(r, c) = Rational(rows[r](c));
      work(r, d + c) = r == c ? 1 : 0;
    }
  }
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int r = col; r < d; ++r) {
      if (work(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::logic_error("the chosen basis rows are dependent");
    work.row(col).swap(work.row(pivot));
    work.row(col) /= Rational(work(col, col));
    for (int r = 0; r < d; ++r) {
      if (r != col && work(r, col) != 0)
        work.row(r) -= Rational(work(r, col)) * work.row(col);
    }
  }
  return work.rightCols(d);
}

// Extreme rays of {y : h.y >= 0 for every halfspace h}, which must be a
// pointed cone. Rays come out content-reduced; their order is deterministic.
std::vector<IntVector> cone_extreme_rays(const std::vector<IntVector>& halfspaces,
                                         int dim, std::size_t ray_cap) {
  const int total = static_cast<int>(halfspaces.size());

  std::vector<int> basis;
  IntMatrix stacked(dim, dim);
  for (int h = 0; h < total && static_cast<int>(basis.size()) < dim; ++h) {
    const int k = static_cast<int>(basis.size());
    stacked.row(k) = halfspaces[h].transpose();
    if (exact_rank_int(stacked.topRows(k + 1)) == k + 1) basis.push_back(h);
  }
  if (static_cast<int>(basis.size()) < dim)
    throw std::invalid_argument("the halfspace normals do not span; the cone is not pointed");

  std::vector<IntVector> basis_rows;
  basis_rows.reserve(basis.size());
  for (int h : basis) basis_rows.push_back(halfspaces[h]);
  const RatMatrix inverse = invert_rows(basis_rows);

  // Halfspaces occupy tight-set positions in processing order: the basis
  // first, the rest as they are inserted.
  std::vector<int> position(total, -1);
  for (int k = 0; k < dim; ++k) position[basis[k]] = k;
  int next_position = dim;

  std::vector<Ray> rays;
  rays.reserve(2 * dim);
  for (int j = 0; j < dim; ++j) {
    Ray ray{primitive_integer_direction(RatVector(inverse.col(j))), TightSet(total), {}};
    for (int k = 0; k < dim; ++k)
      if (k != j) ray.tight.set(k);
    ray.sign = signs_against(ray.dir, halfspaces);
    rays.push_back(std::move(ray));
  }

  std::vector<int> pending;
  for (int h = 0; h < total; ++h)
    if (position[h] < 0) pending.push_back(h);

  std::vector<int> cutoff(total, 0);
  for (int h : pending)
    for (const Ray& ray : rays) cutoff[h] += ray.sign[h] < 0;

  while (!pending.empty()) {
    // Halfspaces that cut nothing only contribute tight bits.
    std::vector<int> still_pending;
    for (int h : pending) {
      if (cutoff[h] > 0) {
        still_pending.push_back(h);
        continue;
      }
      position[h] = next_position++;
      for (Ray& ray : rays)
        if (ray.sign[h] == 0) ray.tight.set(position[h]);
    }
    pending = std::move(still_pending);
    if (pending.empty()) break;

    int chosen = pending.front();
    for (int h : pending)
      if (cutoff[h] > cutoff[chosen]) chosen = h;
    position[chosen] = next_position++;

    std::vector<int> plus, minus;
    for (int r = 0; r < static_cast<int>(rays.size()); ++r) {
      const signed char s = rays[r].sign[chosen];
      if (s > 0) plus.push_back(r);
      else if (s < 0) minus.push_back(r);
      else rays[r].tight.set(position[chosen]);
    }

    std::vector<Ray> born;
    for (int p : plus) {
      const Integer weight_p = halfspaces[chosen].dot(rays[p].dir);
      for (int m : minus) {
        TightSet common = TightSet::intersection(rays[p].tight, rays[m].tight);
        if (common.count() < dim - 2) continue;
        bool adjacent = true;
        for (int r = 0; r < static_cast<int>(rays.size()) && adjacent; ++r)
          if (r != p && r != m && common.subset_of(rays[r].tight)) adjacent = false;
        if (!adjacent) continue;

        const Integer weight_m = halfspaces[chosen].dot(rays[m].dir);
        Ray ray{IntVector(weight_p * rays[m].dir - weight_m * rays[p].dir),
                std::move(common), {}};
        reduce_content(ray.dir);
        ray.tight.set(position[chosen]);
        ray.sign = signs_against(ray.dir, halfspaces);
        born.push_back(std::move(ray));
      }
    }

    std::vector<Ray> kept;
    kept.reserve(rays.size() - minus.size() + born.size());
    for (int r = 0; r < static_cast<int>(rays.size()); ++r) {
      if (rays[r].sign[chosen] < 0) {
        for (int h : pending) cutoff[h] -= rays[r].sign[h] < 0;
      } else {
        kept.push_back(std::move(rays[r]));
      }
    }
    for (Ray& ray : born) {
      for (int h : pending) cutoff[h] += ray.sign[h] < 0;
      kept.push_back(std::move(ray));
    }
    rays = std::move(kept);
    if (rays.size() > ray_cap)
      throw std::length_error("the double description run exceeded the ray cap");

    pending.erase(std::find(pending.begin(), pending.end(), chosen));
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (Ray& ray : rays) out.push_back(std::move(ray.dir));
  return out;
}

bool lex_less(const RatVector& a, const RatVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

std::vector<RatVector> vertices_of_homogenized(const std::vector<IntVector>& halfspaces,
                                               int dim) {
  std::vector<IntVector> rays = cone_extreme_rays(halfspaces, dim + 1, 4000000);
  std::vector<RatVector> vertices;
  for (const IntVector& ray : rays) {
    if (ray(dim) <= 0) continue;
    RatVector point(dim);
    for (int i = 0; i < dim; ++i) point(i) = Rational(ray(i), ray(dim));
    vertices.push_back(std::move(point));
  }
  std::sort(vertices.begin(), vertices.end(), lex_less);
  return vertices;
}

IntVector homogenized_row(const LinearRow& row, int dim, bool flip) {
  RatVector v = RatVector::Zero(dim + 1);
  for (const auto& [var, coef] : row.terms) v(var) = flip ? Rational(-coef) : coef;
  v(dim) = flip ? row.rhs : Rational(-row.rhs);
  return primitive_integer_direction(v);
}

std::string trimmed(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return text.substr(begin, text.find_last_not_of(" \t\r") - begin + 1);
}

}  // namespace

std::vector<Facet> dominance_hull_facets(const std::vector<RatVector>& points,
                                         std::size_t ray_cap) {
  if (points.empty()) throw std::invalid_argument("no points to take the hull of");
  const int dim = static_cast<int>(points.front().size());
  if (dim < 1) throw std::invalid_argument("hull points must have dimension at least one");
  for (const RatVector& p : points)
    if (p.size() != dim)
      throw std::invalid_argument("hull points disagree on dimension");

  // Polar view: a ray (a, a0) with a.v + a0 >= 0 for every point v and
  // a >= 0 corresponds to the valid inequality a.x >= -a0. Extreme rays of
  // that cone are exactly the facets, plus one trivial ray with a = 0.
  std::vector<IntVector> halfspaces;
  halfspaces.reserve(points.size() + dim);
  for (const RatVector& p : points) {
    RatVector lifted(dim + 1);
    lifted.head(dim) = p;
    lifted(dim) = 1;
    halfspaces.push_back(primitive_integer_direction(lifted));
  }
  for (int i = 0; i < dim; ++i) {
    IntVector axis = IntVector::Zero(dim + 1);
    axis(i) = 1;
    halfspaces.push_back(std::move(axis));
  }

  std::vector<Facet> facets;
  for (const IntVector& ray : cone_extreme_rays(halfspaces, dim + 1, ray_cap)) {
    IntVector normal = ray.head(dim);
    Integer content = 0;
    for (int i = 0; i < dim; ++i) {
      if (normal(i) < 0)
        throw std::logic_error("a dominance hull facet came out with a negative entry");
      content = gcd(content, normal(i));
    }
    if (content == 0) continue;
    if (content > 1)
      for (int i = 0; i < dim; ++i) normal(i) /= content;
    Facet facet{std::move(normal), Rational(Integer(-ray(dim)), content), {}};
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
      Rational activity = 0;
      for (int c = 0; c < dim; ++c) activity += Rational(facet.normal(c)) * points[i](c);
      if (activity == facet.offset) facet.spanning_vertices.push_back(i);
    }
    facets.push_back(std::move(facet));
  }

  std::sort(facets.begin(), facets.end(), [dim](const Facet& a, const Facet& b) {
    for (int i = 0; i < dim; ++i)
      if (a.normal(i) != b.normal(i)) return a.normal(i) < b.normal(i);
    return a.offset < b.offset;
  });
  return facets;
}

bool point_below_facet(const Facet& facet, const RatVector& point) {
  if (point.size() != facet.normal.size())
    throw std::invalid_argument("the point and the facet normal disagree on dimension");
  Rational activity = 0;
  for (Eigen::Index i = 0; i < point.size(); ++i)
    activity += Rational(facet.normal(i)) * point(i);
  return activity < facet.offset;
}

std::vector<RatVector> enumerate_vertices(const LpModel& model, int var_cap) {
  const int dim = static_cast<int>(model.vars.size());
  if (dim > var_cap)
    throw std::invalid_argument("the model has " + std::to_string(dim) +
                                " variables, above the enumeration cap of " +
                                std::to_string(var_cap) +
                                "; sample directions instead");

  // Homogenize over (x, t): variable bounds and t >= 0 first, so that the
  // initial basis is the identity, then every model row.
  std::vector<IntVector> halfspaces;
  for (int i = 0; i <= dim; ++i) {
    IntVector axis = IntVector::Zero(dim + 1);
    axis(i) = 1;
    halfspaces.push_back(std::move(axis));
  }
  std::vector<LinearRow> rows = model.rows;
  for (const ImplicitFamily& family : model.families)
    for (LinearRow& row : family.expand())
      rows.push_back(std::move(row));
  for (const LinearRow& row : rows) {
    if (row.relation != Relation::LessEq)
      halfspaces.push_back(homogenized_row(row, dim, false));
    if (row.relation != Relation::GreaterEq)
      halfspaces.push_back(homogenized_row(row, dim, true));
  }
  return vertices_of_homogenized(halfspaces, dim);
}

std::vector<RatVector> enumerate_vertices(const std::vector<Facet>& facets, int dim) {
  if (dim < 1) throw std::invalid_argument("vertex enumeration needs a positive dimension");
  std::vector<IntVector> halfspaces;
  halfspaces.reserve(facets.size() + 1);
  for (const Facet& facet : facets) {
    if (facet.normal.size() != dim)
      throw std::invalid_argument("a facet normal disagrees with the stated dimension");
    RatVector lifted(dim + 1);
    for (int i = 0; i < dim; ++i) lifted(i) = Rational(facet.normal(i));
    lifted(dim) = -facet.offset;
    halfspaces.push_back(primitive_integer_direction(lifted));
  }
  IntVector floor = IntVector::Zero(dim + 1);
  floor(dim) = 1;
  halfspaces.push_back(std::move(floor));
  return vertices_of_homogenized(halfspaces, dim);
}

std::string facets_to_text(const std::vector<Facet>& facets) {
  std::ostringstream out;
  for (const Facet& facet : facets) {
    out << to_string(facet.offset) << " ;";
    for (Eigen::Index i = 0; i < facet.normal.size(); ++i) out << ' ' << facet.normal(i);
    out << '\n';
  }
  return out.str();
}

std::vector<Facet> facets_from_text(const std::string& text) {
  std::vector<Facet> facets;
  for (const std::string& raw : split(text, '\n')) {
    const std::string line = trimmed(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto sep = line.find(';');
    if (sep == std::string::npos)
      throw std::invalid_argument("facet line lacks the ';' separator: " + line);
    Facet facet;
    facet.offset = parse_rational(trimmed(line.substr(0, sep)));
    std::vector<Integer> entries;
    std::istringstream rest(line.substr(sep + 1));
    std::string token;
    while (rest >> token) {
      const Rational value = parse_rational(token);
      if (!is_integral(value))
        throw std::invalid_argument("facet normals must be integers: " + token);
      entries.push_back(numerator(value));
    }
    if (entries.empty())
      throw std::invalid_argument("facet line lacks normal components: " + line);
    facet.normal = IntVector(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
      facet.normal(static_cast<Eigen::Index>(i)) = entries[i];
    facets.push_back(std::move(facet));
  }
  return facets;
}

}  // namespace sttlab
