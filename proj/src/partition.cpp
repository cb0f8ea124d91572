#include "clh2d/partition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace clh2d {

namespace {

std::vector<int> bfs(const SurfaceComplex& c, int from, int limit = std::numeric_limits<int>::max()) {
  std::vector<int> dist(c.vertex_count(), -1);
  dist[from] = 0;
  std::deque<int> queue{from};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (dist[v] >= limit) continue;
    for (int e : c.vertex_edges(v)) {
      const int w = c.other_vertex(e, v);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

// Diameter of the subgraph spanned by `edges`; -1 when disconnected.
int subgraph_diameter(const SurfaceComplex& c, const std::vector<int>& edges) {
  std::vector<int> local(c.vertex_count(), -1);
  std::vector<std::vector<int>> adj;
  auto index = [&](int v) {
    if (local[v] < 0) {
      local[v] = static_cast<int>(adj.size());
      adj.emplace_back();
    }
    return local[v];
  };
  for (int e : edges) {
    const int a = index(c.edge_vertices(e)[0]), b = index(c.edge_vertices(e)[1]);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  const int n = static_cast<int>(adj.size());
  int diameter = 0;
  std::vector<int> dist(n), queue(n);
  for (int start = 0; start < n; ++start) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[start] = 0;
    int head = 0, tail = 0;
    queue[tail++] = start;
    while (head < tail) {
      const int v = queue[head++];
      for (int w : adj[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          diameter = std::max(diameter, dist[w]);
          queue[tail++] = w;
        }
    }
    if (tail != n) return -1;
  }
  return diameter;
}

std::vector<int> term_vertices(const SurfaceComplex& c, const LocalTerm& t) {
  if (t.kind == TermKind::Star) return {t.site};
  return c.face_vertices(t.site);
}

}  // namespace

int triangulation_degree(const Triangulation& triangulation) {
  std::map<int, std::set<int>> adj;
  for (const auto& t : triangulation.triangles)
    for (int i = 0; i < 3; ++i) {
      const int a = t.corners[i], b = t.corners[(i + 1) % 3];
      if (a == b) continue;
      adj[a].insert(b);
      adj[b].insert(a);
    }
  int degree = 0;
  for (const auto& [_, n] : adj) degree = std::max(degree, static_cast<int>(n.size()));
  return degree;
}

QuasiEuclideanReport verify_quasi_euclidean(const SurfaceComplex& complex, const Triangulation& triangulation, int r,
                                            int R, int D) {
  QuasiEuclideanReport report;
  std::vector<int> cover(complex.edge_count(), 0);
  for (std::size_t i = 0; i < triangulation.triangles.size(); ++i) {
    const auto& tri = triangulation.triangles[i];
    const std::string name = "triangle " + std::to_string(i);
    std::set<int> owned;
    for (int e : tri.edges) {
      if (e < 0 || e >= complex.edge_count()) {
        report.violations.push_back(name + " lists an unknown edge");
        continue;
      }
      ++cover[e];
      owned.insert(e);
    }
    for (int v : tri.corners)
      if (v < 0 || v >= complex.vertex_count()) report.violations.push_back(name + " has an unknown corner");
    if (tri.corners[0] == tri.corners[1] || tri.corners[1] == tri.corners[2] || tri.corners[0] == tri.corners[2])
      report.violations.push_back(name + " has repeated corners");
    for (int v : tri.side_centers)
      if (v < 0 || v >= complex.vertex_count()) report.violations.push_back(name + " has an unknown side center");

    if (tri.witness_center < 0 || tri.witness_center >= complex.vertex_count()) {
      report.violations.push_back(name + " has no witness center");
    } else {
      const auto dist = bfs(complex, tri.witness_center, r);
      for (int e = 0; e < complex.edge_count(); ++e) {
        const auto [a, b] = complex.edge_vertices(e);
        const bool in_ball = (dist[a] >= 0 && dist[a] < r) || (dist[b] >= 0 && dist[b] < r);
        if (in_ball && !owned.count(e)) {
          report.violations.push_back(name + ": ball of radius " + std::to_string(r) + " around vertex " +
                                      complex.vertex_id(tri.witness_center) + " leaves the region at edge " +
                                      complex.edge_id(e));
          break;
        }
      }
    }
    const int diameter = subgraph_diameter(complex, tri.edges);
    if (diameter < 0)
      report.violations.push_back(name + " is disconnected");
    else if (diameter > R)
      report.violations.push_back(name + " has diameter " + std::to_string(diameter) + " > " + std::to_string(R));
    report.max_diameter = std::max(report.max_diameter, diameter);
  }
  for (int e = 0; e < complex.edge_count(); ++e)
    if (cover[e] == 0) report.violations.push_back("edge " + complex.edge_id(e) + " is in no triangle");
  report.degree = triangulation_degree(triangulation);
  if (report.degree > D)
    report.violations.push_back("degree " + std::to_string(report.degree) + " > " + std::to_string(D));
  return report;
}

std::uint64_t moore_bound(int k, int R) {
  if (k < 2 || R < 1) throw Error(ErrorCode::BadParams, "moore_bound needs k >= 2 and R >= 1");
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t sum = 0, power = 1;
  for (int i = 0; i < R; ++i) {
    if (sum > cap - power) throw Error(ErrorCode::BadParams, "moore_bound overflows");
    sum += power;
    if (i + 1 < R) {
      if (power > cap / static_cast<std::uint64_t>(k - 1)) throw Error(ErrorCode::BadParams, "moore_bound overflows");
      power *= static_cast<std::uint64_t>(k - 1);
    }
  }
  if (sum > (cap - 1) / static_cast<std::uint64_t>(k)) throw Error(ErrorCode::BadParams, "moore_bound overflows");
  return 1 + static_cast<std::uint64_t>(k) * sum;
}

std::uint64_t edge_bound(int k, int R) {
  const std::uint64_t n = moore_bound(k, R);
  if (n > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(k))
    throw Error(ErrorCode::BadParams, "edge_bound overflows");
  return (static_cast<std::uint64_t>(k) * n + 1) / 2;
}

double superparticle_bound(int D, int k, int R) { return D * std::pow(static_cast<double>(k), R + 2); }

Triangulation grid_triangulation(const SurfaceComplex& complex, int n, int m, bool periodic,
                                 const GridTriangulationOptions& options) {
  const int vertices = periodic ? n * m : (n + 1) * (m + 1);
  const int edges = periodic ? 2 * n * m : n * (m + 1) + m * (n + 1);
  if (complex.vertex_count() != vertices || complex.edge_count() != edges || !complex.numeric_ids())
    throw Error(ErrorCode::BadParams, "complex is not a generated grid of the given size");
  if (options.k < 2 || options.c < 1) throw Error(ErrorCode::BadParams, "grid triangulation needs k >= 2, c >= 1");
  const int side = options.c * options.k;
  if (n < side || m < side) throw Error(ErrorCode::BadParams, "grid smaller than one block of side " + std::to_string(side));
  const int r = options.r < 0 ? 2 * options.k : options.r;

  auto vertex = [&](int x, int y) {
    const int id = periodic ? ((y % m) * n + x % n) : y * (n + 1) + x;
    return complex.vertex_index(std::to_string(id));
  };
  const int bx = n / side, by = m / side;
  std::vector<int> xs(bx + 1), ys(by + 1);
  for (int i = 0; i <= bx; ++i) xs[i] = i * n / bx;
  for (int j = 0; j <= by; ++j) ys[j] = j * m / by;

  Triangulation tri;
  tri.r = r;
  tri.triangles.resize(2 * bx * by);
  for (int j = 0; j < by; ++j)
    for (int i = 0; i < bx; ++i) {
      const int x0 = xs[i], x1 = xs[i + 1], y0 = ys[j], y1 = ys[j + 1];
      const int xm = (x0 + x1) / 2, ym = (y0 + y1) / 2;
      auto& lower = tri.triangles[2 * (j * bx + i)];
      auto& upper = tri.triangles[2 * (j * bx + i) + 1];
      lower.corners = {vertex(x0, y0), vertex(x1, y0), vertex(x1, y1)};
      lower.side_centers = {vertex(xm, y0), vertex(x1, ym), vertex(xm, ym)};
      lower.witness_center = vertex(x1 - r, y0 + r);
      upper.corners = {vertex(x0, y0), vertex(x1, y1), vertex(x0, y1)};
      upper.side_centers = {vertex(xm, ym), vertex(xm, y1), vertex(x0, ym)};
      upper.witness_center = vertex(x0 + r, y1 - r);
    }

  // Edge midpoints in doubled coordinates decide the block, then the side of its diagonal.
  for (int e = 0; e < complex.edge_count(); ++e) {
    const int id = std::stoi(complex.edge_id(e));
    int mx2, my2;
    if (periodic) {
      const int cell = id / 2, x = cell % n, y = cell / n;
      mx2 = id % 2 == 0 ? 2 * x + 1 : 2 * x;
      my2 = id % 2 == 0 ? 2 * y : 2 * y + 1;
    } else if (id < n * (m + 1)) {
      mx2 = 2 * (id % n) + 1;
      my2 = 2 * (id / n);
    } else {
      const int rest = id - n * (m + 1);
      mx2 = 2 * (rest % (n + 1));
      my2 = 2 * (rest / (n + 1)) + 1;
    }
    int i = 0, j = 0;
    while (i + 1 < bx && 2 * xs[i + 1] <= mx2) ++i;
    while (j + 1 < by && 2 * ys[j + 1] <= my2) ++j;
    const long u = static_cast<long>(mx2 - 2 * xs[i]) * (ys[j + 1] - ys[j]);
    const long v = static_cast<long>(my2 - 2 * ys[j]) * (xs[i + 1] - xs[i]);
    tri.triangles[2 * (j * bx + i) + (u >= v ? 0 : 1)].edges.push_back(e);
  }
  for (const auto& t : tri.triangles) tri.R = std::max(tri.R, subgraph_diameter(complex, t.edges));
  tri.D = triangulation_degree(tri);
  return tri;
}

int SuperParticlePartition::max_block_size() const {
  std::size_t best = 0;
  for (const auto& b : blocks) best = std::max(best, b.size());
  return static_cast<int>(best);
}

std::vector<int> nontrivial_support(const LocalTerm& term, double tol) {
  std::vector<int> out;
  for (int q : term.qubits)
    if (!acts_trivially(term, q, tol)) out.push_back(q);
  return out;
}

namespace {

// Chooses among the candidate blocks of the ambiguous edges so that every
// support meets at most two blocks. Depth-first per connected component with a
// node budget; on exhaustion the first candidate is kept and verification reports it.
class BlockSolver {
 public:
  BlockSolver(std::vector<std::vector<int>> candidates, std::vector<std::vector<int>> supports, int edge_count)
      : cand_(std::move(candidates)), supports_(std::move(supports)), assigned_(edge_count, -1), terms_of_(edge_count) {
    for (std::size_t t = 0; t < supports_.size(); ++t)
      for (int q : supports_[t]) terms_of_[q].push_back(static_cast<int>(t));
    for (int e = 0; e < edge_count; ++e)
      if (cand_[e].size() == 1) assigned_[e] = cand_[e][0];
  }

  std::vector<int> solve() {
    std::vector<bool> seen(assigned_.size(), false);
    for (std::size_t e0 = 0; e0 < assigned_.size(); ++e0) {
      if (assigned_[e0] >= 0 || seen[e0]) continue;
      std::vector<int> order;
      std::deque<int> queue{static_cast<int>(e0)};
      seen[e0] = true;
      while (!queue.empty()) {
        const int e = queue.front();
        queue.pop_front();
        order.push_back(e);
        for (int t : terms_of_[e])
          for (int q : supports_[t])
            if (assigned_[q] < 0 && !seen[q]) {
              seen[q] = true;
              queue.push_back(q);
            }
      }
      budget_ = 200000;
      if (!search(order, 0))
        for (int e : order) assigned_[e] = cand_[e][0];
    }
    return assigned_;
  }

 private:
  bool consistent(int e) const {
    for (int t : terms_of_[e]) {
      int seen[3], count = 0;
      for (int q : supports_[t]) {
        const int b = assigned_[q];
        if (b < 0) continue;
        bool dup = false;
        for (int i = 0; i < count; ++i) dup = dup || seen[i] == b;
        if (dup) continue;
        if (count == 2) return false;
        seen[count++] = b;
      }
    }
    return true;
  }

  bool search(const std::vector<int>& order, std::size_t pos) {
    if (pos == order.size()) return true;
    if (--budget_ < 0) return false;
    const int e = order[pos];
    for (int b : cand_[e]) {
      assigned_[e] = b;
      if (consistent(e) && search(order, pos + 1)) return true;
      if (budget_ < 0) break;
    }
    assigned_[e] = -1;
    return false;
  }

  std::vector<std::vector<int>> cand_, supports_;
  std::vector<int> assigned_;
  std::vector<std::vector<int>> terms_of_;
  long budget_ = 0;
};

}  // namespace

SuperParticlePartition build_superparticles(const CLHInstance& punctured, const Triangulation& triangulation,
                                            double tol) {
  const auto& c = punctured.complex();
  const int n = c.edge_count();
  SuperParticlePartition out;
  for (const auto& t : punctured.terms()) out.k = std::max(out.k, static_cast<int>(t.qubits.size()));
  if (triangulation.r < 2 * out.k)
    throw Error(ErrorCode::BadParams, "triangulation ball radius " + std::to_string(triangulation.r) + " < 2k = " +
                                          std::to_string(2 * out.k));
  out.size_bound = superparticle_bound(triangulation.D, out.k, triangulation.R);

  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < triangulation.triangles.size(); ++i)
    for (int e : triangulation.triangles[i].edges)
      if (e >= 0 && e < n && owner[e] < 0) owner[e] = static_cast<int>(i);
  for (int e = 0; e < n; ++e)
    if (owner[e] < 0) throw Error(ErrorCode::BadParams, "edge " + c.edge_id(e) + " is in no triangle");

  std::map<int, int> block_index;
  for (const auto& tri : triangulation.triangles)
    for (int v : tri.corners) block_index.emplace(v, 0);
  for (auto& [v, b] : block_index) {
    b = static_cast<int>(out.block_vertex.size());
    out.block_vertex.push_back(v);
  }

  std::vector<std::vector<int>> supports;
  for (const auto& t : punctured.terms()) supports.push_back(nontrivial_support(t, tol));

  std::map<int, std::vector<int>> dist_cache;
  auto dist_from = [&](int v) -> const std::vector<int>& {
    auto it = dist_cache.find(v);
    if (it == dist_cache.end()) it = dist_cache.emplace(v, bfs(c, v)).first;
    return it->second;
  };

  std::vector<std::vector<int>> candidates(n);
  for (std::size_t i = 0; i < triangulation.triangles.size(); ++i) {
    const auto& tri = triangulation.triangles[i];
    std::vector<bool> in_tri(n, false);
    for (int e : tri.edges) in_tri[e] = true;
    const std::array<const std::vector<int>*, 3> d = {&dist_from(tri.corners[0]), &dist_from(tri.corners[1]),
                                                      &dist_from(tri.corners[2])};
    const auto& dw = dist_from(tri.witness_center >= 0 ? tri.witness_center : tri.corners[0]);

    auto term_distance = [&](const std::vector<int>& verts, const std::vector<int>& dv) {
      int best = std::numeric_limits<int>::max();
      for (int v : verts)
        if (dv[v] >= 0) best = std::min(best, dv[v]);
      return best;
    };

    // Center: a term inside the triangle with a trivial qubit, as close to
    // equidistant from the corners as possible.
    int center = -1;
    std::array<int, 3> offsets{};
    std::tuple<int, int, int> best_key{std::numeric_limits<int>::max(), 0, 0};
    for (int t = 0; t < punctured.term_count(); ++t) {
      const auto& term = punctured.term(t);
      if (supports[t].size() == term.qubits.size()) continue;
      if (!std::all_of(term.qubits.begin(), term.qubits.end(), [&](int q) { return in_tri[q]; })) continue;
      const auto verts = term_vertices(c, term);
      std::array<int, 3> dt{};
      for (int k = 0; k < 3; ++k) dt[k] = term_distance(verts, *d[k]);
      if (*std::max_element(dt.begin(), dt.end()) == std::numeric_limits<int>::max()) continue;
      const std::tuple<int, int, int> key{*std::max_element(dt.begin(), dt.end()) -
                                              *std::min_element(dt.begin(), dt.end()),
                                          term_distance(verts, dw), t};
      if (key < best_key) {
        best_key = key;
        center = t;
        offsets = dt;
      }
    }
    if (center < 0) throw Error(ErrorCode::NoCenter, "triangle " + std::to_string(i) + " has no center term");
    out.centers.push_back(center);
    const auto& h = punctured.term(center);
    int trivial = -1;
    for (int q : h.qubits)
      if (std::find(supports[center].begin(), supports[center].end(), q) == supports[center].end()) {
        trivial = q;
        break;
      }
    out.center_trivial_edge.push_back(trivial);

    // Additively weighted nearest corner, so the three regions meet at the center.
    auto labels = [&](int v) {
      std::vector<int> best;
      long best_value = std::numeric_limits<long>::max();
      for (int k = 0; k < 3; ++k) {
        if ((*d[k])[v] < 0) continue;
        const long value = static_cast<long>((*d[k])[v]) - offsets[k];
        const int b = block_index.at(tri.corners[k]);
        if (value < best_value) {
          best_value = value;
          best = {b};
        } else if (value == best_value) {
          best.push_back(b);
        }
      }
      return best;
    };
    for (int e : tri.edges) {
      if (owner[e] != static_cast<int>(i)) continue;
      std::vector<int> cand = labels(c.edge_vertices(e)[0]);
      for (int b : labels(c.edge_vertices(e)[1])) cand.push_back(b);
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      if (cand.empty()) throw Error(ErrorCode::NoCenter, "triangle " + std::to_string(i) + " is disconnected");
      candidates[e] = std::move(cand);
    }
  }

  out.block_of_edge = BlockSolver(candidates, supports, n).solve();
  out.blocks.assign(out.block_vertex.size(), {});
  for (int e = 0; e < n; ++e) out.blocks[out.block_of_edge[e]].push_back(e);
  return out;
}

bool verify_two_local(const CLHInstance& punctured, const SuperParticlePartition& partition, double tol) {
  const int n = punctured.qubit_count();
  if (static_cast<int>(partition.block_of_edge.size()) != n) return false;
  std::vector<int> seen(n, 0);
  for (std::size_t b = 0; b < partition.blocks.size(); ++b)
    for (int e : partition.blocks[b]) {
      if (e < 0 || e >= n || partition.block_of_edge[e] != static_cast<int>(b)) return false;
      ++seen[e];
    }
  if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; })) return false;
  for (const auto& term : punctured.terms()) {
    std::set<int> blocks;
    for (int q : nontrivial_support(term, tol)) blocks.insert(partition.block_of_edge[q]);
    if (blocks.size() > 2) return false;
  }
  return true;
}

}  // namespace clh2d
