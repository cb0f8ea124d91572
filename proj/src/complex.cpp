#include "clh2d/complex.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>

namespace clh2d {

namespace {

bool parse_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Sorted id order: numeric when every id parses as an integer.
std::vector<std::string> sorted_ids(std::vector<std::string> ids, bool numeric) {
  if (numeric) {
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
      long long x = 0, y = 0;
      parse_int(a, x);
      parse_int(b, y);
      return x < y;
    });
  } else {
    std::sort(ids.begin(), ids.end());
  }
  return ids;
}

int lookup(const std::map<std::string, int>& table, const std::string& id, const char* what) {
  auto it = table.find(id);
  if (it == table.end()) throw Error(ErrorCode::InvalidArgument, std::string("unknown ") + what + " id " + id);
  return it->second;
}

// Walks a face boundary starting at `start`; returns visited vertices or empty on failure.
std::vector<int> walk_face(const std::vector<std::array<int, 2>>& ev, const std::vector<int>& edges, int start) {
  std::vector<int> verts;
  int cur = start;
  for (int e : edges) {
    verts.push_back(cur);
    if (ev[e][0] == cur) cur = ev[e][1];
    else if (ev[e][1] == cur) cur = ev[e][0];
    else return {};
  }
  if (cur != start) return {};
  return verts;
}

}  // namespace

int SurfaceComplex::vertex_index(const std::string& id) const { return lookup(vertex_lookup_, id, "vertex"); }
int SurfaceComplex::edge_index(const std::string& id) const { return lookup(edge_lookup_, id, "edge"); }
int SurfaceComplex::face_index(const std::string& id) const { return lookup(face_lookup_, id, "face"); }

int SurfaceComplex::other_vertex(int e, int v) const {
  const auto& ev = edge_vertices_.at(e);
  if (ev[0] == v) return ev[1];
  if (ev[1] == v) return ev[0];
  throw Error(ErrorCode::InvalidArgument, "vertex " + vertex_id(v) + " is not on edge " + edge_id(e));
}

int SurfaceComplex::other_face(int e, int f) const {
  for (int g : edge_faces_.at(e))
    if (g != f) return g;
  return kVirtualPlaquette;
}

bool SurfaceComplex::edge_has_vertex(int e, int v) const {
  const auto& ev = edge_vertices_.at(e);
  return ev[0] == v || ev[1] == v;
}

bool SurfaceComplex::face_has_edge(int f, int e) const {
  const auto& fe = face_edges_.at(f);
  return std::find(fe.begin(), fe.end(), e) != fe.end();
}

int SurfaceComplex::locality() const {
  std::size_t k = 0;
  for (const auto& ve : vertex_edges_) k = std::max(k, ve.size());
  for (const auto& fe : face_edges_) k = std::max(k, fe.size());
  return static_cast<int>(k);
}

bool SurfaceComplex::is_closed() const {
  return std::all_of(edge_faces_.begin(), edge_faces_.end(), [](const auto& f) { return f.size() == 2; });
}

RawComplex SurfaceComplex::raw() const {
  RawComplex r;
  r.vertices = vertex_ids_;
  for (int e = 0; e < edge_count(); ++e)
    r.edges.push_back({edge_ids_[e], {vertex_ids_[edge_vertices_[e][0]], vertex_ids_[edge_vertices_[e][1]]}});
  for (int f = 0; f < face_count(); ++f) {
    std::vector<std::string> walk;
    for (int e : face_edges_[f]) walk.push_back(edge_ids_[e]);
    r.faces.push_back({face_ids_[f], walk});
  }
  r.allow_multi_adjacency = multi_adjacency_;
  return r;
}

SurfaceComplex build_complex(const RawComplex& raw) {
  SurfaceComplex c;
  std::vector<std::string> violations;
  ErrorCode first = ErrorCode::BadPolygon;
  bool failed = false;
  auto violate = [&](ErrorCode code, const std::string& msg) {
    if (!failed) first = code;
    failed = true;
    violations.push_back(std::string(error_name(code)) + ": " + msg);
  };

  std::vector<std::string> all_ids = raw.vertices;
  for (const auto& e : raw.edges) all_ids.push_back(e.first);
  for (const auto& f : raw.faces) all_ids.push_back(f.first);
  c.numeric_ids_ = std::all_of(all_ids.begin(), all_ids.end(), [](const std::string& s) {
    long long x = 0;
    return parse_int(s, x);
  });
  c.multi_adjacency_ = raw.allow_multi_adjacency;

  auto index_ids = [&](const std::vector<std::string>& ids, std::vector<std::string>& out,
                       std::map<std::string, int>& table, const char* what) {
    out = sorted_ids(ids, c.numeric_ids_);
    for (int i = 0; i < static_cast<int>(out.size()); ++i)
      if (!table.emplace(out[i], i).second)
        throw Error(ErrorCode::ParseError, std::string("duplicate ") + what + " id " + out[i]);
  };
  std::vector<std::string> eids, fids;
  for (const auto& e : raw.edges) eids.push_back(e.first);
  for (const auto& f : raw.faces) fids.push_back(f.first);
  index_ids(raw.vertices, c.vertex_ids_, c.vertex_lookup_, "vertex");
  index_ids(eids, c.edge_ids_, c.edge_lookup_, "edge");
  index_ids(fids, c.face_ids_, c.face_lookup_, "face");

  const int nv = c.vertex_count(), ne = c.edge_count(), nf = c.face_count();
  c.edge_vertices_.assign(ne, {-1, -1});
  for (const auto& [id, ends] : raw.edges) {
    const int e = c.edge_lookup_.at(id);
    for (int k = 0; k < 2; ++k) {
      auto it = c.vertex_lookup_.find(ends[k]);
      if (it == c.vertex_lookup_.end()) {
        violate(ErrorCode::BadPolygon, "edge " + id + " has undeclared endpoint " + ends[k]);
      } else {
        c.edge_vertices_[e][k] = it->second;
      }
    }
    if (ends[0] == ends[1]) violate(ErrorCode::BadPolygon, "edge " + id + " is a loop");
  }
  if (failed) throw Error(first, "invalid complex", violations);

  c.face_edges_.assign(nf, {});
  c.face_vertices_.assign(nf, {});
  c.edge_faces_.assign(ne, {});
  for (const auto& [id, walk] : raw.faces) {
    const int f = c.face_lookup_.at(id);
    std::vector<int> edges;
    bool ok = true;
    for (const auto& eid : walk) {
      auto it = c.edge_lookup_.find(eid);
      if (it == c.edge_lookup_.end()) {
        violate(ErrorCode::BadPolygon, "face " + id + " uses undeclared edge " + eid);
        ok = false;
      } else {
        edges.push_back(it->second);
      }
    }
    if (!ok) continue;
    if (edges.size() < 3) {
      violate(ErrorCode::BadPolygon, "face " + id + " has fewer than 3 sides");
      continue;
    }
    if (std::set<int>(edges.begin(), edges.end()).size() != edges.size()) {
      violate(ErrorCode::BadPolygon, "face " + id + " repeats an edge");
      continue;
    }
    std::vector<int> verts;
    for (int start : c.edge_vertices_[edges[0]]) {
      verts = walk_face(c.edge_vertices_, edges, start);
      if (!verts.empty()) break;
    }
    if (verts.empty()) {
      violate(ErrorCode::BadPolygon, "face " + id + " is not a closed edge cycle");
      continue;
    }
    if (std::set<int>(verts.begin(), verts.end()).size() != verts.size()) {
      violate(ErrorCode::BadPolygon, "face " + id + " revisits a vertex");
      continue;
    }
    c.face_edges_[f] = edges;
    c.face_vertices_[f] = verts;
    for (int e : edges) c.edge_faces_[e].push_back(f);
  }

  for (int e = 0; e < ne; ++e) {
    const auto n = c.edge_faces_[e].size();
    std::sort(c.edge_faces_[e].begin(), c.edge_faces_[e].end());
    if (n == 0) violate(ErrorCode::NonSurface, "edge " + c.edge_ids_[e] + " lies on no face");
    if (n >= 3) violate(ErrorCode::NonSurface, "edge " + c.edge_ids_[e] + " lies on " + std::to_string(n) + " faces");
  }

  if (!raw.allow_multi_adjacency) {
    std::map<std::pair<int, int>, int> shared;
    for (int e = 0; e < ne; ++e) {
      const auto& fs = c.edge_faces_[e];
      for (std::size_t a = 0; a < fs.size(); ++a)
        for (std::size_t b = a + 1; b < fs.size(); ++b) ++shared[{fs[a], fs[b]}];
    }
    for (const auto& [pair, count] : shared)
      if (count > 1)
        violate(ErrorCode::IntersectionViolation,
                "faces " + c.face_ids_[pair.first] + " and " + c.face_ids_[pair.second] + " share " +
                    std::to_string(count) + " edges");
    std::map<std::pair<int, int>, int> parallel;
    for (int e = 0; e < ne; ++e) {
      auto [a, b] = c.edge_vertices_[e];
      ++parallel[{std::min(a, b), std::max(a, b)}];
    }
    for (const auto& [pair, count] : parallel)
      if (count > 1)
        violate(ErrorCode::IntersectionViolation,
                "vertices " + c.vertex_ids_[pair.first] + " and " + c.vertex_ids_[pair.second] + " are joined by " +
                    std::to_string(count) + " edges");
  }
  if (failed) throw Error(first, "invalid complex", violations);

  c.vertex_edges_.assign(nv, {});
  for (int e = 0; e < ne; ++e)
    for (int v : c.edge_vertices_[e]) c.vertex_edges_[v].push_back(e);
  c.corners_.assign(nv, {});
  for (int f = 0; f < nf; ++f) {
    const auto& fe = c.face_edges_[f];
    const auto& fv = c.face_vertices_[f];
    const int r = static_cast<int>(fe.size());
    for (int j = 0; j < r; ++j) {
      // fv[j] is the vertex entering fe[j]; the corner there joins fe[j-1] and fe[j].
      c.corners_[fv[j]].push_back({fv[j], f, fe[(j + r - 1) % r], fe[j]});
    }
  }
  return c;
}

SurfaceComplex torus_grid(int n, int m) {
  if (n < 2 || m < 2) throw Error(ErrorCode::SizeTooSmall, "torus_grid needs n, m >= 2");
  RawComplex r;
  auto vid = [&](int x, int y) { return std::to_string(((y + m) % m) * n + (x + n) % n); };
  auto hid = [&](int x, int y) { return std::to_string(2 * (((y + m) % m) * n + (x + n) % n)); };
  auto vvid = [&](int x, int y) { return std::to_string(2 * (((y + m) % m) * n + (x + n) % n) + 1); };
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < n; ++x) r.vertices.push_back(vid(x, y));
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < n; ++x) {
      r.edges.push_back({hid(x, y), {vid(x, y), vid(x + 1, y)}});
      r.edges.push_back({vvid(x, y), {vid(x, y), vid(x, y + 1)}});
    }
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < n; ++x)
      r.faces.push_back({std::to_string(y * n + x), {hid(x, y), vvid(x + 1, y), hid(x, y + 1), vvid(x, y)}});
  r.allow_multi_adjacency = (n == 2 || m == 2);
  return build_complex(r);
}

SurfaceComplex planar_grid(int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::SizeTooSmall, "planar_grid needs n, m >= 1");
  RawComplex r;
  auto vid = [&](int x, int y) { return std::to_string(y * (n + 1) + x); };
  auto hid = [&](int x, int y) { return std::to_string(y * n + x); };
  auto vvid = [&](int x, int y) { return std::to_string(n * (m + 1) + y * (n + 1) + x); };
  for (int y = 0; y <= m; ++y)
    for (int x = 0; x <= n; ++x) r.vertices.push_back(vid(x, y));
  for (int y = 0; y <= m; ++y)
    for (int x = 0; x < n; ++x) r.edges.push_back({hid(x, y), {vid(x, y), vid(x + 1, y)}});
  for (int y = 0; y < m; ++y)
    for (int x = 0; x <= n; ++x) r.edges.push_back({vvid(x, y), {vid(x, y), vid(x, y + 1)}});
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < n; ++x)
      r.faces.push_back({std::to_string(y * n + x), {hid(x, y), vvid(x + 1, y), hid(x, y + 1), vvid(x, y)}});
  return build_complex(r);
}

SurfaceComplex ring_complex(int k) {
  if (k < 3) throw Error(ErrorCode::SizeTooSmall, "ring_complex needs k >= 3");
  // Vertices 0..k-1 inner, k..2k-1 outer; edges: inner i, spokes k+i, outer 2k+i.
  RawComplex r;
  for (int v = 0; v < 2 * k; ++v) r.vertices.push_back(std::to_string(v));
  for (int i = 0; i < k; ++i)
    r.edges.push_back({std::to_string(i), {std::to_string(i), std::to_string((i + 1) % k)}});
  for (int i = 0; i < k; ++i) r.edges.push_back({std::to_string(k + i), {std::to_string(i), std::to_string(k + i)}});
  for (int i = 0; i < k; ++i)
    r.edges.push_back({std::to_string(2 * k + i), {std::to_string(k + i), std::to_string(k + (i + 1) % k)}});
  std::vector<std::string> center;
  for (int i = 0; i < k; ++i) center.push_back(std::to_string(i));
  r.faces.push_back({"0", center});
  for (int i = 0; i < k; ++i)
    r.faces.push_back({std::to_string(i + 1),
                       {std::to_string(i), std::to_string(k + (i + 1) % k), std::to_string(2 * k + i),
                        std::to_string(k + i)}});
  return build_complex(r);
}

std::vector<int> topological_boundary(const SurfaceComplex& complex) {
  std::vector<int> out;
  for (int e = 0; e < complex.edge_count(); ++e)
    if (complex.edge_faces(e).size() == 1) out.push_back(e);
  return out;
}

namespace {

// Generic BFS over cells joined by edges. `neighbors(cell)` yields (edge, next cell)
// pairs with next == -1 meaning "leave the complex"; returns parent links.
template <class Neighbors, class IsTarget>
std::pair<int, std::vector<std::pair<int, int>>> bfs_cells(int count, int from, Neighbors neighbors,
                                                           IsTarget is_target, int& exit_edge) {
  std::vector<std::pair<int, int>> parent(count, {-2, -1});
  parent[from] = {-1, -1};
  std::deque<int> queue{from};
  exit_edge = -1;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (auto [edge, next] : neighbors(cur)) {
      if (is_target(edge, next)) {
        exit_edge = edge;
        return {cur, parent};
      }
      if (next < 0 || parent[next].first != -2) continue;
      parent[next] = {cur, edge};
      queue.push_back(next);
    }
  }
  return {-1, parent};
}

std::vector<std::pair<int, int>> face_neighbors(const SurfaceComplex& c, int f) {
  std::vector<std::pair<int, int>> out;
  auto edges = c.face_edges(f);
  std::sort(edges.begin(), edges.end());
  for (int e : edges) out.push_back({e, c.other_face(e, f)});
  return out;
}

std::vector<std::pair<int, int>> vertex_neighbors(const SurfaceComplex& c, int v) {
  std::vector<std::pair<int, int>> out;
  for (int e : c.vertex_edges(v)) out.push_back({e, c.other_vertex(e, v)});
  return out;
}

template <class Seq>
void unwind(const std::vector<std::pair<int, int>>& parent, int last, Seq& cells, std::vector<int>& edges) {
  std::vector<int> rc{last}, re;
  for (int cur = last; parent[cur].first >= 0; cur = parent[cur].first) {
    re.push_back(parent[cur].second);
    rc.push_back(parent[cur].first);
  }
  cells.assign(rc.rbegin(), rc.rend());
  edges.assign(re.rbegin(), re.rend());
}

}  // namespace

Copath find_copath(const SurfaceComplex& complex, int from, int to) {
  Copath out;
  if (from == to) {
    out.plaquettes = {from};
    return out;
  }
  int exit_edge = -1;
  auto [last, parent] = bfs_cells(
      complex.face_count(), from, [&](int f) { return face_neighbors(complex, f); },
      [&](int, int next) { return next == to; }, exit_edge);
  if (last < 0) throw Error(ErrorCode::Unreachable, "no copath from " + complex.face_id(from) + " to " + complex.face_id(to));
  unwind(parent, last, out.plaquettes, out.edges);
  out.plaquettes.push_back(to);
  out.edges.push_back(exit_edge);
  return out;
}

Copath find_copath_to_edges(const SurfaceComplex& complex, int from, const std::vector<bool>& targets) {
  int exit_edge = -1;
  auto [last, parent] = bfs_cells(
      complex.face_count(), from, [&](int f) { return face_neighbors(complex, f); },
      [&](int e, int) { return targets.at(e); }, exit_edge);
  if (last < 0) throw Error(ErrorCode::Unreachable, "no copath from " + complex.face_id(from) + " to a target edge");
  Copath out;
  unwind(parent, last, out.plaquettes, out.edges);
  out.plaquettes.push_back(complex.other_face(exit_edge, last));
  out.edges.push_back(exit_edge);
  return out;
}

Copath find_copath_to_boundary(const SurfaceComplex& complex, int from) {
  std::vector<bool> targets(complex.edge_count(), false);
  for (int e : topological_boundary(complex)) targets[e] = true;
  return find_copath_to_edges(complex, from, targets);
}

Path find_path(const SurfaceComplex& complex, int from, int to) {
  Path out;
  if (from == to) {
    out.stars = {from};
    return out;
  }
  int exit_edge = -1;
  auto [last, parent] = bfs_cells(
      complex.vertex_count(), from, [&](int v) { return vertex_neighbors(complex, v); },
      [&](int, int next) { return next == to; }, exit_edge);
  if (last < 0) throw Error(ErrorCode::Unreachable, "no path from " + complex.vertex_id(from) + " to " + complex.vertex_id(to));
  unwind(parent, last, out.stars, out.edges);
  out.stars.push_back(to);
  out.edges.push_back(exit_edge);
  return out;
}

Path find_path_to_edges(const SurfaceComplex& complex, int from, const std::vector<bool>& targets) {
  int exit_edge = -1;
  auto [last, parent] = bfs_cells(
      complex.vertex_count(), from, [&](int v) { return vertex_neighbors(complex, v); },
      [&](int e, int) { return targets.at(e); }, exit_edge);
  if (last < 0) throw Error(ErrorCode::Unreachable, "no path from " + complex.vertex_id(from) + " to a target edge");
  Path out;
  unwind(parent, last, out.stars, out.edges);
  out.stars.push_back(complex.other_vertex(exit_edge, last));
  out.edges.push_back(exit_edge);
  return out;
}

namespace {

// Shortest walk around vertex v from edge a to edge b through the faces at v.
// Returns (inserted edges including b, faces crossed), or empty on failure.
bool turn_around(const SurfaceComplex& c, int v, int a, int b, int avoid_first, std::vector<int>& edges,
                 std::vector<int>& faces) {
  std::vector<Corner> corners = c.corners(v);
  std::sort(corners.begin(), corners.end(), [](const Corner& x, const Corner& y) {
    return std::tie(x.face, x.edge_in, x.edge_out) < std::tie(y.face, y.edge_in, y.edge_out);
  });
  std::map<int, std::pair<int, int>> parent;  // edge -> (previous edge, face)
  parent[a] = {-1, -1};
  std::deque<int> queue{a};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    if (cur == b) break;
    for (const auto& k : corners) {
      int next = -1;
      if (k.edge_in == cur) next = k.edge_out;
      else if (k.edge_out == cur) next = k.edge_in;
      else continue;
      if (cur == a && k.face == avoid_first) continue;
      if (parent.count(next)) continue;
      parent[next] = {cur, k.face};
      queue.push_back(next);
    }
  }
  if (!parent.count(b) || a == b) return false;
  std::vector<int> re, rf;
  for (int cur = b; cur != a; cur = parent[cur].first) {
    re.push_back(cur);
    rf.push_back(parent[cur].second);
  }
  edges.assign(re.rbegin(), re.rend());
  faces.assign(rf.rbegin(), rf.rend());
  return true;
}

}  // namespace

Ribbon complete_path_to_ribbon(const SurfaceComplex& complex, const Path& path, const RibbonOptions& options) {
  if (path.edges.empty() || path.stars.size() != path.edges.size() + 1)
    throw Error(ErrorCode::InvalidArgument, "ribbon completion needs a path with at least one edge");
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const int e = path.edges[i];
    if (!complex.edge_has_vertex(e, path.stars[i]) || complex.other_vertex(e, path.stars[i]) != path.stars[i + 1])
      throw Error(ErrorCode::InvalidArgument, "path edge " + complex.edge_id(e) + " does not join its stars");
  }
  if (std::set<int>(path.stars.begin(), path.stars.end()).size() != path.stars.size())
    throw Error(ErrorCode::NotSimple, "path revisits a star");

  Ribbon r;
  r.s0 = path.stars[0];
  r.edges.push_back(path.edges[0]);
  for (std::size_t i = 1; i < path.edges.size(); ++i) {
    std::vector<int> edges, faces;
    const int avoid = (i == 1) ? options.avoid_first_plaquette : kVirtualPlaquette;
    if (!turn_around(complex, path.stars[i], path.edges[i - 1], path.edges[i], avoid, edges, faces))
      throw Error(ErrorCode::Unreachable, "cannot turn around vertex " + complex.vertex_id(path.stars[i]));
    for (std::size_t j = 0; j < edges.size(); ++j) {
      r.edges.push_back(edges[j]);
      r.stars.push_back(path.stars[i]);
      r.plaquettes.push_back(faces[j]);
    }
  }
  if (!r.plaquettes.empty()) {
    r.p0 = complex.other_face(r.edges[0], r.plaquettes[0]);
  } else {
    const auto& fs = complex.edge_faces(r.edges[0]);
    r.p0 = options.avoid_first_plaquette != kVirtualPlaquette ? options.avoid_first_plaquette : fs.front();
  }
  if (options.special) {
    for (std::size_t i = 1; i < r.edges.size(); ++i)
      if ((*options.special)[r.edges[i]]) {
        r.edges.resize(i + 1);
        r.stars.resize(i);
        r.plaquettes.resize(i);
        break;
      }
  }
  return r;
}

Path ribbon_path(const SurfaceComplex& complex, const Ribbon& ribbon) {
  const int m = static_cast<int>(ribbon.edges.size()) - 1;
  std::vector<int> seq{ribbon.s0};
  for (int s : ribbon.stars) seq.push_back(s);
  const int last_star = m == 0 ? ribbon.s0 : ribbon.stars.back();
  seq.push_back(complex.other_vertex(ribbon.edges[m], last_star));
  Path p;
  p.stars.push_back(seq[0]);
  for (int i = 0; i <= m; ++i)
    if (seq[i] != seq[i + 1]) {
      p.edges.push_back(ribbon.edges[i]);
      p.stars.push_back(seq[i + 1]);
    }
  return p;
}

Copath ribbon_copath(const SurfaceComplex& complex, const Ribbon& ribbon) {
  const int m = static_cast<int>(ribbon.edges.size()) - 1;
  std::vector<int> seq{ribbon.p0};
  for (int f : ribbon.plaquettes) seq.push_back(f);
  const int last_face = m == 0 ? ribbon.p0 : ribbon.plaquettes.back();
  seq.push_back(complex.other_face(ribbon.edges[m], last_face));
  Copath p;
  p.plaquettes.push_back(seq[0]);
  for (int i = 0; i <= m; ++i)
    if (seq[i] != seq[i + 1]) {
      p.edges.push_back(ribbon.edges[i]);
      p.plaquettes.push_back(seq[i + 1]);
    }
  return p;
}

bool is_valid_ribbon(const SurfaceComplex& complex, const Ribbon& ribbon) {
  if (ribbon.edges.empty() || ribbon.stars.size() + 1 != ribbon.edges.size() ||
      ribbon.plaquettes.size() != ribbon.stars.size())
    return false;
  for (std::size_t i = 1; i < ribbon.edges.size(); ++i) {
    const int a = ribbon.edges[i - 1], b = ribbon.edges[i];
    const int s = ribbon.stars[i - 1], p = ribbon.plaquettes[i - 1];
    if (!complex.edge_has_vertex(a, s) || !complex.edge_has_vertex(b, s)) return false;
    if (!complex.face_has_edge(p, a) || !complex.face_has_edge(p, b)) return false;
  }
  return true;
}

std::vector<int> vertex_distances(const SurfaceComplex& complex, int from) {
  std::vector<int> dist(complex.vertex_count(), -1);
  dist[from] = 0;
  std::deque<int> queue{from};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : complex.vertex_edges(v)) {
      const int w = complex.other_vertex(e, v);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<int> face_distances(const SurfaceComplex& complex, int from) {
  std::vector<int> dist(complex.face_count(), -1);
  dist[from] = 0;
  std::deque<int> queue{from};
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (int e : complex.face_edges(f)) {
      const int g = complex.other_face(e, f);
      if (g >= 0 && dist[g] < 0) {
        dist[g] = dist[f] + 1;
        queue.push_back(g);
      }
    }
  }
  return dist;
}

}  // namespace clh2d
