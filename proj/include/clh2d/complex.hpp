#pragma once

#include "clh2d/core.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace clh2d {

// Incidence lists as read from a file, before validation.
struct RawComplex {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::array<std::string, 2>>> edges;
  std::vector<std::pair<std::string, std::vector<std::string>>> faces;
  // Tolerate faces sharing several edges and parallel edges (needed by the
  // 2 x n torus grids); everything else is still checked.
  bool allow_multi_adjacency = false;
};

inline constexpr int kVirtualPlaquette = -1;

// A corner of face `face` at vertex `vertex`, between two consecutive walk edges.
struct Corner {
  int vertex;
  int face;
  int edge_in;
  int edge_out;
};

class SurfaceComplex {
 public:
  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edge_ids_.size()); }
  int face_count() const { return static_cast<int>(face_ids_.size()); }

  const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
  const std::string& edge_id(int e) const { return edge_ids_.at(e); }
  const std::string& face_id(int f) const { return face_ids_.at(f); }
  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;
  int face_index(const std::string& id) const;

  const std::array<int, 2>& edge_vertices(int e) const { return edge_vertices_.at(e); }
  const std::vector<int>& face_edges(int f) const { return face_edges_.at(f); }
  const std::vector<int>& face_vertices(int f) const { return face_vertices_.at(f); }
  const std::vector<int>& edge_faces(int e) const { return edge_faces_.at(e); }
  const std::vector<int>& vertex_edges(int v) const { return vertex_edges_.at(v); }
  const std::vector<Corner>& corners(int v) const { return corners_.at(v); }

  int other_vertex(int e, int v) const;
  // The face on the other side of e from f, or kVirtualPlaquette.
  int other_face(int e, int f) const;
  bool edge_has_vertex(int e, int v) const;
  bool face_has_edge(int f, int e) const;

  int locality() const;
  bool is_closed() const;
  bool numeric_ids() const { return numeric_ids_; }
  bool allows_multi_adjacency() const { return multi_adjacency_; }

  RawComplex raw() const;

 private:
  friend SurfaceComplex build_complex(const RawComplex& raw);

  std::vector<std::string> vertex_ids_, edge_ids_, face_ids_;
  std::map<std::string, int> vertex_lookup_, edge_lookup_, face_lookup_;
  std::vector<std::array<int, 2>> edge_vertices_;
  std::vector<std::vector<int>> face_edges_, face_vertices_, edge_faces_, vertex_edges_;
  std::vector<std::vector<Corner>> corners_;
  bool numeric_ids_ = true;
  bool multi_adjacency_ = false;
};

// Validates incidences; throws Error listing every violated invariant.
SurfaceComplex build_complex(const RawComplex& raw);

SurfaceComplex torus_grid(int n, int m);
SurfaceComplex planar_grid(int n, int m);
// A k-gon face surrounded by a ring of k quadrilaterals (3k edges).
SurfaceComplex ring_complex(int k);

std::vector<int> topological_boundary(const SurfaceComplex& complex);

// stars.size() == edges.size() + 1; edges[i] joins stars[i] and stars[i + 1].
struct Path {
  std::vector<int> stars;
  std::vector<int> edges;
  int length() const { return static_cast<int>(edges.size()); }
};

// plaquettes.size() == edges.size() + 1; the last plaquette may be virtual
// when the copath leaves through a topological boundary edge.
struct Copath {
  std::vector<int> plaquettes;
  std::vector<int> edges;
  int length() const { return static_cast<int>(edges.size()); }
};

// Shortest copath between two plaquettes (BFS, smallest edge id first).
Copath find_copath(const SurfaceComplex& complex, int from, int to);
// Shortest copath ending by crossing one of `targets`.
Copath find_copath_to_edges(const SurfaceComplex& complex, int from, const std::vector<bool>& targets);
Copath find_copath_to_boundary(const SurfaceComplex& complex, int from);

Path find_path(const SurfaceComplex& complex, int from, int to);
Path find_path_to_edges(const SurfaceComplex& complex, int from, const std::vector<bool>& targets);

// Ribbon (e_0, ..., e_m): e_{i-1}, e_i share stars[i-1] and plaquettes[i-1].
struct Ribbon {
  std::vector<int> edges;
  std::vector<int> stars;
  std::vector<int> plaquettes;
  int s0 = -1;  // star of e_0 other than stars[0]
  int p0 = kVirtualPlaquette;  // plaquette of e_0 other than plaquettes[0]
};

struct RibbonOptions {
  const std::vector<bool>* special = nullptr;  // truncate at the first special edge after e_0
  int avoid_first_plaquette = kVirtualPlaquette;
};

Ribbon complete_path_to_ribbon(const SurfaceComplex& complex, const Path& path,
                               const RibbonOptions& options = {});

// Collapsed star / plaquette sequences (s0, s1, ..., s_{m+1}) and
// (p0, p1, ..., p_{m+1}); p_{m+1} is virtual when e_m is a boundary edge.
Path ribbon_path(const SurfaceComplex& complex, const Ribbon& ribbon);
Copath ribbon_copath(const SurfaceComplex& complex, const Ribbon& ribbon);

bool is_valid_ribbon(const SurfaceComplex& complex, const Ribbon& ribbon);

// BFS distances on the 1-skeleton (-1 when unreachable).
std::vector<int> vertex_distances(const SurfaceComplex& complex, int from);
std::vector<int> face_distances(const SurfaceComplex& complex, int from);

}  // namespace clh2d
