#include "clh2d/complex.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace clh2d;

namespace {

RawComplex square() {
  RawComplex r;
  r.vertices = {"a", "b", "c", "d"};
  r.edges = {{"ab", {"a", "b"}}, {"bc", {"b", "c"}}, {"cd", {"c", "d"}}, {"da", {"d", "a"}}};
  r.faces = {{"F", {"ab", "bc", "cd", "da"}}};
  return r;
}

ErrorCode build_error(const RawComplex& r) {
  try {
    build_complex(r);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

void expect_walkable(const SurfaceComplex& c, const Path& p) {
  ASSERT_EQ(p.stars.size(), p.edges.size() + 1);
  std::set<int> seen;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    EXPECT_TRUE(c.edge_has_vertex(p.edges[i], p.stars[i]));
    EXPECT_EQ(c.other_vertex(p.edges[i], p.stars[i]), p.stars[i + 1]);
    EXPECT_TRUE(seen.insert(p.edges[i]).second);
  }
}

void expect_walkable(const SurfaceComplex& c, const Copath& p) {
  ASSERT_EQ(p.plaquettes.size(), p.edges.size() + 1);
  std::set<int> seen;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (p.plaquettes[i] == kVirtualPlaquette) {
      EXPECT_EQ(c.other_face(p.edges[i], p.plaquettes[i + 1]), kVirtualPlaquette);
    } else {
      EXPECT_TRUE(c.face_has_edge(p.plaquettes[i], p.edges[i]));
      EXPECT_EQ(c.other_face(p.edges[i], p.plaquettes[i]), p.plaquettes[i + 1]);
    }
    EXPECT_TRUE(seen.insert(p.edges[i]).second);
  }
}

}  // namespace

TEST(SurfaceComplex, SingleSquare) {
  const auto c = build_complex(square());
  EXPECT_EQ(c.face_count(), 1);
  EXPECT_EQ(topological_boundary(c).size(), 4u);
  EXPECT_FALSE(c.is_closed());
  EXPECT_FALSE(c.numeric_ids());
  EXPECT_EQ(c.vertex_id(0), "a");
}

TEST(SurfaceComplex, Violations) {
  auto r = square();
  r.faces.push_back({"G", {"ab", "bc", "cd", "da"}});
  r.faces.push_back({"H", {"ab", "bc", "cd", "da"}});
  EXPECT_EQ(build_error(r), ErrorCode::NonSurface);

  r = square();
  r.faces[0].second = {"ab", "bc", "cd"};
  EXPECT_EQ(build_error(r), ErrorCode::BadPolygon);

  r = square();
  r.faces[0].second = {"ab", "ab"};
  EXPECT_EQ(build_error(r), ErrorCode::BadPolygon);

  // Two triangles glued along two edges.
  RawComplex t;
  t.vertices = {"a", "b", "c", "d"};
  t.edges = {{"ab", {"a", "b"}}, {"bc", {"b", "c"}}, {"ca", {"c", "a"}}, {"cd", {"c", "d"}}, {"da", {"d", "a"}},
             {"bd", {"b", "d"}}};
  t.faces = {{"1", {"ab", "bc", "ca"}}, {"2", {"ca", "cd", "da"}}, {"3", {"ab", "bd", "da"}},
             {"4", {"bc", "cd", "bd"}}};
  EXPECT_NO_THROW(build_complex(t));  // tetrahedron: closed and valid
  t.faces.push_back({"5", {"ab", "bd", "da"}});
  EXPECT_EQ(build_error(t), ErrorCode::NonSurface);

  RawComplex twice;
  twice.vertices = {"a", "b", "c"};
  twice.edges = {{"1", {"a", "b"}}, {"2", {"b", "c"}}, {"3", {"c", "a"}}, {"4", {"c", "a"}}};
  twice.faces = {{"x", {"1", "2", "3"}}, {"y", {"1", "2", "4"}}};
  try {
    build_complex(twice);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IntersectionViolation);
    EXPECT_GE(e.details().size(), 2u);
  }
}

TEST(SurfaceComplex, GridCounts) {
  const auto t2 = torus_grid(2, 2);
  EXPECT_EQ(t2.vertex_count(), 4);
  EXPECT_EQ(t2.edge_count(), 8);
  EXPECT_EQ(t2.face_count(), 4);
  EXPECT_TRUE(t2.is_closed());

  const auto t3 = torus_grid(3, 3);
  EXPECT_EQ(t3.vertex_count(), 9);
  EXPECT_EQ(t3.edge_count(), 18);
  EXPECT_EQ(t3.face_count(), 9);
  EXPECT_TRUE(topological_boundary(t3).empty());
  for (int v = 0; v < 9; ++v) EXPECT_EQ(t3.vertex_edges(v).size(), 4u);
  for (int f = 0; f < 9; ++f) EXPECT_EQ(t3.face_edges(f).size(), 4u);

  const auto p1 = planar_grid(1, 1);
  EXPECT_EQ(p1.face_count(), 1);
  EXPECT_EQ(topological_boundary(p1).size(), 4u);

  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 3; ++m) {
      const auto p = planar_grid(n, m);
      EXPECT_EQ(p.vertex_count(), (n + 1) * (m + 1));
      EXPECT_EQ(p.edge_count(), n * (m + 1) + m * (n + 1));
      EXPECT_EQ(p.face_count(), n * m);
      EXPECT_EQ(static_cast<int>(topological_boundary(p).size()), 2 * (n + m));
    }

  EXPECT_THROW(torus_grid(1, 3), Error);
  EXPECT_THROW(planar_grid(0, 2), Error);
  const auto ring = ring_complex(5);
  EXPECT_EQ(ring.edge_count(), 15);
  EXPECT_EQ(ring.face_count(), 6);
}

TEST(SurfaceComplex, IncidenceSumProperty) {
  for (const auto& c : {torus_grid(2, 3), torus_grid(4, 4), planar_grid(3, 2), ring_complex(4)}) {
    int face_side = 0, edge_side = 0;
    for (int f = 0; f < c.face_count(); ++f) face_side += static_cast<int>(c.face_edges(f).size());
    for (int e = 0; e < c.edge_count(); ++e) {
      const int k = static_cast<int>(c.edge_faces(e).size());
      EXPECT_TRUE(k == 1 || k == 2);
      edge_side += k;
    }
    EXPECT_EQ(face_side, edge_side);
  }
}

TEST(SurfaceComplex, CopathsMatchBfsOracle) {
  const auto c = planar_grid(3, 3);
  const auto d = oracle::all_pairs(c.face_count(), oracle::dual_links(c));
  for (int f = 0; f < c.face_count(); ++f)
    for (int g = 0; g < c.face_count(); ++g) {
      const auto cp = find_copath(c, f, g);
      expect_walkable(c, cp);
      EXPECT_EQ(cp.length(), d[f][g]);
      EXPECT_EQ(cp.plaquettes.front(), f);
      EXPECT_EQ(cp.plaquettes.back(), g);
    }
  EXPECT_EQ(find_copath(c, 0, 1).length(), 1);
  EXPECT_EQ(find_copath(c, 4, 4).length(), 0);
  // Center face is one step from a boundary face, so two crossings to leave.
  const auto out = find_copath_to_boundary(c, 4);
  EXPECT_EQ(out.length(), 2);
  EXPECT_EQ(out.plaquettes.back(), kVirtualPlaquette);
  EXPECT_EQ(find_copath_to_boundary(c, 0).length(), 1);
}

TEST(SurfaceComplex, PathsMatchBfsOracle) {
  const auto c = torus_grid(3, 3);
  const auto d = oracle::all_pairs(c.vertex_count(), oracle::primal_links(c));
  for (int v = 0; v < c.vertex_count(); ++v) {
    const auto dist = vertex_distances(c, v);
    for (int w = 0; w < c.vertex_count(); ++w) {
      const auto p = find_path(c, v, w);
      expect_walkable(c, p);
      EXPECT_EQ(p.length(), d[v][w]);
      EXPECT_EQ(dist[w], d[v][w]);
    }
  }
  EXPECT_EQ(find_path(c, 0, 0).length(), 0);
  EXPECT_EQ(find_path(c, 0, 1).length(), 1);
}

TEST(SurfaceComplex, Deterministic) {
  const auto c = torus_grid(4, 4);
  const auto a = find_path(c, 0, 10);
  const auto b = find_path(c, 0, 10);
  EXPECT_EQ(a.edges, b.edges);
}

TEST(SurfaceComplex, RibbonCompletion) {
  const auto c = planar_grid(3, 1);
  // Straight path along the bottom row: vertices 0 - 1 - 2 - 3.
  const auto p = find_path(c, c.vertex_index("0"), c.vertex_index("3"));
  ASSERT_EQ(p.length(), 3);
  const auto r = complete_path_to_ribbon(c, p);
  EXPECT_TRUE(is_valid_ribbon(c, r));
  for (int e : r.edges) {
    bool touches = false;
    for (int v : p.stars) touches = touches || c.edge_has_vertex(e, v);
    EXPECT_TRUE(touches);
  }
  for (std::size_t i = 0; i < r.stars.size(); ++i) {
    // Inserted edges sit in faces around the pivot vertex.
    EXPECT_TRUE(c.edge_has_vertex(r.edges[i + 1], r.stars[i]));
  }
  const auto back = ribbon_path(c, r);
  EXPECT_EQ(back.stars, p.stars);
  EXPECT_EQ(back.edges, p.edges);
  expect_walkable(c, ribbon_copath(c, r));

  const auto single = complete_path_to_ribbon(c, find_path(c, 0, 1));
  EXPECT_EQ(single.edges.size(), 1u);
}

TEST(SurfaceComplex, RibbonOnTorusCollapses) {
  const auto c = torus_grid(4, 4);
  for (int w : {2, 5, 10, 15}) {
    const auto p = find_path(c, 0, w);
    const auto r = complete_path_to_ribbon(c, p);
    EXPECT_TRUE(is_valid_ribbon(c, r));
    const auto back = ribbon_path(c, r);
    EXPECT_EQ(back.stars, p.stars);
    const auto cp = ribbon_copath(c, r);
    expect_walkable(c, cp);
  }
}

TEST(SurfaceComplex, RibbonTruncatesAtSpecialEdge) {
  const auto c = planar_grid(3, 1);
  const auto p = find_path(c, c.vertex_index("0"), c.vertex_index("3"));
  const auto full = complete_path_to_ribbon(c, p);
  std::vector<bool> special(c.edge_count(), false);
  const int cut = full.edges[2];
  special[cut] = true;
  RibbonOptions opt;
  opt.special = &special;
  const auto r = complete_path_to_ribbon(c, p, opt);
  EXPECT_EQ(r.edges.size(), 3u);
  EXPECT_EQ(r.edges.back(), cut);
  EXPECT_TRUE(is_valid_ribbon(c, r));
}

TEST(SurfaceComplex, SelfIntersectingPathRejected) {
  const auto c = torus_grid(3, 3);
  Path loop;
  loop.stars = {0, 1, 2, 0};
  for (int i = 0; i < 3; ++i) loop.edges.push_back(find_path(c, loop.stars[i], loop.stars[i + 1]).edges[0]);
  try {
    complete_path_to_ribbon(c, loop);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSimple);
  }
}
