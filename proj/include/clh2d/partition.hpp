#pragma once

#include "clh2d/instance.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace clh2d {

// One triangle as a combinatorial region: the complex edges it owns, its three
// corners (triangulation vertices placed on complex vertices), a vertex whose
// r-ball lies inside, and a vertex on each side (side i joins corners i, i+1).
struct TriangleRegion {
  std::vector<int> edges;
  std::array<int, 3> corners{-1, -1, -1};
  int witness_center = -1;
  std::array<int, 3> side_centers{-1, -1, -1};
};

struct Triangulation {
  std::vector<TriangleRegion> triangles;
  int r = 0;
  int R = 0;
  int D = 0;
};

// Maximal degree of the 1-skeleton spanned by the triangle corners.
int triangulation_degree(const Triangulation& triangulation);

struct QuasiEuclideanReport {
  std::vector<std::string> violations;
  int max_diameter = 0;
  int degree = 0;
  bool ok() const { return violations.empty(); }
};

QuasiEuclideanReport verify_quasi_euclidean(const SurfaceComplex& complex, const Triangulation& triangulation, int r,
                                            int R, int D);

// N_{k,R} = 1 + k * sum_{i<R} (k-1)^i and ceil(k N_{k,R} / 2). BadParams on k < 2, R < 1 or overflow.
std::uint64_t moore_bound(int k, int R);
std::uint64_t edge_bound(int k, int R);
// D * k^(R+2) as a double (it overflows integers for modest R).
double superparticle_bound(int D, int k, int R);

struct GridTriangulationOptions {
  int k = 4;   // maximal term size
  int c = 7;   // block side c * k
  int r = -1;  // ball radius; 2k when negative
};

// Blocks of side c*k on planar_grid(n, m) or torus_grid(n, m), each split by a
// staircase diagonal into two triangles. R and D are measured.
Triangulation grid_triangulation(const SurfaceComplex& complex, int n, int m, bool periodic,
                                 const GridTriangulationOptions& options = {});

struct SuperParticlePartition {
  std::vector<int> block_of_edge;
  std::vector<std::vector<int>> blocks;  // edges of each block
  std::vector<int> block_vertex;         // triangulation vertex each block belongs to
  std::vector<int> centers;              // center term per triangle
  std::vector<int> center_trivial_edge;  // an edge its center acts trivially on
  int k = 0;
  double size_bound = 0.0;  // D * k^(R+2)

  int max_block_size() const;
};

// Qubits a term acts on non-trivially.
std::vector<int> nontrivial_support(const LocalTerm& term, double tol = 1e-9);

// Per triangle: a center term acting trivially on an edge, three regions meeting
// at it, then blocks = union of the regions of each triangulation vertex.
// Throws NoCenter when a triangle has no usable center and BadParams when the
// triangulation does not cover the edges or r < 2k.
SuperParticlePartition build_superparticles(const CLHInstance& punctured, const Triangulation& triangulation,
                                            double tol = 1e-9);

// Blocks partition the edges and every term's non-trivial support meets at most two blocks.
bool verify_two_local(const CLHInstance& punctured, const SuperParticlePartition& partition, double tol = 1e-9);

}  // namespace clh2d
