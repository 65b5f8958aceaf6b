#pragma once

#include "khom/kgraph.hpp"

#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace khom {

// The degree data of a possibly-degenerate cubical cube: positions
// i_1 < ... < i_t of the nondegenerate slots inside an ambient rank r, with
// the slot colours carried by the underlying cube.
struct AdmissibleMap {
  int source_rank = 0;       // r
  std::vector<int> positions;  // 1-based, strictly increasing, <= source_rank
  std::vector<int> colours;    // strictly increasing, <= k
};

// An element of the cubical set generated by a k-graph, stored in the
// factored form (ambient rank, nondegenerate positions, underlying cube).
// The pair determines the quasimorphism uniquely.
struct CubicalCube {
  int ambient = 0;
  std::vector<int> positions;  // 1-based slots that carry the cube's colours
  Cube cube;

  int rank() const { return int(positions.size()); }
  bool degenerate() const { return rank() < ambient; }
  bool operator==(const CubicalCube&) const = default;
  auto operator<=>(const CubicalCube&) const = default;
};

inline AdmissibleMap admissible_map_of(const KGraph& g, const CubicalCube& c) {
  AdmissibleMap h;
  h.source_rank = c.ambient;
  h.positions = c.positions;
  for (int e : c.cube.edges) h.colours.push_back(g.edge(e).colour);
  return h;
}

inline int default_rmax(const KGraph& g) {
  if (const char* env = std::getenv("KHOM_RMAX")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return g.rank() + 2;
}

// All cubical r-cubes: a choice of t nondegenerate slots and a cube of
// Q_t, for t = 0..min(r, k).  Deterministic order: by slot subset, then by
// the canonical cube order.
inline std::vector<CubicalCube> cubical_cubes(const KGraph& g, int r, int rmax = -1) {
  if (rmax < 0) rmax = default_rmax(g);
  if (r < 0 || r > rmax)
    fail(errc::rmax_exceeded, "cubical level " + std::to_string(r) + " exceeds rmax " +
                                  std::to_string(rmax));
  std::vector<CubicalCube> out;
  std::vector<int> subset;
  auto choose = [&](auto&& self, int next) -> void {
    int t = int(subset.size());
    if (t <= g.rank())
      for (const Cube& c : g.cubes(t)) out.push_back(CubicalCube{r, subset, c});
    if (t == r) return;
    for (int i = next; i <= r; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  choose(choose, 1);
  std::sort(out.begin(), out.end(),
            [](const CubicalCube& a, const CubicalCube& b) { return a < b; });
  return out;
}

// Face: a degenerate slot is simply dropped; a nondegenerate slot applies the
// corresponding k-graph face to the underlying cube and is then dropped.
inline CubicalCube cubical_face(const KGraph& g, const CubicalCube& c, int i, int ell) {
  if (i < 1 || i > c.ambient || ell < 0 || ell > 1)
    fail(errc::index_out_of_range, "cubical face index out of range");
  CubicalCube out;
  out.ambient = c.ambient - 1;
  int p = 0;  // 1-based index of i inside positions, if present
  for (size_t q = 0; q < c.positions.size(); ++q)
    if (c.positions[q] == i) p = int(q) + 1;
  if (p > 0) {
    for (int pos : c.positions)
      if (pos != i) out.positions.push_back(pos < i ? pos : pos - 1);
    out.cube = g.face(c.cube, p, ell);
  } else {
    for (int pos : c.positions) out.positions.push_back(pos < i ? pos : pos - 1);
    out.cube = c.cube;
  }
  return out;
}

// Degeneracy: insert a degenerate slot at position i.
inline CubicalCube cubical_degeneracy(const KGraph& g, const CubicalCube& c, int i) {
  (void)g;
  if (i < 1 || i > c.ambient + 1)
    fail(errc::index_out_of_range, "cubical degeneracy index out of range");
  CubicalCube out;
  out.ambient = c.ambient + 1;
  for (int pos : c.positions) out.positions.push_back(pos < i ? pos : pos + 1);
  out.cube = c.cube;
  return out;
}

struct CubicalCheck {
  bool pass = true;
  std::string witness;  // description of the first failure, if any

  void record(const std::string& what) {
    if (pass) witness = what;
    pass = false;
  }
};

// Exhaustively verifies the cubical relations on all cubical cubes of level
// <= rmax:
//   faces:        d_i^l . d_j^m = d_j^m . d_{i+1}^l          (j <= i)
//   degeneracies: f_j . f_i = f_{i+1} . f_j                  (j <= i)
//   mixed:        d_i^l . f_j = f_j . d_{i-1}^l (j < i), id (j = i),
//                 f_{j-1} . d_i^l (j > i)
inline CubicalCheck check_cubical_identities(const KGraph& g, int rmax = -1) {
  if (rmax < 0) rmax = default_rmax(g);
  CubicalCheck res;
  auto describe = [&](const char* fam, const CubicalCube& c, int i, int j) {
    std::ostringstream os;
    os << fam << " failed at ambient " << c.ambient << ", cube "
       << g.cube_name(c.cube) << ", i=" << i << ", j=" << j;
    return os.str();
  };
  for (int r = 0; r <= rmax && res.pass; ++r) {
    std::vector<CubicalCube> level = cubical_cubes(g, r, rmax);
    for (const CubicalCube& c : level) {
      // face-face, on X_r with j <= i <= r-1
      for (int i = 1; i + 1 <= r && res.pass; ++i)
        for (int j = 1; j <= i && res.pass; ++j)
          for (int ell = 0; ell <= 1; ++ell)
            for (int m = 0; m <= 1; ++m)
              if (cubical_face(g, cubical_face(g, c, j, m), i, ell) !=
                  cubical_face(g, cubical_face(g, c, i + 1, ell), j, m))
                res.record(describe("face-face", c, i, j));
      // degeneracy-degeneracy, f_j . f_i with j <= i <= r+1
      for (int i = 1; i <= r + 1 && res.pass; ++i)
        for (int j = 1; j <= i && res.pass; ++j)
          if (cubical_degeneracy(g, cubical_degeneracy(g, c, i), j) !=
              cubical_degeneracy(g, cubical_degeneracy(g, c, j), i + 1))
            res.record(describe("degeneracy-degeneracy", c, i, j));
      // face-degeneracy: d_i^l f_j on X_r, 1 <= j <= r+1, 1 <= i <= r+1
      for (int j = 1; j <= r + 1 && res.pass; ++j)
        for (int i = 1; i <= r + 1 && res.pass; ++i)
          for (int ell = 0; ell <= 1; ++ell) {
            CubicalCube lhs = cubical_face(g, cubical_degeneracy(g, c, j), i, ell);
            CubicalCube rhs;
            if (j == i)
              rhs = c;
            else if (j < i)
              rhs = cubical_degeneracy(g, cubical_face(g, c, i - 1, ell), j);
            else
              rhs = cubical_degeneracy(g, cubical_face(g, c, i, ell), j - 1);
            if (lhs != rhs) res.record(describe("face-degeneracy", c, i, j));
          }
    }
  }
  return res;
}

struct NormalizedComplexCheck {
  bool matrices_match = true;
  bool faces_stay_nondegenerate = true;
  bool degeneracies_cover = true;  // D_r is the union of degeneracy images
  std::vector<IntMatrix> normalized_boundaries;  // index r = 1..k
};

// Builds the boundary of the normalized complex on nondegenerate cubical
// cubes through the bijection with Q_r and compares it, entry for entry,
// with the chain complex of the k-graph.  Also checks that every degenerate
// cube of level <= cover_rmax is a degeneracy image.
inline NormalizedComplexCheck normalized_complex_iso(const KGraph& g, int cover_rmax = 4) {
  NormalizedComplexCheck res;
  const ChainComplex& cx = g.chain_complex();
  res.normalized_boundaries.resize(g.rank() + 1);
  for (int r = 1; r <= g.rank(); ++r) {
    IntMatrix m(cx.rank(r - 1), cx.rank(r));
    const auto& level = g.cubes(r);
    std::vector<int> all(r);
    for (int i = 0; i < r; ++i) all[i] = i + 1;
    for (size_t col = 0; col < level.size(); ++col) {
      CubicalCube phi{r, all, level[col]};
      for (int i = 1; i <= r; ++i)
        for (int ell = 0; ell <= 1; ++ell) {
          CubicalCube face = cubical_face(g, phi, i, ell);
          if (face.degenerate()) {
            res.faces_stay_nondegenerate = false;
            continue;
          }
          m.at(g.cube_index(face.cube), int(col)) +=
              ((i + ell) % 2 == 0) ? Int(1) : Int(-1);
        }
    }
    if (m != cx.boundary_dense(r)) res.matrices_match = false;
    res.normalized_boundaries[r] = std::move(m);
  }

  int rmax = std::min(cover_rmax, default_rmax(g));
  for (int r = 1; r <= rmax; ++r) {
    std::set<CubicalCube> degenerate;
    for (const CubicalCube& c : cubical_cubes(g, r, rmax))
      if (c.degenerate()) degenerate.insert(c);
    std::set<CubicalCube> images;
    for (const CubicalCube& c : cubical_cubes(g, r - 1, rmax))
      for (int i = 1; i <= r; ++i) {
        CubicalCube img = cubical_degeneracy(g, c, i);
        if (!img.degenerate()) res.degeneracies_cover = false;
        images.insert(img);
      }
    if (images != degenerate) res.degeneracies_cover = false;
  }
  return res;
}

}  // namespace khom
