#pragma once

#include "khom/matrix.hpp"
#include "khom/skeleton.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace khom {

// An element of Q_r in canonical form: the unique factorisation into edges of
// strictly increasing colour, listed left to right in composition order (the
// leftmost edge carries the range of the cube).  Level-0 cubes are vertices.
struct Cube {
  int vertex = -1;         // used when edges is empty
  std::vector<int> edges;  // edge indices into the skeleton

  int level() const { return int(edges.size()); }
  bool operator==(const Cube&) const = default;
};

// An element of C_r: an integer coefficient vector over the canonical cube
// ordering at level r.
struct Chain {
  int level = 0;
  std::vector<Int> coeffs;

  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Int& v) { return v == 0; });
  }
  bool operator==(const Chain&) const = default;
};

// Ranks and integer boundary matrices of (C_*, d_*) with d_r . d_{r+1} = 0.
// Boundaries are kept sparse; dense views are produced on demand.
struct ChainComplex {
  int top = 0;
  std::vector<int> ranks;            // size top + 1
  std::vector<SparseColMatrix> bnd;  // bnd[r] : C_r -> C_{r-1}, valid for 1 <= r <= top

  int rank(int r) const { return (r >= 0 && r <= top) ? ranks[r] : 0; }

  IntMatrix boundary_dense(int r) const {
    if (r >= 1 && r <= top) return bnd[r].to_dense();
    return IntMatrix(rank(r - 1), rank(r));
  }

  Int euler_characteristic() const {
    Int chi = 0;
    for (int r = 0; r <= top; ++r) chi += (r % 2 == 0) ? Int(ranks[r]) : Int(-ranks[r]);
    return chi;
  }
};

// A validated k-graph.  Construction checks the axioms (the constructor is
// the validation token all operations require) and enumerates the cube sets
// Q_0..Q_k in a deterministic order: by colour set, then by edge ids.
class KGraph {
 public:
  explicit KGraph(Skeleton sk) : sk_(std::move(sk)) {
    ValidationReport rep = validate(sk_);
    if (!rep.ok()) fail(errc::not_validated, "skeleton is not a k-graph:\n" + rep.to_string());
    build_indices();
    enumerate_cubes();
  }

  const Skeleton& skeleton() const { return sk_; }
  int rank() const { return sk_.k; }

  int vertex_index(const std::string& v) const {
    auto it = vertex_of_.find(v);
    if (it == vertex_of_.end()) fail(errc::unknown_reference, "unknown vertex '" + v + "'");
    return it->second;
  }

  int edge_index(const std::string& e) const {
    auto it = edge_of_.find(e);
    if (it == edge_of_.end()) fail(errc::unknown_reference, "unknown edge '" + e + "'");
    return it->second;
  }

  const Edge& edge(int i) const { return sk_.edges[i]; }

  // Q_r in canonical order; empty for r > k.
  const std::vector<Cube>& cubes(int r) const {
    static const std::vector<Cube> empty;
    if (r < 0) fail(errc::index_out_of_range, "cube level must be nonnegative");
    return r < int(cubes_.size()) ? cubes_[r] : empty;
  }

  int cube_count(int r) const { return int(cubes(r).size()); }

  int cube_index(const Cube& c) const {
    int r = c.level();
    if (r == 0) {
      auto it = vertex_cube_of_.find(c.vertex);
      if (it == vertex_cube_of_.end()) fail(errc::unknown_reference, "unknown vertex cube");
      return it->second;
    }
    auto it = cube_of_[r].find(c.edges);
    if (it == cube_of_[r].end()) fail(errc::unknown_reference, "unknown cube");
    return it->second;
  }

  Cube vertex_cube(const std::string& v) const { return Cube{vertex_index(v), {}}; }

  std::string cube_name(const Cube& c) const {
    if (c.level() == 0) return sk_.vertices[c.vertex];
    std::string s;
    for (size_t i = 0; i < c.edges.size(); ++i) s += (i ? "." : "") + sk_.edges[c.edges[i]].id;
    return s;
  }

  std::optional<Cube> cube_by_name(int r, const std::string& name) const {
    if (r == 0) {
      auto it = vertex_of_.find(name);
      if (it == vertex_of_.end()) return std::nullopt;
      return Cube{it->second, {}};
    }
    std::vector<int> edges;
    std::string part;
    for (size_t i = 0; i <= name.size(); ++i) {
      if (i == name.size() || name[i] == '.') {
        auto it = edge_of_.find(part);
        if (it == edge_of_.end()) return std::nullopt;
        edges.push_back(it->second);
        part.clear();
      } else {
        part += name[i];
      }
    }
    if (int(edges.size()) != r) return std::nullopt;
    Cube c{-1, std::move(edges)};
    if (!cube_of_[r].count(c.edges)) return std::nullopt;
    return c;
  }

  // The face F_j^l of a cube: the colour of slot j is commuted to the back
  // (l = 0) or to the front (l = 1) through the commuting squares and then
  // stripped.  The result is again canonical.
  Cube face(const Cube& c, int j, int ell) const {
    int r = c.level();
    if (j < 1 || j > r || ell < 0 || ell > 1)
      fail(errc::index_out_of_range, "face index out of range");
    std::vector<int> e = c.edges;
    if (ell == 0) {
      for (int p = j - 1; p + 1 < r; ++p) swap_at(e, p);
      int dropped = e.back();
      e.pop_back();
      if (e.empty()) return Cube{vertex_index(sk_.edges[dropped].range), {}};
    } else {
      for (int p = j - 1; p > 0; --p) swap_at(e, p - 1);
      int dropped = e.front();
      e.erase(e.begin());
      if (e.empty()) return Cube{vertex_index(sk_.edges[dropped].source), {}};
    }
    return Cube{-1, std::move(e)};
  }

  // d_r(cube) = sum over faces of (-1)^{i + l} F_i^l; verified to square to
  // zero before returning (a failure would indicate a validation bug).
  const ChainComplex& chain_complex() const {
    if (!complex_) {
      ChainComplex cx;
      cx.top = sk_.k;
      cx.ranks.resize(sk_.k + 1);
      for (int r = 0; r <= sk_.k; ++r) cx.ranks[r] = cube_count(r);
      cx.bnd.resize(sk_.k + 1);
      for (int r = 1; r <= sk_.k; ++r) {
        SparseColMatrix m(cx.ranks[r - 1], cx.ranks[r]);
        const auto& level = cubes(r);
        for (size_t col = 0; col < level.size(); ++col)
          for (int j = 1; j <= r; ++j)
            for (int ell = 0; ell <= 1; ++ell) {
              int row = cube_index(face(level[col], j, ell));
              m.add(row, int(col), ((j + ell) % 2 == 0) ? Int(1) : Int(-1));
            }
        cx.bnd[r] = std::move(m);
      }
      for (int r = 1; r < sk_.k; ++r)
        if (!cx.bnd[r].composes_to_zero_with(cx.bnd[r + 1]))
          fail(errc::boundary_square_nonzero, "d_" + std::to_string(r) + " . d_" +
                                                  std::to_string(r + 1) + " != 0");
      complex_ = std::move(cx);
    }
    return *complex_;
  }

  std::vector<std::vector<std::string>> components() const { return khom::components(sk_); }

 private:
  void build_indices() {
    for (size_t i = 0; i < sk_.vertices.size(); ++i) vertex_of_[sk_.vertices[i]] = int(i);
    for (size_t i = 0; i < sk_.edges.size(); ++i) edge_of_[sk_.edges[i].id] = int(i);
    for (const SquareRecord& q : sk_.squares) {
      int f1 = edge_of_[q.f1], g1 = edge_of_[q.g1], g2 = edge_of_[q.g2], f2 = edge_of_[q.f2];
      swap_ij_[{f1, g1}] = {g2, f2};
      swap_ji_[{g2, f2}] = {f1, g1};
    }
  }

  // Replace the composable pair at positions (p, p+1) using its square.
  void swap_at(std::vector<int>& e, int p) const {
    int a = e[p], b = e[p + 1];
    if (sk_.edges[a].colour < sk_.edges[b].colour) {
      auto it = swap_ij_.find({a, b});
      e[p] = it->second.first;
      e[p + 1] = it->second.second;
    } else {
      auto it = swap_ji_.find({a, b});
      e[p] = it->second.first;
      e[p + 1] = it->second.second;
    }
  }

  void enumerate_cubes() {
    int k = sk_.k;
    cubes_.assign(k + 1, {});
    cube_of_.assign(k + 1, {});

    // level 0: vertices in name order
    std::vector<std::string> names = sk_.vertices;
    std::sort(names.begin(), names.end());
    for (const std::string& v : names) {
      vertex_cube_of_[vertex_of_[v]] = int(cubes_[0].size());
      cubes_[0].push_back(Cube{vertex_of_[v], {}});
    }

    // edges grouped by colour and range, each group sorted by edge id
    std::map<std::pair<int, std::string>, std::vector<int>> by_colour_range;
    std::map<int, std::vector<int>> by_colour;
    std::vector<int> order(sk_.edges.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sk_.edges[a].id < sk_.edges[b].id; });
    for (int i : order) {
      by_colour[sk_.edges[i].colour].push_back(i);
      by_colour_range[{sk_.edges[i].colour, sk_.edges[i].range}].push_back(i);
    }

    // levels 1..k: DFS over increasing colour subsets in lexicographic order
    std::vector<int> colour_pick;
    std::vector<int> edge_pick;
    auto extend = [&](auto&& self, int r) -> void {
      int depth = int(edge_pick.size());
      if (depth == r) {
        Cube c{-1, edge_pick};
        cube_of_[r][c.edges] = int(cubes_[r].size());
        cubes_[r].push_back(std::move(c));
        return;
      }
      int colour = colour_pick[depth];
      const std::vector<int>* candidates;
      if (depth == 0) {
        candidates = &by_colour[colour];
      } else {
        auto it = by_colour_range.find({colour, sk_.edges[edge_pick.back()].source});
        if (it == by_colour_range.end()) return;
        candidates = &it->second;
      }
      for (int e : *candidates) {
        edge_pick.push_back(e);
        self(self, r);
        edge_pick.pop_back();
      }
    };
    auto choose_colours = [&](auto&& self, int r, int next) -> void {
      if (int(colour_pick.size()) == r) {
        extend(extend, r);
        return;
      }
      for (int c = next; c <= k; ++c) {
        colour_pick.push_back(c);
        self(self, r, c + 1);
        colour_pick.pop_back();
      }
    };
    for (int r = 1; r <= k; ++r) choose_colours(choose_colours, r, 1);
  }

  Skeleton sk_;
  std::map<std::string, int> vertex_of_, edge_of_;
  std::map<std::pair<int, int>, std::pair<int, int>> swap_ij_, swap_ji_;
  std::vector<std::vector<Cube>> cubes_;
  std::vector<std::map<std::vector<int>, int>> cube_of_;
  std::map<int, int> vertex_cube_of_;
  mutable std::optional<ChainComplex> complex_;
};

}  // namespace khom
