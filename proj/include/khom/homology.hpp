#pragma once

#include "khom/abelian.hpp"
#include "khom/constructors.hpp"
#include "khom/kgraph.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace khom {

// The homology groups H_0..H_top of a chain complex, with presented groups
// (and hence cycle representatives) retained per level.
struct HomologyProfile {
  std::vector<PresentedGroup> groups;
  Int euler = 0;

  int top() const { return int(groups.size()) - 1; }

  const PresentedGroup& group(int r) const {
    static const PresentedGroup trivial;
    return (r >= 0 && r < int(groups.size())) ? groups[r] : trivial;
  }

  FgAbelianGroup at(int r) const { return group(r).isomorphism_class(); }

  std::vector<FgAbelianGroup> classes() const {
    std::vector<FgAbelianGroup> out;
    for (const auto& g : groups) out.push_back(g.isomorphism_class());
    return out;
  }

  std::string to_string() const {
    std::string s = "(";
    for (size_t r = 0; r < groups.size(); ++r)
      s += (r ? ", " : "") + groups[r].isomorphism_class().to_string();
    return s + ")";
  }
};

inline HomologyProfile homology_of_complex(const ChainComplex& cx) {
  HomologyProfile p;
  for (int r = 0; r <= cx.top; ++r)
    p.groups.push_back(homology_of_pair(cx.boundary_dense(r), cx.boundary_dense(r + 1)));
  p.euler = cx.euler_characteristic();
  return p;
}

inline HomologyProfile homology_groups(const KGraph& g) {
  return homology_of_complex(g.chain_complex());
}

inline HomologyProfile homology_groups(const Skeleton& sk) {
  return homology_groups(KGraph(sk));
}

// ---------------------------------------------------------------------------
// Induced maps

inline Cube map_cube(const KGraph& src, const KGraph& tgt, const KGraphMorphism& m,
                     const Cube& c) {
  if (c.level() == 0) return tgt.vertex_cube(m.vmap.at(src.skeleton().vertices[c.vertex]));
  Cube out;
  for (int e : c.edges) out.edges.push_back(tgt.edge_index(m.emap.at(src.edge(e).id)));
  return out;
}

// The chain maps C_r(src) -> C_r(tgt) of a k-graph morphism, one matrix per
// level 0..k.
inline std::vector<IntMatrix> chain_map_of_morphism(const KGraph& src, const KGraph& tgt,
                                                    const KGraphMorphism& m) {
  int top = std::max(src.rank(), tgt.rank());
  std::vector<IntMatrix> f;
  for (int r = 0; r <= top; ++r) {
    IntMatrix fr(tgt.cube_count(r), src.cube_count(r));
    const auto& level = src.cubes(r);
    for (size_t j = 0; j < level.size(); ++j)
      fr.at(tgt.cube_index(map_cube(src, tgt, m, level[j])), int(j)) = 1;
    f.push_back(std::move(fr));
  }
  return f;
}

// psi_* : H_r(src) -> H_r(tgt) for each r.  The morphism must pass
// morphism_check; the well-definedness certificates then never fail.
inline std::vector<GroupHom> induced_on_homology(const KGraphMorphism& m) {
  ValidationReport rep = morphism_check(m);
  if (!rep.ok()) fail(errc::not_well_defined, "not a k-graph morphism:\n" + rep.to_string());
  KGraph src(m.source), tgt(m.target);
  HomologyProfile hs = homology_groups(src), ht = homology_groups(tgt);
  std::vector<IntMatrix> f = chain_map_of_morphism(src, tgt, m);
  std::vector<GroupHom> out;
  int top = std::max(src.rank(), tgt.rank());
  for (int r = 0; r <= top; ++r) out.push_back(induced_hom(f[r], hs.group(r), ht.group(r)));
  return out;
}

// ---------------------------------------------------------------------------
// Mapping cones

// The cone of a chain map f : A -> B, with M_r = A_{r-1} (+) B_r and
// d(a, b) = (-d a, d b + f a).  A generators come first in each level.
struct MappingCone {
  ChainComplex complex;
  std::vector<int> a_rank;  // rank of the A_{r-1} block inside level r
};

inline MappingCone mapping_cone(const ChainComplex& a, const ChainComplex& b,
                                const std::vector<IntMatrix>& f) {
  int top = std::max(a.top, b.top);
  for (int r = 0; r <= top; ++r) {
    if (int(f.size()) <= r) fail(errc::not_chain_map, "chain map must cover levels 0..top");
    if (f[r].rows() != b.rank(r) || f[r].cols() != a.rank(r))
      fail(errc::not_chain_map, "chain map has wrong shape at level " + std::to_string(r));
  }
  for (int r = 1; r <= top; ++r)
    if (b.boundary_dense(r) * f[r] != f[r - 1] * a.boundary_dense(r))
      fail(errc::not_chain_map, "map does not commute with boundaries at level " +
                                    std::to_string(r));

  MappingCone cone;
  cone.complex.top = top + 1;
  cone.complex.ranks.resize(top + 2);
  cone.a_rank.resize(top + 2);
  for (int r = 0; r <= top + 1; ++r) {
    cone.a_rank[r] = a.rank(r - 1);
    cone.complex.ranks[r] = a.rank(r - 1) + b.rank(r);
  }
  cone.complex.bnd.resize(top + 2);
  for (int r = 1; r <= top + 1; ++r) {
    SparseColMatrix m(cone.complex.ranks[r - 1], cone.complex.ranks[r]);
    IntMatrix da = a.boundary_dense(r - 1);  // A_{r-1} -> A_{r-2}
    IntMatrix db = b.boundary_dense(r);      // B_r -> B_{r-1}
    int arows = a.rank(r - 2);
    for (int j = 0; j < a.rank(r - 1); ++j) {
      for (int i = 0; i < da.rows(); ++i)
        if (da.at(i, j) != 0) m.add(i, j, -da.at(i, j));
      const IntMatrix& fr = f[r - 1];
      for (int i = 0; i < fr.rows(); ++i)
        if (fr.at(i, j) != 0) m.add(arows + i, j, fr.at(i, j));
    }
    for (int j = 0; j < b.rank(r); ++j)
      for (int i = 0; i < db.rows(); ++i)
        if (db.at(i, j) != 0) m.add(arows + i, a.rank(r - 1) + j, db.at(i, j));
    cone.complex.bnd[r] = std::move(m);
  }
  for (int r = 1; r <= top; ++r)
    if (!cone.complex.bnd[r].composes_to_zero_with(cone.complex.bnd[r + 1]))
      fail(errc::boundary_square_nonzero, "mapping cone boundary does not square to zero");
  return cone;
}

// ---------------------------------------------------------------------------
// Crossed products, their cones, and the six-term-style exact sequence

namespace detail {

// Split the cubes of a crossed product into (lambda, 0) and (mu, 1) parts:
// a cube either consists of base edges only, or carries exactly one
// top-colour loop as its last edge.
struct CpCubeSplit {
  // per level r of cp: (is_loop_cube, index of the base cube)
  std::vector<std::vector<std::pair<bool, int>>> kind;
};

inline CpCubeSplit split_cp_cubes(const KGraph& base, const KGraph& cp) {
  CpCubeSplit out;
  int loop_colour = cp.rank();
  out.kind.resize(cp.rank() + 1);
  for (int r = 0; r <= cp.rank(); ++r) {
    for (const Cube& c : cp.cubes(r)) {
      if (r == 0) {
        out.kind[r].push_back(
            {false, base.cube_index(base.vertex_cube(cp.skeleton().vertices[c.vertex]))});
        continue;
      }
      bool has_loop = cp.edge(c.edges.back()).colour == loop_colour;
      Cube proj;
      for (int e : c.edges) {
        if (cp.edge(e).colour == loop_colour) continue;
        proj.edges.push_back(base.edge_index(cp.edge(e).id));
      }
      if (proj.edges.empty())
        proj = base.vertex_cube(cp.edge(c.edges.back()).range);  // lone loop cube
      out.kind[r].push_back({has_loop, base.cube_index(proj)});
    }
  }
  return out;
}

}  // namespace detail

struct PvNode {
  std::string at;
  bool exact = false;
};

struct PvResult {
  HomologyProfile base_h, cp_h;
  std::vector<PvNode> nodes;
  bool all_exact = true;
  Skeleton cp_skeleton;
};

// Builds the long exact sequence connecting H_*(base) and H_*(base x_alpha Z)
// through 1 - alpha_* and checks exactness at every node.
inline PvResult pv_verify(const Skeleton& base_sk, const GraphAutomorphism& alpha) {
  KGraph base(base_sk);
  Skeleton cp_sk = crossed_product(base_sk, alpha);
  KGraph cp(cp_sk);
  const int k = base.rank();

  PvResult res;
  res.cp_skeleton = cp_sk;
  res.base_h = homology_groups(base);
  res.cp_h = homology_groups(cp);

  std::vector<IntMatrix> alpha_chain = chain_map_of_morphism(base, base, alpha.fwd);
  detail::CpCubeSplit split = detail::split_cp_cubes(base, cp);

  // iota_r : C_r(base) -> C_r(cp), lambda -> (lambda, 0)
  // pi_r   : C_r(cp) -> C_{r-1}(base), (mu, 1) -> (-1)^{r-1} mu, (lambda, 0) -> 0
  std::vector<GroupHom> one_minus_alpha, iota, pi;
  for (int r = 0; r <= k; ++r) {
    IntMatrix om = IntMatrix::identity(base.cube_count(r)) - alpha_chain[r];
    one_minus_alpha.push_back(induced_hom(om, res.base_h.group(r), res.base_h.group(r)));
    IntMatrix inc(cp.cube_count(r), base.cube_count(r));
    for (int j = 0; j < base.cube_count(r); ++j) {
      const Cube& c = base.cubes(r)[j];
      Cube lifted = c;
      if (r >= 1) {
        lifted.edges.clear();
        for (int e : c.edges) lifted.edges.push_back(cp.edge_index(base.edge(e).id));
      } else {
        lifted = cp.vertex_cube(base.skeleton().vertices[c.vertex]);
      }
      inc.at(cp.cube_index(lifted), j) = 1;
    }
    iota.push_back(induced_hom(inc, res.base_h.group(r), res.cp_h.group(r)));
  }
  for (int r = 1; r <= k + 1; ++r) {
    IntMatrix proj(base.cube_count(r - 1), cp.cube_count(r));
    for (int j = 0; j < cp.cube_count(r); ++j) {
      auto [is_loop, base_idx] = split.kind[r][j];
      if (is_loop) proj.at(base_idx, j) = (r - 1) % 2 == 0 ? 1 : -1;
    }
    pi.push_back(induced_hom(proj, res.cp_h.group(r), res.base_h.group(r - 1)));
  }

  PresentedGroup trivial;
  auto check = [&](const std::string& where, const GroupHom& in, const GroupHom& out) {
    bool ok = is_exact_at(in, out);
    res.nodes.push_back({where, ok});
    if (!ok) res.all_exact = false;
  };

  check("H_" + std::to_string(k + 1) + "(cp)", zero_hom(trivial, res.cp_h.group(k + 1)),
        pi[k]);
  for (int r = k; r >= 0; --r) {
    check("H_" + std::to_string(r) + "(base) before 1-alpha", pi[r], one_minus_alpha[r]);
    check("H_" + std::to_string(r) + "(base) after 1-alpha", one_minus_alpha[r], iota[r]);
    if (r >= 1)
      check("H_" + std::to_string(r) + "(cp)", iota[r], pi[r - 1]);
    else
      check("H_0(cp)", iota[0], zero_hom(res.cp_h.group(0), trivial));
  }
  return res;
}

// Verifies that the explicit signed identification of crossed-product chains
// with the cone of alpha_* - 1 is an isomorphism of complexes, and that the
// cone built from alpha^{-1}_* - 1 has the same homology.
struct ConeCheck {
  bool chain_iso = false;
  bool homology_matches = false;       // cone(alpha - 1) vs crossed product
  bool inverse_cone_matches = false;   // cone(alpha^{-1} - 1) vs crossed product
};

inline ConeCheck crossed_product_cone_check(const Skeleton& base_sk,
                                            const GraphAutomorphism& alpha) {
  KGraph base(base_sk);
  KGraph cp(crossed_product(base_sk, alpha));
  const ChainComplex& bc = base.chain_complex();
  const int k = base.rank();

  std::vector<IntMatrix> alpha_chain = chain_map_of_morphism(base, base, alpha.fwd);
  std::vector<IntMatrix> alpha_inv_chain =
      chain_map_of_morphism(base, base, inverse(alpha).fwd);
  std::vector<IntMatrix> f, finv;
  for (int r = 0; r <= k; ++r) {
    f.push_back(alpha_chain[r] - IntMatrix::identity(base.cube_count(r)));
    finv.push_back(alpha_inv_chain[r] - IntMatrix::identity(base.cube_count(r)));
  }
  MappingCone cone = mapping_cone(bc, bc, f);
  MappingCone cone_inv = mapping_cone(bc, bc, finv);

  // psi(lambda, 0) = (0, lambda), psi(mu, 1) = ((-1)^{r-1} mu, 0)
  detail::CpCubeSplit split = detail::split_cp_cubes(base, cp);
  ConeCheck out;
  out.chain_iso = true;
  std::vector<IntMatrix> psi;
  for (int r = 0; r <= k + 1; ++r) {
    IntMatrix p(cone.complex.rank(r), cp.cube_count(r));
    for (int j = 0; j < cp.cube_count(r); ++j) {
      auto [is_loop, base_idx] = split.kind[r][j];
      if (is_loop)
        p.at(base_idx, j) = (r - 1) % 2 == 0 ? 1 : -1;
      else
        p.at(cone.a_rank[r] + base_idx, j) = 1;
    }
    psi.push_back(std::move(p));
  }
  const ChainComplex& cpx = cp.chain_complex();
  for (int r = 1; r <= k + 1; ++r)
    if (cone.complex.boundary_dense(r) * psi[r] != psi[r - 1] * cpx.boundary_dense(r))
      out.chain_iso = false;

  HomologyProfile cp_h = homology_of_complex(cpx);
  out.homology_matches = homology_of_complex(cone.complex).classes() == cp_h.classes();
  out.inverse_cone_matches = homology_of_complex(cone_inv.complex).classes() == cp_h.classes();
  return out;
}

// ---------------------------------------------------------------------------
// Kunneth

struct KunnethDegree {
  int r = 0;
  FgAbelianGroup tensor_part, tor_part, expected, actual;
  bool match = false;
};

struct KunnethResult {
  std::vector<KunnethDegree> degrees;
  bool pass = true;
  bool tor_vanishes = true;
  HomologyProfile ha, hb, hprod;
};

// Compares H_*(A x B) with the graded groups predicted from H_*(A), H_*(B):
// the tensor terms in degree r plus the Tor terms in degree r - 1.  The
// sequence splits for finitely generated groups, so equality of isomorphism
// classes decides the verdict.
inline KunnethResult kunneth_verify(const Skeleton& a_sk, const Skeleton& b_sk) {
  KGraph a(a_sk), b(b_sk);
  KunnethResult res;
  res.ha = homology_groups(a);
  res.hb = homology_groups(b);
  res.hprod = homology_groups(KGraph(cartesian_product(a_sk, b_sk)));
  int top = a.rank() + b.rank();
  for (int r = 0; r <= top; ++r) {
    KunnethDegree deg;
    deg.r = r;
    for (int r1 = 0; r1 <= r; ++r1)
      deg.tensor_part = direct_sum(
          deg.tensor_part,
          binary_functor(BinaryFunctor::tensor, res.ha.at(r1), res.hb.at(r - r1)));
    for (int r1 = 0; r1 + 1 <= r; ++r1)
      deg.tor_part = direct_sum(
          deg.tor_part,
          binary_functor(BinaryFunctor::tor, res.ha.at(r1), res.hb.at(r - 1 - r1)));
    deg.expected = direct_sum(deg.tensor_part, deg.tor_part);
    deg.actual = res.hprod.at(r);
    deg.match = deg.expected == deg.actual;
    if (!deg.match) res.pass = false;
    if (!deg.tor_part.is_trivial()) res.tor_vanishes = false;
    res.degrees.push_back(std::move(deg));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Trails

// A signed edge walk: steps (edge, m) with m in {1, -1}, each step's source
// matching the next step's range under the orientation convention
// s(g, 1) = s(g), s(g, -1) = r(g).
struct Trail {
  std::vector<std::pair<int, int>> steps;  // (edge index, orientation)
};

inline Chain trail_chain(const KGraph& g, const Trail& t) {
  Chain c{1, std::vector<Int>(g.cube_count(1))};
  for (const auto& [e, m] : t.steps) c.coeffs[g.cube_index(Cube{-1, {e}})] += m;
  return c;
}

inline int oriented_source(const KGraph& g, int edge, int m) {
  const Edge& e = g.edge(edge);
  return g.vertex_index(m == 1 ? e.source : e.range);
}

inline int oriented_range(const KGraph& g, int edge, int m) {
  return oriented_source(g, edge, -m);
}

inline bool trail_is_closed(const KGraph& g, const Trail& t) {
  if (t.steps.empty()) return true;
  for (size_t i = 0; i + 1 < t.steps.size(); ++i)
    if (oriented_source(g, t.steps[i].first, t.steps[i].second) !=
        oriented_range(g, t.steps[i + 1].first, t.steps[i + 1].second))
      return false;
  return oriented_source(g, t.steps.back().first, t.steps.back().second) ==
         oriented_range(g, t.steps.front().first, t.steps.front().second);
}

inline bool trail_is_simple(const KGraph& g, const Trail& t) {
  std::set<int> seen;
  for (const auto& [e, m] : t.steps)
    if (!seen.insert(oriented_source(g, e, m)).second) return false;
  return true;
}

// Splits a 1-cycle into simple closed trails by repeatedly walking from the
// lowest-index nonzero coefficient along sign-opposing continuations until a
// vertex repeats; the extracted loop is subtracted and the 1-norm strictly
// decreases each round.
inline std::vector<std::pair<Int, Trail>> trail_decompose(const KGraph& g, const Chain& a) {
  if (a.level != 1 || int(a.coeffs.size()) != g.cube_count(1))
    fail(errc::bad_argument, "trail_decompose expects a level-1 chain");
  const ChainComplex& cx = g.chain_complex();
  {
    std::vector<Int> b(g.cube_count(0));
    for (int j = 0; j < g.cube_count(1); ++j)
      if (a.coeffs[j] != 0)
        for (const auto& [i, v] : cx.bnd[1].col[j]) b[i] += v * a.coeffs[j];
    for (const Int& v : b)
      if (v != 0) fail(errc::not_a_cycle, "chain is not in the kernel of d_1");
  }

  // edge index of each level-1 cube (cube order need not be edge order)
  std::vector<int> cube_edge(g.cube_count(1));
  for (int j = 0; j < g.cube_count(1); ++j) cube_edge[j] = g.cubes(1)[j].edges[0];

  std::vector<Int> rem = a.coeffs;
  std::vector<std::pair<Int, Trail>> out;
  while (true) {
    int first = -1;
    for (int j = 0; j < int(rem.size()); ++j)
      if (rem[j] != 0) {
        first = j;
        break;
      }
    if (first < 0) break;

    int p1 = rem[first] > 0 ? 1 : -1;
    Trail loop;
    int e0 = cube_edge[first];
    if (g.edge(e0).range == g.edge(e0).source) {
      loop.steps = {{first, p1}};
    } else {
      std::vector<std::pair<int, int>> walk{{first, p1}};
      std::vector<int> visited{oriented_range(g, e0, p1), oriented_source(g, e0, p1)};
      while (true) {
        int vj = visited.back();
        int pick = -1, pick_sign = 0;
        for (int j = 0; j < int(rem.size()); ++j) {
          if (rem[j] == 0) continue;
          const Edge& e = g.edge(cube_edge[j]);
          if (e.range == e.source) continue;
          int sgn = rem[j] > 0 ? 1 : -1;
          // the walk enters vj with a positive boundary contribution, so the
          // continuation must contribute negatively there
          bool opposes = (sgn > 0 && g.vertex_index(e.range) == vj) ||
                         (sgn < 0 && g.vertex_index(e.source) == vj);
          if (opposes) {
            pick = j;
            pick_sign = sgn;
            break;
          }
        }
        if (pick < 0)
          fail(errc::not_a_cycle, "walk has no continuation; chain was not a cycle");
        walk.push_back({pick, pick_sign});
        int vnext = oriented_source(g, cube_edge[pick], pick_sign);
        auto it = std::find(visited.begin(), visited.end(), vnext);
        if (it != visited.end()) {
          size_t q = size_t(it - visited.begin());
          loop.steps.assign(walk.begin() + q, walk.end());
          break;
        }
        visited.push_back(vnext);
      }
    }
    for (const auto& [j, m] : loop.steps) rem[j] -= m;
    // convert the step list from cube indices to edge indices
    for (auto& [j, m] : loop.steps) j = cube_edge[j];
    if (!out.empty() && out.back().second.steps == loop.steps)
      out.back().first += 1;
    else
      out.push_back({Int(1), std::move(loop)});
  }
  return out;
}

}  // namespace khom
