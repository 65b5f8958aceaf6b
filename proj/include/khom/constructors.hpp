#pragma once

#include "khom/kgraph.hpp"
#include "khom/smith.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace khom {

namespace detail {

// Deterministic collision-free naming for constructed skeletons.
class Namer {
 public:
  std::string claim(std::string base) {
    if (base.empty()) base = "x";
    std::string name = base;
    int suffix = 2;
    while (!taken_.insert(name).second) name = base + "_" + std::to_string(suffix++);
    return name;
  }

 private:
  std::set<std::string> taken_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Finite groups

// A finite group as an element list with a Cayley table.  Element 0 is the
// identity; elements are named g0..g{n-1}.
class GroupSpec {
 public:
  static GroupSpec cyclic(int m) {
    if (m < 1) fail(errc::bad_argument, "cyclic group order must be >= 1");
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
    return GroupSpec(std::move(t));
  }

  static GroupSpec direct_product(const GroupSpec& x, const GroupSpec& y) {
    int n = x.order() * y.order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int ax = a / y.order(), ay = a % y.order();
        int bx = b / y.order(), by = b % y.order();
        t[a][b] = x.op(ax, bx) * y.order() + y.op(ay, by);
      }
    return GroupSpec(std::move(t));
  }

  explicit GroupSpec(std::vector<std::vector<int>> table) : mult_(std::move(table)) {
    const int n = int(mult_.size());
    if (n == 0) fail(errc::bad_argument, "group must be nonempty");
    for (const auto& row : mult_)
      if (int(row.size()) != n) fail(errc::bad_argument, "Cayley table must be square");
    for (int a = 0; a < n; ++a)
      if (mult_[0][a] != a || mult_[a][0] != a)
        fail(errc::bad_argument, "element 0 must be the identity");
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (mult_[a][b] == 0) inv_[a] = b;
    for (int a = 0; a < n; ++a)
      if (inv_[a] < 0 || mult_[inv_[a]][a] != 0)
        fail(errc::bad_argument, "element g" + std::to_string(a) + " has no inverse");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]])
            fail(errc::bad_argument, "Cayley table is not associative");
  }

  int order() const { return int(mult_.size()); }
  int op(int a, int b) const { return mult_[a][b]; }
  int inverse(int a) const { return inv_[a]; }
  static int identity() { return 0; }
  std::string element_name(int a) const { return "g" + std::to_string(a); }

 private:
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
};

// A group-valued functor on edges: functorial when for every square
// c(f1) c(g1) = c(g2) c(f2).
struct EdgeLabelling {
  std::map<std::string, int> label;  // edge id -> group element, missing = identity

  int of(const std::string& edge_id) const {
    auto it = label.find(edge_id);
    return it == label.end() ? GroupSpec::identity() : it->second;
  }
};

inline void check_functorial(const Skeleton& sk, const GroupSpec& g, const EdgeLabelling& c) {
  for (const SquareRecord& q : sk.squares)
    if (g.op(c.of(q.f1), c.of(q.g1)) != g.op(c.of(q.g2), c.of(q.f2)))
      fail(errc::not_functorial, "labelling violates square " + q.f1 + " " + q.g1 + " = " +
                                     q.g2 + " " + q.f2);
}

// ---------------------------------------------------------------------------
// Morphisms

// A degree-preserving functor between k-graphs of equal rank, given on
// generators: a vertex map and a colour-preserving edge map.
struct KGraphMorphism {
  Skeleton source, target;
  std::map<std::string, std::string> vmap;
  std::map<std::string, std::string> emap;
};

// Verifies that a KGraphMorphism really is one: total, colour- and
// endpoint-preserving, and carrying each square onto a square.
inline ValidationReport morphism_check(const KGraphMorphism& m) {
  ValidationReport rep;
  auto add = [&](const std::string& kind, const std::string& msg) {
    rep.violations.push_back({kind, msg});
  };

  std::map<std::string, int> tv, te;
  for (size_t i = 0; i < m.target.vertices.size(); ++i) tv[m.target.vertices[i]] = int(i);
  for (size_t i = 0; i < m.target.edges.size(); ++i) te[m.target.edges[i].id] = int(i);

  for (const std::string& v : m.source.vertices) {
    auto it = m.vmap.find(v);
    if (it == m.vmap.end())
      add("not-total", "vertex '" + v + "' has no image");
    else if (!tv.count(it->second))
      add("unknown-reference", "vertex image '" + it->second + "' not in target");
  }
  std::map<std::string, const Edge*> se;
  for (const Edge& e : m.source.edges) se[e.id] = &e;
  for (const Edge& e : m.source.edges) {
    auto it = m.emap.find(e.id);
    if (it == m.emap.end()) {
      add("not-total", "edge '" + e.id + "' has no image");
      continue;
    }
    if (!te.count(it->second)) {
      add("unknown-reference", "edge image '" + it->second + "' not in target");
      continue;
    }
    const Edge& img = m.target.edges[te[it->second]];
    if (img.colour != e.colour) add("colour", "edge '" + e.id + "' changes colour");
    if (!m.vmap.count(e.range) || !m.vmap.count(e.source)) continue;
    if (img.range != m.vmap.at(e.range)) add("endpoints", "edge '" + e.id + "': range mismatch");
    if (img.source != m.vmap.at(e.source))
      add("endpoints", "edge '" + e.id + "': source mismatch");
  }
  if (!rep.ok()) return rep;

  std::map<std::pair<std::string, std::string>, const SquareRecord*> t_ij;
  for (const SquareRecord& q : m.target.squares) t_ij[{q.f1, q.g1}] = &q;
  for (const SquareRecord& q : m.source.squares) {
    auto ij = t_ij.find({m.emap.at(q.f1), m.emap.at(q.g1)});
    if (ij == t_ij.end() || ij->second->g2 != m.emap.at(q.g2) ||
        ij->second->f2 != m.emap.at(q.f2))
      add("squares", "square " + q.f1 + " " + q.g1 + " = " + q.g2 + " " + q.f2 +
                         " is not carried to a square");
  }
  return rep;
}

// An invertible morphism from a skeleton to itself.
struct GraphAutomorphism {
  KGraphMorphism fwd;
  std::map<std::string, std::string> vinv, einv;

  const std::string& v(const std::string& x) const { return fwd.vmap.at(x); }
  const std::string& e(const std::string& x) const { return fwd.emap.at(x); }
  const std::string& v_inverse(const std::string& x) const { return vinv.at(x); }
  const std::string& e_inverse(const std::string& x) const { return einv.at(x); }
};

inline GraphAutomorphism make_automorphism(KGraphMorphism m) {
  ValidationReport rep = morphism_check(m);
  if (!rep.ok()) fail(errc::not_automorphism, "not a morphism:\n" + rep.to_string());
  GraphAutomorphism a;
  for (const auto& [x, y] : m.vmap)
    if (!a.vinv.emplace(y, x).second)
      fail(errc::not_automorphism, "vertex map is not injective at '" + y + "'");
  for (const auto& [x, y] : m.emap)
    if (!a.einv.emplace(y, x).second)
      fail(errc::not_automorphism, "edge map is not injective at '" + y + "'");
  if (a.vinv.size() != m.source.vertices.size() || a.einv.size() != m.source.edges.size())
    fail(errc::not_automorphism, "map is not surjective");
  a.fwd = std::move(m);
  // the inverse must itself be a morphism
  KGraphMorphism inv{a.fwd.source, a.fwd.source, a.vinv, a.einv};
  ValidationReport inv_rep = morphism_check(inv);
  if (!inv_rep.ok()) fail(errc::not_automorphism, "inverse is not a morphism:\n" + inv_rep.to_string());
  return a;
}

inline GraphAutomorphism identity_automorphism(const Skeleton& sk) {
  KGraphMorphism m{sk, sk, {}, {}};
  for (const std::string& v : sk.vertices) m.vmap[v] = v;
  for (const Edge& e : sk.edges) m.emap[e.id] = e.id;
  return make_automorphism(std::move(m));
}

inline GraphAutomorphism compose(const GraphAutomorphism& a, const GraphAutomorphism& b) {
  // a after b
  KGraphMorphism m{b.fwd.source, a.fwd.target, {}, {}};
  for (const auto& [x, y] : b.fwd.vmap) m.vmap[x] = a.fwd.vmap.at(y);
  for (const auto& [x, y] : b.fwd.emap) m.emap[x] = a.fwd.emap.at(y);
  return make_automorphism(std::move(m));
}

inline GraphAutomorphism inverse(const GraphAutomorphism& a) {
  return make_automorphism(KGraphMorphism{a.fwd.source, a.fwd.source, a.vinv, a.einv});
}

// An action of a finite group by automorphisms, one per group element.
// Freeness (no nonidentity element fixes a vertex or an edge) is verified by
// verify_action.
struct FreeAction {
  GroupSpec group;
  std::vector<GraphAutomorphism> act;  // indexed by group element
};

inline void verify_action(const FreeAction& a) {
  const int n = a.group.order();
  if (int(a.act.size()) != n) fail(errc::bad_argument, "action must list every group element");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      GraphAutomorphism gh = compose(a.act[g], a.act[h]);
      const GraphAutomorphism& expect = a.act[a.group.op(g, h)];
      if (gh.fwd.vmap != expect.fwd.vmap || gh.fwd.emap != expect.fwd.emap)
        fail(errc::bad_argument, "action is not a homomorphism at g" + std::to_string(g) +
                                     " g" + std::to_string(h));
    }
  for (int g = 1; g < n; ++g) {
    for (const auto& [x, y] : a.act[g].fwd.vmap)
      if (x == y)
        fail(errc::not_free, "g" + std::to_string(g) + " fixes vertex '" + x + "'");
    for (const auto& [x, y] : a.act[g].fwd.emap)
      if (x == y) fail(errc::not_free, "g" + std::to_string(g) + " fixes edge '" + x + "'");
  }
}

// ---------------------------------------------------------------------------
// Constructions

// (k1 + k2)-graph on the product of the vertex sets.  Squares are the lifted
// squares of both factors plus the forced mixed squares
// (e, r(f)) (s(e), f) = (r(e), f) (e, s(f)).
inline Skeleton cartesian_product(const Skeleton& a, const Skeleton& b) {
  Skeleton out;
  out.k = a.k + b.k;
  out.name = a.name + "x" + b.name;
  detail::Namer names;

  std::map<std::pair<std::string, std::string>, std::string> vx;
  for (const auto& u : a.vertices)
    for (const auto& v : b.vertices) {
      std::string nm = names.claim(u + "_" + v);
      vx[{u, v}] = nm;
      out.vertices.push_back(nm);
    }

  std::map<std::pair<std::string, std::string>, std::string> ea, eb;
  for (const Edge& e : a.edges)
    for (const auto& v : b.vertices) {
      std::string nm = names.claim(e.id + "_" + v);
      ea[{e.id, v}] = nm;
      out.edges.push_back({nm, e.colour, vx[{e.range, v}], vx[{e.source, v}]});
    }
  for (const auto& u : a.vertices)
    for (const Edge& f : b.edges) {
      std::string nm = names.claim(u + "_" + f.id);
      eb[{u, f.id}] = nm;
      out.edges.push_back({nm, a.k + f.colour, vx[{u, f.range}], vx[{u, f.source}]});
    }

  for (const SquareRecord& q : a.squares)
    for (const auto& v : b.vertices)
      out.squares.push_back({ea[{q.f1, v}], ea[{q.g1, v}], ea[{q.g2, v}], ea[{q.f2, v}]});
  for (const auto& u : a.vertices)
    for (const SquareRecord& q : b.squares)
      out.squares.push_back({eb[{u, q.f1}], eb[{u, q.g1}], eb[{u, q.g2}], eb[{u, q.f2}]});
  std::map<std::string, const Edge*> bedge;
  for (const Edge& f : b.edges) bedge[f.id] = &f;
  for (const Edge& e : a.edges)
    for (const Edge& f : b.edges)
      out.squares.push_back({ea[{e.id, f.range}], eb[{e.source, f.id}], eb[{e.range, f.id}],
                             ea[{e.id, f.source}]});
  return out;
}

inline Skeleton disjoint_union(const Skeleton& a, const Skeleton& b) {
  if (a.k != b.k) fail(errc::bad_argument, "disjoint union requires equal rank");
  Skeleton out;
  out.k = a.k;
  out.name = a.name + "+" + b.name;
  for (const auto& v : a.vertices) out.vertices.push_back("A_" + v);
  for (const auto& v : b.vertices) out.vertices.push_back("B_" + v);
  for (const Edge& e : a.edges)
    out.edges.push_back({"A_" + e.id, e.colour, "A_" + e.range, "A_" + e.source});
  for (const Edge& e : b.edges)
    out.edges.push_back({"B_" + e.id, e.colour, "B_" + e.range, "B_" + e.source});
  for (const SquareRecord& q : a.squares)
    out.squares.push_back({"A_" + q.f1, "A_" + q.g1, "A_" + q.g2, "A_" + q.f2});
  for (const SquareRecord& q : b.squares)
    out.squares.push_back({"B_" + q.f1, "B_" + q.g1, "B_" + q.g2, "B_" + q.f2});
  return out;
}

// Same identifiers, ranges and sources swapped, square paths reversed.
inline Skeleton opposite(const Skeleton& a) {
  Skeleton out;
  out.k = a.k;
  out.name = a.name.empty() ? "" : a.name + "_op";
  out.vertices = a.vertices;
  for (const Edge& e : a.edges) out.edges.push_back({e.id, e.colour, e.source, e.range});
  for (const SquareRecord& q : a.squares) out.squares.push_back({q.f2, q.g2, q.g1, q.f1});
  return out;
}

// Skew product by a functor c into a finite group: vertices and edges are
// copied across the group, with s(e, g) = (s(e), g c(e)).
inline Skeleton skew_product(const Skeleton& a, const GroupSpec& grp, const EdgeLabelling& c) {
  check_functorial(a, grp, c);
  Skeleton out;
  out.k = a.k;
  out.name = a.name.empty() ? "skew" : a.name + "_skew";
  detail::Namer names;
  std::map<std::pair<std::string, int>, std::string> vx, ex;
  for (const auto& v : a.vertices)
    for (int g = 0; g < grp.order(); ++g) {
      std::string nm = names.claim(v + "_" + grp.element_name(g));
      vx[{v, g}] = nm;
      out.vertices.push_back(nm);
    }
  for (const Edge& e : a.edges)
    for (int g = 0; g < grp.order(); ++g) {
      std::string nm = names.claim(e.id + "_" + grp.element_name(g));
      ex[{e.id, g}] = nm;
      out.edges.push_back({nm, e.colour, vx[{e.range, g}], vx[{e.source, grp.op(g, c.of(e.id))}]});
    }
  for (const SquareRecord& q : a.squares)
    for (int g = 0; g < grp.order(); ++g)
      out.squares.push_back({ex[{q.f1, g}], ex[{q.g1, grp.op(g, c.of(q.f1))}],
                             ex[{q.g2, g}], ex[{q.f2, grp.op(g, c.of(q.g2))}]});
  return out;
}

// The left-translation action of the group on its skew product; the quotient
// by this action recovers the base skeleton up to isomorphism.
inline FreeAction skew_translation_action(const Skeleton& a, const GroupSpec& grp,
                                          const EdgeLabelling& c) {
  Skeleton sp = skew_product(a, grp, c);
  FreeAction act{grp, {}};
  for (int h = 0; h < grp.order(); ++h) {
    KGraphMorphism m{sp, sp, {}, {}};
    for (const auto& v : a.vertices)
      for (int g = 0; g < grp.order(); ++g)
        m.vmap[v + "_" + grp.element_name(g)] = v + "_" + grp.element_name(grp.op(h, g));
    for (const Edge& e : a.edges)
      for (int g = 0; g < grp.order(); ++g)
        m.emap[e.id + "_" + grp.element_name(g)] = e.id + "_" + grp.element_name(grp.op(h, g));
    act.act.push_back(make_automorphism(std::move(m)));
  }
  return act;
}

// (k+1)-graph with one new top-colour loop per vertex and the squares
// f l_{s(f)} = l_{r(f)} alpha(f).
inline Skeleton crossed_product(const Skeleton& a, const GraphAutomorphism& alpha) {
  if (alpha.fwd.source.vertices != a.vertices || alpha.fwd.source.k != a.k)
    fail(errc::not_automorphism, "automorphism does not act on this skeleton");
  Skeleton out;
  out.k = a.k + 1;
  out.name = a.name.empty() ? "crossed" : a.name + "_cp";
  out.vertices = a.vertices;
  out.edges = a.edges;
  detail::Namer names;
  for (const Edge& e : a.edges) names.claim(e.id);
  std::map<std::string, std::string> loop;
  for (const auto& v : a.vertices) {
    std::string nm = names.claim("l_" + v);
    loop[v] = nm;
    out.edges.push_back({nm, out.k, v, v});
  }
  out.squares = a.squares;
  for (const Edge& e : a.edges)
    out.squares.push_back({e.id, loop[e.source], loop[e.range], alpha.e(e.id)});
  return out;
}

// Orbit skeleton of a verified free action, together with the projection.
inline std::pair<Skeleton, KGraphMorphism> quotient_by_action(const Skeleton& a,
                                                              const FreeAction& action) {
  verify_action(action);
  auto v_orbit = [&](const std::string& v) {
    std::string rep = v;
    for (const auto& g : action.act) rep = std::min(rep, g.fwd.vmap.at(v));
    return rep;
  };
  auto e_orbit = [&](const std::string& e) {
    std::string rep = e;
    for (const auto& g : action.act) rep = std::min(rep, g.fwd.emap.at(e));
    return rep;
  };

  Skeleton out;
  out.k = a.k;
  out.name = a.name.empty() ? "quotient" : a.name + "_mod";
  std::set<std::string> vseen, eseen;
  KGraphMorphism proj{a, {}, {}, {}};
  for (const auto& v : a.vertices) {
    std::string rep = v_orbit(v);
    proj.vmap[v] = rep;
    if (vseen.insert(rep).second) out.vertices.push_back(rep);
  }
  std::map<std::string, const Edge*> by_id;
  for (const Edge& e : a.edges) by_id[e.id] = &e;
  for (const Edge& e : a.edges) {
    std::string rep = e_orbit(e.id);
    proj.emap[e.id] = rep;
    if (eseen.insert(rep).second) {
      const Edge& r = *by_id[rep];
      out.edges.push_back({rep, r.colour, proj.vmap[r.range], proj.vmap[r.source]});
    }
  }
  std::set<std::array<std::string, 4>> sq;
  for (const SquareRecord& q : a.squares) {
    std::array<std::string, 4> img{proj.emap[q.f1], proj.emap[q.g1], proj.emap[q.g2],
                                   proj.emap[q.f2]};
    if (sq.insert(img).second) out.squares.push_back({img[0], img[1], img[2], img[3]});
  }
  proj.target = out;
  return {out, proj};
}

// Pullback along a map of colour indices: colour i of the result is a copy
// of colour pi[i-1] of the input.  Collapsing a colour to 0 would create
// degree-zero edges and is rejected.
inline Skeleton colour_pullback(const Skeleton& a, const std::vector<int>& pi) {
  Skeleton out;
  out.k = int(pi.size());
  out.name = a.name.empty() ? "pullback" : a.name + "_pb";
  out.vertices = a.vertices;
  for (int i = 1; i <= out.k; ++i) {
    int c = pi[i - 1];
    if (c == 0)
      fail(errc::bad_argument,
           "colour " + std::to_string(i) + " maps to 0, which would create degree-0 edges");
    if (c < 0 || c > a.k)
      fail(errc::bad_argument, "colour " + std::to_string(i) + " maps outside 1..k");
  }
  detail::Namer names;
  std::map<std::string, int> colour_of;
  for (const Edge& e : a.edges) colour_of[e.id] = e.colour;
  std::map<std::pair<std::string, int>, std::string> copy;
  for (int i = 1; i <= out.k; ++i)
    for (const Edge& e : a.edges) {
      if (e.colour != pi[i - 1]) continue;
      std::string nm = names.claim(e.id + "_c" + std::to_string(i));
      copy[{e.id, i}] = nm;
      out.edges.push_back({nm, i, e.range, e.source});
    }
  for (int i = 1; i <= out.k; ++i)
    for (int j = i + 1; j <= out.k; ++j) {
      int ci = pi[i - 1], cj = pi[j - 1];
      if (ci < cj) {
        for (const SquareRecord& q : a.squares) {
          if (colour_of[q.f1] != ci || colour_of[q.g1] != cj) continue;
          out.squares.push_back({copy[{q.f1, i}], copy[{q.g1, j}], copy[{q.g2, j}],
                                 copy[{q.f2, i}]});
        }
      } else if (ci > cj) {
        for (const SquareRecord& q : a.squares) {
          if (colour_of[q.f1] != cj || colour_of[q.g1] != ci) continue;
          out.squares.push_back({copy[{q.g2, i}], copy[{q.f2, j}], copy[{q.f1, j}],
                                 copy[{q.g1, i}]});
        }
      } else {
        // both new colours copy the same old colour: squares come from the
        // two factorisations (x, e_i)(y, e_j) = (x, e_j)(y, e_i) of paths xy
        for (const Edge& x : a.edges) {
          if (x.colour != ci) continue;
          for (const Edge& y : a.edges) {
            if (y.colour != ci || x.source != y.range) continue;
            out.squares.push_back({copy[{x.id, i}], copy[{y.id, j}], copy[{x.id, j}],
                                   copy[{y.id, i}]});
          }
        }
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Standard graphs

// T_k: one vertex, one loop per colour, all loops commuting.
inline Skeleton t_k(int k) {
  if (k < 0) fail(errc::bad_argument, "t_k requires k >= 0");
  Skeleton sk;
  sk.k = k;
  sk.name = "t_" + std::to_string(k);
  sk.vertices = {"v"};
  for (int i = 1; i <= k; ++i) sk.edges.push_back({"e" + std::to_string(i), i, "v", "v"});
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      std::string ei = "e" + std::to_string(i), ej = "e" + std::to_string(j);
      sk.squares.push_back({ei, ej, ej, ei});
    }
  return sk;
}

// B_n: the bouquet of n loops on one vertex, as a 1-graph.
inline Skeleton b_n(int n) {
  if (n < 1) fail(errc::bad_argument, "b_n requires n >= 1");
  Skeleton sk;
  sk.k = 1;
  sk.name = "b_" + std::to_string(n);
  sk.vertices = {"v"};
  for (int i = 1; i <= n; ++i) sk.edges.push_back({"f" + std::to_string(i), 1, "v", "v"});
  return sk;
}

// Simple directed cycle of length n.
inline Skeleton cycle_graph(int n) {
  if (n < 1) fail(errc::bad_argument, "cycle requires n >= 1");
  Skeleton sk;
  sk.k = 1;
  sk.name = "cycle_" + std::to_string(n);
  for (int i = 0; i < n; ++i) sk.vertices.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    sk.edges.push_back({"e" + std::to_string(i), 1, "v" + std::to_string((i + 1) % n),
                        "v" + std::to_string(i)});
  return sk;
}

namespace detail {

inline std::string coord_name(const std::string& prefix, const std::vector<int>& p) {
  std::string s = prefix;
  for (int x : p) s += "_" + std::to_string(x);
  return s;
}

}  // namespace detail

// The k-graph of intervals (p, q), p <= q <= m, for a finite shape m; it is
// acyclic and serves as a finite analogue of the lattice quadrant.
inline Skeleton omega_graph(int k, const std::vector<int>& m) {
  if (int(m.size()) != k) fail(errc::bad_argument, "omega: shape must have k entries");
  for (int x : m)
    if (x < 0) fail(errc::bad_argument, "omega: shape entries must be >= 0");
  Skeleton sk;
  sk.k = k;
  sk.name = "omega_" + std::to_string(k);
  std::vector<std::vector<int>> pts{{}};
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& p : pts)
      for (int x = 0; x <= m[i]; ++x) {
        auto q = p;
        q.push_back(x);
        next.push_back(q);
      }
    pts = std::move(next);
  }
  for (const auto& p : pts) sk.vertices.push_back(detail::coord_name("v", p));
  auto edge_name = [&](int colour, const std::vector<int>& p) {
    return detail::coord_name("e" + std::to_string(colour), p);
  };
  for (const auto& p : pts)
    for (int i = 0; i < k; ++i) {
      if (p[i] + 1 > m[i]) continue;
      auto q = p;
      q[i] += 1;
      // the colour-(i+1) edge with range p and source p + e_i
      sk.edges.push_back({edge_name(i + 1, p), i + 1, detail::coord_name("v", p),
                          detail::coord_name("v", q)});
    }
  for (const auto& p : pts)
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        if (p[i] + 1 > m[i] || p[j] + 1 > m[j]) continue;
        auto pi_ = p, pj = p;
        pi_[i] += 1;
        pj[j] += 1;
        sk.squares.push_back({edge_name(i + 1, p), edge_name(j + 1, pi_),
                              edge_name(j + 1, p), edge_name(i + 1, pj)});
      }
  return sk;
}

// Quotient of the integer-lattice k-graph by a finite-index subgroup of Z^k
// given by the columns of h.  Vertices are cosets enumerated through the
// Smith form of h; one edge per colour per vertex with forced squares.
inline Skeleton delta_mod(int k, const IntMatrix& h) {
  if (h.rows() != k || h.cols() != k) fail(errc::bad_argument, "delta_mod: basis must be k x k");
  auto snf = smith_normal_form(h);
  if (snf.rank < k) fail(errc::infinite_index, "delta_mod: subgroup has infinite index");

  // Z^k / hZ^k = (+) Z/d_i via y = u x; cosets are named by their canonical
  // coordinates y with 0 <= y_i < d_i.
  std::vector<Int> d(k);
  for (int i = 0; i < k; ++i) d[i] = snf.d.at(i, i);
  auto reduce = [&](std::vector<Int> y) {
    for (int i = 0; i < k; ++i) y[i] = floor_mod(y[i], d[i]);
    return y;
  };
  std::vector<std::vector<Int>> cosets{{}};
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<Int>> next;
    for (const auto& p : cosets)
      for (Int x = 0; x < d[i]; ++x) {
        auto q = p;
        q.push_back(x);
        next.push_back(q);
      }
    cosets = std::move(next);
  }
  auto name = [&](const std::string& prefix, const std::vector<Int>& y) {
    std::string s = prefix;
    for (const Int& x : y) s += "_" + x.str();
    return s;
  };
  std::vector<std::vector<Int>> shift(k);  // image of e_i in coset coordinates
  for (int i = 0; i < k; ++i) shift[i] = snf.u.column(i);

  Skeleton sk;
  sk.k = k;
  sk.name = "delta_mod_" + std::to_string(k);
  for (const auto& y : cosets) sk.vertices.push_back(name("v", y));
  auto plus = [&](const std::vector<Int>& y, int i) {
    std::vector<Int> z = y;
    for (int t = 0; t < k; ++t) z[t] += shift[i][t];
    return reduce(z);
  };
  for (const auto& y : cosets)
    for (int i = 0; i < k; ++i)
      sk.edges.push_back({name("e" + std::to_string(i + 1), y), i + 1, name("v", y),
                          name("v", plus(y, i))});
  for (const auto& y : cosets)
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        sk.squares.push_back({name("e" + std::to_string(i + 1), y),
                              name("e" + std::to_string(j + 1), plus(y, i)),
                              name("e" + std::to_string(j + 1), y),
                              name("e" + std::to_string(i + 1), plus(y, j))});
  return sk;
}

// The two-vertex 1-graph with n parallel edges f_0..f_{n-1} and the cyclic
// automorphism f_i -> f_{i+1}.
inline Skeleton parallel_edges_graph(int n) {
  Skeleton sk;
  sk.k = 1;
  sk.name = "parallel_" + std::to_string(n);
  sk.vertices = {"u", "v"};
  for (int i = 0; i < n; ++i) sk.edges.push_back({"f" + std::to_string(i), 1, "u", "v"});
  return sk;
}

inline GraphAutomorphism cyclic_edge_automorphism(const Skeleton& parallel, int n) {
  KGraphMorphism m{parallel, parallel, {}, {}};
  for (const auto& v : parallel.vertices) m.vmap[v] = v;
  for (int i = 0; i < n; ++i)
    m.emap["f" + std::to_string(i)] = "f" + std::to_string((i + 1) % n);
  return make_automorphism(std::move(m));
}

// The crossed product of the n-parallel-edge graph by the cyclic shift; its
// first homology is Z + Z/n.
inline Skeleton torsion_family(int n) {
  if (n < 1) fail(errc::bad_argument, "torsion_family requires n >= 1");
  Skeleton base = parallel_edges_graph(n);
  Skeleton out = crossed_product(base, cyclic_edge_automorphism(base, n));
  out.name = "torsion_" + std::to_string(n);
  return out;
}

// 2-graph on six vertices whose homology matches the 2-sphere.
inline Skeleton sphere_graph() {
  Skeleton sk;
  sk.k = 2;
  sk.name = "sphere";
  sk.vertices = {"u", "v", "w", "x", "y", "z"};
  sk.edges = {
      {"a", 1, "w", "u"}, {"b", 1, "w", "v"}, {"c", 1, "y", "x"}, {"d", 1, "z", "x"},
      {"e", 2, "x", "u"}, {"f", 2, "x", "v"}, {"g", 2, "y", "w"}, {"h", 2, "z", "w"},
  };
  sk.squares = {
      {"c", "e", "g", "a"},  // alpha
      {"d", "e", "h", "a"},  // beta
      {"d", "f", "h", "b"},  // gamma
      {"c", "f", "g", "b"},  // delta
  };
  return sk;
}

// 2-graph on four vertices with the homology of the 2-torus.
inline Skeleton four_square_torus_graph() {
  Skeleton sk;
  sk.k = 2;
  sk.name = "torus4";
  sk.vertices = {"u", "v", "w", "x"};
  sk.edges = {
      {"a", 1, "w", "x"}, {"b", 1, "w", "x"}, {"c", 1, "u", "v"}, {"d", 1, "u", "v"},
      {"e", 2, "v", "x"}, {"f", 2, "v", "x"}, {"g", 2, "u", "w"}, {"h", 2, "u", "w"},
  };
  sk.squares = {
      {"c", "f", "h", "b"},
      {"d", "f", "h", "a"},
      {"c", "e", "g", "b"},
      {"d", "e", "g", "a"},
  };
  return sk;
}

// 2-graph on five vertices with the homology of the projective plane.
inline Skeleton projective_plane_graph() {
  Skeleton sk;
  sk.k = 2;
  sk.name = "projective_plane";
  sk.vertices = {"u", "v", "w", "x", "y"};
  sk.edges = {
      {"a", 1, "w", "y"}, {"b", 1, "w", "x"}, {"c", 1, "u", "v"}, {"d", 1, "u", "v"},
      {"e", 2, "v", "y"}, {"f", 2, "v", "x"}, {"g", 2, "u", "w"}, {"h", 2, "u", "w"},
  };
  sk.squares = {
      {"c", "e", "g", "a"},  // alpha
      {"d", "e", "h", "a"},  // beta
      {"c", "f", "h", "b"},  // gamma
      {"d", "f", "g", "b"},  // delta
  };
  return sk;
}

// 2-graph on four vertices with the homology of the Klein bottle.
inline Skeleton klein_graph() {
  Skeleton sk = four_square_torus_graph();
  sk.name = "klein";
  sk.squares = {
      {"c", "e", "g", "b"},  // alpha
      {"d", "e", "h", "a"},  // beta
      {"c", "f", "h", "b"},  // gamma
      {"d", "f", "g", "a"},  // delta
  };
  return sk;
}

// 2-graph underlying the Heegaard-splitting example; its degree functor to
// t_2 induces isomorphisms on homology.
inline Skeleton heegaard_graph() {
  Skeleton sk;
  sk.k = 2;
  sk.name = "heegaard";
  sk.vertices = {"u", "v", "w"};
  sk.edges = {
      {"a", 1, "u", "u"}, {"b", 1, "w", "w"}, {"c", 1, "u", "v"},
      {"f", 2, "u", "u"}, {"g", 2, "v", "v"}, {"h", 2, "u", "w"},
  };
  sk.squares = {
      {"a", "h", "h", "b"},  // alpha = a h = h b
      {"c", "g", "f", "c"},  // beta  = c g = f c
      {"a", "f", "f", "a"},  // tau   = a f = f a
  };
  return sk;
}

// One-vertex 2-graph with edges a1, a2, b1, b2 and rules a_i b_j = b_i a_j;
// its second homology has rank three.
inline Skeleton commuting_pairs_graph() {
  Skeleton sk;
  sk.k = 2;
  sk.name = "commuting_pairs";
  sk.vertices = {"v"};
  sk.edges = {
      {"a1", 1, "v", "v"}, {"a2", 1, "v", "v"}, {"b1", 2, "v", "v"}, {"b2", 2, "v", "v"},
  };
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      sk.squares.push_back({"a" + std::to_string(i), "b" + std::to_string(j),
                            "b" + std::to_string(i), "a" + std::to_string(j)});
  return sk;
}

// ---------------------------------------------------------------------------
// Isomorphism search (used by oracles; desk scale only)

namespace detail {

struct IsoSearch {
  const Skeleton& a;
  const Skeleton& b;
  std::map<std::string, const Edge*> b_edges;
  std::map<std::string, std::string> vmap, emap;
  std::set<std::string> used_v, used_e;

  IsoSearch(const Skeleton& a_, const Skeleton& b_) : a(a_), b(b_) {
    for (const Edge& e : b.edges) b_edges[e.id] = &e;
  }

  bool bind_vertex(const std::string& x, const std::string& y,
                   std::vector<std::string>& undo) {
    auto it = vmap.find(x);
    if (it != vmap.end()) return it->second == y;
    if (used_v.count(y)) return false;
    vmap[x] = y;
    used_v.insert(y);
    undo.push_back(x);
    return true;
  }

  void unbind(const std::vector<std::string>& undo) {
    for (const auto& x : undo) {
      used_v.erase(vmap[x]);
      vmap.erase(x);
    }
  }

  bool squares_ok() const {
    std::map<std::pair<std::string, std::string>, const SquareRecord*> t_ij;
    for (const SquareRecord& q : b.squares) t_ij[{q.f1, q.g1}] = &q;
    for (const SquareRecord& q : a.squares) {
      auto ij = t_ij.find({emap.at(q.f1), emap.at(q.g1)});
      if (ij == t_ij.end() || ij->second->g2 != emap.at(q.g2) ||
          ij->second->f2 != emap.at(q.f2))
        return false;
    }
    return true;
  }

  bool extend(size_t edge_idx) {
    if (edge_idx == a.edges.size()) {
      // map any remaining isolated vertices
      std::vector<std::string> rest_a, rest_b;
      for (const auto& v : a.vertices)
        if (!vmap.count(v)) rest_a.push_back(v);
      for (const auto& v : b.vertices)
        if (!used_v.count(v)) rest_b.push_back(v);
      if (rest_a.size() != rest_b.size()) return false;
      for (size_t i = 0; i < rest_a.size(); ++i) vmap[rest_a[i]] = rest_b[i];
      bool ok = squares_ok();
      for (const auto& v : rest_a) {
        if (!ok) vmap.erase(v);
      }
      return ok;
    }
    const Edge& e = a.edges[edge_idx];
    for (const Edge& cand : b.edges) {
      if (cand.colour != e.colour || used_e.count(cand.id)) continue;
      std::vector<std::string> undo;
      if (bind_vertex(e.range, cand.range, undo) && bind_vertex(e.source, cand.source, undo)) {
        emap[e.id] = cand.id;
        used_e.insert(cand.id);
        if (extend(edge_idx + 1)) return true;
        used_e.erase(cand.id);
        emap.erase(e.id);
      }
      unbind(undo);
    }
    return false;
  }
};

}  // namespace detail

// Backtracking search for a k-graph isomorphism.  Intended for the oracles in
// the test suite; exponential in the worst case.
inline std::optional<KGraphMorphism> find_isomorphism(const Skeleton& a, const Skeleton& b) {
  if (a.k != b.k || a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size() ||
      a.squares.size() != b.squares.size())
    return std::nullopt;
  std::map<int, int> ca, cb;
  for (const Edge& e : a.edges) ++ca[e.colour];
  for (const Edge& e : b.edges) ++cb[e.colour];
  if (ca != cb) return std::nullopt;
  detail::IsoSearch search(a, b);
  if (!search.extend(0)) return std::nullopt;
  return KGraphMorphism{a, b, search.vmap, search.emap};
}

inline bool are_isomorphic(const Skeleton& a, const Skeleton& b) {
  return find_isomorphism(a, b).has_value();
}

}  // namespace khom
