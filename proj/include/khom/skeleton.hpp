#pragma once

#include "khom/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace khom {

struct Edge {
  std::string id;
  int colour = 1;  // 1..k
  std::string range, source;

  bool operator==(const Edge&) const = default;
};

// A commuting square f1*g1 = g2*f2 with colour(f1) = colour(f2) = i,
// colour(g1) = colour(g2) = j and i < j.  Composition is left to right with
// the range at the left: r(f1) is the range of the square.
struct SquareRecord {
  std::string f1, g1, g2, f2;

  bool operator==(const SquareRecord&) const = default;
};

// Finite presentation of a k-graph: a k-coloured directed graph plus a
// complete collection of commuting squares.
struct Skeleton {
  int k = 0;
  std::string name;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<SquareRecord> squares;
};

struct Violation {
  std::string kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::string to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.kind << ": " << v.message << "\n";
    return os.str();
  }
};

namespace detail {

struct SkeletonIndex {
  std::map<std::string, int> vertex_of;
  std::map<std::string, int> edge_of;
  // bicoloured composable pair -> square index, keyed by edge index pairs
  std::map<std::pair<int, int>, int> square_by_ij;  // (f1, g1)
  std::map<std::pair<int, int>, int> square_by_ji;  // (g2, f2)
};

}  // namespace detail

// Checks the k-graph axioms on a skeleton.  An empty report means the
// skeleton presents a k-graph; violations are returned as data.
inline ValidationReport validate(const Skeleton& sk) {
  ValidationReport rep;
  auto add = [&](const std::string& kind, const std::string& msg) {
    rep.violations.push_back({kind, msg});
  };

  if (sk.k < 0) add("bad-rank", "k must be nonnegative");
  if (sk.vertices.empty()) add("empty", "a k-graph must have at least one vertex");

  std::map<std::string, int> vertex_of, edge_of;
  for (size_t i = 0; i < sk.vertices.size(); ++i) {
    if (!vertex_of.emplace(sk.vertices[i], int(i)).second)
      add("duplicate-name", "vertex '" + sk.vertices[i] + "' defined twice");
  }
  for (size_t i = 0; i < sk.edges.size(); ++i) {
    const Edge& e = sk.edges[i];
    if (!edge_of.emplace(e.id, int(i)).second)
      add("duplicate-name", "edge '" + e.id + "' defined twice");
    if (e.colour < 1 || e.colour > sk.k)
      add("bad-colour", "edge '" + e.id + "' has colour outside 1.." + std::to_string(sk.k));
    if (!vertex_of.count(e.range))
      add("dangling-endpoint", "edge '" + e.id + "' has unknown range '" + e.range + "'");
    if (!vertex_of.count(e.source))
      add("dangling-endpoint", "edge '" + e.id + "' has unknown source '" + e.source + "'");
  }
  if (!rep.ok()) return rep;

  auto edge = [&](const std::string& id) -> const Edge* {
    auto it = edge_of.find(id);
    return it == edge_of.end() ? nullptr : &sk.edges[it->second];
  };

  // Square-local conditions.
  for (size_t s = 0; s < sk.squares.size(); ++s) {
    const SquareRecord& q = sk.squares[s];
    const Edge *f1 = edge(q.f1), *g1 = edge(q.g1), *g2 = edge(q.g2), *f2 = edge(q.f2);
    std::string where = "square " + q.f1 + " " + q.g1 + " = " + q.g2 + " " + q.f2;
    if (!f1 || !g1 || !g2 || !f2) {
      add("unknown-reference", where + " references an unknown edge");
      continue;
    }
    if (f1->colour != f2->colour || g1->colour != g2->colour || f1->colour >= g1->colour)
      add("square-colours", where + " must pair colours i < j as f1 g1 = g2 f2");
    if (f1->source != g1->range) add("square-endpoints", where + ": s(f1) != r(g1)");
    if (g2->source != f2->range) add("square-endpoints", where + ": s(g2) != r(f2)");
    if (f1->range != g2->range) add("square-endpoints", where + ": r(f1) != r(g2)");
    if (g1->source != f2->source) add("square-endpoints", where + ": s(g1) != s(f2)");
  }
  if (!rep.ok()) return rep;

  // Completeness: every composable bi-coloured path of length two lies in
  // exactly one square, in the orientation matching its colour order.
  std::map<std::pair<std::string, std::string>, int> ij_count, ji_count;
  for (const SquareRecord& q : sk.squares) {
    ++ij_count[{q.f1, q.g1}];
    ++ji_count[{q.g2, q.f2}];
  }
  for (const Edge& a : sk.edges)
    for (const Edge& b : sk.edges) {
      if (a.colour == b.colour || a.source != b.range) continue;
      if (a.colour < b.colour) {
        int c = ij_count.count({a.id, b.id}) ? ij_count[{a.id, b.id}] : 0;
        if (c == 0)
          add("incomplete-squares", "path " + a.id + " " + b.id + " is in no square");
        else if (c > 1)
          add("duplicated-path", "path " + a.id + " " + b.id + " is in " + std::to_string(c) +
                                     " squares");
      } else {
        int c = ji_count.count({a.id, b.id}) ? ji_count[{a.id, b.id}] : 0;
        if (c == 0)
          add("incomplete-squares", "path " + a.id + " " + b.id + " is in no square");
        else if (c > 1)
          add("duplicated-path", "path " + a.id + " " + b.id + " is in " + std::to_string(c) +
                                     " squares");
      }
    }
  if (!rep.ok()) return rep;

  // Tricolour consistency for k >= 3: for each composable triple of edges
  // with three distinct colours, the two swap routes that reverse the colour
  // order must agree.
  if (sk.k >= 3) {
    std::map<std::pair<int, int>, int> by_ij, by_ji;
    for (size_t s = 0; s < sk.squares.size(); ++s) {
      const SquareRecord& q = sk.squares[s];
      by_ij[{edge_of[q.f1], edge_of[q.g1]}] = int(s);
      by_ji[{edge_of[q.g2], edge_of[q.f2]}] = int(s);
    }
    auto swap_pair = [&](int a, int b) -> std::pair<int, int> {
      // replace the composable pair (a, b) using its square
      if (sk.edges[a].colour < sk.edges[b].colour) {
        const SquareRecord& q = sk.squares[by_ij[{a, b}]];
        return {edge_of[q.g2], edge_of[q.f2]};
      }
      const SquareRecord& q = sk.squares[by_ji[{a, b}]];
      return {edge_of[q.f1], edge_of[q.g1]};
    };
    auto route = [&](std::array<int, 3> t, bool outer_first) {
      for (int step = 0; step < 3; ++step) {
        bool first = outer_first ? (step != 1) : (step == 1);
        if (first) {
          auto [x, y] = swap_pair(t[0], t[1]);
          t[0] = x;
          t[1] = y;
        } else {
          auto [x, y] = swap_pair(t[1], t[2]);
          t[1] = x;
          t[2] = y;
        }
      }
      return t;
    };

    // index edges by range vertex for the composability scan
    std::map<std::string, std::vector<int>> by_range;
    for (size_t i = 0; i < sk.edges.size(); ++i) by_range[sk.edges[i].range].push_back(int(i));
    auto composable_with = [&](int e) -> const std::vector<int>& {
      static const std::vector<int> none;
      auto it = by_range.find(sk.edges[e].source);
      return it == by_range.end() ? none : it->second;
    };
    for (size_t x = 0; x < sk.edges.size() && rep.ok(); ++x) {
      for (int y : composable_with(int(x))) {
        if (sk.edges[y].colour == sk.edges[x].colour) continue;
        for (int z : composable_with(y)) {
          if (sk.edges[z].colour == sk.edges[x].colour ||
              sk.edges[z].colour == sk.edges[y].colour)
            continue;
          auto r1 = route({int(x), y, z}, true);
          auto r2 = route({int(x), y, z}, false);
          if (r1 != r2) {
            add("tricolour", "triple " + sk.edges[x].id + " " + sk.edges[y].id + " " +
                                 sk.edges[z].id + " fails the two-route consistency check");
            break;
          }
        }
        if (!rep.ok()) break;
      }
    }
  }
  return rep;
}

// Connected components of the undirected reachability relation generated by
// {(r(e), s(e))}.  Works on unvalidated skeletons.
inline std::vector<std::vector<std::string>> components(const Skeleton& sk) {
  std::map<std::string, int> idx;
  for (size_t i = 0; i < sk.vertices.size(); ++i) idx[sk.vertices[i]] = int(i);
  std::vector<int> parent(sk.vertices.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const Edge& e : sk.edges) {
    auto ri = idx.find(e.range), si = idx.find(e.source);
    if (ri == idx.end() || si == idx.end()) continue;
    int a = find(ri->second), b = find(si->second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, std::vector<std::string>> groups;
  for (size_t i = 0; i < sk.vertices.size(); ++i) groups[find(int(i))].push_back(sk.vertices[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace khom
