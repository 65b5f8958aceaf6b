#include "khom/constructors.hpp"
#include "khom/kgraph.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace khom;

namespace {

bool has_violation(const ValidationReport& rep, const std::string& kind) {
  for (const auto& v : rep.violations)
    if (v.kind == kind) return true;
  return false;
}

// One-vertex 3-coloured skeleton; when twist is set the (2,3) squares pair
// b1 c with c b2, breaking the two-route consistency.
Skeleton tricolour_example(bool twist) {
  Skeleton sk;
  sk.k = 3;
  sk.vertices = {"v"};
  sk.edges = {{"a1", 1, "v", "v"}, {"a2", 1, "v", "v"}, {"b1", 2, "v", "v"},
              {"b2", 2, "v", "v"}, {"c", 3, "v", "v"}};
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      sk.squares.push_back({"a" + std::to_string(i), "b" + std::to_string(j),
                            "b" + std::to_string(i), "a" + std::to_string(j)});
  sk.squares.push_back({"a1", "c", "c", "a1"});
  sk.squares.push_back({"a2", "c", "c", "a2"});
  if (twist) {
    sk.squares.push_back({"b1", "c", "c", "b2"});
    sk.squares.push_back({"b2", "c", "c", "b1"});
  } else {
    sk.squares.push_back({"b1", "c", "c", "b1"});
    sk.squares.push_back({"b2", "c", "c", "b2"});
  }
  return sk;
}

long binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  long v = 1;
  for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}

}  // namespace

TEST_CASE("validation accepts t_2 and flags a deleted square") {
  Skeleton sk = t_k(2);
  REQUIRE(validate(sk).ok());
  sk.squares.clear();
  auto rep = validate(sk);
  REQUIRE_FALSE(rep.ok());
  REQUIRE(has_violation(rep, "incomplete-squares"));
}

TEST_CASE("validation flags dangling endpoints and duplicates") {
  Skeleton sk;
  sk.k = 1;
  sk.vertices = {"v", "v"};
  sk.edges = {{"e", 1, "v", "nowhere"}};
  auto rep = validate(sk);
  REQUIRE(has_violation(rep, "duplicate-name"));
  REQUIRE(has_violation(rep, "dangling-endpoint"));
}

TEST_CASE("validation flags duplicated bi-coloured paths") {
  Skeleton sk = t_k(2);
  sk.squares.push_back(sk.squares.front());
  auto rep = validate(sk);
  REQUIRE(has_violation(rep, "duplicated-path"));
}

TEST_CASE("tricolour consistency is checked for k >= 3") {
  REQUIRE(validate(tricolour_example(false)).ok());
  auto rep = validate(tricolour_example(true));
  REQUIRE_FALSE(rep.ok());
  REQUIRE(has_violation(rep, "tricolour"));
}

TEST_CASE("cube counts of t_k are binomial") {
  for (int k = 0; k <= 4; ++k) {
    KGraph g(t_k(k));
    for (int r = 0; r <= k + 1; ++r) REQUIRE(g.cube_count(r) == binom(k, r));
  }
}

TEST_CASE("cubes of b_3 at level 1 are the edges") {
  KGraph g(b_n(3));
  REQUIRE(g.cube_count(1) == 3);
  REQUIRE(g.cube_count(2) == 0);
}

TEST_CASE("edge faces are endpoints") {
  KGraph g(sphere_graph());
  Cube f{-1, {g.edge_index("a")}};
  REQUIRE(g.face(f, 1, 0) == g.vertex_cube("w"));  // range
  REQUIRE(g.face(f, 1, 1) == g.vertex_cube("u"));  // source
}

TEST_CASE("faces of the sphere square alpha match the worked factorisations") {
  KGraph g(sphere_graph());
  // alpha = c e = g a
  Cube alpha{-1, {g.edge_index("c"), g.edge_index("e")}};
  REQUIRE(g.cube_index(alpha) >= 0);
  REQUIRE(g.face(alpha, 2, 0) == Cube{-1, {g.edge_index("c")}});
  REQUIRE(g.face(alpha, 2, 1) == Cube{-1, {g.edge_index("a")}});
  REQUIRE(g.face(alpha, 1, 0) == Cube{-1, {g.edge_index("g")}});
  REQUIRE(g.face(alpha, 1, 1) == Cube{-1, {g.edge_index("e")}});
}

TEST_CASE("t_k faces agree in both directions") {
  KGraph g(t_k(4));
  for (int r = 1; r <= 4; ++r)
    for (const Cube& c : g.cubes(r))
      for (int j = 1; j <= r; ++j) REQUIRE(g.face(c, j, 0) == g.face(c, j, 1));
}

TEST_CASE("face commutation relations hold exhaustively") {
  std::vector<Skeleton> corpus = {t_k(3), sphere_graph(), projective_plane_graph(),
                                  klein_graph(), four_square_torus_graph(), heegaard_graph(),
                                  commuting_pairs_graph(), tricolour_example(false)};
  for (const Skeleton& sk : corpus) {
    KGraph g(sk);
    for (int r = 2; r <= g.rank(); ++r)
      for (const Cube& c : g.cubes(r))
        for (int i = 1; i < r; ++i)
          for (int j = i + 1; j <= r; ++j)
            for (int ell = 0; ell <= 1; ++ell)
              for (int m = 0; m <= 1; ++m)
                REQUIRE(g.face(g.face(c, j, m), i, ell) ==
                        g.face(g.face(c, i, ell), j - 1, m));
  }
}

TEST_CASE("canonical form is stable under randomised square moves") {
  std::mt19937 rng(2718281);
  std::vector<Skeleton> corpus = {sphere_graph(), klein_graph(), tricolour_example(false)};
  for (const Skeleton& sk : corpus) {
    KGraph g(sk);
    std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>> swap_any;
    for (const SquareRecord& q : sk.squares) {
      swap_any[{q.f1, q.g1}] = {q.g2, q.f2};
      swap_any[{q.g2, q.f2}] = {q.f1, q.g1};
    }
    for (int r = 2; r <= g.rank(); ++r)
      for (const Cube& c : g.cubes(r)) {
        // scramble with random adjacent swaps, then re-sort by colour
        std::vector<std::string> word;
        for (int e : c.edges) word.push_back(g.edge(e).id);
        for (int step = 0; step < 12; ++step) {
          int p = int(rng() % (word.size() - 1));
          auto repl = swap_any.at({word[p], word[p + 1]});
          word[p] = repl.first;
          word[p + 1] = repl.second;
        }
        auto colour = [&](const std::string& id) { return g.edge(g.edge_index(id)).colour; };
        for (bool moved = true; moved;) {
          moved = false;
          for (size_t p = 0; p + 1 < word.size(); ++p)
            if (colour(word[p]) > colour(word[p + 1])) {
              auto repl = swap_any.at({word[p], word[p + 1]});
              word[p] = repl.first;
              word[p + 1] = repl.second;
              moved = true;
            }
        }
        std::vector<int> edges;
        for (const auto& id : word) edges.push_back(g.edge_index(id));
        REQUIRE(Cube{-1, edges} == c);
      }
  }
}

TEST_CASE("chain complex of t_2 has zero boundaries") {
  KGraph g(t_k(2));
  const ChainComplex& cx = g.chain_complex();
  REQUIRE(cx.boundary_dense(1).is_zero());
  REQUIRE(cx.boundary_dense(2).is_zero());
}

TEST_CASE("boundary of a square is g1 + f1 - f2 - g2") {
  KGraph g(projective_plane_graph());
  const ChainComplex& cx = g.chain_complex();
  // beta = d e = h a, so d(beta) = e + d - a - h
  Cube beta{-1, {g.edge_index("d"), g.edge_index("e")}};
  int col = g.cube_index(beta);
  IntMatrix d2 = cx.boundary_dense(2);
  std::map<std::string, Int> expect{{"e", 1}, {"d", 1}, {"a", -1}, {"h", -1}};
  for (const Cube& e : g.cubes(1)) {
    Int want = 0;
    auto it = expect.find(g.cube_name(e));
    if (it != expect.end()) want = it->second;
    REQUIRE(d2.at(g.cube_index(e), col) == want);
  }
}

TEST_CASE("one-vertex 0-graph has a bare degree-zero complex") {
  Skeleton sk;
  sk.k = 0;
  sk.vertices = {"v"};
  KGraph g(sk);
  const ChainComplex& cx = g.chain_complex();
  REQUIRE(cx.top == 0);
  REQUIRE(cx.rank(0) == 1);
  REQUIRE(cx.rank(1) == 0);
}

TEST_CASE("boundaries square to zero on the corpus") {
  std::vector<Skeleton> corpus = {t_k(3), sphere_graph(), projective_plane_graph(),
                                  klein_graph(), four_square_torus_graph(), heegaard_graph(),
                                  commuting_pairs_graph(), torsion_family(3)};
  for (const Skeleton& sk : corpus) {
    KGraph g(sk);
    REQUIRE_NOTHROW(g.chain_complex());
  }
}

TEST_CASE("components") {
  REQUIRE(components(t_k(3)).size() == 1);
  REQUIRE(components(sphere_graph()).size() == 1);
  Skeleton two = disjoint_union(b_n(1), b_n(1));
  REQUIRE(components(two).size() == 2);
}

TEST_CASE("constructing a KGraph from an invalid skeleton throws NotValidated") {
  Skeleton sk = t_k(2);
  sk.squares.clear();
  REQUIRE_THROWS_AS(KGraph(sk), error);
}
