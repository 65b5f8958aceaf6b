#pragma once

#include "khom/homology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace khom {

// Coefficient group for cochains: the integers, the integers mod m, or the
// rationals mod one (the exact surrogate for circle-valued cocycles; values
// are kept in lowest terms in [0, 1)).
class CoeffGroup {
 public:
  enum class Kind { integers, mod, rationals_mod_one };

  static CoeffGroup integers() { return CoeffGroup(Kind::integers, 0); }
  static CoeffGroup mod(const Int& m) {
    if (m < 2) fail(errc::bad_argument, "modulus must be >= 2");
    return CoeffGroup(Kind::mod, m);
  }
  static CoeffGroup rationals_mod_one() { return CoeffGroup(Kind::rationals_mod_one, 0); }

  Kind kind() const { return kind_; }
  const Int& modulus() const { return m_; }
  bool operator==(const CoeffGroup&) const = default;

  Rat normalize(const Rat& v) const {
    switch (kind_) {
      case Kind::integers:
        if (denominator(v) != 1) fail(errc::bad_argument, "integer coefficient expected");
        return v;
      case Kind::mod:
        if (denominator(v) != 1) fail(errc::bad_argument, "integer coefficient expected");
        return Rat(floor_mod(numerator(v), m_));
      case Kind::rationals_mod_one:
        return frac_mod_one(v);
    }
    return v;
  }

  bool is_zero(const Rat& v) const { return normalize(v) == 0; }

  std::string value_to_string(const Rat& v) const {
    Rat n = normalize(v);
    switch (kind_) {
      case Kind::integers:
        return numerator(n).str();
      case Kind::mod:
        return numerator(n).str() + " mod " + m_.str();
      case Kind::rationals_mod_one:
        return numerator(n).str() + "/" + denominator(n).str();
    }
    return "";
  }

  // As an abstract group, where that makes sense (not for Q/Z).
  FgAbelianGroup as_group() const {
    switch (kind_) {
      case Kind::integers:
        return FgAbelianGroup::free(1);
      case Kind::mod:
        return FgAbelianGroup::cyclic(m_);
      case Kind::rationals_mod_one:
        fail(errc::bad_argument, "Q/Z is not finitely generated");
    }
    return {};
  }

 private:
  CoeffGroup(Kind k, const Int& m) : kind_(k), m_(m) {}
  Kind kind_;
  Int m_;
};

// A function Q_r -> A stored as a value table over the canonical cube order.
struct Cochain {
  int level = 0;
  CoeffGroup coeff = CoeffGroup::integers();
  std::vector<Rat> values;

  static Cochain zero(const KGraph& g, int level, const CoeffGroup& a) {
    return Cochain{level, a, std::vector<Rat>(g.cube_count(level))};
  }
};

// delta^r as an integer matrix: the transpose of d_{r+1}, acting on value
// tables.  Shape |Q_{r+1}| x |Q_r|; zero-shaped outside 0..k.
inline IntMatrix cochain_differential(const KGraph& g, int r) {
  const ChainComplex& cx = g.chain_complex();
  if (r < 0 || r >= cx.top) return IntMatrix(cx.rank(r + 1), cx.rank(r));
  return cx.boundary_dense(r + 1).transpose();
}

namespace detail {

inline std::vector<Rat> apply_int_matrix(const IntMatrix& m, const std::vector<Rat>& x) {
  std::vector<Rat> y(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0 && x[j] != 0) y[i] += Rat(m.at(i, j)) * x[j];
  return y;
}

}  // namespace detail

inline Cochain apply_delta(const KGraph& g, const Cochain& f) {
  IntMatrix d = cochain_differential(g, f.level);
  Cochain out{f.level + 1, f.coeff, detail::apply_int_matrix(d, f.values)};
  for (Rat& v : out.values) v = f.coeff.normalize(v);
  return out;
}

inline bool is_cocycle(const KGraph& g, const Cochain& f) {
  Cochain d = apply_delta(g, f);
  return std::all_of(d.values.begin(), d.values.end(),
                     [&](const Rat& v) { return f.coeff.is_zero(v); });
}

// ---------------------------------------------------------------------------
// Cohomology groups

// H^r(-, Z) for all r, through the Smith form of the transposed boundaries.
inline std::vector<FgAbelianGroup> cohomology_integers(const KGraph& g) {
  std::vector<FgAbelianGroup> out;
  for (int r = 0; r <= g.rank(); ++r) {
    IntMatrix d_out = cochain_differential(g, r);
    IntMatrix d_in = cochain_differential(g, r - 1);
    out.push_back(homology_of_pair(d_out, d_in).isomorphism_class());
  }
  return out;
}

// H^r(-, Z/m): the lattice {x : delta^r x = 0 mod m} modulo coboundaries and
// m-multiples, all decided over Z by Smith forms.
inline std::vector<FgAbelianGroup> cohomology_mod(const KGraph& g, const Int& m) {
  if (m < 2) fail(errc::bad_argument, "modulus must be >= 2");
  std::vector<FgAbelianGroup> out;
  for (int r = 0; r <= g.rank(); ++r) {
    IntMatrix dr = cochain_differential(g, r);
    IntMatrix drm1 = cochain_differential(g, r - 1);
    const int n = dr.cols(), p = dr.rows();
    IntMatrix mI(p, p);
    for (int i = 0; i < p; ++i) mI.at(i, i) = m;
    IntMatrix stacked = IntMatrix::hstack(dr, mI);
    IntMatrix ker = kernel_basis(stacked);
    std::vector<int> xrows(n);
    for (int i = 0; i < n; ++i) xrows[i] = i;
    IntMatrix basis = ker.select_rows(xrows);  // n x n, full rank

    IntMatrix mIn(n, n);
    for (int i = 0; i < n; ++i) mIn.at(i, i) = m;
    IntMatrix rel_ambient = IntMatrix::hstack(drm1, mIn);
    auto rel = solve_matrix(smith_normal_form(basis), rel_ambient);
    if (!rel) fail(errc::bad_argument, "internal: coboundaries escape the cocycle lattice");
    out.push_back(group_from_relations(*rel));
  }
  return out;
}

inline std::vector<FgAbelianGroup> cohomology_groups(const KGraph& g, const CoeffGroup& a) {
  switch (a.kind()) {
    case CoeffGroup::Kind::integers:
      return cohomology_integers(g);
    case CoeffGroup::Kind::mod:
      return cohomology_mod(g, a.modulus());
    case CoeffGroup::Kind::rationals_mod_one:
      fail(errc::bad_argument,
           "cohomology groups over Q/Z are not computed; use cocycle membership tests");
  }
  return {};
}

// ---------------------------------------------------------------------------
// Cocycle algebra

namespace detail {

// Solve d * z = b in the coefficient group, d a positive integer.
inline std::optional<Rat> solve_cyclic(const Int& d, const Rat& b, const CoeffGroup& a) {
  switch (a.kind()) {
    case CoeffGroup::Kind::integers: {
      if (numerator(b) % d != 0) return std::nullopt;
      return Rat(numerator(b) / d);
    }
    case CoeffGroup::Kind::mod: {
      Int bb = numerator(b);
      Int g = gcd_int(d, a.modulus());
      if (bb % g != 0) return std::nullopt;
      Int m2 = a.modulus() / g;
      Int x, y;
      ext_gcd(d / g, m2, x, y);  // (d/g) x = 1 mod m2
      return Rat(floor_mod((bb / g) * x, a.modulus()));
    }
    case CoeffGroup::Kind::rationals_mod_one:
      return frac_mod_one(b / Rat(d));
  }
  return std::nullopt;
}

}  // namespace detail

// A 1-cochain alpha with delta^1(alpha) = phi - psi, when the two 2-cocycles
// are cohomologous; decided through the Smith form of delta^1.
inline std::optional<Cochain> cohomologous(const KGraph& g, const Cochain& phi,
                                           const Cochain& psi) {
  if (phi.level != 2 || psi.level != 2 || !(phi.coeff == psi.coeff))
    fail(errc::bad_argument, "cohomologous expects two 2-cochains over one coefficient group");
  if (!is_cocycle(g, phi) || !is_cocycle(g, psi))
    fail(errc::not_a_cocycle, "input is not a 2-cocycle");
  const CoeffGroup& a = phi.coeff;

  IntMatrix d1 = cochain_differential(g, 1);
  std::vector<Rat> target(phi.values.size());
  for (size_t i = 0; i < target.size(); ++i)
    target[i] = a.normalize(phi.values[i] - psi.values[i]);

  auto snf = smith_normal_form(d1);
  std::vector<Rat> b = detail::apply_int_matrix(snf.u, target);
  std::vector<Rat> z(d1.cols());
  for (int i = 0; i < int(b.size()); ++i) {
    if (i < snf.rank) {
      auto zi = detail::solve_cyclic(snf.d.at(i, i), b[i], a);
      if (!zi) return std::nullopt;
      z[i] = *zi;
    } else if (!a.is_zero(b[i])) {
      return std::nullopt;
    }
  }
  Cochain alpha{1, a, detail::apply_int_matrix(snf.v, z)};
  for (Rat& v : alpha.values) v = a.normalize(v);
  return alpha;
}

// (m* phi)(lambda) = phi(m(lambda)) on 2-cubes.
inline Cochain pullback_cocycle(const KGraph& src, const KGraph& tgt, const KGraphMorphism& m,
                                const Cochain& phi) {
  if (phi.level != 2) fail(errc::bad_argument, "pullback expects a 2-cochain");
  if (!is_cocycle(tgt, phi)) fail(errc::not_a_cocycle, "input is not a 2-cocycle");
  Cochain out = Cochain::zero(src, 2, phi.coeff);
  const auto& level = src.cubes(2);
  for (size_t j = 0; j < level.size(); ++j)
    out.values[j] = phi.values[tgt.cube_index(map_cube(src, tgt, m, level[j]))];
  return out;
}

// ---------------------------------------------------------------------------
// Universal coefficients

struct UctDegree {
  int r = 0;
  FgAbelianGroup cohomology, ext_part, hom_part, predicted;
  bool match = false;
};

struct UctResult {
  std::vector<UctDegree> degrees;
  bool pass = true;
};

// H^r(-, A) against Ext(H_{r-1}, A) (+) Hom(H_r, A); the sequence splits for
// finitely generated groups, so equality of classes is the test.
inline UctResult uct_verify(const KGraph& g, const CoeffGroup& a) {
  FgAbelianGroup coeff = a.as_group();
  HomologyProfile h = homology_groups(g);
  std::vector<FgAbelianGroup> hc = cohomology_groups(g, a);
  UctResult res;
  for (int r = 0; r <= g.rank(); ++r) {
    UctDegree deg;
    deg.r = r;
    deg.cohomology = hc[r];
    deg.ext_part = binary_functor(BinaryFunctor::ext, h.at(r - 1), coeff);
    deg.hom_part = binary_functor(BinaryFunctor::hom, h.at(r), coeff);
    deg.predicted = direct_sum(deg.ext_part, deg.hom_part);
    deg.match = deg.predicted == deg.cohomology;
    if (!deg.match) res.pass = false;
    res.degrees.push_back(std::move(deg));
  }
  return res;
}

}  // namespace khom
