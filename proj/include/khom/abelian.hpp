#pragma once

#include "khom/smith.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace khom {

// Isomorphism class of a finitely generated abelian group in invariant-factor
// form: Z^free_rank + Z/d_1 + ... + Z/d_t with 2 <= d_1 | d_2 | ... | d_t.
// The form is unique, so equality of values is isomorphism of groups.
struct FgAbelianGroup {
  int free_rank = 0;
  std::vector<Int> torsion;

  bool operator==(const FgAbelianGroup& o) const = default;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_torsion_free() const { return torsion.empty(); }

  static FgAbelianGroup free(int rank) { return {rank, {}}; }
  static FgAbelianGroup cyclic(const Int& m) {
    if (m == 0) return free(1);
    if (abs_int(m) == 1) return {};
    return {0, {abs_int(m)}};
  }

  Int order() const {  // 0 means infinite
    if (free_rank > 0) return 0;
    Int n = 1;
    for (const Int& d : torsion) n *= d;
    return n;
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) {
      os << "Z";
      first = false;
    } else if (free_rank > 1) {
      os << "Z^" << free_rank;
      first = false;
    }
    for (const Int& d : torsion) {
      os << (first ? "" : " + ") << "Z/" << d.str();
      first = false;
    }
    return os.str();
  }
};

// Canonical invariant-factor form for a list of cyclic orders (0 meaning Z)
// that need not form a divisor chain.
inline FgAbelianGroup normalize_cyclics(int free_rank, std::vector<Int> orders) {
  FgAbelianGroup g;
  g.free_rank = free_rank;
  std::vector<Int> tors;
  for (Int& d : orders) {
    d = abs_int(d);
    if (d == 0)
      ++g.free_rank;
    else if (d > 1)
      tors.push_back(d);
  }
  // gcd/lcm passes converge to a divisor chain (same trick as the SNF fixup).
  for (size_t i = 0; i < tors.size(); ++i)
    for (size_t j = i + 1; j < tors.size(); ++j) {
      if (tors[j] % tors[i] == 0) continue;
      Int gg = gcd_int(tors[i], tors[j]);
      Int ll = tors[i] / gg * tors[j];
      tors[i] = gg;
      tors[j] = ll;
    }
  for (const Int& d : tors)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

inline FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  std::vector<Int> orders = a.torsion;
  orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
  return normalize_cyclics(a.free_rank + b.free_rank, orders);
}

// The group presented by integer relation columns on free generators.
inline FgAbelianGroup group_from_relations(const IntMatrix& relations) {
  auto snf = smith_normal_form(relations, {.with_u = false, .with_v = false});
  std::vector<Int> f = snf.invariant_factors();
  return normalize_cyclics(relations.rows() - snf.rank, f);
}

enum class BinaryFunctor { tensor, tor, hom, ext };

// Hom/Ext/tensor/Tor of finitely generated abelian groups, computed by
// bilinearity from the table on cyclic groups.
inline FgAbelianGroup binary_functor(BinaryFunctor kind, const FgAbelianGroup& a,
                                     const FgAbelianGroup& b) {
  // Cyclic pieces: 0 encodes Z.
  std::vector<Int> pa(a.free_rank, Int(0)), pb(b.free_rank, Int(0));
  pa.insert(pa.end(), a.torsion.begin(), a.torsion.end());
  pb.insert(pb.end(), b.torsion.begin(), b.torsion.end());

  std::vector<Int> out;
  for (const Int& x : pa)
    for (const Int& y : pb) {
      Int piece;  // order of the resulting cyclic group; -1 for "drop"
      switch (kind) {
        case BinaryFunctor::tensor:
          piece = (x == 0) ? y : (y == 0 ? x : gcd_int(x, y));
          break;
        case BinaryFunctor::tor:
          piece = (x == 0 || y == 0) ? Int(1) : gcd_int(x, y);
          break;
        case BinaryFunctor::hom:
          if (x == 0)
            piece = y;
          else if (y == 0)
            piece = 1;  // Hom(Z/a, Z) = 0
          else
            piece = gcd_int(x, y);
          break;
        case BinaryFunctor::ext:
          if (x == 0)
            piece = 1;  // Ext(Z, -) = 0
          else if (y == 0)
            piece = x;  // Ext(Z/a, Z) = Z/a
          else
            piece = gcd_int(x, y);  // Ext(Z/a, Z/b) = Z/b / a(Z/b)
          break;
      }
      if (piece != 1) out.push_back(piece);
    }
  return normalize_cyclics(0, out);
}

// A finitely generated abelian group presented as a subquotient of an ambient
// free group Z^ambient: generators are lattice vectors (the columns of
// generator_basis) spanning a direct summand, and relations are integer
// columns in generator coordinates.  Elements are generator-coordinate
// vectors modulo the relation columns; normal forms are unique.
class PresentedGroup {
 public:
  PresentedGroup() : PresentedGroup(IntMatrix(0, 0)) {}

  explicit PresentedGroup(const IntMatrix& relations)
      : ambient_(relations.rows()),
        basis_(IntMatrix::identity(relations.rows())),
        coords_(IntMatrix::identity(relations.rows())),
        check_(IntMatrix(0, relations.rows())),
        relations_(relations) {
    finish();
  }

  PresentedGroup(int ambient, IntMatrix basis, IntMatrix coords, IntMatrix check,
                 IntMatrix relations)
      : ambient_(ambient),
        basis_(std::move(basis)),
        coords_(std::move(coords)),
        check_(std::move(check)),
        relations_(std::move(relations)) {
    finish();
  }

  int generator_count() const { return basis_.cols(); }
  int ambient_dim() const { return ambient_; }
  const IntMatrix& generator_basis() const { return basis_; }
  const IntMatrix& relations() const { return relations_; }
  const FgAbelianGroup& isomorphism_class() const { return iso_; }
  const SmithDecomposition& relation_snf() const { return rel_snf_; }

  bool ambient_in_lattice(const std::vector<Int>& v) const {
    std::vector<Int> chk = check_.apply(v);
    return std::all_of(chk.begin(), chk.end(), [](const Int& x) { return x == 0; });
  }

  // Generator coordinates of an ambient vector lying in the generator lattice.
  std::vector<Int> coords(const std::vector<Int>& ambient) const {
    if (!ambient_in_lattice(ambient))
      fail(errc::not_well_defined, "vector is not in the generator lattice");
    return coords_.apply(ambient);
  }

  std::vector<Int> ambient_of(const std::vector<Int>& x) const { return basis_.apply(x); }

  // Unique representative of x modulo the relation columns.
  std::vector<Int> normal_form(const std::vector<Int>& x) const {
    std::vector<Int> z = rel_snf_.u.apply(x);
    for (int i = 0; i < rel_snf_.rank; ++i) z[i] = floor_mod(z[i], rel_snf_.d.at(i, i));
    return rel_snf_.u_inv.apply(z);
  }

  bool element_is_zero(const std::vector<Int>& x) const {
    std::vector<Int> nf = normal_form(x);
    return std::all_of(nf.begin(), nf.end(), [](const Int& v) { return v == 0; });
  }

  bool elements_equal(const std::vector<Int>& x, const std::vector<Int>& y) const {
    return normal_form(x) == normal_form(y);
  }

  bool same_presentation(const PresentedGroup& o) const {
    return generator_count() == o.generator_count() && relations_ == o.relations_;
  }

 private:
  void finish() {
    rel_snf_ = smith_normal_form(relations_, {.with_u = true, .with_v = true, .with_u_inv = true});
    iso_ = normalize_cyclics(generator_count() - rel_snf_.rank, rel_snf_.invariant_factors());
  }

  int ambient_;
  IntMatrix basis_;      // ambient x gens
  IntMatrix coords_;     // gens x ambient
  IntMatrix check_;      // (ambient - gens) x ambient; zero on the lattice
  IntMatrix relations_;  // gens x rels
  SmithDecomposition rel_snf_;
  FgAbelianGroup iso_;
};

// ker(d_out) / im(d_in), presented on a lattice basis of ker(d_out) with the
// columns of d_in rewritten in that basis.  Generator representatives (cycle
// vectors in the ambient chain group) are retained.
inline PresentedGroup homology_of_pair(const IntMatrix& d_out, const IntMatrix& d_in) {
  if (d_out.cols() != d_in.rows())
    fail(errc::bad_argument, "homology_of_pair: dimension mismatch");
  if (!(d_out * d_in).is_zero())
    fail(errc::composition_nonzero, "homology_of_pair: d_out * d_in != 0");

  const int n = d_out.cols();
  auto snf = smith_normal_form(d_out, {.with_u = false, .with_v = true, .with_v_inv = true});
  std::vector<int> ker_idx, other_idx;
  for (int j = 0; j < n; ++j)
    (j >= snf.rank ? ker_idx : other_idx).push_back(j);

  IntMatrix basis = snf.v.select_cols(ker_idx);
  IntMatrix coords = snf.v_inv.select_rows(ker_idx);
  IntMatrix check = snf.v_inv.select_rows(other_idx);
  IntMatrix relations = coords * d_in;
  return PresentedGroup(n, std::move(basis), std::move(coords), std::move(check),
                        std::move(relations));
}

// A homomorphism between presented groups, stored as a matrix on generators
// together with a verified certificate that relations map into relations.
struct GroupHom {
  PresentedGroup source, target;
  IntMatrix matrix;  // target gens x source gens

  std::vector<Int> apply(const std::vector<Int>& x) const { return matrix.apply(x); }
};

// The homomorphism induced on subquotients by a matrix f on the ambient chain
// groups.  Fails with NotWellDefined if f does not carry the cycle lattice of
// src into that of tgt, or boundaries into boundaries.
inline GroupHom induced_hom(const IntMatrix& f, const PresentedGroup& src,
                            const PresentedGroup& tgt) {
  if (f.rows() != tgt.ambient_dim() || f.cols() != src.ambient_dim())
    fail(errc::bad_argument, "induced_hom: ambient dimension mismatch");
  IntMatrix images = f * src.generator_basis();
  IntMatrix m(tgt.generator_count(), src.generator_count());
  for (int j = 0; j < images.cols(); ++j) {
    std::vector<Int> img = images.column(j);
    if (!tgt.ambient_in_lattice(img))
      fail(errc::not_well_defined, "induced_hom: image leaves the cycle lattice");
    m.set_column(j, tgt.coords(img));
  }
  // Certificate: each relation of src maps into the relation span of tgt.
  IntMatrix rel_images = m * src.relations();
  for (int j = 0; j < rel_images.cols(); ++j)
    if (!in_column_span(tgt.relation_snf(), rel_images.column(j)))
      fail(errc::not_well_defined, "induced_hom: boundaries do not map to boundaries");
  return GroupHom{src, tgt, std::move(m)};
}

inline GroupHom identity_hom(const PresentedGroup& g) {
  return GroupHom{g, g, IntMatrix::identity(g.generator_count())};
}

inline GroupHom zero_hom(const PresentedGroup& src, const PresentedGroup& tgt) {
  return GroupHom{src, tgt, IntMatrix(tgt.generator_count(), src.generator_count())};
}

inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  // g after f
  return GroupHom{f.source, g.target, g.matrix * f.matrix};
}

inline bool homs_equal(const GroupHom& a, const GroupHom& b) {
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols()) return false;
  for (int j = 0; j < a.matrix.cols(); ++j) {
    std::vector<Int> ca = a.matrix.column(j), cb = b.matrix.column(j);
    for (size_t i = 0; i < ca.size(); ++i) ca[i] -= cb[i];
    if (!a.target.element_is_zero(ca)) return false;
  }
  return true;
}

namespace detail {

// Generators of {x : h(x) in the column span of rel}, as columns.
inline IntMatrix preimage_lattice(const IntMatrix& h, const IntMatrix& rel) {
  IntMatrix stacked = IntMatrix::hstack(h, -rel);
  IntMatrix ker = kernel_basis(stacked);
  std::vector<int> xrows(h.cols());
  for (int i = 0; i < h.cols(); ++i) xrows[i] = i;
  return ker.select_rows(xrows);
}

// Mutual inclusion of the integer lattices spanned by the columns of a and b.
inline bool same_column_span(const IntMatrix& a, const IntMatrix& b) {
  auto snf_a = smith_normal_form(a);
  auto snf_b = smith_normal_form(b);
  return solve_matrix(snf_b, a).has_value() && solve_matrix(snf_a, b).has_value();
}

}  // namespace detail

// Exactness at the middle group of g: A -> B, h: B -> C, decided as equality
// of Im(g) and ker(h) inside the presented group B.  Both are compared as
// saturated integer lattices in the generator coordinates of B, so torsion
// discrepancies are detected, not just rank mismatches.
inline bool is_exact_at(const GroupHom& g, const GroupHom& h) {
  if (!g.target.same_presentation(h.source))
    fail(errc::bad_argument, "is_exact_at: middle groups differ");
  IntMatrix image = IntMatrix::hstack(g.matrix, g.target.relations());
  IntMatrix kernel = detail::preimage_lattice(h.matrix, h.target.relations());
  IntMatrix kernel_full = IntMatrix::hstack(kernel, g.target.relations());
  return detail::same_column_span(image, kernel_full);
}

inline bool is_surjective(const GroupHom& f) {
  IntMatrix image = IntMatrix::hstack(f.matrix, f.target.relations());
  auto snf = smith_normal_form(image);
  return solve_matrix(snf, IntMatrix::identity(f.target.generator_count())).has_value();
}

inline bool is_injective(const GroupHom& f) {
  IntMatrix kernel = detail::preimage_lattice(f.matrix, f.target.relations());
  auto snf = smith_normal_form(f.source.relations());
  return solve_matrix(snf, kernel).has_value();
}

inline bool is_isomorphism(const GroupHom& f) {
  return f.source.isomorphism_class() == f.target.isomorphism_class() && is_surjective(f) &&
         is_injective(f);
}

}  // namespace khom
