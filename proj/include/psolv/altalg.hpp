#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psolv/gfp.hpp"

namespace psolv {

using Vec = std::vector<Fp>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A subspace of F_p^d, stored as its reduced row-echelon basis. Two Subspace
// values are equal iff they describe the same subspace.
class Subspace {
 public:
  Subspace(PrimeField field, int ambient_dim);

  static Subspace span(PrimeField field, int ambient_dim, const std::vector<Vec>& vectors);
  static Subspace full(PrimeField field, int ambient_dim);

  const PrimeField& field() const noexcept { return field_; }
  int ambient_dim() const noexcept { return ambient_dim_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  bool is_zero() const noexcept { return basis_.empty(); }
  bool is_full() const noexcept { return dim() == ambient_dim_; }
  const std::vector<Vec>& basis() const noexcept { return basis_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }

  // v with its components along the basis removed; zero iff v lies in the subspace.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& w) const;
  // Coefficients of v (which must lie in the subspace) w.r.t. basis().
  Vec coordinates(const Vec& v) const;
  // Linear combination of basis() with the given coefficients.
  Vec combine(const Vec& coeffs) const;

  Subspace operator+(const Subspace& w) const;
  Subspace intersect(const Subspace& w) const;

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }
  // Order: dimension, then pivot columns, then echelon entries, all lexicographic.
  friend bool operator<(const Subspace& a, const Subspace& b) noexcept;

  std::string to_string() const;

 private:
  void check_vec(const Vec& v) const;

  PrimeField field_;
  int ambient_dim_;
  std::vector<Vec> basis_;
  std::vector<int> pivots_;
};

// Every subspace of F_p^d in the Subspace ordering. Requires d <= 5, p <= 7.
std::vector<Subspace> all_subspaces(PrimeField field, int d);

class AltAlgebra {
 public:
  AltAlgebra(PrimeField field, int dim);

  const PrimeField& field() const noexcept { return field_; }
  int dim() const noexcept { return dim_; }

  // [e_i, e_j]. Zero on the diagonal.
  const Vec& basis_product(int i, int j) const;
  // Sets [e_i, e_j] = v and [e_j, e_i] = -v; i != j.
  void set_basis_product(int i, int j, const Vec& v);

  Vec bracket(const Vec& u, const Vec& w) const;
  Vec unit(int i) const;
  Vec zero_vec() const { return Vec(dim_, Fp{0}); }

  friend bool operator==(const AltAlgebra& a, const AltAlgebra& b) noexcept {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.table_ == b.table_;
  }

 private:
  PrimeField field_;
  int dim_;
  std::vector<Vec> table_;  // dim_ x dim_, row-major
};

Vec bracket_vec(const AltAlgebra& v, const Vec& u, const Vec& w);

Subspace product_space(const AltAlgebra& v, const Subspace& u, const Subspace& w);
bool is_subalgebra(const AltAlgebra& v, const Subspace& u);
// U ideal of W; both subspaces of V. Throws PreconditionError if U is not inside W.
bool is_ideal(const AltAlgebra& v, const Subspace& u, const Subspace& w);
bool is_ideal(const AltAlgebra& v, const Subspace& u);
std::vector<Subspace> all_ideals(const AltAlgebra& v);
std::vector<Subspace> maximal_ideals(const AltAlgebra& v);
bool is_simple(const AltAlgebra& v);

// The algebra on U's echelon basis.
AltAlgebra subalgebra(const AltAlgebra& v, const Subspace& u);
// V/I on the complement spanned by the unit vectors at I's non-pivot columns.
AltAlgebra quotient(const AltAlgebra& v, const Subspace& ideal);
// upper/lower, where lower is an ideal of upper.
AltAlgebra factor_algebra(const AltAlgebra& v, const Subspace& upper, const Subspace& lower);
// U expressed in the coordinates of W's echelon basis (U inside W).
Subspace relative_subspace(const Subspace& u, const Subspace& w);
// Inverse of relative_subspace: coordinates w.r.t. W mapped back into the ambient space.
Subspace lift_subspace(const Subspace& rel, const Subspace& w);

struct CompositionSeries {
  // Ascending: 0 = terms.front() < ... < terms.back() = V.
  std::vector<Subspace> terms;
  // One tag per factor terms[i+1]/terms[i]: "1" for a one-dimensional factor, the
  // canonical label for a three-dimensional one, "dim<k>" otherwise.
  std::vector<std::string> factor_tags;

  int length() const noexcept { return static_cast<int>(factor_tags.size()); }
};

std::string factor_tag(const AltAlgebra& factor);
bool is_composition_series(const AltAlgebra& v, const CompositionSeries& s);
// Built top-down by taking the first maximal ideal at every step.
CompositionSeries composition_series(const AltAlgebra& v);
// Every composition series of V. Throws BoundExceeded past `limit` series.
std::vector<CompositionSeries> all_composition_series(const AltAlgebra& v,
                                                      std::size_t limit = 1'000'000);
// Equal length and equal factor multisets. Throws PreconditionError on invalid input.
bool jordan_holder_check(const AltAlgebra& v, const CompositionSeries& s1,
                         const CompositionSeries& s2);

enum class ProjectionDirection { Up, Down };

// Up: x in [a, b] maps to A + (B ∩ x). Down: x in [A, B] maps to a + (b ∩ x).
Subspace zassenhaus_project(const AltAlgebra& v, const Subspace& A, const Subspace& B,
                            const Subspace& a, const Subspace& b, const Subspace& x,
                            ProjectionDirection direction);

// Brute-force isomorphism of small algebras; returns the images of the basis of `from`.
// Requires dim <= 3.
std::optional<std::vector<Vec>> find_isomorphism(const AltAlgebra& from, const AltAlgebra& to);

AltAlgebra random_algebra(int p, int d, std::uint64_t seed);

nlohmann::json algebra_to_json(const AltAlgebra& v);
AltAlgebra algebra_from_json(const nlohmann::json& j);

}  // namespace psolv
