#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psolv/altalg.hpp"
#include "psolv/gfp.hpp"

namespace psolv {

using Mat3 = std::array<std::array<Fp, 3>, 3>;

// Column k holds the product of the complementary basis pair:
// column 0 = v2v3, column 1 = v3v1, column 2 = v1v2 (1-based names), entry (i, k) is
// the coefficient of v_{i+1}.
struct StructureMatrix {
  PrimeField field;
  Mat3 a{};

  StructureMatrix(PrimeField f, const Mat3& m) : field(f), a(m) {}
  static StructureMatrix from_ints(PrimeField f, const std::array<long long, 9>& rowmajor);
  // "p=<int>" followed by 9 row-major integers in [0, p).
  static StructureMatrix parse(const std::string& text);
  std::string to_text() const;

  friend bool operator==(const StructureMatrix& x, const StructureMatrix& y) noexcept {
    return x.field == y.field && x.a == y.a;
  }
};

namespace mat3 {
Mat3 zero();
Mat3 identity();
Mat3 mul(const PrimeField& f, const Mat3& x, const Mat3& y);
Mat3 transpose(const Mat3& x);
Mat3 scale(const PrimeField& f, Fp s, const Mat3& x);
Fp det(const PrimeField& f, const Mat3& x);
int rank(const PrimeField& f, const Mat3& x);
// (1/det P) Pᵗ A P
Mat3 twist(const PrimeField& f, const Mat3& a, const Mat3& p);
std::uint64_t encode(std::uint32_t p, const Mat3& x);
Mat3 decode(std::uint32_t p, std::uint64_t index);
}  // namespace mat3

struct SymAntiDecomp {
  Mat3 sym;
  Mat3 anti;
};

SymAntiDecomp sym_anti_split(const StructureMatrix& a);

enum class SymClass { D111, D110, Dtau10, D100, D000 };
std::string to_string(SymClass c);

struct SymDiagonalization {
  std::array<Fp, 3> diagonal;
  Mat3 p;  // Pᵗ S P = diag
};
// Congruence diagonalization by symmetric elimination.
SymDiagonalization diagonalize_symmetric(const PrimeField& f, const Mat3& s);
SymClass symmetric_canonical(const PrimeField& f, const Mat3& s);

enum class AntiClass { Zero, Nonzero };
AntiClass antisymmetric_class(const Mat3& n);

enum class ClassName { A1, A2, A3, A4, A5, A6, B1, B2, B3, B4, B5, B6, B7, C1, C2, D };

struct CanonicalLabel {
  ClassName name = ClassName::D;
  std::optional<std::uint32_t> param;  // α for A6 and B7
  std::uint32_t tau = 0;

  std::string to_string() const;
  bool is_simple() const noexcept;
  friend bool operator==(const CanonicalLabel& x, const CanonicalLabel& y) noexcept {
    return x.name == y.name && x.param == y.param;
  }
};

std::string to_string(ClassName n);

AltAlgebra matrix_to_algebra(const StructureMatrix& a);
StructureMatrix algebra_to_matrix(const AltAlgebra& v);

CanonicalLabel canonical_form(const StructureMatrix& a);

// All 12 + 2(p−1) labels in table order.
std::vector<CanonicalLabel> all_labels(const PrimeField& f);
StructureMatrix named_matrix(const PrimeField& f, const CanonicalLabel& label);
std::vector<std::pair<CanonicalLabel, StructureMatrix>> named_table(const PrimeField& f);
std::vector<CanonicalLabel> simple_classes(const PrimeField& f);

enum class ClassifyMethod { Oracle, Constructive };

struct ClassInfo {
  CanonicalLabel label;
  StructureMatrix representative;
  std::optional<std::uint64_t> orbit_size;
};

// Union-find on all p^9 matrices under the generators of GL(3,p). Entry i is the orbit id
// of the matrix with index i (ids are the smallest index in the orbit). Requires p <= 5.
std::vector<std::uint32_t> orbit_partition(const PrimeField& f);
// Generators used by the oracle; they generate GL(3,p).
std::vector<Mat3> gl3_generators(const PrimeField& f);

// Oracle: orbits named by the named representative they contain (p <= 5).
// Constructive: canonical_form tally over all matrices for p <= 5, otherwise the named
// representatives alone with no orbit sizes.
std::vector<ClassInfo> classify_all(const PrimeField& f, ClassifyMethod method);

struct Congruence {
  bool equivalent = false;
  std::optional<Mat3> witness;  // B = (1/det P) Pᵗ A P
};

// p <= 5: exhaustive search over GL(3,p). p = 7: canonical forms, then a witness search.
// p > 7: canonical forms only.
Congruence twisted_congruent(const StructureMatrix& a, const StructureMatrix& b);

}  // namespace psolv
