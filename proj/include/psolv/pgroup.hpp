#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psolv/altalg.hpp"

namespace psolv {

class PresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class EngineKind { Central2, Metacyclic };

struct Syllable {
  int gen = 0;
  long long exp = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};
using Word = std::vector<Syllable>;

// Generators a_0..a_{r-1}; a_i^{p^{n_i}} = powers[i]; [a_j, a_i] = comm(j, i) for i < j.
// central2: every commutator word is central and power words only use later generators.
// metacyclic: generators a, b with b^{-1} a b = a^{1+p^r}, and b^{p^m} = a^{p^l} when l is set.
struct PcPresentation {
  int p = 3;
  EngineKind engine = EngineKind::Central2;
  std::vector<std::string> names;
  std::vector<int> order_exp;
  std::vector<Word> powers;
  std::map<std::pair<int, int>, Word> commutators;  // key (j, i), j > i
  // metacyclic parameters
  int meta_r = 0;
  std::optional<int> meta_l;
  std::string note;

  int rank() const { return static_cast<int>(names.size()); }
  int gen_index(const std::string& name) const;

  static PcPresentation central2(int p, std::vector<std::string> names, std::vector<int> order_exp);
  static PcPresentation metacyclic(int p, int n, int m, int r, std::optional<int> l = std::nullopt);
  // Sets [a_left, a_right] = w in either orientation.
  void set_commutator(int left, int right, Word w);
  void set_power(int gen, Word w);

  nlohmann::json to_json() const;
  static PcPresentation from_json(const nlohmann::json& j);
  friend bool operator==(const PcPresentation&, const PcPresentation&) = default;
};

using Elem = std::uint32_t;
constexpr int kMaxGens = 16;

// A finite p-group given by a consistent presentation. Elements are indices of normal
// forms a_0^{e_0} ... a_{r-1}^{e_{r-1}} in mixed radix (a_0 most significant).
class Group {
 public:
  static constexpr std::uint64_t kDeskBound = 20000;
  static constexpr std::uint64_t kTableBound = 2187;  // full multiplication table up to this order

  explicit Group(PcPresentation pres);

  const PcPresentation& presentation() const noexcept { return pres_; }
  int p() const noexcept { return pres_.p; }
  std::uint32_t order() const noexcept { return order_; }
  int num_gens() const noexcept { return pres_.rank(); }
  Elem identity() const noexcept { return 0; }
  Elem generator(int i) const;

  Elem mul(Elem x, Elem y) const;
  Elem inv(Elem x) const { return inv_[x]; }
  Elem pow(Elem x, long long k) const;
  Elem comm(Elem x, Elem y) const;  // x^-1 y^-1 x y
  Elem conj(Elem x, Elem g) const;  // g^-1 x g
  int element_order_exp(Elem x) const { return order_exp_[x]; }  // o(x) = p^k
  Elem pth_power(Elem x) const { return pth_[x]; }

  std::vector<long long> exponents(Elem x) const;
  Elem from_exponents(const std::vector<long long>& e) const;
  Elem evaluate(const Word& w) const;
  std::string to_string(Elem x) const;

 private:
  using Exps = std::array<std::int64_t, kMaxGens>;
  Exps decode(Elem x) const;
  Elem encode(const Exps& e) const;
  void mul_syllable(Exps& u, int i, std::int64_t e, int depth) const;
  void mul_into(Exps& u, const Exps& v, int depth) const;
  Exps inverse_exps(const Exps& u, int depth) const;
  Exps power_exps(const Exps& u, std::int64_t k, int depth) const;
  Elem raw_mul(Elem x, Elem y) const;
  void validate();

  PcPresentation pres_;
  std::uint32_t order_ = 1;
  std::vector<std::int64_t> mod_;          // p^{n_i}
  std::vector<std::uint32_t> radix_;       // place values
  std::vector<Exps> power_nf_;             // normal form of power words
  std::vector<std::vector<Exps>> comm_nf_;  // [a_j, a_i] normal forms, j > i
  std::vector<std::int64_t> order_bound_;   // multiple of o(a_i)
  std::vector<std::uint32_t> table_;
  std::vector<Elem> inv_;
  std::vector<Elem> pth_;
  std::vector<int> order_exp_;
  std::int64_t meta_k_ = 1;      // 1 + p^r
  std::int64_t meta_kinv_ = 1;   // inverse mod p^n
};

// A subgroup of an ambient Group: sorted element list plus membership bitmap.
class Subgroup {
 public:
  Subgroup() = default;
  const std::vector<Elem>& elements() const noexcept { return elems_; }
  const std::vector<Elem>& gens() const noexcept { return gens_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool contains(Elem x) const noexcept { return x < member_.size() && member_[x]; }
  bool contains(const Subgroup& h) const;
  bool is_trivial() const noexcept { return elems_.size() == 1; }
  const std::vector<bool>& members() const noexcept { return member_; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept { return a.elems_ == b.elems_; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) noexcept {
    return a.elems_.size() != b.elems_.size() ? a.elems_.size() < b.elems_.size() : a.elems_ < b.elems_;
  }

 private:
  friend Subgroup closure(const Group& g, const std::vector<Elem>& gens);
  friend Subgroup extend(const Group& g, const Subgroup& h, Elem x);
  std::vector<Elem> elems_;
  std::vector<Elem> gens_;
  std::vector<bool> member_;
};

Subgroup closure(const Group& g, const std::vector<Elem>& gens);
Subgroup extend(const Group& g, const Subgroup& h, Elem x);
// Subgroup from an element set that must be closed; picks a small generating set.
Subgroup subgroup_from_set(const Group& g, const std::vector<Elem>& elems);
Subgroup whole(const Group& g);
Subgroup trivial(const Group& g);

std::vector<Elem> enumerate_elements(const Group& g);
Subgroup join(const Group& g, const Subgroup& h, const Subgroup& k);
Subgroup meet(const Group& g, const Subgroup& h, const Subgroup& k);
Subgroup normal_closure(const Group& g, const std::vector<Elem>& x, const Subgroup& in);
Subgroup mutual_commutator(const Group& g, const Subgroup& h, const Subgroup& k);
Subgroup derived_subgroup(const Group& g, const Subgroup& h);
Subgroup agemo(const Group& g, const Subgroup& h, int k = 1);
Subgroup omega(const Group& g, const Subgroup& h, int k = 1);
Subgroup center(const Group& g, const Subgroup& h);
bool is_normal(const Group& g, const Subgroup& h, const Subgroup& in);

bool is_powerful(const Group& g, const Subgroup& h);
bool is_powerful(const Group& g);
// [H, K] <= H^p
bool is_powerfully_embedded(const Group& g, const Subgroup& h, const Subgroup& k);

enum class ChainKind { PowerfullyCentral, PowerfullyAbelian, PowerfulComposition };

struct ChainCertificate {
  ChainKind kind = ChainKind::PowerfullyAbelian;
  std::vector<Subgroup> terms;  // descending
  int length() const { return static_cast<int>(terms.size()) - 1; }
};

bool check_powerfully_central(const Group& g, const Subgroup& ambient, const ChainCertificate& c);
bool check_powerfully_abelian(const Group& g, const ChainCertificate& c);

// Powerful nilpotence class of H (as a group) with a minimal chain, or nullopt.
std::optional<ChainCertificate> powerfully_nilpotent_chain(const Group& g, const Subgroup& h);
std::optional<int> is_powerfully_nilpotent(const Group& g);
// Powerful derived length of H with a minimal chain, or nullopt. Requires |H| <= 3^6 desk bound.
std::optional<ChainCertificate> powerfully_abelian_chain(const Group& g, const Subgroup& h);
std::optional<int> is_powerfully_solvable(const Group& g);

// x in K \ H with x^{p^n} = 1, given H < K, [K,K] <= H^p and K^{p^n} = H^{p^n}.
Elem find_small_order_witness(const Group& g, const Subgroup& h, const Subgroup& k, int n);

struct PowerfulBasis {
  std::vector<Elem> basis;
  std::vector<int> order_exps;
  ChainCertificate chain;  // the refined chain through all G^{p^j}
  bool equality = false;   // every step satisfies [T_i, T_i] = T_{i+1}^p exactly
};
PowerfulBasis powerful_basis(const Group& g);

struct Fingerprint {
  std::uint32_t order = 0;
  int exponent = 0;
  std::vector<int> type;
  std::size_t center = 0, center_p = 0, derived = 0, agemo = 0, omega1 = 0, omega1_comm = 0;
  std::map<int, std::size_t> order_histogram;
  std::map<std::size_t, std::size_t> class_size_histogram;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};
Fingerprint fingerprint(const Group& g);
nlohmann::json fingerprint_to_json(const Fingerprint& f);
// Full element map from `a` to `b` (indexed by elements of a), or nullopt.
std::optional<std::vector<Elem>> isomorphic(const Group& a, const Group& b);

// Class P: powerful of type (2, ..., 2).
bool is_class_P(const Group& g, const Subgroup& h);
bool is_class_P(const Group& g);
struct ClassPBasis {
  std::vector<Elem> basis;  // lifts of a basis of G/G^p
  AltAlgebra algebra;
};
ClassPBasis classP_basis(const Group& g, const Subgroup& h);
AltAlgebra classP_to_algebra(const Group& g);
PcPresentation algebra_to_classP(const AltAlgebra& v);

struct PowerfulCompositionSeries {
  std::vector<Subgroup> terms;       // ascending, 1 ... G
  std::vector<std::string> factors;  // tag per factor, as for algebra composition series
};
PowerfulCompositionSeries powerful_composition_series(const Group& g);
bool is_powerfully_simple(const Group& g);
// Decided from subgroups only: no proper nontrivial powerfully embedded P-subgroup.
bool is_powerfully_simple_groupwise(const Group& g, const Subgroup& h);
// Powerfully embedded P-subgroups of H (2-generated search; H of rank <= 3).
std::vector<Subgroup> powerfully_embedded_P_subgroups(const Group& g, const Subgroup& h);

// G/N for N normal with G/N of class <= 2 and G/N generated by a relative-order-p sequence.
PcPresentation quotient(const Group& g, const Subgroup& n);
PcPresentation quotient_by_central(const Group& g, const Subgroup& z);
PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b);
// Central2 presentation on a basis with |G| = prod o(b_i); G must have class <= 2.
PcPresentation presentation_from_basis(const Group& g, const std::vector<Elem>& basis);

struct Embedding {
  PcPresentation h;
  std::vector<Elem> image_gens;  // images of the generators of G in H
  ChainCertificate central_chain;
};
Embedding embed_powerful_in_class2(const Group& g);
Embedding embed_class2_in_pn(const Group& g);
// True when the map sending G's generators to `image_gens` extends to an injective hom.
bool verify_embedding(const Group& g, const Group& h, const std::vector<Elem>& image_gens);

int nilpotency_class(const Group& g);

}  // namespace psolv
