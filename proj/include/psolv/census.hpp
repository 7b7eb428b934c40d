#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "psolv/pgroup.hpp"

namespace psolv {

// ---------------------------------------------------------------- rank 2

enum class Rank2Kind { I, II };

// I: a^{p^n} = b^{p^m} = 1, [a,b] = a^{p^r}. II: additionally b^{p^m} = a^{p^l}.
struct RankTwoParams {
  Rank2Kind kind = Rank2Kind::I;
  int n = 0, m = 0, r = 0;
  std::optional<int> l;

  int x() const noexcept { return n + m; }
  PcPresentation presentation(int p) const;
  std::string to_string() const;
  friend bool operator==(const RankTwoParams&, const RankTwoParams&) = default;
};

std::vector<RankTwoParams> rank2_parameters(int x);
// Six-case closed formula for the number of powerful groups of rank 2 and order p^x.
long long rank2_count_formula(int x);
// (semidirect, non-semidirect) counts of groups that are not powerfully nilpotent.
std::pair<int, int> rank2_nonpn_counts(int x);
int abelian_rank2_count(int x);

// ---------------------------------------------------------------- families and census

// Partitions of k into positive parts, parts non-increasing, in reverse lexicographic order.
std::vector<std::vector<int>> partitions(int k);
PcPresentation abelian_group(int p, const std::vector<int>& parts);

// a_1..a_t of order p, b of order p^n; [a_{2i-1}, a_{2i}] = b^{p^{n-1}} for i <= s.
PcPresentation family_A(int p, int n, int t, int s);
// As A, plus [a_{2s+1}, b] = b^{p^{n-1}}; requires 2s < t.
PcPresentation family_B(int p, int n, int t, int s);

struct CensusEntry {
  std::string label;
  PcPresentation presentation;
  bool expected_pn = false;
  std::string note;
  // filled in by verification
  bool verified = false;
  bool consistent = false;
  bool powerful = false;
  std::optional<int> derived_length;
  std::optional<int> pn_class;
};

// Powerful groups of order p^k, k in {3, 4, 5}, every one powerfully solvable.
std::vector<CensusEntry> census_table(int k, int p);

struct CensusReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::size_t isomorphism_pairs_checked = 0;
  std::size_t groups_checked = 0;
};

// Instantiates every entry and checks consistency, powerfulness, powerful solvability (with a
// certified chain) and the powerfully nilpotent flag; optionally pairwise non-isomorphism.
CensusReport verify_census(std::vector<CensusEntry>& entries, bool check_isomorphism, int jobs = 1);

// Groups <a, H> of order p^6 with a of order p, H an order-p^5 entry: H x C_p and, for central2 H,
// seeded twists [h_i, a] = z_i with z_i in Omega_1(Z(H) cap H^p). Each must be powerful and
// powerfully solvable.
CensusReport verify_order_p6_extensions(const std::vector<CensusEntry>& order_p5, std::uint64_t seed,
                                        int twists_per_entry = 2, int jobs = 1);

nlohmann::json census_to_json(const std::vector<CensusEntry>& entries);

// ---------------------------------------------------------------- presentation counts

enum class CountScheme { Solvable, Powerful, ClassP };
std::string to_string(CountScheme s);
CountScheme parse_scheme(const std::string& s);

// count = p^h for x generators of order p^2 and y = n - 2x of order p.
struct PresentationCount {
  int n = 0, x = 0;
  CountScheme scheme = CountScheme::Solvable;
  long long h = 0;             // closed formula
  long long h_enumerated = 0;  // sum over generator pairs of the free exponents
};

PresentationCount count_solvable_presentations(int n, int x);
PresentationCount count_powerful_presentations(int n, int x);
PresentationCount count_classP_presentations(int n);
PresentationCount count_presentations(CountScheme s, int n, int x);
// Argmax of h over 0 <= x <= n/2 (x = n/2 for class P), ties to the smaller x.
std::pair<int, long long> optimal_x(int n, CountScheme s);

}  // namespace psolv
