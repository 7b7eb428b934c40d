#include "psolv/census.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "psolv/gfp.hpp"

namespace psolv {

namespace {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::clamp<std::size_t>(jobs < 1 ? 1 : static_cast<std::size_t>(jobs), 1, n ? n : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

Word gen_pow(int g, long long e) { return Word{{g, e}}; }

std::vector<std::string> letters(int r) {
  std::vector<std::string> out;
  for (int i = 0; i < r; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- rank 2

PcPresentation RankTwoParams::presentation(int p) const {
  PcPresentation pr = PcPresentation::metacyclic(p, n, m, r, kind == Rank2Kind::II ? l : std::nullopt);
  pr.note = to_string();
  return pr;
}

std::string RankTwoParams::to_string() const {
  std::ostringstream os;
  os << (kind == Rank2Kind::I ? "I" : "II") << "(n=" << n << ",m=" << m << ",r=" << r;
  if (kind == Rank2Kind::II && l) os << ",l=" << *l;
  os << ")";
  return os.str();
}

std::vector<RankTwoParams> rank2_parameters(int x) {
  if (x < 3) throw PreconditionError("rank2_parameters needs x >= 3");
  std::vector<RankTwoParams> out;
  for (int n = 1; n < x; ++n) {
    const int m = x - n;
    for (int r = 1; r <= n - 1; ++r)
      if (n - r <= m) out.push_back({Rank2Kind::I, n, m, r, std::nullopt});
  }
  for (int n = 1; n < x; ++n) {
    const int m = x - n;
    for (int r = 1; r <= n - 1; ++r)
      for (int l = r + 1; l <= n - 1; ++l)
        if (n - r <= l && l < m) out.push_back({Rank2Kind::II, n, m, r, l});
  }
  return out;
}

long long rank2_count_formula(int x) {
  if (x < 3) throw PreconditionError("rank2_count_formula needs x >= 3");
  static constexpr long long c1[6] = {12, 3, 12, 3, 12, 3};
  static constexpr long long c0[6] = {0, -16, -8, 0, -16, -8};
  const long long X = x;
  const long long num = X * X * X + 12 * X * X + c1[x % 6] * X + c0[x % 6];
  if (num % 72 != 0) throw std::logic_error("rank-2 formula numerator not divisible by 72");
  return num / 72;
}

std::pair<int, int> rank2_nonpn_counts(int x) {
  return {std::max(0, (x - 1) / 2), std::max(0, (x - 4) / 2)};
}

int abelian_rank2_count(int x) { return x / 2; }

// ---------------------------------------------------------------- families

std::vector<std::vector<int>> partitions(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(left, max_part); part >= 1; --part) {
      cur.push_back(part);
      rec(left - part, part);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

PcPresentation abelian_group(int p, const std::vector<int>& parts) {
  if (parts.empty()) throw PreconditionError("abelian group needs at least one factor");
  return PcPresentation::central2(p, letters(static_cast<int>(parts.size())), parts);
}

namespace {

PcPresentation family_base(int p, int n, int t) {
  if (n < 2 || t < 1) throw PreconditionError("family needs n >= 2 and t >= 1");
  std::vector<int> orders(t, 1);
  orders.push_back(n);
  return PcPresentation::central2(p, letters(t + 1), orders);
}

}  // namespace

PcPresentation family_A(int p, int n, int t, int s) {
  if (s < 1 || s > t / 2) throw PreconditionError("A(n,t,s) needs 1 <= s <= t/2");
  PcPresentation pr = family_base(p, n, t);
  const long long z = ipow(p, n - 1);
  for (int i = 0; i < s; ++i) pr.set_commutator(2 * i, 2 * i + 1, gen_pow(t, z));
  pr.note = "A(" + std::to_string(n) + "," + std::to_string(t) + "," + std::to_string(s) + ")";
  return pr;
}

PcPresentation family_B(int p, int n, int t, int s) {
  if (s < 0 || 2 * s >= t) throw PreconditionError("B(n,t,s) needs 0 <= s and 2s < t");
  PcPresentation pr = family_base(p, n, t);
  const long long z = ipow(p, n - 1);
  for (int i = 0; i < s; ++i) pr.set_commutator(2 * i, 2 * i + 1, gen_pow(t, z));
  pr.set_commutator(2 * s, t, gen_pow(t, z));
  pr.note = "B(" + std::to_string(n) + "," + std::to_string(t) + "," + std::to_string(s) + ")";
  return pr;
}

// ---------------------------------------------------------------- census

namespace {

CensusEntry entry(std::string label, PcPresentation pr, bool pn, std::string note = {}) {
  CensusEntry e;
  e.label = std::move(label);
  e.presentation = std::move(pr);
  e.expected_pn = pn;
  e.note = std::move(note);
  return e;
}

PcPresentation meta(int p, int n, int m, int r) { return PcPresentation::metacyclic(p, n, m, r); }

// a of order p; b, c of order p^2.
PcPresentation type122(int p) { return PcPresentation::central2(p, {"a", "b", "c"}, {1, 2, 2}); }

}  // namespace

std::vector<CensusEntry> census_table(int k, int p) {
  if (k < 3 || k > 5) throw PreconditionError("census_table needs k in {3,4,5}");
  if (!is_odd_prime(p) || p > PrimeField::kMaxPrime) throw PreconditionError("p must be an odd prime <= 97");
  std::vector<CensusEntry> out;
  for (const auto& parts : partitions(k)) {
    std::string label = "Ab(";
    for (std::size_t i = 0; i < parts.size(); ++i) label += (i ? "," : "") + std::to_string(parts[i]);
    label += ")";
    out.push_back(entry(label, abelian_group(p, parts), true));
  }
  const long long P = p;
  if (k == 3) {
    out.push_back(entry("G1", meta(p, 2, 1, 1), false));
  } else if (k == 4) {
    out.push_back(entry("G2", meta(p, 2, 2, 1), false));
    out.push_back(entry("G3", meta(p, 3, 1, 2), true));
    out.push_back(entry("G4", family_A(p, 2, 2, 1), true));
    out.push_back(entry("G5", family_B(p, 2, 2, 0), false));
  } else {
    out.push_back(entry("G6", meta(p, 2, 3, 1), false));
    out.push_back(entry("G7", meta(p, 3, 2, 1), false));
    out.push_back(entry("G8", meta(p, 3, 2, 2), true));
    out.push_back(entry("G9", meta(p, 4, 1, 3), true));
    out.push_back(entry("G10", family_A(p, 3, 2, 1), true));
    out.push_back(entry("G11", family_B(p, 3, 2, 0), true));
    out.push_back(entry("G12", family_A(p, 2, 3, 1), true));
    out.push_back(entry("G13", family_B(p, 2, 3, 0), false,
                        "corrected reading: a^p=b^p=c^p=d^{p^2}=1, [a,d]=d^p, as in B(2,3,0)"));
    out.push_back(entry("G14", family_B(p, 2, 3, 1), false));
    {
      auto pr = type122(p);
      pr.set_commutator(0, 1, gen_pow(2, P));
      out.push_back(entry("G15", pr, true));
    }
    {
      auto pr = type122(p);
      pr.set_commutator(0, 1, gen_pow(1, P));
      out.push_back(entry("G16", pr, false));
    }
    {
      auto pr = type122(p);
      pr.set_commutator(1, 2, gen_pow(2, P));
      out.push_back(entry("G17", pr, false));
    }
    {
      auto pr = type122(p);
      pr.set_commutator(0, 1, gen_pow(2, P));
      pr.set_commutator(1, 2, gen_pow(1, P));
      out.push_back(entry("G18", pr, false));
    }
    {
      auto pr = type122(p);
      pr.set_commutator(0, 2, gen_pow(2, P));
      pr.set_commutator(1, 2, gen_pow(1, P));
      out.push_back(entry("G19", pr, false));
    }
    {
      auto pr = type122(p);
      pr.set_commutator(0, 1, gen_pow(1, P));
      pr.set_commutator(0, 2, gen_pow(2, P));
      out.push_back(entry("G20", pr, false));
    }
    // -tau is a non-square, so det F_a = 1 (G21) and det F_a = -tau (G22) split the square classes
    const long long tau = (P - PrimeField(p).canonical_nonsquare().v) % P;
    for (long long beta = 0; beta < P; ++beta) {
      auto pr = type122(p);
      pr.set_commutator(0, 1, gen_pow(2, P));
      pr.set_commutator(0, 2, Word{{1, -P}, {2, P * beta}});
      out.push_back(entry("G21(" + std::to_string(beta) + ")", pr, false, "[a,c] = b^{-p} c^{p beta}"));
    }
    for (long long beta = 0; beta < P; ++beta) {
      auto pr = type122(p);
      pr.set_commutator(0, 1, gen_pow(2, P));
      pr.set_commutator(0, 2, Word{{1, P * tau}, {2, P * beta}});
      out.push_back(entry("G22(" + std::to_string(beta) + ")", pr, false,
                          "[a,c] = b^{p tau} c^{p beta}, tau = " + std::to_string(tau)));
    }
  }
  for (auto& e : out)
    if (e.presentation.note.empty()) e.presentation.note = e.label;
  return out;
}

CensusReport verify_census(std::vector<CensusEntry>& entries, bool check_isomorphism, int jobs) {
  std::vector<std::string> errors(entries.size());
  std::vector<std::unique_ptr<Group>> groups(entries.size());
  parallel_for(entries.size(), jobs, [&](std::size_t i) {
    CensusEntry& e = entries[i];
    try {
      groups[i] = std::make_unique<Group>(e.presentation);
      const Group& g = *groups[i];
      std::uint64_t expected = 1;
      for (int n : e.presentation.order_exp) expected *= static_cast<std::uint64_t>(ipow(e.presentation.p, n));
      e.consistent = g.order() == expected;
      e.powerful = is_powerful(g);
      auto chain = powerfully_abelian_chain(g, whole(g));
      if (chain && check_powerfully_abelian(g, *chain)) e.derived_length = chain->length();
      e.pn_class = is_powerfully_nilpotent(g);
      e.verified = true;
      std::string why;
      if (!e.consistent) why += " inconsistent order;";
      if (!e.powerful) why += " not powerful;";
      if (!e.derived_length) why += " no certified powerfully abelian chain;";
      if (e.pn_class.has_value() != e.expected_pn)
        why += e.expected_pn ? " expected powerfully nilpotent;" : " unexpectedly powerfully nilpotent;";
      if (!why.empty()) errors[i] = e.label + ":" + why;
    } catch (const std::exception& ex) {
      errors[i] = e.label + ": " + ex.what();
    }
  });
  CensusReport rep;
  for (auto& s : errors)
    if (!s.empty()) rep.failures.push_back(s);
  rep.groups_checked = entries.size();
  if (check_isomorphism) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j)
        if (groups[i] && groups[j]) pairs.emplace_back(i, j);
    std::vector<char> iso(pairs.size(), 0);
    parallel_for(pairs.size(), jobs, [&](std::size_t t) {
      iso[t] = isomorphic(*groups[pairs[t].first], *groups[pairs[t].second]).has_value();
    });
    rep.isomorphism_pairs_checked = pairs.size();
    for (std::size_t t = 0; t < pairs.size(); ++t)
      if (iso[t])
        rep.failures.push_back(entries[pairs[t].first].label + " ~ " + entries[pairs[t].second].label +
                               ": isomorphic");
  }
  rep.ok = rep.failures.empty();
  return rep;
}

namespace {

std::string check_p6(const PcPresentation& pr, const std::string& label, std::atomic<std::size_t>& checked) {
  ++checked;
  Group g(pr);
  std::string why;
  if (!is_powerful(g)) why += " not powerful;";
  auto chain = powerfully_abelian_chain(g, whole(g));
  if (!chain || !check_powerfully_abelian(g, *chain)) why += " not powerfully solvable;";
  return why.empty() ? std::string{} : label + ":" + why;
}

}  // namespace

CensusReport verify_order_p6_extensions(const std::vector<CensusEntry>& order_p5, std::uint64_t seed,
                                        int twists_per_entry, int jobs) {
  std::vector<std::vector<std::string>> errors(order_p5.size());
  std::atomic<std::size_t> checked{0};
  parallel_for(order_p5.size(), jobs, [&](std::size_t idx) {
    const CensusEntry& e = order_p5[idx];
    auto fail = [&](const std::string& s) {
      if (!s.empty()) errors[idx].push_back(s);
    };
    try {
      Group h(e.presentation);
      PcPresentation base = e.presentation;
      if (base.engine != EngineKind::Central2) {
        if (nilpotency_class(h) > 2) return;  // no central2 form; covered by the twisted samples below
        base = quotient(h, trivial(h));
      }
      const int p = base.p;
      fail(check_p6(direct_product(base, PcPresentation::central2(p, {"e"}, {1})), e.label + " x C_p", checked));
      if (e.presentation.engine != EngineKind::Central2) return;
      // twisted: a acts on H by h -> h z(h), z: H -> Omega_1(Z(H) cap H^p) a homomorphism
      Subgroup targets = omega(h, meet(h, center(h, whole(h)), agemo(h, whole(h), 1)), 1);
      std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1)));
      for (int t = 0; t < twists_per_entry; ++t) {
        std::vector<std::string> names{"x"};
        for (const auto& nm : base.names) names.push_back(nm);
        std::vector<int> orders{1};
        for (int o : base.order_exp) orders.push_back(o);
        PcPresentation g6 = PcPresentation::central2(p, names, orders);
        auto shift = [](Word w) {
          for (auto& s : w) s.gen += 1;
          return w;
        };
        for (int i = 0; i < base.rank(); ++i) g6.powers[i + 1] = shift(base.powers[i]);
        for (const auto& [key, w] : base.commutators) g6.commutators[{key.first + 1, key.second + 1}] = shift(w);
        bool nontrivial = false;
        for (int i = 0; i < base.rank(); ++i) {
          Elem z = targets.elements()[rng() % targets.size()];
          if (z == h.identity()) continue;
          nontrivial = true;
          Word w;
          auto ex = h.exponents(z);
          for (int k = 0; k < base.rank(); ++k)
            if (ex[k]) w.push_back({k + 1, ex[k]});
          g6.set_commutator(i + 1, 0, w);
        }
        if (!nontrivial) continue;
        fail(check_p6(g6, e.label + " twist " + std::to_string(t), checked));
      }
    } catch (const std::exception& ex) {
      fail(e.label + ": " + ex.what());
    }
  });
  CensusReport rep;
  for (auto& v : errors)
    for (auto& s : v) rep.failures.push_back(s);
  rep.groups_checked = checked;
  rep.ok = rep.failures.empty();
  return rep;
}

nlohmann::json census_to_json(const std::vector<CensusEntry>& entries) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j;
    j["label"] = e.label;
    j["presentation"] = e.presentation.to_json();
    j["expected_powerfully_nilpotent"] = e.expected_pn;
    if (!e.note.empty()) j["note"] = e.note;
    if (e.verified) {
      j["consistent"] = e.consistent;
      j["powerful"] = e.powerful;
      j["powerfully_solvable"] = e.derived_length.has_value();
      j["powerful_derived_length"] = e.derived_length ? nlohmann::json(*e.derived_length) : nlohmann::json();
      j["powerfully_nilpotent"] = e.pn_class.has_value();
      j["powerful_class"] = e.pn_class ? nlohmann::json(*e.pn_class) : nlohmann::json();
    }
    out.push_back(std::move(j));
  }
  return out;
}

// ---------------------------------------------------------------- counts

std::string to_string(CountScheme s) {
  switch (s) {
    case CountScheme::Solvable: return "solvable";
    case CountScheme::Powerful: return "powerful";
    case CountScheme::ClassP: return "classP";
  }
  return "?";
}

CountScheme parse_scheme(const std::string& s) {
  if (s == "solvable") return CountScheme::Solvable;
  if (s == "powerful") return CountScheme::Powerful;
  if (s == "classP") return CountScheme::ClassP;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

namespace {

void check_nx(int n, int x) {
  if (n < 0 || x < 0 || 2 * x > n) throw PreconditionError("need 0 <= x <= n/2");
}

// Generators a_1..a_{y+x}, the last x of order p^2; [a_j, a_i] (i < j) is a product of
// p-th powers a_k^p with k > i (solvable) or any k (powerful); only k > y contribute.
long long enumerate_exponent(int n, int x, bool solvable) {
  const int y = n - 2 * x, r = y + x;
  long long h = 0;
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      const int lo = solvable ? std::max(i, y) : y;
      h += r - lo;
    }
  return h;
}

}  // namespace

PresentationCount count_solvable_presentations(int n, int x) {
  check_nx(n, x);
  const long long N = n, X = x;
  const long long six_h = 2 * X * X * X - 3 * (2 * N - 1) * X * X + (3 * N * (N - 1) + 1) * X;
  if (six_h % 6 != 0) throw std::logic_error("solvable count not integral");
  return {n, x, CountScheme::Solvable, six_h / 6, enumerate_exponent(n, x, true)};
}

PresentationCount count_powerful_presentations(int n, int x) {
  check_nx(n, x);
  return {n, x, CountScheme::Powerful, choose2(n - x) * x, enumerate_exponent(n, x, false)};
}

PresentationCount count_classP_presentations(int n) {
  if (n < 0 || n % 2 != 0) throw PreconditionError("class P counts need n even");
  const int x = n / 2;
  return {n, x, CountScheme::ClassP, choose2(x) * x, enumerate_exponent(n, x, false)};
}

PresentationCount count_presentations(CountScheme s, int n, int x) {
  switch (s) {
    case CountScheme::Solvable: return count_solvable_presentations(n, x);
    case CountScheme::Powerful: return count_powerful_presentations(n, x);
    case CountScheme::ClassP:
      if (2 * x != n) throw PreconditionError("class P needs x = n/2");
      return count_classP_presentations(n);
  }
  throw std::logic_error("unknown scheme");
}

std::pair<int, long long> optimal_x(int n, CountScheme s) {
  if (s == CountScheme::ClassP) return {n / 2, count_classP_presentations(n).h};
  int best = 0;
  long long best_h = count_presentations(s, n, 0).h;
  for (int x = 1; 2 * x <= n; ++x) {
    long long h = count_presentations(s, n, x).h;
    if (h > best_h) best = x, best_h = h;
  }
  return {best, best_h};
}

}  // namespace psolv
