// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 iff the failing set is a
// subset of the criteria passed with --expect-red.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psolv/census.hpp"
#include "psolv/dim3class.hpp"

using namespace psolv;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;  // printed indented under the verdict
  void fail(const std::string& why) {
    pass = false;
    if (details.size() < 40) details.push_back("FAIL " + why);
  }
  void note(const std::string& s) { details.push_back(s); }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int prec = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << x;
  return os.str();
}

std::vector<Group> classP_groups_order_3_6() {
  PrimeField f(3);
  std::vector<Group> out;
  for (const auto& [label, m] : named_table(f)) out.emplace_back(algebra_to_classP(matrix_to_algebra(m)));
  return out;
}

// ---------------------------------------------------------------- 1

Outcome criterion1() {
  Outcome o;
  for (int p : {3, 5}) {
    PrimeField f(p);
    const std::uint64_t total = static_cast<std::uint64_t>(std::pow(p, 9));
    const std::size_t want = 12 + 2 * (p - 1);
    const std::size_t want_simple = 5 + (p - 2);

    auto t0 = std::chrono::steady_clock::now();
    auto oracle = classify_all(f, ClassifyMethod::Oracle);
    const double t_oracle = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto constructive = classify_all(f, ClassifyMethod::Constructive);
    const double t_cons = seconds_since(t0);

    const std::string tag = "p=" + std::to_string(p) + ": ";
    o.require(oracle.size() == want, tag + "oracle class count " + std::to_string(oracle.size()));
    o.require(constructive.size() == want, tag + "constructive class count " + std::to_string(constructive.size()));
    o.require(simple_classes(f).size() == want_simple, tag + "simple class count");
    std::size_t simple = 0;
    for (const auto& c : oracle) simple += c.label.is_simple();
    o.require(simple == want_simple, tag + "simple classes among oracle classes " + std::to_string(simple));

    std::uint64_t sum = 0;
    std::map<std::string, std::uint64_t> by_label;
    for (const auto& c : oracle) {
      sum += c.orbit_size.value_or(0);
      by_label[c.label.to_string()] = c.orbit_size.value_or(0);
    }
    o.require(sum == total, tag + "oracle orbit sizes sum to " + std::to_string(sum));
    for (const auto& c : constructive) {
      auto it = by_label.find(c.label.to_string());
      o.require(it != by_label.end() && it->second == c.orbit_size.value_or(0),
                tag + "class " + c.label.to_string() + " differs between methods");
    }

    // per-matrix agreement: orbit ids and canonical labels induce the same partition
    t0 = std::chrono::steady_clock::now();
    auto ids = orbit_partition(f);
    std::map<std::uint32_t, std::string> id_to_label;
    std::map<std::string, std::uint32_t> label_to_id;
    bool bijective = true;
    for (std::uint64_t i = 0; i < total && bijective; ++i) {
      const std::string l = canonical_form(StructureMatrix(f, mat3::decode(p, i))).to_string();
      auto [a, ia] = id_to_label.emplace(ids[i], l);
      auto [b, ib] = label_to_id.emplace(l, ids[i]);
      if (a->second != l || b->second != ids[i]) bijective = false;
    }
    const double t_pm = seconds_since(t0);
    o.require(bijective && id_to_label.size() == want, tag + "orbits and canonical labels disagree on some matrix");
    o.note(tag + std::to_string(oracle.size()) + " classes, " + std::to_string(simple) + " simple, orbit sum " +
           std::to_string(sum) + "; oracle " + fmt(t_oracle) + " s, constructive " + fmt(t_cons) +
           " s, per-matrix check " + fmt(t_pm) + " s");
    const double budget = p == 3 ? 5.0 : 180.0;
    o.require(t_oracle < budget && t_cons < budget, tag + "classification exceeded runtime target");
  }
  return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion2() {
  Outcome o;
  PrimeField f(3);
  auto table = named_table(f);
  o.require(table.size() == 16, "named table has " + std::to_string(table.size()) + " entries");
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = i + 1; j < table.size(); ++j)
      o.require(!twisted_congruent(table[i].second, table[j].second).equivalent,
                table[i].first.to_string() + " congruent to " + table[j].first.to_string());
  std::set<std::string> simple, want{"A1", "A2", "A3", "A4", "A5", "A6(1)"};
  for (const auto& [label, m] : table)
    if (is_simple(matrix_to_algebra(m))) simple.insert(label.to_string());
  o.require(simple == want, "simple representatives differ from A1..A5, A6(1)");

  auto t0 = std::chrono::steady_clock::now();
  std::uint64_t mismatches = 0, nonsingular = 0;
  for (std::uint64_t i = 0; i < 19683; ++i) {
    StructureMatrix m(f, mat3::decode(3, i));
    const bool det = mat3::det(f, m.a).v != 0;
    nonsingular += det;
    if (is_simple(matrix_to_algebra(m)) != det) ++mismatches;
  }
  const double t = seconds_since(t0);
  o.require(mismatches == 0, std::to_string(mismatches) + " matrices where simplicity != (det != 0)");
  o.require(t < 10.0, "exhaustive simplicity scan took " + fmt(t) + " s");
  o.note("120 pairs inequivalent; simple: A1..A5, A6(1); " + std::to_string(nonsingular) +
         " nonsingular of 19683, scan " + fmt(t) + " s");
  return o;
}

// ---------------------------------------------------------------- 3

Outcome criterion3() {
  Outcome o;
  for (int x = 3; x <= 14; ++x) {
    const long long enumerated = static_cast<long long>(rank2_parameters(x).size()) + abelian_rank2_count(x);
    o.require(rank2_count_formula(x) == enumerated, "x=" + std::to_string(x) + ": formula " +
                                                        std::to_string(rank2_count_formula(x)) + " vs " +
                                                        std::to_string(enumerated));
  }
  int groups = 0;
  for (int x = 3; x <= 6; ++x)
    for (const auto& t : rank2_parameters(x)) {
      Group g(t.presentation(3));
      ++groups;
      o.require(g.order() == static_cast<std::uint32_t>(std::pow(3, x)), t.to_string() + ": wrong order");
      o.require(is_powerful(g), t.to_string() + ": not powerful");
      o.require(is_powerfully_nilpotent(g).has_value() == (t.r >= 2), t.to_string() + ": pn flag vs r");
    }
  o.note("formula matches for 3 <= x <= 14; " + std::to_string(groups) + " presentations checked at p=3");
  return o;
}

// ---------------------------------------------------------------- 4

Outcome criterion4() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  const std::size_t want[] = {4, 9, 28};
  for (int k = 3; k <= 5; ++k) {
    auto t = census_table(k, 3);
    o.require(t.size() == want[k - 3], "order 3^" + std::to_string(k) + ": " + std::to_string(t.size()) + " entries");
    auto rep = verify_census(t, true);
    std::vector<std::string> iso;
    for (const auto& f : rep.failures) {
      if (f.find(" ~ ") != std::string::npos)
        iso.push_back(f);
      else
        o.fail("order 3^" + std::to_string(k) + ": " + f);
    }
    std::size_t verified = 0;
    for (const auto& e : t) verified += e.verified;
    o.require(verified == t.size(), "order 3^" + std::to_string(k) + ": only " + std::to_string(verified) + " verified");
    std::string line = "order 3^" + std::to_string(k) + ": " + std::to_string(verified) + " verified (powerful, " +
                       "powerfully solvable by certified chain, pn flag), " +
                       std::to_string(rep.isomorphism_pairs_checked) + " pairs tested";
    o.note(line);
    for (const auto& s : iso) o.fail("isomorphic entries: " + s);
  }
  o.note("total " + fmt(seconds_since(t0)) + " s");
  return o;
}

// ---------------------------------------------------------------- 5

Outcome criterion5() {
  Outcome o;
  int cases = 0;
  for (int n = 0; n <= 10; ++n) {
    for (int x = 0; 2 * x <= n; ++x)
      for (CountScheme s : {CountScheme::Solvable, CountScheme::Powerful}) {
        auto c = count_presentations(s, n, x);
        ++cases;
        o.require(c.h == c.h_enumerated, to_string(s) + " n=" + std::to_string(n) + " x=" + std::to_string(x));
      }
    if (n % 2 == 0) {
      auto c = count_classP_presentations(n);
      ++cases;
      o.require(c.h == c.h_enumerated, "classP n=" + std::to_string(n));
    }
  }
  const double n3 = 1e9;
  const struct {
    CountScheme s;
    double limit;
  } lim[] = {{CountScheme::Solvable, (std::sqrt(2.0) - 1) / 6},
             {CountScheme::Powerful, 2.0 / 27},
             {CountScheme::ClassP, 1.0 / 16}};
  std::string line = "n=1000:";
  for (const auto& l : lim) {
    auto [x, h] = optimal_x(1000, l.s);
    const double r = h / n3;
    o.require(std::abs(r - l.limit) <= 2e-3, to_string(l.s) + " ratio " + fmt(r, 6) + " vs " + fmt(l.limit, 6));
    line += " " + to_string(l.s) + " x*=" + std::to_string(x) + " h/n^3=" + fmt(r, 6) + " (limit " +
            fmt(l.limit, 6) + ")";
  }
  o.note(std::to_string(cases) + " (n, x, scheme) cases match exactly");
  o.note(line);
  o.note("the asymptotic group-count results are not reproduced; only these finite sanity checks are");
  return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion6(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  std::size_t series_total = 0, pairs = 0;
  for (int i = 0; i < 200; ++i) {
    const int p = i % 2 ? 5 : 3;
    const int d = 2 + static_cast<int>(rng() % 3);
    const std::uint64_t s = rng();
    AltAlgebra v = random_algebra(p, d, s);
    const std::string tag = "algebra p=" + std::to_string(p) + " d=" + std::to_string(d) + " seed=" + std::to_string(s);
    auto all = all_composition_series(v);
    series_total += all.size();
    if (all.empty()) {
      o.fail(tag + ": no composition series");
      continue;
    }
    for (const auto& cs : all) {
      o.require(is_composition_series(v, cs), tag + ": invalid series");
      // every series is compared against the first; equality of length and factor multiset is transitive
      ++pairs;
      o.require(jordan_holder_check(v, all.front(), cs), tag + ": Jordan-Holder mismatch");
    }
  }
  o.note("200 algebras, " + std::to_string(series_total) + " composition series, " + std::to_string(pairs) +
         " comparisons");

  int configs = 0, trivial_configs = 0, iso_checked = 0, attempts = 0;
  while (configs < 100 && attempts < 100000) {
    ++attempts;
    const int p = attempts % 2 ? 3 : 5;
    const int d = 2 + static_cast<int>(rng() % 3);
    if (p == 5 && d == 4 && rng() % 4) continue;
    AltAlgebra v = random_algebra(p, d, rng());
    auto subs = all_subspaces(v.field(), d);
    std::vector<Subspace> algs;
    for (const auto& u : subs)
      if (is_subalgebra(v, u)) algs.push_back(u);
    auto pick_pair = [&](Subspace& lo, Subspace& hi) {
      hi = algs[rng() % algs.size()];
      std::vector<Subspace> ids;
      for (const auto& u : algs)
        if (hi.contains(u) && is_ideal(v, u, hi)) ids.push_back(u);
      lo = ids[rng() % ids.size()];
    };
    Subspace A(v.field(), d), B(v.field(), d), a(v.field(), d), b(v.field(), d);
    pick_pair(A, B);
    pick_pair(a, b);
    const Subspace Pa = zassenhaus_project(v, A, B, a, b, a, ProjectionDirection::Up);
    const Subspace Pb = zassenhaus_project(v, A, B, a, b, b, ProjectionDirection::Up);
    // zero factors are certified too but do not count towards the quota
    ++(Pb.dim() > Pa.dim() ? configs : trivial_configs);
    const std::string tag = "config " + std::to_string(configs + trivial_configs);
    const Subspace QA = zassenhaus_project(v, A, B, a, b, A, ProjectionDirection::Down);
    const Subspace QB = zassenhaus_project(v, A, B, a, b, B, ProjectionDirection::Down);
    o.require(Pa == A + B.intersect(a) && Pb == A + B.intersect(b), tag + ": upward projection formula");
    o.require(QA == a + b.intersect(A) && QB == a + b.intersect(B), tag + ": downward projection formula");
    o.require(is_subalgebra(v, Pb) && is_ideal(v, Pa, Pb), tag + ": P(a) not an ideal of P(b)");
    o.require(is_subalgebra(v, QB) && is_ideal(v, QA, QB), tag + ": Q(A) not an ideal of Q(B)");
    // both factors are certified isomorphic to W/M through the inclusion of W
    const Subspace W = B.intersect(b);
    const Subspace M = A.intersect(b) + B.intersect(a);
    o.require(is_ideal(v, M, W), tag + ": M not an ideal of W");
    o.require(W + Pa == Pb && W.intersect(Pa) == M, tag + ": W/M does not map onto P(b)/P(a)");
    o.require(W + QA == QB && W.intersect(QA) == M, tag + ": W/M does not map onto Q(B)/Q(A)");
    if (Pb.dim() - Pa.dim() <= 3 && QB.dim() - QA.dim() <= 3) {
      ++iso_checked;
      o.require(find_isomorphism(factor_algebra(v, Pb, Pa), factor_algebra(v, QB, QA)).has_value(),
                tag + ": factor algebras not isomorphic");
    }
  }
  o.require(configs == 100, "only " + std::to_string(configs) + " interval configurations");
  o.note(std::to_string(configs) + " interval configurations with nonzero factors certified via W/M (plus " +
         std::to_string(trivial_configs) + " with zero factors), " + std::to_string(iso_checked) +
         " also by explicit factor isomorphism");
  return o;
}

// ---------------------------------------------------------------- 7

Outcome criterion7() {
  Outcome o;
  PrimeField f(3);
  int simple = 0, solvable = 0;
  for (const auto& [label, m] : named_table(f)) {
    const std::string tag = label.to_string();
    AltAlgebra v = matrix_to_algebra(m);
    Group g(algebra_to_classP(v));
    o.require(g.order() == 729 && is_class_P(g), tag + ": not a class-P group of order 3^6");
    const auto cs = composition_series(v);
    const bool alg_solvable = std::all_of(cs.factor_tags.begin(), cs.factor_tags.end(),
                                          [](const std::string& t) { return t == "1"; });
    const bool grp_solvable = powerfully_abelian_chain(g, whole(g)).has_value();
    o.require(alg_solvable == grp_solvable, tag + ": powerful solvability differs between group and algebra");
    const bool alg_simple = is_simple(v);
    const bool grp_simple = is_powerfully_simple_groupwise(g, whole(g));
    o.require(alg_simple == grp_simple, tag + ": powerful simplicity differs between group and algebra");
    o.require(is_powerfully_simple(g) == alg_simple, tag + ": composition-series simplicity differs");
    const bool is_A = label.name <= ClassName::A6;
    o.require(is_A == grp_simple, tag + ": A-class membership differs from powerful simplicity");
    simple += grp_simple;
    solvable += grp_solvable;
  }
  o.note("16 groups: " + std::to_string(simple) + " powerfully simple (exactly the A classes), " +
         std::to_string(solvable) + " powerfully solvable, group and algebra routes agree");
  return o;
}

// ---------------------------------------------------------------- 8

std::vector<Subgroup> embedded_sample(const Group& g, std::mt19937_64& rng, int random_closures) {
  std::vector<Subgroup> cand{whole(g), trivial(g), agemo(g, whole(g), 1), agemo(g, whole(g), 2),
                             center(g, whole(g)), omega(g, whole(g), 1), derived_subgroup(g, whole(g))};
  for (int i = 0; i < random_closures; ++i) cand.push_back(normal_closure(g, {static_cast<Elem>(rng() % g.order())}, whole(g)));
  std::set<Subgroup> out;
  for (const auto& h : cand)
    if (is_powerfully_embedded(g, h, whole(g))) out.insert(h);
  return {out.begin(), out.end()};
}

Outcome criterion8(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed ^ 0x8a5cd789635d2dffULL);
  auto classP = classP_groups_order_3_6();
  auto census5 = census_table(5, 3);
  auto census4 = census_table(4, 3);

  // interchange
  int interchange = 0;
  {
    std::vector<Group> groups = classP;
    for (const auto& e : census5) groups.emplace_back(e.presentation);
    for (const auto& g : groups) {
      auto subs = embedded_sample(g, rng, 4);
      for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = i; j < subs.size(); ++j) {
          const Subgroup hk = mutual_commutator(g, subs[i], subs[j]);
          for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) {
              ++interchange;
              const Subgroup lhs = mutual_commutator(g, agemo(g, subs[i], a), agemo(g, subs[j], b));
              o.require(lhs == agemo(g, hk, a + b), "interchange fails for |H|=" + std::to_string(subs[i].size()) +
                                                        " |K|=" + std::to_string(subs[j].size()));
            }
        }
    }
  }

  auto random_subgroup = [&](const Group& g) {
    std::vector<Elem> gens;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < n; ++t) gens.push_back(static_cast<Elem>(rng() % g.order()));
    return closure(g, gens);
  };

  // intersection identity, K containing G^p
  int pairs63 = 0;
  for (int t = 0; t < 500; ++t) {
    const Group& g = classP[t % classP.size()];
    const Subgroup h = random_subgroup(g);
    const Subgroup k = join(g, random_subgroup(g), agemo(g, whole(g)));
    ++pairs63;
    o.require(meet(g, agemo(g, h), agemo(g, k)) == agemo(g, meet(g, h, k)), "intersection identity, pair " +
                                                                               std::to_string(t));
  }

  // heredity over powerful subgroups
  int hered = 0;
  std::vector<const Group*> heredity_groups;
  std::vector<Group> census_classP;
  for (const auto& e : census4) {
    Group g(e.presentation);
    if (is_class_P(g)) census_classP.push_back(std::move(g));
  }
  for (const auto& g : classP) heredity_groups.push_back(&g);
  for (const auto& g : census_classP) heredity_groups.push_back(&g);
  for (const Group* gp : heredity_groups) {
    const Group& g = *gp;
    const auto gpn = powerfully_nilpotent_chain(g, whole(g));
    const auto gpa = powerfully_abelian_chain(g, whole(g));
    std::set<Subgroup> sample;
    for (int t = 0; t < 40 && sample.size() < 12; ++t) {
      Subgroup h = random_subgroup(g);
      if (is_powerful(g, h)) sample.insert(std::move(h));
    }
    for (const auto& h : embedded_sample(g, rng, 2))
      if (is_powerful(g, h)) sample.insert(h);
    for (const auto& h : sample) {
      ++hered;
      const std::string tag = "subgroup of order " + std::to_string(h.size());
      if (gpn) {
        auto c = powerfully_nilpotent_chain(g, h);
        o.require(c && c->length() <= gpn->length() && check_powerfully_central(g, h, *c),
                  tag + ": powerful class not inherited");
      }
      if (gpa) {
        auto c = powerfully_abelian_chain(g, h);
        o.require(c && c->length() <= gpa->length() && check_powerfully_abelian(g, *c),
                  tag + ": powerful derived length not inherited");
      }
    }
  }

  // maximal powerfully embedded P-subgroups versus simple quotients
  int quotients = 0;
  for (std::size_t gi = 0; gi < classP.size(); ++gi) {
    const Group& g = classP[gi];
    auto subs = powerfully_embedded_P_subgroups(g, whole(g));
    subs.insert(subs.begin(), trivial(g));
    for (const auto& h : subs) {
      bool maximal = true;
      for (const auto& k : subs)
        if (k.size() > h.size() && k.contains(h)) maximal = false;
      Group q(quotient(g, h));
      ++quotients;
      const bool simple = is_class_P(q) && is_powerfully_simple_groupwise(q, whole(q));
      o.require(maximal == simple, "group " + std::to_string(gi) + ", |H|=" + std::to_string(h.size()) +
                                       ": maximality vs simple quotient");
    }
  }

  // cyclic derived subgroup bounds the derived length
  int cyclic = 0;
  for (int k = 3; k <= 5; ++k)
    for (const auto& e : census_table(k, 3)) {
      Group g(e.presentation);
      const Subgroup d = derived_subgroup(g, whole(g));
      bool is_cyclic = false;
      for (Elem x : d.elements())
        if (closure(g, {x}).size() == d.size()) {
          is_cyclic = true;
          break;
        }
      if (!is_cyclic) continue;
      ++cyclic;
      auto c = powerfully_abelian_chain(g, whole(g));
      o.require(c && c->length() <= 2, e.label + ": cyclic derived subgroup but derived length > 2");
    }

  // embedding certificates, exponent p^2 powerful into powerful class 2
  int emb1 = 0;
  {
    std::vector<Group> inputs = classP;
    for (int k = 3; k <= 5; ++k)
      for (const auto& e : census_table(k, 3)) {
        Group g(e.presentation);
        if (!agemo(g, whole(g), 2).is_trivial()) continue;
        inputs.push_back(std::move(g));
      }
    for (const auto& g : inputs) {
      ++emb1;
      const std::string tag = "powerful group of order " + std::to_string(g.order());
      Embedding e = embed_powerful_in_class2(g);
      Group h(e.h);
      o.require(verify_embedding(g, h, e.image_gens), tag + ": not an embedding");
      o.require(is_powerfully_embedded(h, closure(h, e.image_gens), whole(h)), tag + ": image not powerfully embedded");
      o.require(check_powerfully_central(h, whole(h), e.central_chain) && e.central_chain.length() <= 2,
                tag + ": certificate chain invalid");
      auto pn = powerfully_nilpotent_chain(h, whole(h));
      o.require(pn && pn->length() <= 2, tag + ": target powerful class > 2");
      o.require(agemo(h, whole(h), 2).is_trivial(), tag + ": target exponent > p^2");
    }
  }

  // embedding certificates, class 2 into powerful class 2
  int emb2 = 0;
  {
    std::vector<PcPresentation> inputs;
    PcPresentation heis = PcPresentation::central2(3, {"x", "y", "z"}, {1, 1, 1});
    heis.set_commutator(1, 0, {{2, 1}});
    inputs.push_back(heis);
    PcPresentation ex = PcPresentation::central2(3, {"x1", "y1", "x2", "y2", "z"}, {1, 1, 1, 1, 1});
    ex.set_commutator(1, 0, {{4, 1}});
    ex.set_commutator(3, 2, {{4, 1}});
    inputs.push_back(ex);
    for (int k = 3; k <= 5; ++k)
      for (const auto& e : census_table(k, 3)) inputs.push_back(e.presentation);
    for (const auto& pres : inputs) {
      Group g(pres);
      if (nilpotency_class(g) > 2) continue;
      ++emb2;
      const std::string tag = "class-2 group of order " + std::to_string(g.order());
      Embedding e = embed_class2_in_pn(g);
      Group h(e.h);
      o.require(verify_embedding(g, h, e.image_gens), tag + ": not a subgroup embedding");
      o.require(check_powerfully_central(h, whole(h), e.central_chain) && e.central_chain.length() <= 2,
                tag + ": certificate chain invalid");
      auto pn = powerfully_nilpotent_chain(h, whole(h));
      o.require(pn && pn->length() <= 2, tag + ": target powerful class > 2");
    }
  }

  o.note("interchange: " + std::to_string(interchange) + " identities; intersection: " + std::to_string(pairs63) +
         " pairs; heredity: " + std::to_string(hered) + " subgroups; quotients: " + std::to_string(quotients) +
         "; cyclic [G,G]: " + std::to_string(cyclic) + " groups");
  o.note("embeddings: " + std::to_string(emb1) + " powerful exponent-p^2 groups, " + std::to_string(emb2) +
         " class-2 groups, all certified");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::uint64_t seed = 20240601;
  std::vector<int> expect_red;
  std::vector<int> only;
  app.add_option("--seed", seed, "seed for the randomized suites");
  app.add_option("--expect-red", expect_red, "criteria known to fail");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> crit{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      [&] { return criterion6(seed); }, criterion7, [&] { return criterion8(seed); }};

  std::set<int> failed;
  for (int i = 1; i <= static_cast<int>(crit.size()); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), i) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = crit[i - 1]();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    const bool expected = std::find(expect_red.begin(), expect_red.end(), i) != expect_red.end();
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << " (" << fmt(seconds_since(t0), 1)
              << " s)" << (!o.pass && expected ? " [expected]" : "") << "\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    if (!o.pass) failed.insert(i);
  }
  bool ok = true;
  for (int i : failed)
    if (std::find(expect_red.begin(), expect_red.end(), i) == expect_red.end()) ok = false;
  std::cout << (ok ? "acceptance: OK" : "acceptance: UNEXPECTED FAILURES") << "\n";
  return ok ? 0 : 1;
}
