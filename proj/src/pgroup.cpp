#include "psolv/pgroup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace psolv {

namespace {

constexpr int kMaxDepth = 200;

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::int64_t mod_pos(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

Word inverse_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

}  // namespace

// ---------------------------------------------------------------- PcPresentation

int PcPresentation::gen_index(const std::string& name) const {
  for (int i = 0; i < rank(); ++i)
    if (names[i] == name) return i;
  throw PresentationError("unknown generator '" + name + "'");
}

PcPresentation PcPresentation::central2(int p, std::vector<std::string> names,
                                        std::vector<int> order_exp) {
  if (names.size() != order_exp.size()) throw PresentationError("names and orders differ in length");
  PcPresentation pr;
  pr.p = p;
  pr.engine = EngineKind::Central2;
  pr.names = std::move(names);
  pr.order_exp = std::move(order_exp);
  pr.powers.assign(pr.names.size(), {});
  return pr;
}

PcPresentation PcPresentation::metacyclic(int p, int n, int m, int r, std::optional<int> l) {
  if (n < 1 || m < 1 || r < 1) throw PresentationError("metacyclic parameters must be positive");
  PcPresentation pr;
  pr.p = p;
  pr.engine = EngineKind::Metacyclic;
  pr.names = {"a", "b"};
  pr.order_exp = {n, m};
  pr.powers.assign(2, {});
  pr.meta_r = std::min(r, n);
  pr.meta_l = l;
  const std::int64_t pn = ipow(p, n);
  if (r < n) pr.commutators[{1, 0}] = {{0, pn - ipow(p, r)}};
  if (l) pr.powers[1] = {{0, ipow(p, *l) % pn}};
  return pr;
}

void PcPresentation::set_commutator(int left, int right, Word w) {
  if (left == right || left < 0 || right < 0 || left >= rank() || right >= rank())
    throw PresentationError("bad commutator generators");
  std::pair<int, int> key = left > right ? std::pair{left, right} : std::pair{right, left};
  if (left < right) w = inverse_word(w);
  if (w.empty())
    commutators.erase(key);
  else
    commutators[key] = std::move(w);
}

void PcPresentation::set_power(int gen, Word w) {
  if (gen < 0 || gen >= rank()) throw PresentationError("bad power generator");
  powers[gen] = std::move(w);
}

namespace {

nlohmann::json word_to_json(const PcPresentation& pr, const Word& w) {
  auto out = nlohmann::json::array();
  for (const auto& s : w) out.push_back({pr.names.at(s.gen), s.exp});
  return out;
}

Word word_from_json(const PcPresentation& pr, const nlohmann::json& j) {
  if (!j.is_array()) throw PresentationError("word must be an array");
  Word w;
  for (const auto& s : j) {
    if (!s.is_array() || s.size() != 2) throw PresentationError("syllable must be [gen, exp]");
    int g = s[0].is_string() ? pr.gen_index(s[0].get<std::string>()) : s[0].get<int>();
    if (g < 0 || g >= pr.rank()) throw PresentationError("syllable generator out of range");
    w.push_back({g, s[1].get<long long>()});
  }
  return w;
}

}  // namespace

nlohmann::json PcPresentation::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  j["engine"] = engine == EngineKind::Central2 ? "central2" : "metacyclic";
  j["generators"] = nlohmann::json::array();
  for (int i = 0; i < rank(); ++i) j["generators"].push_back({{"name", names[i]}, {"order_exp", order_exp[i]}});
  j["powers"] = nlohmann::json::array();
  for (int i = 0; i < rank(); ++i)
    if (!powers[i].empty()) j["powers"].push_back({{"gen", names[i]}, {"word", word_to_json(*this, powers[i])}});
  j["commutators"] = nlohmann::json::array();
  for (const auto& [key, w] : commutators)
    j["commutators"].push_back(
        {{"left", names[key.first]}, {"right", names[key.second]}, {"word", word_to_json(*this, w)}});
  if (!note.empty()) j["note"] = note;
  return j;
}

PcPresentation PcPresentation::from_json(const nlohmann::json& j) {
  try {
    PcPresentation pr;
    pr.p = j.at("p").get<int>();
    if (!is_odd_prime(pr.p)) throw PresentationError("p must be an odd prime");
    const std::string eng = j.value("engine", "central2");
    if (eng == "central2")
      pr.engine = EngineKind::Central2;
    else if (eng == "metacyclic")
      pr.engine = EngineKind::Metacyclic;
    else
      throw PresentationError("unknown engine '" + eng + "'");
    for (const auto& g : j.at("generators")) {
      pr.names.push_back(g.at("name").get<std::string>());
      pr.order_exp.push_back(g.at("order_exp").get<int>());
    }
    std::set<std::string> uniq(pr.names.begin(), pr.names.end());
    if (uniq.size() != pr.names.size()) throw PresentationError("duplicate generator names");
    pr.powers.assign(pr.names.size(), {});
    if (j.contains("powers"))
      for (const auto& pw : j.at("powers"))
        pr.set_power(pr.gen_index(pw.at("gen").get<std::string>()), word_from_json(pr, pw.at("word")));
    if (j.contains("commutators"))
      for (const auto& c : j.at("commutators"))
        pr.set_commutator(pr.gen_index(c.at("left").get<std::string>()),
                          pr.gen_index(c.at("right").get<std::string>()), word_from_json(pr, c.at("word")));
    pr.note = j.value("note", "");
    if (pr.engine == EngineKind::Metacyclic) {
      if (pr.rank() != 2) throw PresentationError("metacyclic presentations have two generators");
      const std::int64_t pn = ipow(pr.p, pr.order_exp[0]);
      // [b, a] = a^{-p^r}
      auto it = pr.commutators.find({1, 0});
      std::int64_t e = 0;
      if (it != pr.commutators.end()) {
        for (const auto& s : it->second) {
          if (s.gen != 0) throw PresentationError("metacyclic commutator must be a power of a");
          e += s.exp;
        }
      }
      std::int64_t c = mod_pos(-e, pn);  // [a, b] = a^c, c = p^r
      int r = 0;
      if (c == 0) {
        r = pr.order_exp[0];
      } else {
        while (c % pr.p == 0) c /= pr.p, ++r;
        if (c != 1 || r == 0) throw PresentationError("metacyclic commutator must be a^{p^r}");
      }
      pr.meta_r = r;
      if (!pr.powers[0].empty()) throw PresentationError("metacyclic: a^{p^n} must be trivial");
      if (!pr.powers[1].empty()) {
        std::int64_t f = 0;
        for (const auto& s : pr.powers[1]) {
          if (s.gen != 0) throw PresentationError("metacyclic power word must be a power of a");
          f += s.exp;
        }
        f = mod_pos(f, pn);
        int l = 0;
        if (f == 0) throw PresentationError("metacyclic power word must be nontrivial");
        while (f % pr.p == 0) f /= pr.p, ++l;
        if (f != 1) throw PresentationError("metacyclic power word must be a^{p^l}");
        pr.meta_l = l;
      }
    }
    return pr;
  } catch (const nlohmann::json::exception& e) {
    throw PresentationError(std::string("malformed presentation: ") + e.what());
  }
}

// ---------------------------------------------------------------- Group

Group::Group(PcPresentation pres) : pres_(std::move(pres)) {
  const int r = pres_.rank();
  if (!is_odd_prime(pres_.p)) throw PresentationError("p must be an odd prime");
  if (r < 1 || r > kMaxGens) throw PresentationError("number of generators must be in 1..16");
  if (static_cast<int>(pres_.order_exp.size()) != r || static_cast<int>(pres_.powers.size()) != r)
    throw PresentationError("inconsistent generator data");
  std::uint64_t n = 1;
  for (int e : pres_.order_exp) {
    if (e < 1) throw PresentationError("order exponents must be positive");
    for (int k = 0; k < e; ++k) {
      n *= static_cast<std::uint64_t>(pres_.p);
      if (n > kDeskBound) throw BoundExceeded("group order exceeds the desk bound");
    }
  }
  order_ = static_cast<std::uint32_t>(n);
  mod_.resize(r);
  radix_.resize(r);
  for (int i = 0; i < r; ++i) mod_[i] = ipow(pres_.p, pres_.order_exp[i]);
  std::uint32_t place = 1;
  for (int i = r - 1; i >= 0; --i) {
    radix_[i] = place;
    place *= static_cast<std::uint32_t>(mod_[i]);
  }
  for (const auto& [key, w] : pres_.commutators) {
    if (key.first <= key.second || key.first >= r) throw PresentationError("bad commutator key");
    for (const auto& s : w)
      if (s.gen < 0 || s.gen >= r) throw PresentationError("commutator word out of range");
  }
  for (int i = 0; i < r; ++i)
    for (const auto& s : pres_.powers[i])
      if (s.gen < 0 || s.gen >= r) throw PresentationError("power word out of range");

  if (pres_.engine == EngineKind::Metacyclic) {
    if (r != 2) throw PresentationError("metacyclic presentations have two generators");
    const std::int64_t pn = mod_[0];
    meta_k_ = (1 + ipow(pres_.p, std::min(pres_.meta_r, pres_.order_exp[0]))) % pn;
    // k has order p^{n-r}; the action is defined modulo p^m only if m >= n - r
    if (pres_.meta_r < pres_.order_exp[0] && pres_.order_exp[1] < pres_.order_exp[0] - pres_.meta_r)
      throw PresentationError("metacyclic: need m >= n - r");
    std::int64_t kinv = 1;
    for (std::int64_t t = 1; t < pn; ++t)
      if ((meta_k_ * t) % pn == 1) {
        kinv = t;
        break;
      }
    meta_kinv_ = kinv;
    if (pres_.meta_l && (*pres_.meta_l < 0 || *pres_.meta_l >= pres_.order_exp[0]))
      throw PresentationError("metacyclic: l out of range");
  } else {
    for (int i = 0; i < r; ++i)
      for (const auto& s : pres_.powers[i])
        if (s.gen <= i) throw PresentationError("power words may only use later generators");
    // class 2, p odd: o(xy) | lcm(o(x), o(y)) and o([a_j, a_i]) | o(a_i)
    order_bound_.assign(r, 1);
    for (int i = r - 1; i >= 0; --i) {
      std::int64_t w = 1;
      for (const auto& s : pres_.powers[i]) w = std::max(w, order_bound_[s.gen]);
      order_bound_[i] = std::min<std::int64_t>(mod_[i] * w, order_);
    }
    power_nf_.assign(r, Exps{});
    comm_nf_.assign(r, std::vector<Exps>(r, Exps{}));
    auto eval_raw = [&](const Word& w) {
      Exps u{};
      for (const auto& s : w) mul_syllable(u, s.gen, mod_pos(s.exp, order_), 0);
      return u;
    };
    bool stable = false;
    for (int round = 0; round < 2 * r + 4 && !stable; ++round) {
      stable = true;
      for (int i = r - 1; i >= 0; --i) {
        Exps v = eval_raw(pres_.powers[i]);
        if (v != power_nf_[i]) power_nf_[i] = v, stable = false;
      }
      for (const auto& [key, w] : pres_.commutators) {
        Exps v = eval_raw(w);
        if (v != comm_nf_[key.first][key.second]) comm_nf_[key.first][key.second] = v, stable = false;
      }
    }
    if (!stable) throw PresentationError("relation words do not reach normal form");
  }
  validate();
}

Group::Exps Group::decode(Elem x) const {
  Exps e{};
  for (int i = 0; i < num_gens(); ++i) e[i] = (x / radix_[i]) % mod_[i];
  return e;
}

Elem Group::encode(const Exps& e) const {
  Elem x = 0;
  for (int i = 0; i < num_gens(); ++i) x += static_cast<Elem>(mod_pos(e[i], mod_[i])) * radix_[i];
  return x;
}

void Group::mul_syllable(Exps& u, int i, std::int64_t e, int depth) const {
  if (depth > kMaxDepth) throw PresentationError("collection does not terminate");
  e %= order_bound_[i];
  if (e == 0) return;
  const int r = num_gens();
  bool tail = false;
  for (int j = i + 1; j < r; ++j)
    if (u[j] != 0) {
      tail = true;
      break;
    }
  const std::int64_t s = u[i] + e;
  if (!tail && s < mod_[i]) {
    u[i] = s;
    return;
  }
  Exps t{};
  for (int j = i + 1; j < r; ++j) t[j] = u[j], u[j] = 0;
  u[i] = s % mod_[i];
  const std::int64_t q = s / mod_[i];
  if (q > 0) {
    mul_into(u, power_exps(power_nf_[i], q, depth + 1), depth + 1);
    mul_into(u, t, depth + 1);
  } else {
    for (int j = i + 1; j < r; ++j) u[j] = t[j];
  }
  // a_j^t a_i^e = a_i^e a_j^t [a_j, a_i]^{te}
  for (int j = i + 1; j < r; ++j) {
    if (t[j] == 0) continue;
    const Exps& c = comm_nf_[j][i];
    bool trivial = std::all_of(c.begin(), c.begin() + r, [](std::int64_t v) { return v == 0; });
    if (trivial) continue;
    const std::int64_t ob = std::min(order_bound_[i], order_bound_[j]);
    const std::int64_t m = (t[j] % ob) * (e % ob) % ob;
    if (m == 0) continue;
    mul_into(u, power_exps(c, m, depth + 1), depth + 1);
  }
}

void Group::mul_into(Exps& u, const Exps& v, int depth) const {
  for (int k = 0; k < num_gens(); ++k)
    if (v[k] != 0) mul_syllable(u, k, v[k], depth);
}

Group::Exps Group::power_exps(const Exps& u, std::int64_t k, int depth) const {
  Exps result{};
  Exps base = u;
  k %= order_;
  while (k > 0) {
    if (k & 1) mul_into(result, base, depth);
    k >>= 1;
    if (k > 0) {
      Exps sq = base;
      mul_into(sq, base, depth);
      base = sq;
    }
  }
  return result;
}

Elem Group::raw_mul(Elem x, Elem y) const {
  if (pres_.engine == EngineKind::Metacyclic) {
    const std::int64_t pn = mod_[0], pm = mod_[1];
    const std::int64_t i1 = x / radix_[0], j1 = x % radix_[0];
    const std::int64_t i2 = y / radix_[0], j2 = y % radix_[0];
    // b^j a b^{-j} = a^{k^{-j}}
    std::int64_t f = 1, base = meta_kinv_, e = j1;
    while (e > 0) {
      if (e & 1) f = f * base % pn;
      base = base * base % pn;
      e >>= 1;
    }
    std::int64_t i = (i1 + i2 * f) % pn;
    std::int64_t j = j1 + j2;
    if (j >= pm) {
      j -= pm;
      if (pres_.meta_l) i = (i + ipow(pres_.p, *pres_.meta_l)) % pn;
    }
    return static_cast<Elem>(i * radix_[0] + j);
  }
  Exps u = decode(x);
  mul_into(u, decode(y), 0);
  return encode(u);
}

Elem Group::mul(Elem x, Elem y) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(x) * order_ + y];
  return raw_mul(x, y);
}

Elem Group::pow(Elem x, long long k) const {
  k = mod_pos(k, order_);
  Elem result = 0, base = x;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

Elem Group::comm(Elem x, Elem y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
Elem Group::conj(Elem x, Elem g) const { return mul(mul(inv(g), x), g); }

Elem Group::generator(int i) const {
  if (i < 0 || i >= num_gens()) throw std::out_of_range("generator index");
  return radix_[i];
}

std::vector<long long> Group::exponents(Elem x) const {
  Exps e = decode(x);
  return std::vector<long long>(e.begin(), e.begin() + num_gens());
}

Elem Group::from_exponents(const std::vector<long long>& e) const {
  if (static_cast<int>(e.size()) != num_gens()) throw DimensionMismatch("exponent vector length");
  Elem x = 0;
  for (int i = 0; i < num_gens(); ++i) x = mul(x, pow(generator(i), e[i]));
  return x;
}

Elem Group::evaluate(const Word& w) const {
  Elem x = 0;
  for (const auto& s : w) {
    if (s.gen < 0 || s.gen >= num_gens()) throw PresentationError("word generator out of range");
    x = mul(x, pow(generator(s.gen), s.exp));
  }
  return x;
}

std::string Group::to_string(Elem x) const {
  Exps e = decode(x);
  std::string out;
  for (int i = 0; i < num_gens(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += pres_.names[i];
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

void Group::validate() {
  const int r = num_gens();
  if (order_ <= kTableBound) {
    // y = pred(y) a_k with k the last nonzero exponent of y, so x y = (x pred(y)) a_k
    std::vector<Elem> right(static_cast<std::size_t>(order_) * r);
    for (Elem x = 0; x < order_; ++x)
      for (int k = 0; k < r; ++k) right[static_cast<std::size_t>(x) * r + k] = raw_mul(x, generator(k));
    std::vector<Elem> pred(order_, 0);
    std::vector<int> last(order_, 0);
    for (Elem y = 1; y < order_; ++y) {
      int k = r - 1;
      while ((y / radix_[k]) % mod_[k] == 0) --k;
      last[y] = k;
      pred[y] = y - radix_[k];
    }
    table_.resize(static_cast<std::size_t>(order_) * order_);
    for (Elem x = 0; x < order_; ++x) {
      const std::size_t row = static_cast<std::size_t>(x) * order_;
      table_[row] = x;
      for (Elem y = 1; y < order_; ++y)
        table_[row + y] = right[static_cast<std::size_t>(table_[row + pred[y]]) * r + last[y]];
    }
  }
  inv_.resize(order_);
  pth_.resize(order_);
  order_exp_.resize(order_);
  for (Elem x = 0; x < order_; ++x) {
    inv_[x] = pow(x, static_cast<long long>(order_) - 1);
    pth_[x] = pow(x, pres_.p);
  }
  for (Elem x = 0; x < order_; ++x) {
    if (mul(x, 0) != x || mul(0, x) != x) throw PresentationError("identity law fails");
    if (mul(x, inv_[x]) != 0) throw PresentationError("inverse law fails");
    int k = 0;
    Elem y = x;
    while (y != 0) {
      y = pth_[y];
      if (++k > 64) throw PresentationError("element of infinite order");
    }
    order_exp_[x] = k;
  }
  std::vector<Elem> gens(r);
  for (int i = 0; i < r; ++i) gens[i] = generator(i);
  auto assoc = [&](Elem x, Elem y) {
    for (Elem g : gens)
      if (mul(mul(x, y), g) != mul(x, mul(y, g))) throw PresentationError("presentation is inconsistent");
  };
  if (!table_.empty()) {
    for (Elem x = 0; x < order_; ++x)
      for (Elem y = 0; y < order_; ++y) assoc(x, y);
  } else {
    std::mt19937_64 rng(0x5eed);
    for (int t = 0; t < 4000; ++t) assoc(static_cast<Elem>(rng() % order_), static_cast<Elem>(rng() % order_));
  }
  for (int i = 0; i < r; ++i)
    if (pow(gens[i], mod_[i]) != evaluate(pres_.powers[i])) throw PresentationError("power relation fails");
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < j; ++i) {
      auto it = pres_.commutators.find({j, i});
      Elem want = it == pres_.commutators.end() ? 0 : evaluate(it->second);
      if (comm(gens[j], gens[i]) != want) throw PresentationError("commutator relation fails");
      if (pres_.engine == EngineKind::Central2)
        for (Elem g : gens)
          if (comm(want, g) != 0) throw PresentationError("commutator word is not central");
    }
}

// ---------------------------------------------------------------- subgroups

bool Subgroup::contains(const Subgroup& h) const {
  return std::all_of(h.elems_.begin(), h.elems_.end(), [&](Elem x) { return contains(x); });
}

Subgroup closure(const Group& g, const std::vector<Elem>& gens) {
  Subgroup s;
  s.member_.assign(g.order(), false);
  for (Elem x : gens) {
    if (x >= g.order()) throw std::out_of_range("element out of range");
    if (x != 0 && std::find(s.gens_.begin(), s.gens_.end(), x) == s.gens_.end()) s.gens_.push_back(x);
  }
  std::vector<Elem> list{0};
  s.member_[0] = true;
  for (std::size_t k = 0; k < list.size(); ++k)
    for (Elem t : s.gens_) {
      Elem y = g.mul(list[k], t);
      if (!s.member_[y]) {
        s.member_[y] = true;
        list.push_back(y);
      }
    }
  std::sort(list.begin(), list.end());
  s.elems_ = std::move(list);
  return s;
}

Subgroup extend(const Group& g, const Subgroup& h, Elem x) {
  if (h.contains(x)) return h;
  std::vector<Elem> gens = h.gens_;
  gens.push_back(x);
  return closure(g, gens);
}

Subgroup subgroup_from_set(const Group& g, const std::vector<Elem>& elems) {
  std::vector<Elem> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Subgroup cur = trivial(g);
  for (Elem x : sorted)
    if (!cur.contains(x)) cur = extend(g, cur, x);
  if (cur.elements() != sorted) throw PreconditionError("element set is not a subgroup");
  return cur;
}

Subgroup whole(const Group& g) {
  std::vector<Elem> gens;
  for (int i = 0; i < g.num_gens(); ++i) gens.push_back(g.generator(i));
  return closure(g, gens);
}

Subgroup trivial(const Group& g) { return closure(g, {}); }

std::vector<Elem> enumerate_elements(const Group& g) {
  std::vector<Elem> out(g.order());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

namespace {

// Smallest subgroup containing `base` and the elements of `xs`.
Subgroup generated_by(const Group& g, const Subgroup& base, const std::vector<Elem>& xs) {
  Subgroup cur = base;
  for (Elem x : xs)
    if (!cur.contains(x)) cur = extend(g, cur, x);
  return cur;
}

}  // namespace

Subgroup join(const Group& g, const Subgroup& h, const Subgroup& k) {
  return generated_by(g, h, k.gens());
}

Subgroup meet(const Group& g, const Subgroup& h, const Subgroup& k) {
  std::vector<Elem> both;
  for (Elem x : h.elements())
    if (k.contains(x)) both.push_back(x);
  return subgroup_from_set(g, both);
}

Subgroup normal_closure(const Group& g, const std::vector<Elem>& x, const Subgroup& in) {
  Subgroup n = generated_by(g, trivial(g), x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem a : std::vector<Elem>(n.gens()))
      for (Elem t : in.gens()) {
        Elem c = g.conj(a, t);
        if (!n.contains(c)) {
          n = extend(g, n, c);
          changed = true;
        }
      }
  }
  return n;
}

Subgroup mutual_commutator(const Group& g, const Subgroup& h, const Subgroup& k) {
  std::vector<Elem> cs;
  for (Elem x : h.gens())
    for (Elem y : k.gens()) cs.push_back(g.comm(x, y));
  return normal_closure(g, cs, join(g, h, k));
}

Subgroup derived_subgroup(const Group& g, const Subgroup& h) { return mutual_commutator(g, h, h); }

Subgroup agemo(const Group& g, const Subgroup& h, int k) {
  std::vector<Elem> powers;
  for (Elem x : h.elements()) {
    Elem y = x;
    for (int t = 0; t < k; ++t) y = g.pth_power(y);
    powers.push_back(y);
  }
  std::sort(powers.begin(), powers.end());
  powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
  return generated_by(g, trivial(g), powers);
}

Subgroup omega(const Group& g, const Subgroup& h, int k) {
  std::vector<Elem> small;
  for (Elem x : h.elements())
    if (g.element_order_exp(x) <= k) small.push_back(x);
  return generated_by(g, trivial(g), small);
}

Subgroup center(const Group& g, const Subgroup& h) {
  std::vector<Elem> z;
  for (Elem x : h.elements())
    if (std::all_of(h.gens().begin(), h.gens().end(), [&](Elem t) { return g.mul(x, t) == g.mul(t, x); }))
      z.push_back(x);
  return subgroup_from_set(g, z);
}

bool is_normal(const Group& g, const Subgroup& h, const Subgroup& in) {
  for (Elem a : h.gens())
    for (Elem t : in.gens())
      if (!h.contains(g.conj(a, t))) return false;
  return true;
}

bool is_powerful(const Group& g, const Subgroup& h) {
  return agemo(g, h).contains(derived_subgroup(g, h));
}

bool is_powerful(const Group& g) { return is_powerful(g, whole(g)); }

bool is_powerfully_embedded(const Group& g, const Subgroup& h, const Subgroup& k) {
  return agemo(g, h).contains(mutual_commutator(g, h, k));
}

bool check_powerfully_central(const Group& g, const Subgroup& ambient, const ChainCertificate& c) {
  if (c.terms.empty() || !(c.terms.front() == ambient) || !c.terms.back().is_trivial()) return false;
  for (std::size_t i = 0; i + 1 < c.terms.size(); ++i) {
    if (!c.terms[i].contains(c.terms[i + 1])) return false;
    if (!agemo(g, c.terms[i + 1]).contains(mutual_commutator(g, c.terms[i], ambient))) return false;
  }
  return true;
}

bool check_powerfully_abelian(const Group& g, const ChainCertificate& c) {
  if (c.terms.empty() || !c.terms.back().is_trivial()) return false;
  for (std::size_t i = 0; i + 1 < c.terms.size(); ++i) {
    if (!c.terms[i].contains(c.terms[i + 1])) return false;
    if (!(derived_subgroup(g, c.terms[i]) == agemo(g, c.terms[i + 1]))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- chain predicates

std::optional<ChainCertificate> powerfully_nilpotent_chain(const Group& g, const Subgroup& h) {
  // W_0 = 1, W_{k+1} = {x in H : [x, H] <= W_k^p}; H is powerfully nilpotent iff W_c = H.
  std::vector<Subgroup> up{trivial(g)};
  while (!(up.back() == h)) {
    Subgroup wp = agemo(g, up.back());
    std::vector<Elem> next;
    for (Elem x : h.elements())
      if (std::all_of(h.gens().begin(), h.gens().end(), [&](Elem t) { return wp.contains(g.comm(x, t)); }))
        next.push_back(x);
    Subgroup w = subgroup_from_set(g, next);
    if (w == up.back()) return std::nullopt;
    up.push_back(std::move(w));
  }
  ChainCertificate c;
  c.kind = ChainKind::PowerfullyCentral;
  c.terms.assign(up.rbegin(), up.rend());
  return c;
}

std::optional<int> is_powerfully_nilpotent(const Group& g) {
  auto c = powerfully_nilpotent_chain(g, whole(g));
  if (!c) return std::nullopt;
  return c->length();
}

namespace {

class PsSearch {
 public:
  explicit PsSearch(const Group& g) : g_(g) {}

  // Minimal chain H = T_0 > T_1 > ... > 1 with [T_i, T_i] = T_{i+1}^p.
  std::optional<std::vector<Subgroup>> solve(const Subgroup& h) {
    if (h.is_trivial()) return std::vector<Subgroup>{h};
    auto it = memo_.find(h.elements());
    if (it != memo_.end()) return it->second;
    if (++work_ > 200000) throw BoundExceeded("powerful derived length search exceeded its budget");
    std::optional<std::vector<Subgroup>> best;
    Subgroup d = derived_subgroup(g_, h);
    if (d.is_trivial()) {
      best = std::vector<Subgroup>{h, d};
    } else {
      for (const Subgroup& k : candidates(h, d)) {
        auto sub = solve(k);
        if (!sub) continue;
        if (!best || sub->size() + 1 < best->size()) {
          best = std::vector<Subgroup>{h};
          best->insert(best->end(), sub->begin(), sub->end());
        }
        if (best->size() == 3) break;
      }
    }
    memo_.emplace(h.elements(), best);
    return best;
  }

 private:
  // K with D <= K < H and K^p = D.
  std::vector<Subgroup> candidates(const Subgroup& h, const Subgroup& d) {
    std::vector<bool> in_x(g_.order(), false);
    std::vector<Elem> xs;
    for (Elem x : h.elements())
      if (d.contains(g_.pth_power(x))) in_x[x] = true, xs.push_back(x);
    auto inside_x = [&](const Subgroup& k) {
      return std::all_of(k.elements().begin(), k.elements().end(), [&](Elem y) { return in_x[y]; });
    };
    std::set<Subgroup> seen{d};
    std::vector<Subgroup> queue{d};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Subgroup cur = queue[q];
      std::vector<bool> covered = cur.members();
      for (Elem x : xs) {
        if (covered[x]) continue;
        Subgroup nk = extend(g_, cur, x);
        // y in x^k K with p not dividing k gives <K, y> = <K, x>
        Elem xk = x;
        for (long k = 1; xk != 0; ++k, xk = g_.mul(xk, x))
          if (k % g_.p() != 0)
            for (Elem c : cur.elements()) covered[g_.mul(xk, c)] = true;
        if (nk == h || !inside_x(nk)) continue;
        if (seen.insert(nk).second) queue.push_back(nk);
      }
    }
    std::vector<Subgroup> out;
    for (const Subgroup& k : seen)
      if (!(k == d) && agemo(g_, k) == d) out.push_back(k);
    return out;
  }

  const Group& g_;
  std::map<std::vector<Elem>, std::optional<std::vector<Subgroup>>> memo_;
  long work_ = 0;
};

}  // namespace

std::optional<ChainCertificate> powerfully_abelian_chain(const Group& g, const Subgroup& h) {
  PsSearch search(g);
  auto chain = search.solve(h);
  if (!chain) return std::nullopt;
  ChainCertificate c;
  c.kind = ChainKind::PowerfullyAbelian;
  c.terms = std::move(*chain);
  return c;
}

std::optional<int> is_powerfully_solvable(const Group& g) {
  auto c = powerfully_abelian_chain(g, whole(g));
  if (!c) return std::nullopt;
  return c->length();
}

Elem find_small_order_witness(const Group& g, const Subgroup& h, const Subgroup& k, int n) {
  if (n < 0) throw PreconditionError("n must be nonnegative");
  if (!k.contains(h) || h.size() == k.size()) throw PreconditionError("H must be a proper subgroup of K");
  if (!agemo(g, h).contains(derived_subgroup(g, k))) throw PreconditionError("[K,K] is not inside H^p");
  if (!(agemo(g, k, n) == agemo(g, h, n))) throw PreconditionError("K^{p^n} differs from H^{p^n}");
  for (Elem x : k.elements())
    if (!h.contains(x) && g.element_order_exp(x) <= n) return x;
  throw std::logic_error("no element of small order found: hypotheses admit no witness");
}

// ---------------------------------------------------------------- powerful basis

namespace {

// Index-p subgroups of `top` containing `bottom`, where top/bottom is elementary abelian.
std::vector<Subgroup> maximal_over(const Group& g, const Subgroup& top, const Subgroup& bottom) {
  std::vector<Elem> basis;
  Subgroup cur = bottom;
  for (Elem x : top.elements())
    if (!cur.contains(x)) {
      basis.push_back(x);
      cur = extend(g, cur, x);
    }
  const int d = static_cast<int>(basis.size());
  const int p = g.p();
  std::vector<Subgroup> out;
  std::set<Subgroup> seen;
  // kernels of nonzero functionals, first nonzero coefficient 1
  std::vector<int> f(d, 0);
  std::function<void(int)> rec = [&](int idx) {
    if (idx == d) {
      int lead = -1;
      for (int i = 0; i < d; ++i)
        if (f[i] != 0) {
          lead = i;
          break;
        }
      if (lead < 0 || f[lead] != 1) return;
      std::vector<Elem> kernel_gens;
      for (int i = 0; i < d; ++i) {
        if (i == lead) continue;
        // e_i - f_i e_lead lies in the kernel
        kernel_gens.push_back(g.mul(basis[i], g.pow(basis[lead], -f[i])));
      }
      Subgroup m = generated_by(g, bottom, kernel_gens);
      if (seen.insert(m).second) out.push_back(m);
      return;
    }
    for (int v = 0; v < p; ++v) {
      f[idx] = v;
      rec(idx + 1);
    }
  };
  rec(0);
  return out;
}

struct RefinedChain {
  std::vector<Subgroup> terms;
  bool contained = true;
  bool equal = true;
};

RefinedChain refined_chain(const Group& g, const std::vector<Elem>& a, const std::vector<int>& o) {
  const int r = static_cast<int>(a.size());
  const int e = *std::max_element(o.begin(), o.end());
  RefinedChain rc;
  for (int j = 0; j < e; ++j)
    for (int i = 0; i <= r; ++i) {
      if (j > 0 && i == 0) continue;
      std::vector<Elem> gens;
      for (int t = 0; t < r; ++t) {
        Elem x = a[t];
        const int k = t < i ? j + 1 : j;
        for (int s = 0; s < k; ++s) x = g.pth_power(x);
        gens.push_back(x);
      }
      Subgroup s = closure(g, gens);
      if (rc.terms.empty() || !(rc.terms.back() == s)) rc.terms.push_back(std::move(s));
    }
  for (std::size_t i = 0; i + 1 < rc.terms.size(); ++i) {
    Subgroup dd = derived_subgroup(g, rc.terms[i]);
    Subgroup ap = agemo(g, rc.terms[i + 1]);
    if (!ap.contains(dd)) rc.contained = false;
    if (!(ap == dd)) rc.equal = false;
  }
  return rc;
}

}  // namespace

PowerfulBasis powerful_basis(const Group& g) {
  if (!is_powerfully_solvable(g)) throw PreconditionError("group is not powerfully solvable");
  const Subgroup top = whole(g);
  const Subgroup gp = agemo(g, top);
  std::optional<PowerfulBasis> fallback;
  std::optional<PowerfulBasis> found;
  long budget = 20000;
  std::vector<Subgroup> flag{top};
  std::vector<Elem> basis;
  std::vector<int> orders;
  std::function<void()> rec = [&]() {
    if (found || budget <= 0) return;
    const Subgroup& k = flag.back();
    if (k == gp) {
      --budget;
      std::uint64_t prod = 1;
      for (int o : orders) prod *= static_cast<std::uint64_t>(ipow(g.p(), o));
      if (prod != g.order()) return;
      RefinedChain rc = refined_chain(g, basis, orders);
      if (!rc.contained) return;
      PowerfulBasis pb;
      pb.basis = basis;
      pb.order_exps = orders;
      pb.chain.kind = ChainKind::PowerfullyAbelian;
      pb.chain.terms = rc.terms;
      pb.equality = rc.equal;
      if (rc.equal)
        found = pb;
      else if (!fallback)
        fallback = pb;
      return;
    }
    std::vector<std::pair<int, Subgroup>> next;
    for (const Subgroup& h : maximal_over(g, k, gp)) {
      if (!agemo(g, h).contains(derived_subgroup(g, k))) continue;
      int j = 0;
      while (!(agemo(g, k, j) == agemo(g, h, j))) ++j;
      next.emplace_back(j, h);
    }
    // larger orders first, so bases come out with non-increasing orders when possible
    std::stable_sort(next.begin(), next.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& [j, h] : next) {
      Elem x = find_small_order_witness(g, h, k, j);
      flag.push_back(h);
      basis.push_back(x);
      orders.push_back(g.element_order_exp(x));
      rec();
      flag.pop_back();
      basis.pop_back();
      orders.pop_back();
      if (found || budget <= 0) return;
    }
  };
  rec();
  if (found) return *found;
  if (fallback) return *fallback;
  throw std::logic_error("no powerful basis found for a powerfully solvable group");
}

// ---------------------------------------------------------------- fingerprints and isomorphism

namespace {

int log_p(std::size_t n, int p) {
  int k = 0;
  while (n > 1) n /= p, ++k;
  return k;
}

// Class size of every element, by orbits under conjugation by generators.
std::vector<std::size_t> class_sizes(const Group& g) {
  const Subgroup all = whole(g);
  std::vector<std::size_t> out(g.order(), 0);
  for (Elem x = 0; x < g.order(); ++x) {
    if (out[x] != 0) continue;
    std::vector<Elem> orbit{x};
    std::vector<bool> seen(g.order(), false);
    seen[x] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (Elem t : all.gens()) {
        Elem y = g.conj(orbit[k], t);
        if (!seen[y]) seen[y] = true, orbit.push_back(y);
      }
    for (Elem y : orbit) out[y] = orbit.size();
  }
  return out;
}

}  // namespace

Fingerprint fingerprint(const Group& g) {
  Fingerprint f;
  const Subgroup all = whole(g);
  f.order = g.order();
  for (Elem x = 0; x < g.order(); ++x) {
    f.exponent = std::max(f.exponent, g.element_order_exp(x));
    ++f.order_histogram[g.element_order_exp(x)];
  }
  for (int k = 0;; ++k) {
    Subgroup a = agemo(g, all, k), b = agemo(g, all, k + 1);
    if (a.is_trivial()) break;
    f.type.push_back(log_p(a.size() / b.size(), g.p()));
  }
  Subgroup z = center(g, all);
  f.center = z.size();
  f.center_p = agemo(g, z).size();
  f.derived = derived_subgroup(g, all).size();
  f.agemo = agemo(g, all).size();
  Subgroup o1 = omega(g, all);
  f.omega1 = o1.size();
  f.omega1_comm = mutual_commutator(g, o1, all).size();
  for (std::size_t s : class_sizes(g)) ++f.class_size_histogram[s];
  return f;
}

nlohmann::json fingerprint_to_json(const Fingerprint& f) {
  nlohmann::json j;
  j["order"] = f.order;
  j["exponent_log"] = f.exponent;
  j["type"] = f.type;
  j["center"] = f.center;
  j["center_p"] = f.center_p;
  j["derived"] = f.derived;
  j["agemo"] = f.agemo;
  j["omega1"] = f.omega1;
  j["omega1_comm"] = f.omega1_comm;
  nlohmann::json oh = nlohmann::json::object();
  for (const auto& [k, v] : f.order_histogram) oh[std::to_string(k)] = v;
  j["order_histogram"] = oh;
  nlohmann::json ch = nlohmann::json::object();
  for (const auto& [k, v] : f.class_size_histogram) ch[std::to_string(k)] = v;
  j["class_sizes"] = ch;
  return j;
}

namespace {

// Per-element invariants preserved by isomorphisms.
std::vector<std::array<std::size_t, 6>> element_signatures(const Group& g) {
  const Subgroup all = whole(g);
  const Subgroup z = center(g, all), d = derived_subgroup(g, all), ap = agemo(g, all);
  const auto cls = class_sizes(g);
  std::vector<std::array<std::size_t, 6>> sig(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    const Elem xp = g.pth_power(x);
    sig[x] = {static_cast<std::size_t>(g.element_order_exp(x)), cls[x], cls[xp],
              static_cast<std::size_t>(z.contains(x)) | (static_cast<std::size_t>(d.contains(x)) << 1) |
                  (static_cast<std::size_t>(ap.contains(x)) << 2),
              static_cast<std::size_t>(z.contains(xp)) | (static_cast<std::size_t>(d.contains(xp)) << 1),
              0};
  }
  return sig;
}

// Extends a partial map on <gens[0..k)> to a homomorphism; false on conflict or non-injectivity.
bool extend_hom(const Group& a, const Group& b, const std::vector<Elem>& gens, const std::vector<Elem>& imgs,
                std::vector<Elem>& map, std::vector<bool>& used) {
  constexpr Elem kUnset = 0xffffffffu;
  map.assign(a.order(), kUnset);
  used.assign(b.order(), false);
  map[0] = 0;
  used[0] = true;
  std::vector<Elem> list{0};
  for (std::size_t q = 0; q < list.size(); ++q)
    for (std::size_t t = 0; t < imgs.size(); ++t) {
      Elem v = a.mul(list[q], gens[t]);
      Elem w = b.mul(map[list[q]], imgs[t]);
      if (map[v] == kUnset) {
        if (used[w]) return false;
        map[v] = w;
        used[w] = true;
        list.push_back(v);
      } else if (map[v] != w) {
        return false;
      }
    }
  return true;
}

}  // namespace

bool verify_embedding(const Group& g, const Group& h, const std::vector<Elem>& image_gens) {
  if (static_cast<int>(image_gens.size()) != g.num_gens()) return false;
  std::vector<Elem> gens;
  for (int i = 0; i < g.num_gens(); ++i) gens.push_back(g.generator(i));
  std::vector<Elem> map;
  std::vector<bool> used;
  return extend_hom(g, h, gens, image_gens, map, used);
}

std::optional<std::vector<Elem>> isomorphic(const Group& a, const Group& b) {
  if (a.p() != b.p() || a.order() != b.order()) return std::nullopt;
  if (!(fingerprint(a) == fingerprint(b))) return std::nullopt;
  const auto sa = element_signatures(a), sb = element_signatures(b);
  std::map<std::array<std::size_t, 6>, std::vector<Elem>> by_sig;
  for (Elem y = 0; y < b.order(); ++y) by_sig[sb[y]].push_back(y);
  auto count = [&](Elem x) {
    auto it = by_sig.find(sa[x]);
    return it == by_sig.end() ? std::size_t{0} : it->second.size();
  };
  // minimal generating set of a, preferring elements with few candidate images
  const Subgroup all = whole(a);
  const Subgroup frat = join(a, agemo(a, all), derived_subgroup(a, all));
  std::vector<Elem> gens;
  Subgroup cur = frat;
  while (cur.size() < a.order()) {
    Elem best = 0;
    std::size_t best_count = SIZE_MAX;
    for (Elem x = 0; x < a.order(); ++x)
      if (!cur.contains(x) && count(x) < best_count) best = x, best_count = count(x);
    gens.push_back(best);
    cur = extend(a, cur, best);
  }
  std::vector<Elem> imgs;
  std::vector<Elem> map;
  std::vector<bool> used;
  std::optional<std::vector<Elem>> result;
  std::function<void()> rec = [&]() {
    if (result) return;
    const std::size_t k = imgs.size();
    if (k == gens.size()) {
      std::vector<Elem> sub(gens.begin(), gens.end());
      if (extend_hom(a, b, sub, imgs, map, used) &&
          std::all_of(used.begin(), used.end(), [](bool u) { return u; }))
        result = map;
      return;
    }
    auto it = by_sig.find(sa[gens[k]]);
    if (it == by_sig.end()) return;
    for (Elem y : it->second) {
      imgs.push_back(y);
      std::vector<Elem> sub(gens.begin(), gens.begin() + static_cast<long>(k) + 1);
      if (extend_hom(a, b, sub, imgs, map, used)) rec();
      imgs.pop_back();
      if (result) return;
    }
  };
  rec();
  return result;
}

// ---------------------------------------------------------------- class P

bool is_class_P(const Group& g, const Subgroup& h) {
  if (h.is_trivial()) return true;
  if (!is_powerful(g, h)) return false;
  if (!agemo(g, h, 2).is_trivial()) return false;
  const std::size_t hp = agemo(g, h).size();
  return hp * hp == h.size();
}

bool is_class_P(const Group& g) { return is_class_P(g, whole(g)); }

ClassPBasis classP_basis(const Group& g, const Subgroup& h) {
  if (!is_class_P(g, h)) throw PreconditionError("group is not powerful of type (2,...,2)");
  const Subgroup hp = agemo(g, h);
  std::vector<Elem> basis;
  Subgroup cur = hp;
  for (Elem x : h.elements())
    if (!cur.contains(x)) {
      basis.push_back(x);
      cur = extend(g, cur, x);
    }
  const int r = static_cast<int>(basis.size());
  PrimeField f(g.p());
  // coordinates of H^p w.r.t. the p-th powers of the basis
  std::unordered_map<Elem, Vec> coords;
  std::vector<int> c(r, 0);
  std::function<void(int, Elem)> rec = [&](int i, Elem acc) {
    if (i == r) {
      Vec v(r);
      for (int t = 0; t < r; ++t) v[t] = Fp{static_cast<std::uint32_t>(c[t])};
      coords[acc] = v;
      return;
    }
    for (int e = 0; e < g.p(); ++e) {
      c[i] = e;
      rec(i + 1, g.mul(acc, g.pow(g.pth_power(basis[i]), e)));
    }
  };
  rec(0, 0);
  AltAlgebra v(f, r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      auto it = coords.find(g.comm(basis[i], basis[j]));
      if (it == coords.end()) throw std::logic_error("commutator outside G^p in a class-P group");
      v.set_basis_product(i, j, it->second);
    }
  return {basis, v};
}

AltAlgebra classP_to_algebra(const Group& g) { return classP_basis(g, whole(g)).algebra; }

PcPresentation algebra_to_classP(const AltAlgebra& v) {
  const int r = v.dim();
  const int p = v.field().p();
  std::vector<std::string> names;
  for (int i = 0; i < r; ++i) names.push_back("a" + std::to_string(i + 1));
  PcPresentation pr = PcPresentation::central2(p, names, std::vector<int>(r, 2));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      // [a_j, a_i] = prod a_k^{-p c_k} where [e_i, e_j] = sum c_k e_k
      Word w;
      const Vec& c = v.basis_product(i, j);
      for (int k = 0; k < r; ++k)
        if (c[k].v != 0) w.push_back({k, static_cast<long long>((p - c[k].v) % p) * p});
      if (!w.empty()) pr.commutators[{j, i}] = w;
    }
  return pr;
}

namespace {

Subgroup pull_back(const Group& g, const std::vector<Elem>& basis, const Subspace& u) {
  std::vector<Elem> gens;
  for (const Vec& row : u.basis()) {
    Elem x = 0;
    for (std::size_t k = 0; k < row.size(); ++k) x = g.mul(x, g.pow(basis[k], row[k].v));
    gens.push_back(x);
  }
  return closure(g, gens);
}

}  // namespace

PowerfulCompositionSeries powerful_composition_series(const Group& g) {
  ClassPBasis cb = classP_basis(g, whole(g));
  CompositionSeries cs = composition_series(cb.algebra);
  PowerfulCompositionSeries out;
  for (const Subspace& u : cs.terms) {
    Subgroup s = pull_back(g, cb.basis, u);
    std::size_t want = 1;
    for (int k = 0; k < 2 * u.dim(); ++k) want *= static_cast<std::size_t>(g.p());
    if (s.size() != want) throw std::logic_error("pulled-back subalgebra has the wrong order");
    out.terms.push_back(std::move(s));
  }
  out.factors = cs.factor_tags;
  return out;
}

bool is_powerfully_simple(const Group& g) { return is_simple(classP_to_algebra(g)); }

std::vector<Subgroup> powerfully_embedded_P_subgroups(const Group& g, const Subgroup& h) {
  if (!is_class_P(g, h)) throw PreconditionError("group is not powerful of type (2,...,2)");
  const int r = log_p(h.size(), g.p()) / 2;
  std::set<Subgroup> cyclic;
  for (Elem x : h.elements())
    if (g.element_order_exp(x) == 2) cyclic.insert(closure(g, {x}));
  std::set<Subgroup> all(cyclic.begin(), cyclic.end());
  std::set<Subgroup> level = cyclic;
  for (int rank = 2; rank < r; ++rank) {
    std::set<Subgroup> next;
    const std::vector<Subgroup> cyc(cyclic.begin(), cyclic.end());
    for (const Subgroup& k : level) {
      std::vector<bool> covered(cyc.size(), false);
      for (std::size_t ci = 0; ci < cyc.size(); ++ci) {
        if (covered[ci] || k.contains(cyc[ci])) continue;
        Subgroup j = join(g, k, cyc[ci]);
        if (j.size() != k.size() * g.p() * g.p()) continue;
        // any other cyclic C' <= J gives <K, C'> = J or a subgroup of the wrong order
        for (std::size_t cj = ci + 1; cj < cyc.size(); ++cj)
          if (!covered[cj] && j.contains(cyc[cj])) covered[cj] = true;
        if (next.count(j) || !is_class_P(g, j)) continue;
        next.insert(std::move(j));
      }
    }
    all.insert(next.begin(), next.end());
    level = std::move(next);
  }
  std::vector<Subgroup> out;
  for (const Subgroup& k : all)
    if (k.size() < h.size() && is_powerfully_embedded(g, k, h)) out.push_back(k);
  return out;
}

bool is_powerfully_simple_groupwise(const Group& g, const Subgroup& h) {
  return powerfully_embedded_P_subgroups(g, h).empty();
}

// ---------------------------------------------------------------- quotients and constructions

namespace {

struct PcSequence {
  std::vector<Elem> seq;        // top generator first
  std::vector<Subgroup> level;  // level[i] = <N, seq[i..]>, level[s] = N
};

PcSequence pc_sequence(const Group& g, const Subgroup& n) {
  const Subgroup all = whole(g);
  std::vector<Elem> up;
  std::vector<Subgroup> levels{n};
  while (levels.back().size() < g.order()) {
    const Subgroup& k = levels.back();
    Elem pick = 0;
    bool ok = false;
    for (Elem x = 0; x < g.order() && !ok; ++x) {
      if (k.contains(x) || !k.contains(g.pth_power(x))) continue;
      if (std::all_of(all.gens().begin(), all.gens().end(), [&](Elem t) { return k.contains(g.comm(x, t)); }))
        pick = x, ok = true;
    }
    if (!ok) throw std::logic_error("no central element of order p in a nontrivial p-group quotient");
    up.push_back(pick);
    levels.push_back(extend(g, k, pick));
  }
  PcSequence s;
  s.seq.assign(up.rbegin(), up.rend());
  s.level.assign(levels.rbegin(), levels.rend());
  return s;
}

// Exponents (each in [0,p)) of x modulo N in the pc sequence.
std::vector<int> pc_decompose(const Group& g, const PcSequence& s, Elem x) {
  std::vector<int> e(s.seq.size(), 0);
  for (std::size_t i = 0; i < s.seq.size(); ++i) {
    int k = 0;
    while (!s.level[i + 1].contains(x)) {
      x = g.mul(g.inv(s.seq[i]), x);
      if (++k >= g.p()) throw std::logic_error("pc decomposition failed");
    }
    e[i] = k;
  }
  return e;
}

Word exps_to_word(const std::vector<int>& e, int offset = 0) {
  Word w;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) w.push_back({static_cast<int>(i) + offset, e[i]});
  return w;
}

PcPresentation pc_presentation(const Group& g, const PcSequence& s) {
  const int k = static_cast<int>(s.seq.size());
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back("g" + std::to_string(i + 1));
  PcPresentation pr = PcPresentation::central2(g.p(), names, std::vector<int>(k, 1));
  for (int i = 0; i < k; ++i) {
    pr.powers[i] = exps_to_word(pc_decompose(g, s, g.pth_power(s.seq[i])));
    for (int j = i + 1; j < k; ++j) {
      Word w = exps_to_word(pc_decompose(g, s, g.comm(s.seq[j], s.seq[i])));
      if (!w.empty()) pr.commutators[{j, i}] = w;
    }
  }
  return pr;
}

}  // namespace

PcPresentation quotient(const Group& g, const Subgroup& n) {
  if (!is_normal(g, n, whole(g))) throw PreconditionError("subgroup is not normal");
  if (n.size() == g.order()) throw PreconditionError("quotient by the whole group");
  return pc_presentation(g, pc_sequence(g, n));
}

PcPresentation quotient_by_central(const Group& g, const Subgroup& z) {
  if (!center(g, whole(g)).contains(z)) throw PreconditionError("subgroup is not central");
  return quotient(g, z);
}

PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b) {
  if (a.engine != EngineKind::Central2 || b.engine != EngineKind::Central2)
    throw PreconditionError("direct products need central2 factors");
  if (a.p != b.p) throw PreconditionError("different primes");
  const int off = a.rank();
  std::vector<std::string> names = a.names;
  std::set<std::string> used(names.begin(), names.end());
  for (const auto& nm : b.names) {
    std::string cand = nm;
    while (used.count(cand)) cand += "'";
    used.insert(cand);
    names.push_back(cand);
  }
  std::vector<int> orders = a.order_exp;
  orders.insert(orders.end(), b.order_exp.begin(), b.order_exp.end());
  PcPresentation pr = PcPresentation::central2(a.p, names, orders);
  auto shift = [&](Word w) {
    for (auto& s : w) s.gen += off;
    return w;
  };
  for (int i = 0; i < a.rank(); ++i) pr.powers[i] = a.powers[i];
  for (int i = 0; i < b.rank(); ++i) pr.powers[off + i] = shift(b.powers[i]);
  pr.commutators = a.commutators;
  for (const auto& [key, w] : b.commutators) pr.commutators[{key.first + off, key.second + off}] = shift(w);
  return pr;
}

namespace {

// Normal form lookup for a product basis: element -> exponent vector.
std::unordered_map<Elem, std::vector<long long>> basis_coordinates(const Group& g, const std::vector<Elem>& basis,
                                                                   const std::vector<int>& oexp) {
  std::unordered_map<Elem, std::vector<long long>> out;
  const int r = static_cast<int>(basis.size());
  std::vector<long long> e(r, 0);
  std::function<void(int, Elem)> rec = [&](int i, Elem acc) {
    if (i == r) {
      out.emplace(acc, e);
      return;
    }
    const long long m = ipow(g.p(), oexp[i]);
    Elem x = acc;
    for (long long t = 0; t < m; ++t) {
      e[i] = t;
      rec(i + 1, x);
      x = g.mul(x, basis[i]);
    }
  };
  rec(0, 0);
  return out;
}

Word coords_to_word(const std::vector<long long>& e, int offset) {
  Word w;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) w.push_back({static_cast<int>(i) + offset, e[i]});
  return w;
}

}  // namespace

PcPresentation presentation_from_basis(const Group& g, const std::vector<Elem>& basis) {
  std::vector<int> oexp;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    oexp.push_back(std::max(1, g.element_order_exp(basis[i])));
    names.push_back("b" + std::to_string(i + 1));
  }
  auto coords = basis_coordinates(g, basis, oexp);
  if (coords.size() != g.order()) throw PreconditionError("basis products do not give every element once");
  PcPresentation pr = PcPresentation::central2(g.p(), names, oexp);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      Word w = coords_to_word(coords.at(g.comm(basis[j], basis[i])), 0);
      if (!w.empty()) pr.commutators[{static_cast<int>(j), static_cast<int>(i)}] = w;
    }
  return pr;
}

Embedding embed_powerful_in_class2(const Group& g) {
  const Subgroup all = whole(g);
  if (!is_powerful(g, all)) throw PreconditionError("group is not powerful");
  if (!agemo(g, all, 2).is_trivial()) throw PreconditionError("group exponent exceeds p^2");
  // basis: elements whose p-th powers span G^p, completed by elements of order p
  std::vector<Elem> big, small;
  Subgroup powers = trivial(g);
  for (Elem x = 0; x < g.order(); ++x)
    if (g.element_order_exp(x) == 2 && !powers.contains(g.pth_power(x))) {
      big.push_back(x);
      powers = extend(g, powers, g.pth_power(x));
    }
  Subgroup cur = generated_by(g, agemo(g, all), big);
  for (Elem x = 1; x < g.order() && cur.size() < g.order(); ++x)
    if (g.element_order_exp(x) == 1 && !cur.contains(x)) {
      small.push_back(x);
      cur = extend(g, cur, x);
    }
  if (cur.size() < g.order()) throw std::logic_error("could not complete a basis with elements of order p");
  std::vector<Elem> basis = small;
  basis.insert(basis.end(), big.begin(), big.end());
  const PcPresentation gp = presentation_from_basis(g, basis);
  const int s = static_cast<int>(small.size());
  const int t = static_cast<int>(big.size());
  const int r = s + t;
  std::vector<std::string> names;
  std::vector<int> orders;
  for (int i = 0; i < t; ++i) names.push_back("x" + std::to_string(s + i + 1)), orders.push_back(1);
  for (int i = 0; i < r; ++i) names.push_back("a" + std::to_string(i + 1)), orders.push_back(gp.order_exp[i]);
  PcPresentation hp = PcPresentation::central2(g.p(), names, orders);
  for (int i = 0; i < t; ++i) hp.powers[i] = {{t + s + i, g.p()}};  // x_i^p = a_i^p
  for (const auto& [key, w] : gp.commutators) {
    Word sw = w;
    for (auto& syl : sw) syl.gen += t;
    hp.commutators[{key.first + t, key.second + t}] = sw;
  }
  hp.note = "(G x N)/M with x_i^p = a_i^p identified";
  Embedding emb;
  emb.h = hp;
  Group h(hp);
  auto coords = basis_coordinates(g, basis, gp.order_exp);
  for (int i = 0; i < g.num_gens(); ++i) emb.image_gens.push_back(h.evaluate(coords_to_word(coords.at(g.generator(i)), t)));
  std::vector<Elem> xs;
  for (int i = 0; i < t; ++i) xs.push_back(h.generator(i));
  emb.central_chain.kind = ChainKind::PowerfullyCentral;
  emb.central_chain.terms = {whole(h)};
  if (t > 0) emb.central_chain.terms.push_back(closure(h, xs));
  emb.central_chain.terms.push_back(trivial(h));
  return emb;
}

Embedding embed_class2_in_pn(const Group& g) {
  const Subgroup all = whole(g);
  if (nilpotency_class(g) > 2) throw PreconditionError("group has nilpotency class above 2");
  // central2 presentation of G on a pc sequence
  PcSequence pcs = pc_sequence(g, trivial(g));
  const PcPresentation gp = pc_presentation(g, pcs);
  const Subgroup d = derived_subgroup(g, all);
  // abelian basis of [G,G]
  std::vector<Elem> elems = d.elements();
  std::stable_sort(elems.begin(), elems.end(),
                   [&](Elem x, Elem y) { return g.element_order_exp(x) > g.element_order_exp(y); });
  std::vector<Elem> db;
  std::function<bool(const Subgroup&)> rec = [&](const Subgroup& cur) -> bool {
    if (cur.size() == d.size()) return true;
    for (Elem x : elems) {
      if (x == 0 || cur.contains(x)) continue;
      Subgroup cx = closure(g, {x});
      if (meet(g, cur, cx).size() != 1) continue;
      db.push_back(x);
      if (rec(join(g, cur, cx))) return true;
      db.pop_back();
    }
    return false;
  };
  if (!rec(trivial(g))) throw std::logic_error("no abelian basis found for the derived subgroup");
  const int m = static_cast<int>(db.size());
  const int k = gp.rank();
  std::vector<std::string> names;
  std::vector<int> orders;
  for (int i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1)), orders.push_back(1);
  for (int i = 0; i < k; ++i) names.push_back(gp.names[i]), orders.push_back(1);
  PcPresentation hp = PcPresentation::central2(g.p(), names, orders);
  auto shift = [&](Word w) {
    for (auto& syl : w) syl.gen += m;
    return w;
  };
  for (int i = 0; i < m; ++i) hp.powers[i] = exps_to_word(pc_decompose(g, pcs, db[i]), m);  // x_i^p = b_i
  for (int i = 0; i < k; ++i) hp.powers[m + i] = shift(gp.powers[i]);
  for (const auto& [key, w] : gp.commutators) hp.commutators[{key.first + m, key.second + m}] = shift(w);
  hp.note = "(G x N)/M with x_i^p = b_i for a basis b of [G,G]";
  Embedding emb;
  emb.h = hp;
  Group h(hp);
  for (int i = 0; i < g.num_gens(); ++i)
    emb.image_gens.push_back(h.evaluate(exps_to_word(pc_decompose(g, pcs, g.generator(i)), m)));
  std::vector<Elem> xs;
  for (int i = 0; i < m; ++i) xs.push_back(h.generator(i));
  emb.central_chain.kind = ChainKind::PowerfullyCentral;
  emb.central_chain.terms = {whole(h)};
  if (m > 0) emb.central_chain.terms.push_back(closure(h, xs));
  emb.central_chain.terms.push_back(trivial(h));
  return emb;
}

int nilpotency_class(const Group& g) {
  const Subgroup all = whole(g);
  Subgroup cur = all;
  int c = 0;
  while (!cur.is_trivial()) {
    cur = mutual_commutator(g, cur, all);
    ++c;
  }
  return c;
}

}  // namespace psolv
