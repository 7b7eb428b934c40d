#include "psolv/altalg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "psolv/dim3class.hpp"

namespace psolv {

namespace {

// In-place reduced row echelon form; returns pivot columns, drops zero rows.
std::vector<int> rref(const PrimeField& f, std::vector<Vec>& rows, int cols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].v == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Fp s = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].v == 0) continue;
      Fp k = rows[i][c];
      for (int j = 0; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

void check_same_space(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw DimensionMismatch("subspaces live in different ambient spaces");
}

void check_in(const AltAlgebra& v, const Subspace& u) {
  if (u.ambient_dim() != v.dim() || !(u.field() == v.field()))
    throw DimensionMismatch("subspace does not live in the algebra");
}

}  // namespace

Subspace::Subspace(PrimeField field, int ambient_dim) : field_(field), ambient_dim_(ambient_dim) {
  if (ambient_dim < 0) throw DimensionMismatch("negative dimension");
}

Subspace Subspace::span(PrimeField field, int ambient_dim, const std::vector<Vec>& vectors) {
  Subspace s(field, ambient_dim);
  std::vector<Vec> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    s.check_vec(v);
    rows.push_back(v);
  }
  s.pivots_ = rref(field, rows, ambient_dim);
  s.basis_ = std::move(rows);
  return s;
}

Subspace Subspace::full(PrimeField field, int ambient_dim) {
  std::vector<Vec> rows(ambient_dim, Vec(ambient_dim, Fp{0}));
  for (int i = 0; i < ambient_dim; ++i) rows[i][i] = Fp{1};
  return span(field, ambient_dim, rows);
}

void Subspace::check_vec(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_dim_)
    throw DimensionMismatch("vector length " + std::to_string(v.size()) + " != " +
                            std::to_string(ambient_dim_));
}

Vec Subspace::reduce(const Vec& v) const {
  check_vec(v);
  Vec r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Fp k = r[pivots_[i]];
    if (k.v == 0) continue;
    for (int j = 0; j < ambient_dim_; ++j) r[j] = field_.sub(r[j], field_.mul(k, basis_[i][j]));
  }
  return r;
}

bool Subspace::contains(const Vec& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Fp x) { return x.v == 0; });
}

bool Subspace::contains(const Subspace& w) const {
  check_same_space(*this, w);
  if (w.dim() > dim()) return false;
  return std::all_of(w.basis_.begin(), w.basis_.end(), [&](const Vec& b) { return contains(b); });
}

Vec Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) throw PreconditionError("vector not in subspace");
  Vec c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Vec Subspace::combine(const Vec& coeffs) const {
  if (coeffs.size() != basis_.size()) throw DimensionMismatch("coefficient count != dim");
  Vec r(ambient_dim_, Fp{0});
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (coeffs[i].v == 0) continue;
    for (int j = 0; j < ambient_dim_; ++j)
      r[j] = field_.add(r[j], field_.mul(coeffs[i], basis_[i][j]));
  }
  return r;
}

Subspace Subspace::operator+(const Subspace& w) const {
  check_same_space(*this, w);
  std::vector<Vec> rows = basis_;
  rows.insert(rows.end(), w.basis_.begin(), w.basis_.end());
  return span(field_, ambient_dim_, rows);
}

Subspace Subspace::intersect(const Subspace& w) const {
  check_same_space(*this, w);
  // Zassenhaus: rows (u | u) and (w | 0); rows with zero left half span U ∩ W.
  const int d = ambient_dim_;
  std::vector<Vec> rows;
  for (const auto& u : basis_) {
    Vec r(2 * d);
    std::copy(u.begin(), u.end(), r.begin());
    std::copy(u.begin(), u.end(), r.begin() + d);
    rows.push_back(std::move(r));
  }
  for (const auto& x : w.basis_) {
    Vec r(2 * d, Fp{0});
    std::copy(x.begin(), x.end(), r.begin());
    rows.push_back(std::move(r));
  }
  auto piv = rref(field_, rows, 2 * d);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (piv[i] >= d) out.emplace_back(rows[i].begin() + d, rows[i].end());
  return span(field_, d, out);
}

bool operator<(const Subspace& a, const Subspace& b) noexcept {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
  for (std::size_t i = 0; i < a.basis_.size(); ++i)
    for (int j = 0; j < a.ambient_dim_; ++j)
      if (a.basis_[i][j].v != b.basis_[i][j].v) return a.basis_[i][j].v < b.basis_[i][j].v;
  return false;
}

std::string Subspace::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) os << ", ";
    os << "(";
    for (int j = 0; j < ambient_dim_; ++j) os << (j ? "," : "") << basis_[i][j].v;
    os << ")";
  }
  os << ">";
  return os.str();
}

std::vector<Subspace> all_subspaces(PrimeField field, int d) {
  if (d > 5 || field.p() > 7)
    throw BoundExceeded("subspace enumeration needs d <= 5 and p <= 7");
  const std::uint32_t p = field.p();
  std::vector<Subspace> out;
  for (int k = 0; k <= d; ++k) {
    // pivot sets of size k in lexicographic order
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      // free positions: row i, column c > piv[i], c not a pivot
      std::vector<std::pair<int, int>> free;
      for (int i = 0; i < k; ++i)
        for (int c = piv[i] + 1; c < d; ++c)
          if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(i, c);
      std::vector<std::uint32_t> digits(free.size(), 0);
      while (true) {
        std::vector<Vec> rows(k, Vec(d, Fp{0}));
        for (int i = 0; i < k; ++i) rows[i][piv[i]] = Fp{1};
        for (std::size_t t = 0; t < free.size(); ++t)
          rows[free[t].first][free[t].second] = Fp{digits[t]};
        out.push_back(Subspace::span(field, d, rows));
        // odometer, last position fastest so rows compare lexicographically
        int t = static_cast<int>(free.size()) - 1;
        while (t >= 0 && ++digits[t] == p) digits[t--] = 0;
        if (t < 0) break;
      }
      int i = k - 1;
      while (i >= 0 && piv[i] == d - k + i) --i;
      if (i < 0) break;
      ++piv[i];
      for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

AltAlgebra::AltAlgebra(PrimeField field, int dim)
    : field_(field), dim_(dim), table_(static_cast<std::size_t>(dim) * dim, Vec(dim, Fp{0})) {
  if (dim < 0) throw DimensionMismatch("negative dimension");
}

const Vec& AltAlgebra::basis_product(int i, int j) const {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw DimensionMismatch("basis index out of range");
  return table_[static_cast<std::size_t>(i) * dim_ + j];
}

void AltAlgebra::set_basis_product(int i, int j, const Vec& v) {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw DimensionMismatch("basis index out of range");
  if (i == j) throw PreconditionError("[e_i, e_i] is always zero");
  if (static_cast<int>(v.size()) != dim_) throw DimensionMismatch("product vector has wrong length");
  Vec neg(dim_);
  for (int k = 0; k < dim_; ++k) neg[k] = field_.neg(v[k]);
  table_[static_cast<std::size_t>(i) * dim_ + j] = v;
  table_[static_cast<std::size_t>(j) * dim_ + i] = std::move(neg);
}

Vec AltAlgebra::bracket(const Vec& u, const Vec& w) const {
  if (static_cast<int>(u.size()) != dim_ || static_cast<int>(w.size()) != dim_)
    throw DimensionMismatch("bracket arguments must have length " + std::to_string(dim_));
  Vec r(dim_, Fp{0});
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      Fp k = field_.sub(field_.mul(u[i], w[j]), field_.mul(u[j], w[i]));
      if (k.v == 0) continue;
      const Vec& c = table_[static_cast<std::size_t>(i) * dim_ + j];
      for (int t = 0; t < dim_; ++t) r[t] = field_.add(r[t], field_.mul(k, c[t]));
    }
  }
  return r;
}

Vec AltAlgebra::unit(int i) const {
  Vec e(dim_, Fp{0});
  e.at(i) = Fp{1};
  return e;
}

Vec bracket_vec(const AltAlgebra& v, const Vec& u, const Vec& w) { return v.bracket(u, w); }

Subspace product_space(const AltAlgebra& v, const Subspace& u, const Subspace& w) {
  check_in(v, u);
  check_in(v, w);
  std::vector<Vec> prods;
  for (const auto& a : u.basis())
    for (const auto& b : w.basis()) prods.push_back(v.bracket(a, b));
  return Subspace::span(v.field(), v.dim(), prods);
}

bool is_subalgebra(const AltAlgebra& v, const Subspace& u) {
  return u.contains(product_space(v, u, u));
}

bool is_ideal(const AltAlgebra& v, const Subspace& u, const Subspace& w) {
  check_in(v, u);
  check_in(v, w);
  if (!w.contains(u)) throw PreconditionError("is_ideal: U is not contained in W");
  return u.contains(product_space(v, u, w));
}

bool is_ideal(const AltAlgebra& v, const Subspace& u) {
  return is_ideal(v, u, Subspace::full(v.field(), v.dim()));
}

std::vector<Subspace> all_ideals(const AltAlgebra& v) {
  std::vector<Subspace> out;
  const auto full = Subspace::full(v.field(), v.dim());
  for (auto& s : all_subspaces(v.field(), v.dim()))
    if (s.contains(product_space(v, s, full))) out.push_back(std::move(s));
  return out;
}

std::vector<Subspace> maximal_ideals(const AltAlgebra& v) {
  auto ideals = all_ideals(v);
  std::vector<Subspace> out;
  for (const auto& i : ideals) {
    if (i.is_full()) continue;
    bool maximal = true;
    for (const auto& j : ideals)
      if (!j.is_full() && j.dim() > i.dim() && j.contains(i)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(i);
  }
  return out;
}

bool is_simple(const AltAlgebra& v) {
  if (v.dim() == 0) return false;
  if (v.dim() == 1) return true;
  auto full = Subspace::full(v.field(), v.dim());
  // A proper ideal containing V·V exists unless V·V = V.
  if (!product_space(v, full, full).is_full()) return false;
  return all_ideals(v).size() == 2;
}

AltAlgebra subalgebra(const AltAlgebra& v, const Subspace& u) {
  check_in(v, u);
  if (!is_subalgebra(v, u)) throw PreconditionError("subspace is not closed under the product");
  AltAlgebra s(v.field(), u.dim());
  const auto& b = u.basis();
  for (int i = 0; i < u.dim(); ++i)
    for (int j = i + 1; j < u.dim(); ++j) s.set_basis_product(i, j, u.coordinates(v.bracket(b[i], b[j])));
  return s;
}

AltAlgebra quotient(const AltAlgebra& v, const Subspace& ideal) {
  check_in(v, ideal);
  if (!is_ideal(v, ideal)) throw PreconditionError("quotient by a subspace that is not an ideal");
  std::vector<int> comp;
  for (int c = 0; c < v.dim(); ++c)
    if (std::find(ideal.pivots().begin(), ideal.pivots().end(), c) == ideal.pivots().end())
      comp.push_back(c);
  const int k = static_cast<int>(comp.size());
  AltAlgebra q(v.field(), k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      // after reduction the pivot entries vanish, so the complement entries are the coordinates
      Vec r = ideal.reduce(v.basis_product(comp[i], comp[j]));
      Vec c(k);
      for (int t = 0; t < k; ++t) c[t] = r[comp[t]];
      q.set_basis_product(i, j, c);
    }
  return q;
}

Subspace relative_subspace(const Subspace& u, const Subspace& w) {
  check_same_space(u, w);
  if (!w.contains(u)) throw PreconditionError("relative_subspace: U is not inside W");
  std::vector<Vec> rows;
  for (const auto& b : u.basis()) rows.push_back(w.coordinates(b));
  return Subspace::span(w.field(), w.dim(), rows);
}

Subspace lift_subspace(const Subspace& rel, const Subspace& w) {
  if (rel.ambient_dim() != w.dim()) throw DimensionMismatch("relative subspace has wrong ambient dimension");
  std::vector<Vec> rows;
  for (const auto& b : rel.basis()) rows.push_back(w.combine(b));
  return Subspace::span(w.field(), w.ambient_dim(), rows);
}

AltAlgebra factor_algebra(const AltAlgebra& v, const Subspace& upper, const Subspace& lower) {
  auto up = subalgebra(v, upper);
  return quotient(up, relative_subspace(lower, upper));
}

Subspace zassenhaus_project(const AltAlgebra& v, const Subspace& A, const Subspace& B,
                            const Subspace& a, const Subspace& b, const Subspace& x,
                            ProjectionDirection direction) {
  for (const auto* s : {&A, &B, &a, &b, &x}) check_in(v, *s);
  if (!is_subalgebra(v, B) || !is_subalgebra(v, b))
    throw PreconditionError("zassenhaus_project: B and b must be subalgebras");
  if (!is_ideal(v, A, B)) throw PreconditionError("zassenhaus_project: A is not an ideal of B");
  if (!is_ideal(v, a, b)) throw PreconditionError("zassenhaus_project: a is not an ideal of b");
  if (direction == ProjectionDirection::Up) {
    if (!x.contains(a) || !b.contains(x))
      throw PreconditionError("zassenhaus_project: x is outside the interval [a, b]");
    return A + B.intersect(x);
  }
  if (!x.contains(A) || !B.contains(x))
    throw PreconditionError("zassenhaus_project: x is outside the interval [A, B]");
  return a + b.intersect(x);
}

namespace {

void enumerate_series(const AltAlgebra& v, Subspace top, std::vector<Subspace>& chain,
                      std::vector<CompositionSeries>& out, std::size_t limit) {
  if (top.is_zero()) {
    CompositionSeries s;
    s.terms.assign(chain.rbegin(), chain.rend());
    for (std::size_t i = 0; i + 1 < s.terms.size(); ++i)
      s.factor_tags.push_back(factor_tag(factor_algebra(v, s.terms[i + 1], s.terms[i])));
    if (out.size() >= limit) throw BoundExceeded("more than " + std::to_string(limit) + " composition series");
    out.push_back(std::move(s));
    return;
  }
  auto sub = subalgebra(v, top);
  for (const auto& m : maximal_ideals(sub)) {
    chain.push_back(lift_subspace(m, top));
    enumerate_series(v, chain.back(), chain, out, limit);
    chain.pop_back();
  }
}

}  // namespace

std::string factor_tag(const AltAlgebra& factor) {
  switch (factor.dim()) {
    case 1: return "1";
    case 2: throw std::logic_error("a 2-dimensional algebra is never simple");
    case 3: return canonical_form(algebra_to_matrix(factor)).to_string();
    default: return "dim" + std::to_string(factor.dim());
  }
}

bool is_composition_series(const AltAlgebra& v, const CompositionSeries& s) {
  if (s.terms.empty() || !s.terms.front().is_zero() || !s.terms.back().is_full()) return false;
  if (s.factor_tags.size() + 1 != s.terms.size()) return false;
  for (const auto& t : s.terms)
    if (t.ambient_dim() != v.dim() || !(t.field() == v.field())) return false;
  for (std::size_t i = 0; i + 1 < s.terms.size(); ++i) {
    const auto& lo = s.terms[i];
    const auto& hi = s.terms[i + 1];
    if (!hi.contains(lo) || hi.dim() == lo.dim()) return false;
    if (!is_subalgebra(v, hi) || !is_ideal(v, lo, hi)) return false;
    auto f = factor_algebra(v, hi, lo);
    if (!is_simple(f)) return false;
    if (factor_tag(f) != s.factor_tags[i]) return false;
  }
  return true;
}

CompositionSeries composition_series(const AltAlgebra& v) {
  if (v.dim() > 5 || v.field().p() > 7) throw BoundExceeded("composition series needs d <= 5 and p <= 7");
  std::vector<Subspace> desc{Subspace::full(v.field(), v.dim())};
  while (!desc.back().is_zero()) {
    const auto& top = desc.back();
    auto maxi = maximal_ideals(subalgebra(v, top));
    desc.push_back(lift_subspace(maxi.front(), top));
  }
  CompositionSeries s;
  s.terms.assign(desc.rbegin(), desc.rend());
  for (std::size_t i = 0; i + 1 < s.terms.size(); ++i)
    s.factor_tags.push_back(factor_tag(factor_algebra(v, s.terms[i + 1], s.terms[i])));
  return s;
}

std::vector<CompositionSeries> all_composition_series(const AltAlgebra& v, std::size_t limit) {
  if (v.dim() > 5 || v.field().p() > 7) throw BoundExceeded("composition series needs d <= 5 and p <= 7");
  std::vector<CompositionSeries> out;
  std::vector<Subspace> chain{Subspace::full(v.field(), v.dim())};
  enumerate_series(v, chain.back(), chain, out, limit);
  return out;
}

bool jordan_holder_check(const AltAlgebra& v, const CompositionSeries& s1,
                         const CompositionSeries& s2) {
  if (!is_composition_series(v, s1) || !is_composition_series(v, s2))
    throw PreconditionError("jordan_holder_check: not a composition series");
  if (s1.length() != s2.length()) return false;
  auto a = s1.factor_tags;
  auto b = s2.factor_tags;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return false;
  // Factors of dimension >= 4 carry only their dimension as a tag; require them to come
  // from identical subspace pairs so that equality of tags means isomorphism.
  auto big = [](const CompositionSeries& s) {
    std::vector<std::pair<Subspace, Subspace>> r;
    for (int i = 0; i < s.length(); ++i)
      if (s.terms[i + 1].dim() - s.terms[i].dim() >= 4) r.emplace_back(s.terms[i + 1], s.terms[i]);
    return r;
  };
  auto b1 = big(s1), b2 = big(s2);
  for (const auto& pr : b1) {
    bool found = std::any_of(b2.begin(), b2.end(), [&](const auto& q) {
      return q.first == pr.first && q.second == pr.second;
    });
    if (!found) {
      throw BoundExceeded("jordan_holder_check: cannot compare simple factors of dimension >= 4");
    }
  }
  return true;
}

namespace {

// Images of basis vectors as an invertible linear map that preserves brackets.
bool iso_search(const AltAlgebra& from, const AltAlgebra& to, std::vector<Vec>& img,
                const std::vector<Vec>& all_vecs) {
  const int d = from.dim();
  const int k = static_cast<int>(img.size());
  if (k == d) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Vec lhs(d, Fp{0});
        const Vec& c = from.basis_product(i, j);
        const auto& f = to.field();
        for (int t = 0; t < d; ++t)
          if (c[t].v)
            for (int s = 0; s < d; ++s) lhs[s] = f.add(lhs[s], f.mul(c[t], img[t][s]));
        if (lhs != to.bracket(img[i], img[j])) return false;
      }
    return true;
  }
  auto sp = Subspace::span(to.field(), d, img);
  for (const auto& w : all_vecs) {
    if (sp.contains(w)) continue;
    img.push_back(w);
    // partial check on already-assigned pairs whose product stays inside the assigned span
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      const Vec& c = from.basis_product(i, k);
      bool within = true;
      for (int t = k + 1; t < d; ++t)
        if (c[t].v) within = false;
      if (!within) continue;
      Vec lhs(d, Fp{0});
      const auto& f = to.field();
      for (int t = 0; t <= k; ++t)
        if (c[t].v)
          for (int s = 0; s < d; ++s) lhs[s] = f.add(lhs[s], f.mul(c[t], img[t][s]));
      ok = lhs == to.bracket(img[i], img[k]);
    }
    if (ok && iso_search(from, to, img, all_vecs)) return true;
    img.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<Vec>> find_isomorphism(const AltAlgebra& from, const AltAlgebra& to) {
  if (!(from.field() == to.field())) throw DimensionMismatch("algebras over different fields");
  if (from.dim() != to.dim()) return std::nullopt;
  const int d = from.dim();
  if (d > 3) throw BoundExceeded("find_isomorphism supports dim <= 3");
  std::vector<Vec> all;
  const std::uint32_t p = to.field().p();
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= p;
  for (std::size_t idx = 1; idx < n; ++idx) {
    Vec w(d);
    std::size_t r = idx;
    for (int i = d - 1; i >= 0; --i) {
      w[i] = Fp{static_cast<std::uint32_t>(r % p)};
      r /= p;
    }
    all.push_back(std::move(w));
  }
  std::vector<Vec> img;
  if (iso_search(from, to, img, all)) return img;
  return std::nullopt;
}

AltAlgebra random_algebra(int p, int d, std::uint64_t seed) {
  PrimeField f(p);
  AltAlgebra v(f, d);
  std::mt19937_64 rng(seed);
  // density in quarters, so sparse and dense tables both occur
  const auto density = rng() % 4 + 1;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vec c(d);
      for (int t = 0; t < d; ++t) {
        const bool keep = rng() % 4 < density;
        const std::uint64_t x = rng() % static_cast<std::uint64_t>(p);
        c[t] = Fp{keep ? static_cast<std::uint32_t>(x) : 0u};
      }
      v.set_basis_product(i, j, c);
    }
  return v;
}

nlohmann::json algebra_to_json(const AltAlgebra& v) {
  nlohmann::json bracket = nlohmann::json::array();
  for (int i = 0; i < v.dim(); ++i)
    for (int j = i + 1; j < v.dim(); ++j) {
      std::vector<std::uint32_t> c;
      for (auto x : v.basis_product(i, j)) c.push_back(x.v);
      bracket.push_back({i, j, c});
    }
  return {{"p", v.field().p()}, {"dim", v.dim()}, {"bracket", bracket}};
}

AltAlgebra algebra_from_json(const nlohmann::json& j) {
  PrimeField f(j.at("p").get<int>());
  AltAlgebra v(f, j.at("dim").get<int>());
  for (const auto& e : j.at("bracket")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("bracket entry must be [i, j, coeffs]");
    const int i = e[0].get<int>(), k = e[1].get<int>();
    if (i >= k) throw std::invalid_argument("bracket entry needs i < j");
    Vec c;
    for (const auto& x : e[2]) {
      const auto val = x.get<long long>();
      if (val < 0 || val >= f.p()) throw std::invalid_argument("coefficient outside [0, p)");
      c.push_back(Fp{static_cast<std::uint32_t>(val)});
    }
    v.set_basis_product(i, k, c);
  }
  return v;
}

}  // namespace psolv
