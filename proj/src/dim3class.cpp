#include "psolv/dim3class.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace psolv {

namespace mat3 {

Mat3 zero() { return Mat3{}; }

Mat3 identity() {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = Fp{1};
  return m;
}

Mat3 mul(const PrimeField& f, const Mat3& x, const Mat3& y) {
  Mat3 r{};
  const std::uint32_t p = f.p();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::uint32_t s = x[i][0].v * y[0][j].v + x[i][1].v * y[1][j].v + x[i][2].v * y[2][j].v;
      r[i][j] = Fp{s % p};
    }
  return r;
}

Mat3 transpose(const Mat3& x) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = x[j][i];
  return r;
}

Mat3 scale(const PrimeField& f, Fp s, const Mat3& x) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = f.mul(s, x[i][j]);
  return r;
}

Fp det(const PrimeField& f, const Mat3& m) {
  const long long p = f.p();
  auto e = [&](int i, int j) { return static_cast<long long>(m[i][j].v); };
  long long d = e(0, 0) * ((e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) % p) -
                e(0, 1) * ((e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) % p) +
                e(0, 2) * ((e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0)) % p);
  return f.from_int(d);
}

int rank(const PrimeField& f, const Mat3& x) {
  std::vector<Vec> rows;
  for (const auto& r : x) rows.emplace_back(r.begin(), r.end());
  return Subspace::span(f, 3, rows).dim();
}

Mat3 twist(const PrimeField& f, const Mat3& a, const Mat3& p) {
  const Fp d = det(f, p);
  return scale(f, f.inv(d), mul(f, transpose(p), mul(f, a, p)));
}

std::uint64_t encode(std::uint32_t p, const Mat3& x) {
  std::uint64_t idx = 0;
  for (int k = 8; k >= 0; --k) idx = idx * p + x[k / 3][k % 3].v;
  return idx;
}

Mat3 decode(std::uint32_t p, std::uint64_t index) {
  Mat3 m{};
  for (int k = 0; k < 9; ++k) {
    m[k / 3][k % 3] = Fp{static_cast<std::uint32_t>(index % p)};
    index /= p;
  }
  return m;
}

}  // namespace mat3

StructureMatrix StructureMatrix::from_ints(PrimeField f, const std::array<long long, 9>& rowmajor) {
  Mat3 m{};
  for (int k = 0; k < 9; ++k) m[k / 3][k % 3] = f.from_int(rowmajor[k]);
  return {f, m};
}

StructureMatrix StructureMatrix::parse(const std::string& text) {
  std::istringstream is(text);
  std::string head;
  if (!(is >> head) || head.rfind("p=", 0) != 0)
    throw std::invalid_argument("matrix text must start with p=<int>");
  int p = 0;
  try {
    std::size_t used = 0;
    p = std::stoi(head.substr(2), &used);
    if (used != head.size() - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad prime field header '" + head + "'");
  }
  PrimeField f(p);
  Mat3 m{};
  for (int k = 0; k < 9; ++k) {
    long long x;
    if (!(is >> x)) throw std::invalid_argument("matrix text needs 9 entries, got " + std::to_string(k));
    if (x < 0 || x >= p)
      throw std::invalid_argument("entry " + std::to_string(k) + " = " + std::to_string(x) + " outside [0, p)");
    m[k / 3][k % 3] = Fp{static_cast<std::uint32_t>(x)};
  }
  std::string extra;
  if (is >> extra) throw std::invalid_argument("trailing input after 9 matrix entries");
  return {f, m};
}

std::string StructureMatrix::to_text() const {
  std::ostringstream os;
  os << "p=" << field.p();
  for (const auto& r : a)
    for (auto x : r) os << ' ' << x.v;
  return os.str();
}

SymAntiDecomp sym_anti_split(const StructureMatrix& m) {
  const auto& f = m.field;
  const Fp h = f.half();
  SymAntiDecomp d{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      d.sym[i][j] = f.mul(h, f.add(m.a[i][j], m.a[j][i]));
      d.anti[i][j] = f.mul(h, f.sub(m.a[i][j], m.a[j][i]));
    }
  return d;
}

std::string to_string(SymClass c) {
  switch (c) {
    case SymClass::D111: return "D(1,1,1)";
    case SymClass::D110: return "D(1,1,0)";
    case SymClass::Dtau10: return "D(tau,1,0)";
    case SymClass::D100: return "D(1,0,0)";
    case SymClass::D000: return "D(0,0,0)";
  }
  return "?";
}

SymDiagonalization diagonalize_symmetric(const PrimeField& f, const Mat3& s) {
  // Work on M = Pᵗ S P, applying each congruence step to P as column operations.
  Mat3 m = s;
  Mat3 p = mat3::identity();
  auto col_op = [&](int dst, int src, Fp k) {  // column dst += k * column src, and the same on rows
    for (int i = 0; i < 3; ++i) m[i][dst] = f.add(m[i][dst], f.mul(k, m[i][src]));
    for (int j = 0; j < 3; ++j) m[dst][j] = f.add(m[dst][j], f.mul(k, m[src][j]));
    for (int i = 0; i < 3; ++i) p[i][dst] = f.add(p[i][dst], f.mul(k, p[i][src]));
  };
  auto swap_op = [&](int a, int b) {
    for (int i = 0; i < 3; ++i) std::swap(m[i][a], m[i][b]);
    std::swap(m[a], m[b]);
    for (int i = 0; i < 3; ++i) std::swap(p[i][a], p[i][b]);
  };
  for (int k = 0; k < 3; ++k) {
    int piv = -1;
    for (int i = k; i < 3; ++i)
      if (m[i][i].v) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // all remaining diagonal entries vanish: e_i + e_j has value 2 m_ij
      for (int i = k; i < 3 && piv < 0; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (m[i][j].v) {
            col_op(i, j, Fp{1});
            piv = i;
            break;
          }
      if (piv < 0) break;
    }
    if (piv != k) swap_op(piv, k);
    const Fp inv = f.inv(m[k][k]);
    for (int j = k + 1; j < 3; ++j)
      if (m[k][j].v) col_op(j, k, f.neg(f.mul(m[k][j], inv)));
  }
  return {{m[0][0], m[1][1], m[2][2]}, p};
}

SymClass symmetric_canonical(const PrimeField& f, const Mat3& s) {
  auto d = diagonalize_symmetric(f, s).diagonal;
  int r = 0;
  Fp prod{1};
  for (auto x : d)
    if (x.v) {
      ++r;
      prod = f.mul(prod, x);
    }
  switch (r) {
    case 3: return SymClass::D111;
    case 2: return f.is_square(prod) ? SymClass::D110 : SymClass::Dtau10;
    case 1: return SymClass::D100;
    default: return SymClass::D000;
  }
}

AntiClass antisymmetric_class(const Mat3& n) {
  for (const auto& r : n)
    for (auto x : r)
      if (x.v) return AntiClass::Nonzero;
  return AntiClass::Zero;
}

std::string to_string(ClassName n) {
  static const char* names[] = {"A1", "A2", "A3", "A4", "A5", "A6", "B1", "B2",
                                "B3", "B4", "B5", "B6", "B7", "C1", "C2", "D"};
  return names[static_cast<int>(n)];
}

std::string CanonicalLabel::to_string() const {
  std::string s = psolv::to_string(name);
  if (param) s += "(" + std::to_string(*param) + ")";
  return s;
}

bool CanonicalLabel::is_simple() const noexcept {
  switch (name) {
    case ClassName::A1:
    case ClassName::A2:
    case ClassName::A3:
    case ClassName::A4:
    case ClassName::A5:
    case ClassName::A6: return true;
    default: return false;
  }
}

AltAlgebra matrix_to_algebra(const StructureMatrix& m) {
  AltAlgebra v(m.field, 3);
  auto col = [&](int k) {
    Vec c(3);
    for (int i = 0; i < 3; ++i) c[i] = m.a[i][k];
    return c;
  };
  v.set_basis_product(1, 2, col(0));
  v.set_basis_product(2, 0, col(1));
  v.set_basis_product(0, 1, col(2));
  return v;
}

StructureMatrix algebra_to_matrix(const AltAlgebra& v) {
  if (v.dim() != 3) throw DimensionMismatch("structure matrices describe 3-dimensional algebras");
  Mat3 m{};
  const std::pair<int, int> pairs[3] = {{1, 2}, {2, 0}, {0, 1}};
  for (int k = 0; k < 3; ++k) {
    const Vec& c = v.basis_product(pairs[k].first, pairs[k].second);
    for (int i = 0; i < 3; ++i) m[i][k] = c[i];
  }
  return {v.field(), m};
}

namespace {

using V3 = std::array<Fp, 3>;

Fp form(const PrimeField& f, const Mat3& s, const V3& x, const V3& y) {
  std::uint32_t acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc = (acc + x[i].v * s[i][j].v % f.p() * y[j].v) % f.p();
  return Fp{acc};
}

V3 apply(const PrimeField& f, const Mat3& s, const V3& x) {
  V3 r{};
  for (int i = 0; i < 3; ++i)
    r[i] = Fp{(s[i][0].v * x[0].v + s[i][1].v * x[1].v + s[i][2].v * x[2].v) % f.p()};
  return r;
}

bool is_zero(const V3& x) { return x[0].v == 0 && x[1].v == 0 && x[2].v == 0; }

V3 unit3(int i) {
  V3 e{};
  e[i] = Fp{1};
  return e;
}

struct Gram2 {
  Fp m00, m01, m11, delta;
};

Gram2 gram(const PrimeField& f, const Mat3& s, const Mat3& n, const V3& w1, const V3& w2) {
  return {form(f, s, w1, w1), form(f, s, w1, w2), form(f, s, w2, w2), form(f, n, w1, w2)};
}

int rank2(const PrimeField& f, const Gram2& g, Fp& det) {
  det = f.sub(f.mul(g.m00, g.m11), f.mul(g.m01, g.m01));
  if (det.v) return 2;
  return (g.m00.v || g.m01.v || g.m11.v) ? 1 : 0;
}

CanonicalLabel make(ClassName n, const PrimeField& f, std::optional<std::uint32_t> param = std::nullopt) {
  return {n, param, f.canonical_nonsquare().v};
}

}  // namespace

CanonicalLabel canonical_form(const StructureMatrix& m) {
  const auto& f = m.field;
  const auto [s, n] = sym_anti_split(m);

  if (antisymmetric_class(n) == AntiClass::Zero) {
    switch (symmetric_canonical(f, s)) {
      case SymClass::D111: return make(ClassName::A1, f);
      case SymClass::D110: return make(ClassName::B2, f);
      case SymClass::Dtau10: return make(ClassName::B3, f);
      case SymClass::D100: return make(ClassName::C2, f);
      case SymClass::D000: return make(ClassName::D, f);
    }
  }

  // radical of the antisymmetric form
  const V3 r{n[1][2], n[2][0], n[0][1]};
  const Fp c = form(f, s, r, r);
  const V3 sr = apply(f, s, r);

  if (c.v) {
    // W = r^⊥ for the symmetric form
    int j = 0;
    while (sr[j].v == 0) ++j;
    V3 w[2];
    int t = 0;
    for (int k = 0; k < 3; ++k) {
      if (k == j) continue;
      V3 x = unit3(k);
      x[j] = f.neg(f.div(sr[k], sr[j]));
      w[t++] = x;
    }
    const auto g = gram(f, s, n, w[0], w[1]);
    Fp det;
    switch (rank2(f, g, det)) {
      case 0: return make(ClassName::A2, f);
      case 1: {
        const Fp e = g.m00.v ? g.m00 : g.m11;
        return make(f.is_square(f.mul(e, c)) ? ClassName::A3 : ClassName::A4, f);
      }
      default: {
        const Fp alpha = f.div(det, f.mul(g.delta, g.delta));
        if (alpha == f.from_int(-1)) return make(ClassName::B1, f);
        return make(ClassName::A6, f, alpha.v);
      }
    }
  }

  if (is_zero(sr)) {
    int j = 0;
    while (r[j].v == 0) ++j;
    V3 w[2];
    int t = 0;
    for (int k = 0; k < 3; ++k)
      if (k != j) w[t++] = unit3(k);
    const auto g = gram(f, s, n, w[0], w[1]);
    Fp det;
    switch (rank2(f, g, det)) {
      case 0: return make(ClassName::B4, f);
      case 1: return make(ClassName::B5, f);
      default: {
        const Fp alpha = f.div(det, f.mul(g.delta, g.delta));
        if (alpha == f.from_int(-1)) return make(ClassName::C1, f);
        return make(ClassName::B7, f, alpha.v);
      }
    }
  }

  return make(mat3::rank(f, s) == 2 ? ClassName::B6 : ClassName::A5, f);
}

std::vector<CanonicalLabel> all_labels(const PrimeField& f) {
  std::vector<CanonicalLabel> out;
  for (auto n : {ClassName::A1, ClassName::A2, ClassName::A3, ClassName::A4, ClassName::A5})
    out.push_back(make(n, f));
  for (std::uint32_t a = 1; a + 2 <= static_cast<std::uint32_t>(f.p()); ++a)
    out.push_back(make(ClassName::A6, f, a));
  for (auto n : {ClassName::B1, ClassName::B2, ClassName::B3, ClassName::B4, ClassName::B5, ClassName::B6})
    out.push_back(make(n, f));
  for (std::uint32_t a = 1; a + 2 <= static_cast<std::uint32_t>(f.p()); ++a)
    out.push_back(make(ClassName::B7, f, a));
  for (auto n : {ClassName::C1, ClassName::C2, ClassName::D}) out.push_back(make(n, f));
  return out;
}

StructureMatrix named_matrix(const PrimeField& f, const CanonicalLabel& label) {
  using C = std::array<long long, 3>;
  const long long tau = f.canonical_nonsquare().v;
  const long long alpha = label.param.value_or(0);
  auto cols = [&](C c1, C c2, C c3) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i) {
      m[i][0] = f.from_int(c1[i]);
      m[i][1] = f.from_int(c2[i]);
      m[i][2] = f.from_int(c3[i]);
    }
    return StructureMatrix{f, m};
  };
  const C z{0, 0, 0};
  const bool has_param = label.name == ClassName::A6 || label.name == ClassName::B7;
  if (has_param != label.param.has_value() ||
      (has_param && (alpha < 1 || alpha > f.p() - 2)))
    throw std::invalid_argument("bad parameter for label " + label.to_string());
  switch (label.name) {
    case ClassName::A1: return cols({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
    case ClassName::A2: return cols({0, -1, 0}, {1, 0, 0}, {0, 0, 1});
    case ClassName::A3: return cols({1, -1, 0}, {1, 0, 0}, {0, 0, 1});
    case ClassName::A4: return cols({tau, -1, 0}, {1, 0, 0}, {0, 0, 1});
    case ClassName::A5: return cols({0, -1, 1}, {1, 1, 0}, {1, 0, 0});
    case ClassName::A6: return cols({alpha, -1, 0}, {1, 1, 0}, {0, 0, 1});
    case ClassName::B1: return cols({-1, -1, 0}, {1, 1, 0}, {0, 0, 1});
    case ClassName::B2: return cols({1, 0, 0}, {0, 1, 0}, z);
    case ClassName::B3: return cols({tau, 0, 0}, {0, 1, 0}, z);
    case ClassName::B4: return cols({0, -1, 0}, {1, 0, 0}, z);
    case ClassName::B5: return cols({1, -1, 0}, {1, 0, 0}, z);
    case ClassName::B6: return cols({0, -1, 1}, {1, 0, 0}, {1, 0, 0});
    case ClassName::B7: return cols({alpha, -1, 0}, {1, 1, 0}, z);
    case ClassName::C1: return cols({-1, -1, 0}, {1, 1, 0}, z);
    case ClassName::C2: return cols({1, 0, 0}, z, z);
    case ClassName::D: return cols(z, z, z);
  }
  throw std::logic_error("unreachable");
}

std::vector<std::pair<CanonicalLabel, StructureMatrix>> named_table(const PrimeField& f) {
  std::vector<std::pair<CanonicalLabel, StructureMatrix>> out;
  for (const auto& l : all_labels(f)) out.emplace_back(l, named_matrix(f, l));
  return out;
}

std::vector<CanonicalLabel> simple_classes(const PrimeField& f) {
  std::vector<CanonicalLabel> out;
  for (const auto& [l, m] : named_table(f))
    if (mat3::det(f, m.a).v) out.push_back(l);
  return out;
}

std::vector<Mat3> gl3_generators(const PrimeField& f) {
  Mat3 g1 = mat3::identity();
  g1[0][0] = f.primitive_root();
  Mat3 g2{};
  const std::array<long long, 9> e{-1, 0, 1, -1, 0, 0, 0, -1, 0};
  for (int k = 0; k < 9; ++k) g2[k / 3][k % 3] = f.from_int(e[k]);
  return {g1, g2};
}

std::vector<std::uint32_t> orbit_partition(const PrimeField& f) {
  if (f.p() > 5) throw BoundExceeded("orbit oracle enumerates p^9 matrices; needs p <= 5");
  const std::uint32_t p = f.p();
  std::uint64_t n = 1;
  for (int i = 0; i < 9; ++i) n *= p;
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const auto gens = gl3_generators(f);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Mat3 a = mat3::decode(p, i);
    for (const auto& g : gens) {
      auto x = find(static_cast<std::uint32_t>(i));
      auto y = find(static_cast<std::uint32_t>(mat3::encode(p, mat3::twist(f, a, g))));
      if (x == y) continue;
      if (x < y) parent[y] = x;
      else parent[x] = y;
    }
  }
  for (std::uint64_t i = 0; i < n; ++i) parent[i] = find(static_cast<std::uint32_t>(i));
  return parent;
}

std::vector<ClassInfo> classify_all(const PrimeField& f, ClassifyMethod method) {
  const auto table = named_table(f);
  std::vector<ClassInfo> out;
  if (method == ClassifyMethod::Oracle) {
    const auto roots = orbit_partition(f);
    std::map<std::uint32_t, std::uint64_t> sizes;
    for (auto r : roots) ++sizes[r];
    std::map<std::uint32_t, std::size_t> named;
    for (std::size_t i = 0; i < table.size(); ++i) {
      auto r = roots[mat3::encode(f.p(), table[i].second.a)];
      if (!named.emplace(r, i).second)
        throw std::logic_error("named representatives " + table[named[r]].first.to_string() + " and " +
                               table[i].first.to_string() + " share an orbit");
    }
    if (named.size() != sizes.size()) throw std::logic_error("an orbit has no named representative");
    for (const auto& [l, m] : table) out.push_back({l, m, sizes[roots[mat3::encode(f.p(), m.a)]]});
    return out;
  }
  if (f.p() <= 5) {
    const std::uint32_t p = f.p();
    std::uint64_t n = 1;
    for (int i = 0; i < 9; ++i) n *= p;
    std::map<std::string, std::uint64_t> tally;
    for (std::uint64_t i = 0; i < n; ++i) ++tally[canonical_form({f, mat3::decode(p, i)}).to_string()];
    for (const auto& [l, m] : table) {
      auto it = tally.find(l.to_string());
      out.push_back({l, m, it == tally.end() ? 0 : it->second});
    }
    return out;
  }
  for (const auto& [l, m] : table) {
    if (!(canonical_form(m) == l))
      throw std::logic_error("representative of " + l.to_string() + " classifies as " +
                             canonical_form(m).to_string());
    out.push_back({l, m, std::nullopt});
  }
  return out;
}

namespace {

std::optional<Mat3> search_witness(const StructureMatrix& a, const StructureMatrix& b) {
  const auto& f = a.field;
  // identity and scalars first; they settle A ~ A and A ~ λA directly
  for (std::uint32_t mu = 1; mu < static_cast<std::uint32_t>(f.p()); ++mu) {
    Mat3 pm = mat3::scale(f, Fp{mu}, mat3::identity());
    if (mat3::twist(f, a.a, pm) == b.a) return pm;
  }
  const std::uint32_t p = f.p();
  std::uint64_t n = 1;
  for (int i = 0; i < 9; ++i) n *= p;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Mat3 pm = mat3::decode(p, i);
    if (mat3::det(f, pm).v == 0) continue;
    if (mat3::twist(f, a.a, pm) == b.a) return pm;
  }
  return std::nullopt;
}

}  // namespace

Congruence twisted_congruent(const StructureMatrix& a, const StructureMatrix& b) {
  if (!(a.field == b.field)) throw std::invalid_argument("twisted_congruent: prime mismatch");
  const int p = a.field.p();
  if (p <= 5) {
    auto w = search_witness(a, b);
    return {w.has_value(), w};
  }
  const bool eq = canonical_form(a) == canonical_form(b);
  if (!eq || p > 7) return {eq, std::nullopt};
  auto w = search_witness(a, b);
  if (!w) throw std::logic_error("canonical forms agree but no witness exists");
  return {true, w};
}

}  // namespace psolv
