#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "psolv/altalg.hpp"
#include "psolv/census.hpp"
#include "psolv/dim3class.hpp"
#include "psolv/pgroup.hpp"

using namespace psolv;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kUsage = 2;

// Input problems reported with exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Tsv, Text };

struct Common {
  std::string format = "text";
  std::uint64_t seed = 1;
  int jobs = 1;
  Format fmt() const { return format == "json" ? Format::Json : format == "tsv" ? Format::Tsv : Format::Text; }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string word_text(const PcPresentation& pr, const Word& w) {
  if (w.empty()) return "1";
  std::vector<std::string> parts;
  for (const auto& s : w) parts.push_back(pr.names[s.gen] + (s.exp == 1 ? "" : "^" + std::to_string(s.exp)));
  return join(parts, " ");
}

std::string relations_text(const PcPresentation& pr) {
  std::vector<std::string> rel;
  for (int i = 0; i < pr.rank(); ++i)
    if (!pr.powers[i].empty())
      rel.push_back(pr.names[i] + "^{p^" + std::to_string(pr.order_exp[i]) + "}=" + word_text(pr, pr.powers[i]));
  for (const auto& [key, w] : pr.commutators)
    rel.push_back("[" + pr.names[key.first] + "," + pr.names[key.second] + "]=" + word_text(pr, w));
  return rel.empty() ? "-" : join(rel, "; ");
}

std::string orders_text(const PcPresentation& pr) {
  std::vector<std::string> o;
  for (int i = 0; i < pr.rank(); ++i) o.push_back(pr.names[i] + ":" + std::to_string(pr.order_exp[i]));
  return join(o, " ");
}

// ---------------------------------------------------------------- file loading

struct Loaded {
  enum Kind { Presentation, Algebra, Matrix } kind;
  std::optional<PcPresentation> pres;
  std::optional<AltAlgebra> algebra;
  std::optional<StructureMatrix> matrix;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return {line, col};
}

Loaded load(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError(path + ": empty file");
  if (text[first] != '{') {
    try {
      return {Loaded::Matrix, std::nullopt, std::nullopt, StructureMatrix::parse(text)};
    } catch (const std::exception& e) {
      throw InputError(path + ":1: " + e.what());
    }
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [l, c] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw InputError(path + ":" + std::to_string(l) + ":" + std::to_string(c) + ": " + e.what());
  }
  try {
    if (j.contains("generators")) return {Loaded::Presentation, PcPresentation::from_json(j), std::nullopt, std::nullopt};
    if (j.contains("bracket")) return {Loaded::Algebra, std::nullopt, algebra_from_json(j), std::nullopt};
    if (j.contains("matrix") && j["matrix"].is_string())
      return {Loaded::Matrix, std::nullopt, std::nullopt, StructureMatrix::parse(j["matrix"].get<std::string>())};
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  throw InputError(path + ": expected a presentation (field 'generators'), an algebra (field 'bracket') or a "
                   "matrix (field 'matrix')");
}

Group load_group(const std::string& path) {
  Loaded l = load(path);
  if (l.kind != Loaded::Presentation) throw InputError(path + ": expected a group presentation");
  try {
    return Group(*l.pres);
  } catch (const PresentationError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json matrix_json(const StructureMatrix& m) {
  json rows = json::array();
  for (const auto& r : m.a) {
    json row = json::array();
    for (auto x : r) row.push_back(x.v);
    rows.push_back(row);
  }
  return {{"text", m.to_text()}, {"rows", rows}};
}

// ---------------------------------------------------------------- verbs

int run_classify(const Common& c, int p, const std::string& method, bool verify) {
  PrimeField f(p);
  const auto m = method == "oracle" ? ClassifyMethod::Oracle : ClassifyMethod::Constructive;
  auto classes = classify_all(f, m);
  std::ostringstream out;
  std::size_t simple = 0;
  for (const auto& ci : classes) simple += ci.label.is_simple();
  if (c.fmt() == Format::Json) {
    json arr = json::array();
    for (const auto& ci : classes)
      arr.push_back({{"label", ci.label.to_string()},
                     {"simple", ci.label.is_simple()},
                     {"orbit_size", ci.orbit_size ? json(*ci.orbit_size) : json()},
                     {"matrix", matrix_json(ci.representative)}});
    out << json{{"p", p}, {"method", method}, {"classes", arr}}.dump(2) << "\n";
  } else if (c.fmt() == Format::Tsv) {
    out << "#label\tsimple\torbit_size\tmatrix\n";
    for (const auto& ci : classes)
      out << ci.label.to_string() << '\t' << yes_no(ci.label.is_simple()) << '\t'
          << (ci.orbit_size ? std::to_string(*ci.orbit_size) : "-") << '\t' << ci.representative.to_text() << '\n';
  } else {
    for (const auto& ci : classes)
      out << ci.label.to_string() << (ci.label.is_simple() ? " (simple)" : "")
          << (ci.orbit_size ? " orbit " + std::to_string(*ci.orbit_size) : "") << ": " << ci.representative.to_text()
          << '\n';
    out << classes.size() << " classes, " << simple << " simple\n";
  }
  std::cout << out.str();
  if (!verify) return kOk;
  std::vector<std::string> fails;
  if (classes.size() != static_cast<std::size_t>(12 + 2 * (p - 1))) fails.push_back("class count");
  if (simple != static_cast<std::size_t>(5 + (p - 2))) fails.push_back("simple count");
  if (p <= 5) {
    std::uint64_t total = 0, all = 1;
    for (int i = 0; i < 9; ++i) all *= p;
    for (const auto& ci : classes) total += ci.orbit_size.value_or(0);
    if (total != all) fails.push_back("orbit sizes do not sum to p^9");
    auto other = classify_all(f, m == ClassifyMethod::Oracle ? ClassifyMethod::Constructive : ClassifyMethod::Oracle);
    bool agree = other.size() == classes.size();
    for (std::size_t i = 0; agree && i < classes.size(); ++i)
      agree = other[i].label == classes[i].label && other[i].orbit_size == classes[i].orbit_size;
    if (!agree) fails.push_back("oracle and constructive classifications disagree");
  }
  for (const auto& s : fails) std::cerr << "verification failed: " << s << '\n';
  return fails.empty() ? kOk : kVerifyFailed;
}

int run_census(const Common& c, int k, int p, bool verify, bool distinct, bool extensions) {
  auto table = census_table(k, p);
  std::ostringstream out;
  if (c.fmt() == Format::Json) {
    out << json{{"k", k}, {"p", p}, {"entries", census_to_json(table)}}.dump(2) << "\n";
  } else if (c.fmt() == Format::Tsv) {
    out << "#label\tengine\torders\trelations\tpowerfully_nilpotent\n";
    for (const auto& e : table)
      out << e.label << '\t' << (e.presentation.engine == EngineKind::Central2 ? "central2" : "metacyclic") << '\t'
          << orders_text(e.presentation) << '\t' << relations_text(e.presentation) << '\t' << yes_no(e.expected_pn)
          << '\n';
  } else {
    for (const auto& e : table)
      out << e.label << ": " << orders_text(e.presentation) << " | " << relations_text(e.presentation)
          << (e.expected_pn ? " | powerfully nilpotent" : "") << '\n';
    out << table.size() << " groups of order " << p << "^" << k << '\n';
  }
  std::cout << out.str();
  if (!verify && !distinct && !extensions) return kOk;
  bool ok = true;
  if (verify || distinct) {
    if (p != 3 && p != 5) throw InputError("verification runs only at p = 3 or p = 5");
    auto rep = verify_census(table, distinct, c.jobs);
    std::cerr << "census: " << rep.groups_checked << " entries checked";
    if (distinct) std::cerr << ", " << rep.isomorphism_pairs_checked << " pairs compared";
    std::cerr << '\n';
    for (const auto& f : rep.failures) std::cerr << "verification failed: " << f << '\n';
    ok = ok && rep.ok;
  }
  if (extensions) {
    if (k != 5) throw InputError("--extensions needs --k 5");
    auto rep = verify_order_p6_extensions(table, c.seed, 2, c.jobs);
    std::cerr << "order p^6 extensions: " << rep.groups_checked << " groups checked\n";
    for (const auto& f : rep.failures) std::cerr << "verification failed: " << f << '\n';
    ok = ok && rep.ok;
  }
  return ok ? kOk : kVerifyFailed;
}

int run_rank2(const Common& c, int x, bool verify, int p) {
  auto params = rank2_parameters(x);
  const long long formula = rank2_count_formula(x);
  const int abelian = abelian_rank2_count(x);
  const auto nonpn = rank2_nonpn_counts(x);
  std::ostringstream out;
  if (c.fmt() == Format::Json) {
    json arr = json::array();
    for (const auto& t : params)
      arr.push_back({{"kind", t.kind == Rank2Kind::I ? "I" : "II"},
                     {"n", t.n},
                     {"m", t.m},
                     {"r", t.r},
                     {"l", t.l ? json(*t.l) : json()},
                     {"powerfully_nilpotent", t.r >= 2}});
    out << json{{"x", x},
                {"params", arr},
                {"abelian", abelian},
                {"formula", formula},
                {"nonpn", {{"semidirect", nonpn.first}, {"nonsemidirect", nonpn.second}}}}
               .dump(2)
        << "\n";
  } else if (c.fmt() == Format::Tsv) {
    out << "#kind\tn\tm\tr\tl\tpowerfully_nilpotent\n";
    for (const auto& t : params)
      out << (t.kind == Rank2Kind::I ? "I" : "II") << '\t' << t.n << '\t' << t.m << '\t' << t.r << '\t'
          << (t.l ? std::to_string(*t.l) : "-") << '\t' << yes_no(t.r >= 2) << '\n';
  } else {
    for (const auto& t : params) out << t.to_string() << (t.r >= 2 ? " powerfully nilpotent" : "") << '\n';
    out << params.size() << " non-abelian + " << abelian << " abelian = " << params.size() + abelian
        << "; formula " << formula << "; not powerfully nilpotent: " << nonpn.first << " semidirect, "
        << nonpn.second << " non-semidirect\n";
  }
  std::cout << out.str();
  if (!verify) return kOk;
  std::vector<std::string> fails;
  if (formula != static_cast<long long>(params.size()) + abelian) fails.push_back("formula disagrees with enumeration");
  for (const auto& t : params) {
    try {
      Group g(t.presentation(p));
      std::uint64_t expect = 1;
      for (int i = 0; i < x; ++i) expect *= p;
      if (g.order() != expect) fails.push_back(t.to_string() + ": wrong order");
      if (!is_powerful(g)) fails.push_back(t.to_string() + ": not powerful");
      if (is_powerfully_nilpotent(g).has_value() != (t.r >= 2))
        fails.push_back(t.to_string() + ": powerful nilpotence does not match r >= 2");
    } catch (const BoundExceeded& e) {
      fails.push_back(t.to_string() + ": " + e.what());
    }
  }
  for (const auto& s : fails) std::cerr << "verification failed: " << s << '\n';
  return fails.empty() ? kOk : kVerifyFailed;
}

int run_counts(const Common& c, int n, const std::string& scheme_name, std::optional<int> x) {
  std::vector<CountScheme> schemes;
  if (scheme_name == "all") {
    schemes = {CountScheme::Solvable, CountScheme::Powerful};
    if (n % 2 == 0) schemes.push_back(CountScheme::ClassP);
  } else {
    schemes = {parse_scheme(scheme_name)};
  }
  std::vector<PresentationCount> rows;
  std::map<CountScheme, std::pair<int, long long>> best;
  for (auto s : schemes) {
    if (s == CountScheme::ClassP) {
      rows.push_back(count_classP_presentations(n));
    } else if (x) {
      rows.push_back(count_presentations(s, n, *x));
    } else {
      for (int xx = 0; 2 * xx <= n; ++xx) rows.push_back(count_presentations(s, n, xx));
    }
    if (!x || s == CountScheme::ClassP) best[s] = optimal_x(n, s);
  }
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.h == r.h_enumerated;
  std::ostringstream out;
  if (c.fmt() == Format::Json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"scheme", to_string(r.scheme)}, {"n", r.n}, {"x", r.x}, {"h", r.h}, {"h_enumerated", r.h_enumerated}});
    json opt = json::object();
    for (const auto& [s, b] : best) opt[to_string(s)] = {{"x", b.first}, {"h", b.second}};
    out << json{{"counts", arr}, {"optimal", opt}}.dump(2) << "\n";
  } else if (c.fmt() == Format::Tsv) {
    out << "#scheme\tn\tx\th\th_enumerated\n";
    for (const auto& r : rows)
      out << to_string(r.scheme) << '\t' << r.n << '\t' << r.x << '\t' << r.h << '\t' << r.h_enumerated << '\n';
  } else {
    for (const auto& r : rows)
      out << to_string(r.scheme) << " n=" << r.n << " x=" << r.x << " h=" << r.h << " (enumerated " << r.h_enumerated
          << ")\n";
    for (const auto& [s, b] : best)
      out << to_string(s) << " optimal x=" << b.first << " h=" << b.second << " h/n^3="
          << static_cast<double>(b.second) / (static_cast<double>(n) * n * n) << '\n';
  }
  std::cout << out.str();
  if (!ok) std::cerr << "verification failed: closed form and enumeration disagree\n";
  return ok ? kOk : kVerifyFailed;
}

struct CheckFlags {
  bool powerful = false, solvable = false, nilpotent = false, classP = false, simple = false, fingerprint = false;
  bool any() const { return powerful || solvable || nilpotent || classP || simple || fingerprint; }
};

int run_check(const Common& c, const std::string& file, CheckFlags fl) {
  Group g = load_group(file);
  if (!fl.any()) fl = {true, true, true, true, true, false};
  json j;
  std::vector<std::string> lines;
  bool ok = true;
  j["order"] = g.order();
  if (fl.powerful) {
    const bool pw = is_powerful(g);
    j["powerful"] = pw;
    lines.push_back("powerful: " + yes_no(pw));
  }
  if (fl.solvable) {
    auto chain = powerfully_abelian_chain(g, whole(g));
    if (chain && !check_powerfully_abelian(g, *chain)) ok = false;
    j["powerfully_solvable"] = chain.has_value();
    if (chain) {
      j["powerful_derived_length"] = chain->length();
      std::vector<std::size_t> sizes;
      for (const auto& t : chain->terms) sizes.push_back(t.size());
      j["chain_orders"] = sizes;
    }
    lines.push_back("solvable: " + (chain ? "yes, length " + std::to_string(chain->length()) : std::string("no")));
  }
  if (fl.nilpotent) {
    auto chain = powerfully_nilpotent_chain(g, whole(g));
    if (chain && !check_powerfully_central(g, whole(g), *chain)) ok = false;
    j["powerfully_nilpotent"] = chain.has_value();
    if (chain) j["powerful_class"] = chain->length();
    lines.push_back("nilpotent: " + (chain ? "yes, class " + std::to_string(chain->length()) : std::string("no")));
  }
  if (fl.classP || fl.simple) {
    const bool cp = is_class_P(g);
    if (fl.classP) {
      j["class_P"] = cp;
      lines.push_back("class P: " + yes_no(cp));
    }
    if (fl.simple) {
      if (cp) {
        const bool s = is_powerfully_simple(g);
        if (g.order() <= Group::kTableBound && s != is_powerfully_simple_groupwise(g, whole(g))) ok = false;
        j["powerfully_simple"] = s;
        lines.push_back("powerfully simple: " + yes_no(s));
      } else {
        j["powerfully_simple"] = nullptr;
        lines.push_back("powerfully simple: n/a (not class P)");
      }
    }
  }
  if (fl.fingerprint) {
    j["fingerprint"] = fingerprint_to_json(fingerprint(g));
    lines.push_back("fingerprint: " + j["fingerprint"].dump());
  }
  if (c.fmt() == Format::Json) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& l : lines) {
      if (c.fmt() == Format::Tsv) {
        auto pos = l.find(": ");
        std::cout << l.substr(0, pos) << '\t' << l.substr(pos + 2) << '\n';
      } else {
        std::cout << l << '\n';
      }
    }
  }
  if (!ok) std::cerr << "verification failed: certificate check\n";
  return ok ? kOk : kVerifyFailed;
}

int run_comp_series(const Common& c, const std::string& file, bool all) {
  Loaded l = load(file);
  std::ostringstream out;
  bool ok = true;
  if (l.kind == Loaded::Presentation) {
    Group g(*l.pres);
    if (!is_class_P(g)) throw InputError(file + ": powerful composition series need a class-P group");
    auto s = powerful_composition_series(g);
    json terms = json::array();
    for (const auto& t : s.terms) terms.push_back(t.size());
    if (c.fmt() == Format::Json) {
      out << json{{"term_orders", terms}, {"factors", s.factors}}.dump(2) << "\n";
    } else {
      for (std::size_t i = 0; i < s.terms.size(); ++i) {
        out << (c.fmt() == Format::Tsv ? "" : "|T| = ") << s.terms[i].size();
        if (i > 0) out << (c.fmt() == Format::Tsv ? "\t" : "  factor ") << s.factors[i - 1];
        out << '\n';
      }
    }
    std::cout << out.str();
    return kOk;
  }
  AltAlgebra v = l.kind == Loaded::Algebra ? *l.algebra : matrix_to_algebra(*l.matrix);
  std::vector<CompositionSeries> series;
  if (all)
    series = all_composition_series(v);
  else
    series = {composition_series(v)};
  for (const auto& s : series) ok = ok && is_composition_series(v, s);
  for (std::size_t i = 1; i < series.size() && ok; ++i) ok = jordan_holder_check(v, series[0], series[i]);
  if (c.fmt() == Format::Json) {
    json arr = json::array();
    for (const auto& s : series) {
      json terms = json::array();
      for (const auto& t : s.terms) terms.push_back(t.to_string());
      arr.push_back({{"terms", terms}, {"factors", s.factor_tags}});
    }
    out << json{{"series", arr}, {"jordan_holder", ok}}.dump(2) << "\n";
  } else {
    for (std::size_t k = 0; k < series.size(); ++k) {
      const auto& s = series[k];
      if (c.fmt() == Format::Tsv) {
        for (std::size_t i = 0; i < s.terms.size(); ++i)
          out << k << '\t' << s.terms[i].dim() << '\t' << (i ? s.factor_tags[i - 1] : "-") << '\t'
              << s.terms[i].to_string() << '\n';
      } else {
        out << "series " << k << ": factors " << join(s.factor_tags, ", ") << '\n';
        for (const auto& t : s.terms) out << "  " << t.to_string() << '\n';
      }
    }
    if (c.fmt() == Format::Text && all)
      out << series.size() << " series, Jordan-Holder " << (ok ? "holds" : "FAILS") << '\n';
  }
  std::cout << out.str();
  if (!ok) std::cerr << "verification failed: composition series check\n";
  return ok ? kOk : kVerifyFailed;
}

int run_witness(const Common& c, const std::string& file) {
  Group g = load_group(file);
  if (!is_powerful(g)) throw InputError(file + ": powerful basis needs a powerful group");
  auto b = powerful_basis(g);
  std::vector<std::string> elems;
  for (Elem x : b.basis) elems.push_back(g.to_string(x));
  std::vector<std::size_t> chain;
  for (const auto& t : b.chain.terms) chain.push_back(t.size());
  std::uint64_t prod = 1;
  for (int e : b.order_exps)
    for (int i = 0; i < e; ++i) prod *= g.p();
  const bool ok = prod == g.order();
  if (c.fmt() == Format::Json) {
    std::cout << json{{"basis", elems}, {"order_exps", b.order_exps}, {"chain_orders", chain}, {"equality", b.equality}}
                     .dump(2)
              << "\n";
  } else if (c.fmt() == Format::Tsv) {
    std::cout << "#element\torder_exp\n";
    for (std::size_t i = 0; i < elems.size(); ++i) std::cout << elems[i] << '\t' << b.order_exps[i] << '\n';
  } else {
    for (std::size_t i = 0; i < elems.size(); ++i) std::cout << elems[i] << "  order p^" << b.order_exps[i] << '\n';
    std::vector<std::string> cs;
    for (auto s : chain) cs.push_back(std::to_string(s));
    std::cout << "chain orders: " << join(cs, " > ") << (b.equality ? " (equality)" : " (containment)") << '\n';
  }
  if (!ok) std::cerr << "verification failed: basis orders do not multiply to |G|\n";
  return ok ? kOk : kVerifyFailed;
}

int run_embed(const Common& c, const std::string& file, const std::string& kind) {
  Group g = load_group(file);
  Embedding e;
  try {
    e = kind == "class2" ? embed_powerful_in_class2(g) : embed_class2_in_pn(g);
  } catch (const PreconditionError& ex) {
    throw InputError(file + ": " + ex.what());
  }
  Group h(e.h);
  const bool injective = verify_embedding(g, h, e.image_gens);
  const bool central = check_powerfully_central(h, whole(h), e.central_chain);
  bool ok = injective && central;
  Subgroup img = closure(h, e.image_gens);
  if (kind == "class2") ok = ok && is_powerfully_embedded(h, img, whole(h)) && nilpotency_class(h) <= 2;
  std::vector<std::string> images;
  for (Elem x : e.image_gens) images.push_back(h.to_string(x));
  if (c.fmt() == Format::Json) {
    std::cout << json{{"h", e.h.to_json()},
                      {"image_gens", images},
                      {"powerful_class_chain_length", e.central_chain.length()},
                      {"verified", ok}}
                     .dump(2)
              << "\n";
  } else {
    const char* sep = c.fmt() == Format::Tsv ? "\t" : ": ";
    std::cout << "order" << sep << h.order() << '\n'
              << "generators" << sep << orders_text(e.h) << '\n'
              << "relations" << sep << relations_text(e.h) << '\n'
              << "images" << sep << join(images, ", ") << '\n'
              << "powerful class chain" << sep << e.central_chain.length() << '\n'
              << "verified" << sep << yes_no(ok) << '\n';
  }
  if (!ok) std::cerr << "verification failed: embedding certificate\n";
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Powerfully solvable and powerfully simple p-groups: classification, census and checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the verb
  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "tsv", "text"}));
  app.add_option("--seed", common.seed, "Seed for randomized sampling");
  app.add_option("--jobs", common.jobs, "Worker threads for verification sweeps")->check(CLI::PositiveNumber);

  int p = 3, k = 3, x = 3, n = 6;
  std::optional<int> count_x;
  bool verify = false, distinct = false, extensions = false, all = false;
  std::string method = "constructive", scheme = "all", file, kind = "class2";
  CheckFlags flags;

  auto* classify = app.add_subcommand("classify-dim3", "Classify 3-dimensional alternating algebras over F_p");
  classify->add_option("--p", p, "Prime")->check(CLI::Range(3, 97));
  classify->add_option("--method", method)->check(CLI::IsMember({"oracle", "constructive"}));
  classify->add_flag("--verify", verify, "Check class counts and oracle agreement");

  auto* census = app.add_subcommand("census", "Powerful groups of order p^k, k = 3, 4, 5");
  census->add_option("--k", k)->required()->check(CLI::Range(3, 5));
  census->add_option("--p", p)->required()->check(CLI::Range(3, 97));
  census->add_flag("--verify", verify, "Instantiate and check every entry");
  census->add_flag("--distinct", distinct, "Check pairwise non-isomorphism");
  census->add_flag("--extensions", extensions, "Spot-check order p^6 groups built over the p^5 entries");

  auto* rank2 = app.add_subcommand("rank2", "Powerful groups of rank 2 and order p^x");
  rank2->add_option("--x", x)->required()->check(CLI::Range(3, 60));
  rank2->add_flag("--verify", verify, "Instantiate each presentation");
  rank2->add_option("--p", p, "Prime for --verify")->check(CLI::Range(3, 97));

  auto* counts = app.add_subcommand("counts", "Exponent h of the number p^h of presentations");
  counts->add_option("--n", n)->required()->check(CLI::Range(0, 100000));
  counts->add_option("--scheme", scheme)->check(CLI::IsMember({"solvable", "powerful", "classP", "all"}));
  counts->add_option("--x", count_x, "Number of generators of order p^2");

  auto* check = app.add_subcommand("check", "Decide properties of a group given as JSON");
  check->add_option("--file", file)->required();
  check->add_flag("--powerful", flags.powerful);
  check->add_flag("--solvable", flags.solvable, "Powerfully solvable, with derived length");
  check->add_flag("--nilpotent", flags.nilpotent, "Powerfully nilpotent, with class");
  check->add_flag("--classP", flags.classP);
  check->add_flag("--simple", flags.simple, "Powerfully simple (class P only)");
  check->add_flag("--fingerprint", flags.fingerprint);

  auto* comp = app.add_subcommand("comp-series", "Composition series of an algebra, matrix or class-P group");
  comp->add_option("--file", file)->required();
  comp->add_flag("--all", all, "Enumerate every series and compare factors");

  auto* witness = app.add_subcommand("witness", "Powerful basis with its refined chain");
  witness->add_option("--file", file)->required();

  auto* embed = app.add_subcommand("embed", "Embed G into a larger group");
  embed->add_option("--file", file)->required();
  embed->add_option("--kind", kind, "class2: powerful G into a class-2 powerful H; pn: class-2 G into a powerfully "
                                    "nilpotent H of class <= 2")
      ->check(CLI::IsMember({"class2", "pn"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) return run_classify(common, p, method, verify);
    if (*census) return run_census(common, k, p, verify, distinct, extensions);
    if (*rank2) return run_rank2(common, x, verify, p);
    if (*counts) return run_counts(common, n, scheme, count_x);
    if (*check) return run_check(common, file, flags);
    if (*comp) return run_comp_series(common, file, all);
    if (*witness) return run_witness(common, file);
    if (*embed) return run_embed(common, file, kind);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
