#include "ttgeo/spectrum.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ttgeo/functors.hpp"
#include "ttgeo/named.hpp"

namespace ttgeo {

std::string prime_name(Prime p) {
  static const char* names[] = {"L", "Ls", "M", "Ms", "N", "Ns"};
  return names[static_cast<int>(p)];
}

std::optional<Prime> parse_prime(const std::string& s) {
  for (auto p : kAllPrimes)
    if (prime_name(p) == s) return p;
  return std::nullopt;
}

namespace {

// closure bits of each point, indexed by Prime
constexpr std::uint8_t kClosure[6] = {
    0b000011,  // L: L, Ls
    0b000010,  // Ls
    0b111111,  // M
    0b101010,  // Ms: Ls, Ms, Ns
    0b110000,  // N: N, Ns
    0b100000,  // Ns
};

}  // namespace

bool specializes(Prime p, Prime q) { return kClosure[static_cast<int>(p)] >> static_cast<int>(q) & 1U; }

std::size_t SupportSet::size() const {
  std::size_t n = 0;
  for (auto p : kAllPrimes) n += contains(p);
  return n;
}

std::vector<Prime> SupportSet::points() const {
  std::vector<Prime> out;
  for (auto p : kAllPrimes)
    if (contains(p)) out.push_back(p);
  return out;
}

std::string SupportSet::str() const {
  std::string s = "{";
  bool first = true;
  for (auto p : points()) {
    if (!first) s += ", ";
    first = false;
    s += prime_name(p);
  }
  return s + "}";
}

SupportSet closure(Prime p) { return SupportSet::from_bits(kClosure[static_cast<int>(p)]); }

bool is_specialization_closed(SupportSet s) {
  for (auto p : s.points())
    if (!closure(p).subset_of(s)) return false;
  return true;
}

std::vector<SupportSet> closed_subsets() {
  std::vector<SupportSet> out;
  for (unsigned b = 0; b < 64; ++b) {
    SupportSet s = SupportSet::from_bits(static_cast<std::uint8_t>(b));
    if (is_specialization_closed(s)) out.push_back(s);
  }
  return out;
}

SupportSet ideal_support(Prime p) {
  SupportSet s;
  for (auto q : kAllPrimes)
    if (!specializes(q, p)) s.insert(q);
  return s;
}

SupportReport support_report(const Complex& x0, SupportMode mode) {
  Complex x = x0.kind() == CellKind::Filtered ? x0 : pwz(with_kind(x0, CellKind::PlainC2));
  SupportReport r;
  Complex g = gr_complex(x);
  Complex f = fgt_complex(x);
  auto add = [&](Prime p, const char* functor, bool nz, bool inferred = false) {
    r.trace.push_back({prime_name(p), functor, nz, inferred});
    if (nz) r.support.insert(p);
  };
  add(Prime::Ns, "res o gr", !is_exact_F2(res_complex(g)));
  add(Prime::Ms, "tate o gr", tate_dim(g) != 0);
  add(Prime::Ls, "sta o gr", !is_exact_F2(sta_complex(g)));
  add(Prime::N, "res o fgt", !is_exact_F2(res_complex(f)));
  add(Prime::M, "tate o fgt", tate_dim(f) != 0);
  if (mode == SupportMode::Lazy && r.support.contains(Prime::M)) {
    add(Prime::L, "sta o tfgt", true, true);
  } else if (mode == SupportMode::Lazy && !r.support.contains(Prime::Ls)) {
    add(Prime::L, "sta o tfgt", false, true);
  } else {
    add(Prime::L, "sta o tfgt", !is_exact_F2(sta_complex(tfgt(x))));
  }
  return r;
}

SupportSet supp(const Complex& x, SupportMode mode) { return support_report(x, mode).support; }

std::set<std::string> supp_KbA(const Complex& y) {
  std::set<std::string> s;
  if (!is_exact_F2(res_complex(y))) s.insert("cN");
  if (tate_dim(y) != 0) s.insert("cM");
  if (!is_exact_F2(sta_complex(y))) s.insert("cL");
  return s;
}

const std::vector<IdealRealizer>& fourteen_realizers() {
  using P = Prime;
  static const std::vector<IdealRealizer> table{
      {"0", SupportSet{}},
      {"fund0 * E(1,0)", {P::Ls}},
      {"conebeta * E(0,0)", {P::Ns}},
      {"fund0 * E(1,0) + conebeta * E(0,0)", {P::Ls, P::Ns}},
      {"fund0", {P::L, P::Ls}},
      {"E(0,0)", {P::N, P::Ns}},
      {"fund0 + conebeta * E(0,0)", {P::L, P::Ls, P::Ns}},
      {"E(0,0) + fund0 * E(1,0)", {P::Ls, P::N, P::Ns}},
      {"fund0 + E(0,0)", {P::L, P::Ls, P::N, P::Ns}},
      {"T", {P::Ls, P::Ms, P::Ns}},
      {"conebeta", {P::L, P::Ls, P::Ms, P::Ns}},
      {"T + E(0,0)", {P::Ls, P::Ms, P::N, P::Ns}},
      {"conebeta + E(0,0)", {P::L, P::Ls, P::Ms, P::N, P::Ns}},
      {"1", SupportSet::all()},
  };
  return table;
}

Classification classify_support(SupportSet s) {
  if (!is_specialization_closed(s)) throw EngineError("support not specialization-closed: " + s.str());
  Classification c;
  c.closed = s;
  if (s.empty()) {
    c.name = "empty";
  } else {
    std::string pts;
    for (auto p : s.points()) {
      bool minimal = true;
      for (auto q : s.points())
        if (q != p && specializes(q, p)) minimal = false;
      if (!minimal) continue;
      if (!pts.empty()) pts += ", ";
      pts += prime_name(p);
    }
    c.name = "closure{" + pts + "}";
  }
  for (const auto& r : fourteen_realizers())
    if (r.expected == s) c.generator = r.expression;
  return c;
}

Classification classify(const Complex& x) { return classify_support(supp(x)); }

bool ideal_contains(const std::vector<Complex>& generators, const Complex& x) {
  SupportSet u;
  for (const auto& g : generators) u = u | supp(g);
  return supp(x).subset_of(u);
}

std::size_t FinitePoset::index(const std::string& p) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i] == p) return i;
  throw std::invalid_argument("unknown point " + p + " in " + name);
}

bool FinitePoset::leq(std::size_t x, std::size_t y) const {
  if (x == y) return true;
  std::vector<char> seen(points.size(), 0);
  std::vector<std::size_t> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    std::size_t a = stack.back();
    stack.pop_back();
    for (auto [u, v] : relations) {
      if (u != a || seen[v]) continue;
      if (v == y) return true;
      seen[v] = 1;
      stack.push_back(v);
    }
  }
  return false;
}

std::set<std::string> FinitePoset::closure(const std::string& p) const {
  std::size_t i = index(p);
  std::set<std::string> s;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (leq(i, j)) s.insert(points[j]);
  return s;
}

bool FinitePoset::is_closed(const std::set<std::string>& s) const {
  for (const auto& p : s)
    for (const auto& q : closure(p))
      if (!s.count(q)) return false;
  return true;
}

std::vector<std::set<std::string>> FinitePoset::closed_subsets() const {
  std::vector<std::set<std::string>> out;
  const std::size_t n = points.size();
  for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
    std::set<std::string> s;
    for (std::size_t i = 0; i < n; ++i)
      if (b >> i & 1U) s.insert(points[i]);
    if (is_closed(s)) out.push_back(std::move(s));
  }
  return out;
}

std::set<std::string> FinitePoset::ideal_support(const std::string& p) const {
  std::size_t i = index(p);
  std::set<std::string> s;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (!leq(j, i)) s.insert(points[j]);
  return s;
}

std::vector<std::string> atlas_names() { return {"KbA", "DATM2", "DTM2", "DAM2", "DATMZ"}; }

FinitePoset atlas_finite(const std::string& name) {
  FinitePoset p;
  p.name = name;
  if (name == "KbA") {
    p.points = {"cL", "cM", "cN"};
    p.relations = {{1, 0}, {1, 2}};
  } else if (name == "DATM2") {
    p.points = {"L", "Ls", "M", "Ms", "N", "Ns"};
    p.relations = {{2, 0}, {2, 3}, {2, 4}, {0, 1}, {3, 1}, {3, 5}, {4, 5}};
  } else if (name == "DTM2") {
    p.points = {"0", "<cone(rho)>", "<cone(beta)>", "<cone(beta*rho)>"};
    p.relations = {{3, 1}, {3, 2}, {1, 0}, {2, 0}};
  } else if (name == "DAM2") {
    p.points = {"<M(C)>", "<fund0>", "<M(C), fund0>"};
    p.relations = {{2, 0}, {2, 1}};
  } else {
    throw std::invalid_argument("unknown atlas: " + name);
  }
  return p;
}

bool is_prime_number(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Splits "e(7)" into ('e', 7).
std::optional<std::pair<char, long>> family_point(const std::string& s) {
  if (s.size() < 4 || (s[0] != 'e' && s[0] != 'm') || s[1] != '(' || s.back() != ')') return std::nullopt;
  std::string num = s.substr(2, s.size() - 3);
  if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit)) return std::nullopt;
  return std::make_pair(s[0], std::stol(num));
}

bool contains(const SymbolicSet& s, const std::string& p) {
  if (s.points.count(p)) return true;
  if (p == "N" && s.all_e) return true;
  if (p == "Ns" && s.all_m) return true;
  auto f = family_point(p);
  if (f && f->first == 'e' && s.all_e) return true;
  if (f && f->first == 'm' && s.all_m) return true;
  return false;
}

}  // namespace

std::string SymbolicSet::str() const {
  std::string s = "{";
  bool first = true;
  auto put = [&](const std::string& x) {
    if (!first) s += ", ";
    first = false;
    s += x;
  };
  for (const auto& p : points) put(p);
  if (all_e) put("e(l) for all l");
  if (all_m) put("m(l) for all l");
  return s + "}";
}

std::string IntegralAtlas::canonical(const std::string& point) {
  if (point == "P0" || parse_prime(point)) return point;
  auto f = family_point(point);
  if (!f || !is_prime_number(f->second)) throw std::invalid_argument("unknown point: " + point);
  if (f->second == 2) return f->first == 'e' ? "N" : "Ns";
  return point;
}

bool IntegralAtlas::is_point(const std::string& point) const {
  try {
    canonical(point);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

bool IntegralAtlas::specializes(const std::string& p0, const std::string& q0) const {
  std::string p = canonical(p0), q = canonical(q0);
  if (p == q) return true;
  auto pp = parse_prime(p), qp = parse_prime(q);
  if (pp && qp) return ttgeo::specializes(*pp, *qp);
  auto fq = family_point(q);
  if (p == "P0") return q == "N" || q == "Ns" || fq.has_value();
  auto fp = family_point(p);
  if (fp && fq) return fp->second == fq->second && fp->first == 'e' && fq->first == 'm';
  return false;
}

SymbolicSet IntegralAtlas::closure(const std::string& p0) const {
  std::string p = canonical(p0);
  SymbolicSet s;
  if (p == "P0") {
    s.points = {"P0"};
    s.all_e = s.all_m = true;
    return s;
  }
  if (auto pp = parse_prime(p)) {
    for (auto q : ttgeo::closure(*pp).points()) s.points.insert(prime_name(q));
    return s;
  }
  auto f = family_point(p);
  s.points.insert(p);
  if (f->first == 'e') s.points.insert("m(" + std::to_string(f->second) + ")");
  return s;
}

bool IntegralAtlas::is_specialization_closed(const SymbolicSet& s) const {
  for (const auto& p : s.points) {
    std::string c = canonical(p);
    SymbolicSet cl = closure(c);
    if (cl.all_e && !s.all_e) return false;
    if (cl.all_m && !s.all_m) return false;
    for (const auto& q : cl.points)
      if (!contains(s, q)) return false;
  }
  if (s.all_e && !s.all_m) return false;
  return true;
}

bool IntegralAtlas::is_closed(const SymbolicSet& s) const {
  if (!is_specialization_closed(s)) return false;
  bool infinite = s.all_e || s.all_m;
  if (infinite && !s.points.count("P0")) return false;
  return true;
}

namespace {

bool in_prime(const Complex& x, Prime p) { return !supp(x).contains(p); }

}  // namespace

std::string project_to_tate(Prime p) {
  static const Complex rho = cone_rho();
  static const Complex beta = cone_beta();
  bool r = in_prime(rho, p), b = in_prime(beta, p);
  if (r && b) return "<cone(beta*rho)>";
  if (r) return "<cone(rho)>";
  if (b) return "<cone(beta)>";
  return "0";
}

std::string project_to_artin(Prime p) {
  static const Complex e0 = Complex::object(realize(IndecLabel::e(0, 0)));
  static const Complex f0 = fund0();
  bool e = in_prime(e0, p), f = in_prime(f0, p);
  if (e && f) return "<M(C), fund0>";
  if (e) return "<M(C)>";
  if (f) return "<fund0>";
  throw EngineError("prime contains neither Artin generator");
}

std::string compare(const std::string& map, Prime p) {
  if (map == "DTM2") return project_to_tate(p);
  if (map == "DAM2") return project_to_artin(p);
  throw std::invalid_argument("unknown comparison map: " + map);
}

std::vector<GeneratorCheck> verify_prime_generators() {
  const Complex e0 = Complex::object(realize(IndecLabel::e(0, 0)));
  const Complex e1 = Complex::object(realize(IndecLabel::e(1, 0)));
  const Complex e2 = Complex::object(realize(IndecLabel::e(2, 0)));
  const Complex t = koszul_T(), f0 = fund0(), cb = cone_beta();
  struct Entry {
    Prime p;
    const char* names;
    std::vector<Complex> gens;
  };
  std::vector<Entry> entries{
      {Prime::M, "T, E(0,0), fund0", {t, e0, f0}},
      {Prime::L, "T, E(0,0)", {t, e0}},
      {Prime::N, "T, fund0", {t, f0}},
      {Prime::Ms, "E(0,0), fund0", {e0, f0}},
      {Prime::Ls, "E(0,0)", {e0}},
      {Prime::Ns, "fund0", {f0}},
      {Prime::L, "E(1,0)", {e1}},
      {Prime::N, "conebeta", {cb}},
      {Prime::M, "E(2,0)", {e2}},
  };
  for (auto p : kAllPrimes) entries.push_back({p, "Koszul complex", {koszul_cone(prime_name(p))}});
  std::vector<GeneratorCheck> out;
  for (const auto& e : entries) {
    GeneratorCheck c;
    c.prime = e.p;
    c.generators = e.names;
    for (const auto& g : e.gens) c.got = c.got | supp(g);
    c.expected = ideal_support(e.p);
    c.pass = c.got == c.expected;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ttgeo
