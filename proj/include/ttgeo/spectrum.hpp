#ifndef TTGEO_SPECTRUM_HPP_
#define TTGEO_SPECTRUM_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ttgeo/chains.hpp"

namespace ttgeo {

enum class Prime : std::uint8_t { L = 0, Ls = 1, M = 2, Ms = 3, N = 4, Ns = 5 };

constexpr std::array<Prime, 6> kAllPrimes{Prime::L, Prime::Ls, Prime::M, Prime::Ms, Prime::N, Prime::Ns};
std::string prime_name(Prime p);
std::optional<Prime> parse_prime(const std::string& s);
// q is a specialization of p (q in the closure of p), including q == p.
bool specializes(Prime p, Prime q);

class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(std::initializer_list<Prime> ps) {
    for (auto p : ps) insert(p);
  }
  static SupportSet all() { return from_bits(0x3f); }
  static SupportSet from_bits(std::uint8_t b) {
    SupportSet s;
    s.bits_ = b & 0x3f;
    return s;
  }
  std::uint8_t bits() const { return bits_; }
  bool contains(Prime p) const { return bits_ >> static_cast<int>(p) & 1U; }
  void insert(Prime p) { bits_ |= static_cast<std::uint8_t>(1U << static_cast<int>(p)); }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  SupportSet operator|(SupportSet o) const { return from_bits(bits_ | o.bits_); }
  SupportSet operator&(SupportSet o) const { return from_bits(bits_ & o.bits_); }
  bool subset_of(SupportSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool operator==(const SupportSet& o) const { return bits_ == o.bits_; }
  bool operator!=(const SupportSet& o) const { return bits_ != o.bits_; }
  bool operator<(const SupportSet& o) const { return bits_ < o.bits_; }
  // "{L, Ls}", "{}" for the empty set
  std::string str() const;
  std::vector<Prime> points() const;

 private:
  std::uint8_t bits_ = 0;
};

bool is_specialization_closed(SupportSet s);
std::vector<SupportSet> closed_subsets();
SupportSet closure(Prime p);
// Support of the prime ideal P: {Q : P not contained in Q}.
SupportSet ideal_support(Prime p);

struct ResidueTest {
  std::string point;    // which prime the test detects
  std::string functor;  // e.g. "res o gr"
  bool nonzero = false;
  bool inferred = false;  // deduced from specialization closure instead of computed
};

struct SupportReport {
  SupportSet support;
  std::vector<ResidueTest> trace;
};

enum class SupportMode { Full, Lazy };

// Support of a filtered complex from the six residue tests.
SupportReport support_report(const Complex& x, SupportMode mode = SupportMode::Lazy);
SupportSet supp(const Complex& x, SupportMode mode = SupportMode::Lazy);

// Support of a plain kC2 complex in the three-point spectrum, as names among cL, cM, cN.
std::set<std::string> supp_KbA(const Complex& y);

struct Classification {
  SupportSet closed;
  std::string name;       // e.g. "closure{L, Ns}"
  std::string generator;  // an object generating the ideal
};

Classification classify_support(SupportSet s);
Classification classify(const Complex& x);
bool ideal_contains(const std::vector<Complex>& generators, const Complex& x);

// An expression in the shell grammar for each of the fourteen closed subsets.
struct IdealRealizer {
  std::string expression;
  SupportSet expected;
};
const std::vector<IdealRealizer>& fourteen_realizers();

// Finite posets of primes; x < y means y lies in the closure of x.
struct FinitePoset {
  std::string name;
  std::vector<std::string> points;
  std::vector<std::pair<std::size_t, std::size_t>> relations;  // generating x < y
  bool conjectural = false;

  std::size_t index(const std::string& p) const;
  bool leq(std::size_t x, std::size_t y) const;
  std::set<std::string> closure(const std::string& p) const;
  bool is_closed(const std::set<std::string>& s) const;
  std::vector<std::set<std::string>> closed_subsets() const;
  // Support of the prime p viewed as an ideal: points q with not q <= p.
  std::set<std::string> ideal_support(const std::string& p) const;
};

FinitePoset atlas_finite(const std::string& name);
std::vector<std::string> atlas_names();

// Spectrum with integral coefficients: the six mod-2 points, e(l) < m(l) for every prime l,
// with e(2) = N and m(2) = Ns, and a generic point P0 below every e(l).
struct SymbolicSet {
  std::set<std::string> points;  // canonical names: L, Ls, M, Ms, N, Ns, P0, e(l), m(l) for odd l
  bool all_e = false;             // e(l) for every prime l
  bool all_m = false;             // m(l) for every prime l
  std::string str() const;
};

class IntegralAtlas {
 public:
  explicit IntegralAtlas(bool conjectural = false) : conjectural_(conjectural) {}
  bool conjectural() const { return conjectural_; }
  // Normalizes aliases e(2) -> N, m(2) -> Ns; throws on unknown names or non-primes.
  static std::string canonical(const std::string& point);
  bool is_point(const std::string& point) const;
  bool specializes(const std::string& p, const std::string& q) const;
  SymbolicSet closure(const std::string& p) const;
  bool is_specialization_closed(const SymbolicSet& s) const;
  bool is_closed(const SymbolicSet& s) const;

 private:
  bool conjectural_;
};

bool is_prime_number(long n);

// Projections from the six-point spectrum to the Tate and Artin subcategories.
std::string project_to_tate(Prime p);
std::string project_to_artin(Prime p);
// map is "DTM2" or "DAM2"
std::string compare(const std::string& map, Prime p);

struct GeneratorCheck {
  Prime prime;
  std::string generators;  // e.g. "T, E(0,0), fund0"
  SupportSet got;
  SupportSet expected;
  bool pass = false;
};

// Every listed generating set of each prime, plus the six Koszul complexes.
std::vector<GeneratorCheck> verify_prime_generators();

}  // namespace ttgeo

#endif  // TTGEO_SPECTRUM_HPP_
