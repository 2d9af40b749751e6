#ifndef TTGEO_SHELL_HPP_
#define TTGEO_SHELL_HPP_

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ttgeo/spectrum.hpp"

namespace ttgeo {

class SyntaxError : public std::invalid_argument {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Matrix inside a complex literal: a name (eta, eps, norm, id, zero) or explicit rows.
struct MatrixLit {
  std::string name;
  std::vector<std::vector<int>> rows;
  bool operator==(const MatrixLit&) const = default;
};

struct MapExpr;
using MapPtr = std::shared_ptr<const MapExpr>;

struct MapExpr {
  enum class Op { Named, Beta, Id, Twist, Shift, Compose };
  Op op = Op::Named;
  std::string name;  // Named: beta rho betarho eta eps etatilde epstilde upsilon iota0 iota1
  int amount = 0;
  ExprPtr object;  // Beta, Id
  MapPtr f, g;     // Twist/Shift use f; Compose is f o g
  bool operator==(const MapExpr& o) const;
};

struct Expr {
  enum class Op { Zero, Unit, E, MotR, MotC, Named, Sum, Tensor, Twist, Shift, Dual, Cone, Literal };
  Op op = Op::Zero;
  std::string name;      // Named: fund0 fundl T conebeta conerho coneomega Lpure
  std::vector<int> ints; // Unit: n; E: l, m; Named: optional argument; Twist/Shift: amount
  ExprPtr a, b;
  MapPtr map;            // Cone
  // Literal: terms from the top degree down, with the top degree and the differentials
  int top = 0;
  std::vector<std::vector<IndecLabel>> terms;
  std::vector<MatrixLit> maps;
  bool operator==(const Expr& o) const;
};

ExprPtr parse(const std::string& text);
MapPtr parse_map(const std::string& text);
std::string print(const Expr& e);
std::string print(const MapExpr& m);

Complex evaluate(const Expr& e);
ChainMap evaluate(const MapExpr& m);
Complex evaluate(const std::string& text);

// Canonical text of a complex in the literal syntax, using explicit matrices.
std::string complex_literal(const Complex& x);

// Line-delimited structured encoding with a versioned schema field.
inline constexpr const char* kSchema = "ttgeo/1";
nlohmann::json to_json(const FiltModule& m);
nlohmann::json to_json(const Complex& x);
nlohmann::json to_json(const FormalSum& s);
nlohmann::json to_json(const SupportSet& s);
FiltModule module_from_json(const nlohmann::json& j);
Complex complex_from_json(const nlohmann::json& j);
FormalSum sum_from_json(const nlohmann::json& j);
SupportSet support_from_json(const nlohmann::json& j);
std::string serialize(const nlohmann::json& j);
nlohmann::json deserialize(const std::string& text);

struct RunOptions {
  std::string format = "text";  // text | json-like
  bool trace = false;
  std::string atlas;            // KbA, DATM2, DTM2, DAM2, DATMZ
  bool closed_count = false;
  std::string closure;          // atlas: closure of a point
  std::string is_closed;        // atlas: "{p, q, ...}" membership query
  std::string project;          // atlas DTM2 / DAM2: image of a point of the six-point spectrum
};

struct Report {
  std::string command;
  std::vector<std::string> args;
  std::vector<std::string> lines;  // text output
  nlohmann::json result;
  int exit_code = 0;
  std::string render(const std::string& format) const;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Report run(const std::string& command, const std::vector<std::string>& args, const RunOptions& opt = {});

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};
std::vector<VerifyCheck> verify_checks();

}  // namespace ttgeo

#endif  // TTGEO_SHELL_HPP_
