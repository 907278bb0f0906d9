#pragma once

// Setup definitions: the line-oriented text format, the builtin example
// library and the task runner producing reports.
//
// Format (one directive per line, '#' starts a comment):
//
//   setup NAME
//   signature N D
//   theta
//     term COEF GEN...          e.g. term -1 xi1 xi2 theta3
//   end
//   tensor NAME function        degree-2 function, same term lines
//     term COEF GEN...
//   end
//   tensor NAME matrix          2d rows of 2d entries; entries are
//     row E E ...               x-polynomials such as 1/2*x1^2-x2
//   end
//   task KIND ARGS...
//
// Coefficients are exact rationals "p" or "p/q". Generators are x<i>, p<i>,
// xi<a>, theta<a>, optionally with an exponent "^k". Task kinds:
//
//   courant [expect=yes|no]
//   axioms
//   classify I=A J=B [expect=CLASS]
//   deforming J=A [expect=RATIONAL|none]
//   nijenhuis I=A [expect=yes|no]
//   maurer-cartan J=A
//   hierarchy I=A J=B [n=N] [k=K]
//   T-xx I=A [J=B] [k=] [m=] [n=] [s=] [t=] [lambda0=]
//   catalog I=A [J=B] [lambda0=]      all of T-01 .. T-21

#include "courant/hierarchy.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace courant {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct TensorDefinition {
  std::string name;
  bool as_matrix = false;  // emitted as a matrix rather than a function
  Endomorphism value;
};

struct TaskDefinition {
  std::vector<std::string> words;
  int line = 0;
};

struct SetupDefinition {
  std::string name;
  Signature signature{0, 1};
  PreCourant theta = PreCourant::make(SuperPolynomial(Signature(0, 1)));
  std::vector<TensorDefinition> tensors;
  std::vector<TaskDefinition> tasks;

  /// nullptr when absent.
  const TensorDefinition* find(std::string_view tensor) const;
};

/// Throws ParseError with 1-based line and column.
SetupDefinition parse_definition(std::string_view text);
std::string emit_definition(const SetupDefinition& setup);
/// Semantic equality: signature, theta, tensors and task words.
bool same_definition(const SetupDefinition& a, const SetupDefinition& b);

/// x-polynomial entry syntax used by matrix rows.
SuperPolynomial parse_entry(const Signature& sig, std::string_view text);
std::string emit_entry(const SuperPolynomial& entry);

struct BuiltinExample {
  std::string name;
  std::string description;
  SetupDefinition definition;
};

const std::vector<BuiltinExample>& builtin_examples();
/// Throws std::out_of_range for an unknown name.
const BuiltinExample& builtin_example(std::string_view name);

struct RunOptions {
  IdentityBounds bounds;
  IdentityOptions identity;
  int jobs = 1;
  /// Only run `catalog` tasks (used by verify-all).
  bool catalog_only = false;
};

struct SetupEcho {
  std::string name;
  Signature signature{0, 1};
  std::string theta;
};

struct Report {
  std::string setup;
  std::vector<SetupEcho> structures;
  std::vector<IdentityReport> tasks;

  std::size_t count(CheckStatus s) const;
};

/// Runs every task of `setup`; `catalog` tasks expand to T-01 .. T-21.
/// Results follow definition order regardless of `jobs`.
Report run_setup(const SetupDefinition& setup, const RunOptions& options);
/// The catalog tasks of all builtin examples as one report.
Report verify_all(const RunOptions& options);

/// Deterministic JSON with sorted keys.
std::string report_json(const Report& report);
std::string report_text(const Report& report);

}  // namespace courant
