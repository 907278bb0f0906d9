#pragma once

// Graded commutative function algebra of T*[2]A[1] in local coordinates:
// even generators x_i (bidegree (0,0)) and p^i (bidegree (1,1)), odd
// generators xi_a (bidegree (0,1)) and theta^a (bidegree (1,0)).
//
// Coefficients are polynomial in x and p; smooth coefficient functions are
// not modelled.

#include "courant/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace courant {

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class HomogeneityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// n base coordinates x_i (with momenta p^i) and rank d of A.
class Signature {
 public:
  static constexpr int kMaxRank = 32;

  Signature(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  int n_;
  int d_;
};

enum class GeneratorKind { X, P, Xi, Theta };

/// One coordinate generator; `index` is 1-based as in x_1, theta^2, ...
struct Generator {
  GeneratorKind kind;
  int index;

  bool is_odd() const { return kind == GeneratorKind::Xi || kind == GeneratorKind::Theta; }

  /// Accepts "x1", "p2", "xi3", "theta1".
  static Generator parse(std::string_view token);
  std::string name() const;

  friend bool operator==(const Generator&, const Generator&) = default;
};

struct Bidegree {
  int k = 0;
  int l = 0;

  int total() const { return k + l; }

  friend bool operator==(const Bidegree&, const Bidegree&) = default;
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

/// Normalized monomial. Odd generators live in a bit mask whose bit order is
/// the canonical order xi_1 < ... < xi_d < theta^1 < ... < theta^d.
struct Monomial {
  std::vector<std::uint32_t> x;  // exponent of x_i at i-1
  std::vector<std::uint32_t> p;  // exponent of p^i at i-1
  std::uint64_t odd = 0;

  static Monomial one(const Signature& sig);

  int odd_count() const;
  Bidegree bidegree(const Signature& sig) const;
  int total_degree() const;
  bool has_p() const;
  bool has_x() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b);
};

/// Bit position of an odd generator in Monomial::odd.
int odd_bit(const Signature& sig, const Generator& g);
Generator odd_generator_at(const Signature& sig, int bit);

/// Sign (+1/-1) of juxtaposing odd parts `left` and `right` and sorting; the
/// masks must be disjoint.
int merge_sign(std::uint64_t left, std::uint64_t right);

/// Element of the function algebra: exact rational combination of
/// normalized monomials. Canonical form is unique: no zero coefficients.
class SuperPolynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit SuperPolynomial(Signature sig) : sig_(sig) {}

  static SuperPolynomial zero(const Signature& sig) { return SuperPolynomial(sig); }
  static SuperPolynomial constant(const Signature& sig, const Rational& c);
  static SuperPolynomial generator(const Signature& sig, const Generator& g);

  const Signature& signature() const { return sig_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of `m` (zero when absent).
  Rational coefficient(const Monomial& m) const;

  /// Adds c*m, dropping the term when the coefficient cancels.
  void add_term(const Monomial& m, const Rational& c);

  SuperPolynomial& operator+=(const SuperPolynomial& other);
  SuperPolynomial& operator-=(const SuperPolynomial& other);
  SuperPolynomial& operator*=(const Rational& c);

  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
  friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
  friend SuperPolynomial operator-(SuperPolynomial a) { return a *= Rational(-1); }
  friend SuperPolynomial operator*(SuperPolynomial a, const Rational& c) { return a *= c; }
  friend SuperPolynomial operator*(const Rational& c, SuperPolynomial a) { return a *= c; }
  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);

  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b);

  /// Set of total degrees present; empty for zero.
  std::set<int> total_degrees() const;
  std::set<Bidegree> bidegrees() const;

  /// Total degree if homogeneous (zero counts as homogeneous of any degree
  /// and yields nullopt).
  std::optional<int> homogeneous_degree() const;

  /// Throws HomogeneityError unless zero or homogeneous of total degree `deg`.
  void require_degree(int deg, std::string_view what) const;

  bool depends_on_x() const;
  bool depends_on_p() const;

  /// Human-readable canonical text, e.g. "1/2*x1^2*xi1*theta3 - theta2".
  std::string to_string() const;

 private:
  Signature sig_;
  TermMap terms_;
};

/// A generator word with coefficient, before normalization.
struct RawTerm {
  std::vector<Generator> word;
  Rational coefficient;
};

/// Builds the canonical form of a sum of generator words. Reordering odd
/// generators contributes the permutation sign; a repeated odd generator
/// kills the term. Throws SignatureError for out-of-range indices.
SuperPolynomial normalize(const Signature& sig, const std::vector<RawTerm>& raw_terms);

/// Graded commutative product. Throws SignatureError on mismatch.
SuperPolynomial multiply(const SuperPolynomial& f, const SuperPolynomial& g);

/// Sum of the terms of `f` of exactly bidegree `bd`.
SuperPolynomial bidegree_project(const SuperPolynomial& f, Bidegree bd);

/// Sum of the terms of `f` of total degree `deg`.
SuperPolynomial degree_project(const SuperPolynomial& f, int deg);

void require_same_signature(const SuperPolynomial& a, const SuperPolynomial& b);

}  // namespace courant
