#pragma once

// (1,1)-tensors on A (+) A*: matrices over x-polynomials, their degree-2
// function form, deformations, torsion and concomitants.

#include "courant/courant.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace courant {

/// 2d x 2d matrix with x-polynomial entries acting on section components
/// (see section_components for the basis order). Column j is the image of
/// basis section j.
class Endomorphism {
 public:
  explicit Endomorphism(const Signature& sig);

  static Endomorphism zero(const Signature& sig) { return Endomorphism(sig); }
  static Endomorphism identity(const Signature& sig);
  /// Constant matrix from rational rows; throws ValidationError on shape errors.
  static Endomorphism from_rows(const Signature& sig, const std::vector<std::vector<Rational>>& rows);
  /// Block form (a, b; c, e) with d x d constant blocks: a acts A -> A, b is
  /// A* -> A, c is A -> A*, e is A* -> A*.
  static Endomorphism from_blocks(const Signature& sig, const std::vector<std::vector<Rational>>& a,
                                  const std::vector<std::vector<Rational>>& b, const std::vector<std::vector<Rational>>& c,
                                  const std::vector<std::vector<Rational>>& e);

  const Signature& signature() const { return sig_; }
  int dim() const { return 2 * sig_.d(); }

  const SuperPolynomial& at(int row, int col) const { return entries_[row * dim() + col]; }
  /// Throws ValidationError unless `value` is an x-polynomial.
  void set(int row, int col, SuperPolynomial value);
  void set(int row, int col, const Rational& value);

  /// Applies the matrix to a section.
  SuperPolynomial apply(const SuperPolynomial& section) const;

  /// Adjoint w.r.t. the canonical pairing: <u, E* v> = <E u, v>.
  Endomorphism adjoint() const;
  bool is_skew() const;
  bool is_constant() const;
  bool is_zero() const;

  /// Canonical text of all entries, usable as a cache key.
  std::string key() const;

  Endomorphism& operator+=(const Endomorphism& o);
  Endomorphism& operator-=(const Endomorphism& o);
  Endomorphism& operator*=(const Rational& c);
  friend Endomorphism operator+(Endomorphism a, const Endomorphism& b) { return a += b; }
  friend Endomorphism operator-(Endomorphism a, const Endomorphism& b) { return a -= b; }
  friend Endomorphism operator-(Endomorphism a) { return a *= Rational(-1); }
  friend Endomorphism operator*(const Rational& c, Endomorphism a) { return a *= c; }
  friend bool operator==(const Endomorphism& a, const Endomorphism& b);

 private:
  Signature sig_;
  std::vector<SuperPolynomial> entries_;
};

Endomorphism compose(const Endomorphism& a, const Endomorphism& b);
Endomorphism power(const Endomorphism& e, int n);
inline bool is_skew(const Endomorphism& e) { return e.is_skew(); }

/// A skew (1,1)-tensor as a degree-2 function without p-terms.
class TensorFunction {
 public:
  /// Throws ValidationError unless `value` has total degree 2, no p and
  /// exactly two odd generators per term.
  static TensorFunction make(SuperPolynomial value);

  const SuperPolynomial& value() const { return value_; }
  const Signature& signature() const { return value_.signature(); }

  friend bool operator==(const TensorFunction& a, const TensorFunction& b) { return a.value_ == b.value_; }

 private:
  explicit TensorFunction(SuperPolynomial v) : value_(std::move(v)) {}
  SuperPolynomial value_;
};

/// X -> {X, J}.
Endomorphism endo_of(const TensorFunction& j);
/// Inverse of endo_of; throws ValidationError when `e` is not skew.
TensorFunction func_of(const Endomorphism& e);

/// Theta_J = {J, Theta}.
PreCourant deform_theta(const PreCourant& theta, const TensorFunction& j);
/// Fold of deform_theta over `steps`, first step applied first.
PreCourant deform_theta(const PreCourant& theta, const std::vector<TensorFunction>& steps);

/// A bilinear operator on sections: either X,Y -> {{X,F},Y} for a degree-3
/// function F, or the deformation [X,Y]_T = [TX,Y] + [X,TY] - T[X,Y] of
/// another operator by an arbitrary endomorphism T.
///
/// Over a point (n = 0) every operator is bilinear over the rationals and is
/// stored as a table of basis values; otherwise values are computed by
/// recursion through the deformation chain.
class BracketOperator {
 public:
  static BracketOperator of_function(const SuperPolynomial& f);
  static BracketOperator of(const PreCourant& theta) { return of_function(theta.theta()); }

  BracketOperator deformed(const Endomorphism& t) const;
  /// Successive deformations, first element applied first.
  BracketOperator deformed(const std::vector<Endomorphism>& ts) const;

  const Signature& signature() const;
  SuperPolynomial operator()(const SuperPolynomial& x, const SuperPolynomial& y) const;

 private:
  struct Node;
  explicit BracketOperator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using BilinearMap = std::function<SuperPolynomial(const SuperPolynomial&, const SuperPolynomial&)>;

/// T_B T (X,Y) = [TX,TY] - T([X,Y]_T), for the bracket B.
BilinearMap torsion(const BracketOperator& b, const Endomorphism& t);
inline BilinearMap torsion(const PreCourant& theta, const Endomorphism& t) {
  return torsion(BracketOperator::of(theta), t);
}
/// 1/2([X,Y]_{T,T} - [X,Y]_{T^2}).
BilinearMap torsion_via_squares(const BracketOperator& b, const Endomorphism& t);

/// 1/2(Theta_{I,I} - alpha Theta); throws DomainError unless endo_of(I)^2 =
/// alpha id.
SuperPolynomial torsion_function(const PreCourant& theta, const TensorFunction& i, const Rational& alpha);

/// C_Theta(I,J) = Theta_{I,J} + Theta_{J,I}.
SuperPolynomial concomitant(const PreCourant& theta, const TensorFunction& i, const TensorFunction& j);

/// The Nijenhuis concomitant N(I,J) of two endomorphisms for the bracket B.
BilinearMap nijenhuis_concomitant(const BracketOperator& b, const Endomorphism& i, const Endomorphism& j);

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sections on which bilinear-map identities are evaluated: the basis, plus
/// x_i times each basis section when the base has coordinates.
std::vector<SuperPolynomial> probe_sections(const Signature& sig);

/// True iff `m` vanishes on every pair of probe sections.
bool vanishes_on_probes(const BilinearMap& m, const Signature& sig);

/// Total number of terms of m(X,Y) - n(X,Y) over all probe pairs.
std::size_t probe_residual_terms(const BilinearMap& m, const BilinearMap& n, const Signature& sig);

/// Rational eta with a = eta * b, when one exists. Zero `a` gives 0; zero `b`
/// with nonzero `a` gives nullopt.
std::optional<Rational> proportionality(const SuperPolynomial& a, const SuperPolynomial& b);

enum class PairClass { None, Compatible, DeformingNijenhuis, PoissonNijenhuis, Nijenhuis };
std::string to_string(PairClass c);
PairClass parse_pair_class(std::string_view text);

/// Predicates for a pair where I plays the Nijenhuis role and J the
/// deforming/Poisson role.
struct PairClassification {
  bool anti_commute = false;
  bool anti_commute_wrt_theta = false;
  bool compatible_pair = false;
  bool nijenhuis_i = false;
  bool nijenhuis_j = false;
  std::optional<Rational> deforming_eta;
  bool poisson_j = false;
  bool degenerate_theta = false;
  PairClass pair_class = PairClass::None;
};

/// Nijenhuis test: the torsion of `t` vanishes on all probe pairs.
bool is_nijenhuis(const PreCourant& theta, const Endomorphism& t);
/// eta with Theta_{J,J} = eta Theta (0 when both vanish).
std::optional<Rational> deforming_constant(const PreCourant& theta, const TensorFunction& j);

PairClassification classify_pair(const PreCourant& theta, const TensorFunction& i, const TensorFunction& j);

}  // namespace courant
