#pragma once

// Pre-Courant structures on A (+) A* as degree-3 functions, and the data
// derived from them: anchor, Dorfman bracket, pairing, Jacobiator.
//
// Sections are degree-1 functions. Component order used throughout the
// library: index a-1 holds the theta^a coefficient (the A part), index d+a-1
// holds the xi_a coefficient (the A* part).

#include "courant/grading.hpp"

#include <string>
#include <vector>

namespace courant {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A degree-3 function. Any such function is a pre-Courant structure.
class PreCourant {
 public:
  /// Throws ValidationError unless `theta` is zero or homogeneous of total
  /// degree 3.
  static PreCourant make(SuperPolynomial theta);

  const SuperPolynomial& theta() const { return theta_; }
  const Signature& signature() const { return theta_.signature(); }

  friend bool operator==(const PreCourant& a, const PreCourant& b) { return a.theta_ == b.theta_; }

 private:
  explicit PreCourant(SuperPolynomial theta) : theta_(std::move(theta)) {}
  SuperPolynomial theta_;
};

inline PreCourant make_pre_courant(SuperPolynomial theta) { return PreCourant::make(std::move(theta)); }

struct CourantDecomposition {
  SuperPolynomial mu;     // bidegree (1,2)
  SuperPolynomial gamma;  // bidegree (2,1)
  SuperPolynomial phi;    // bidegree (0,3)
  SuperPolynomial psi;    // bidegree (3,0)
};

/// Exact test of {Theta,Theta} = 0.
bool is_courant(const PreCourant& theta);
CourantDecomposition decompose(const PreCourant& theta);

/// Throws ValidationError unless `x` is a section: linear in the odd
/// generators with coefficients polynomial in x only.
void require_section(const SuperPolynomial& x, std::string_view what = "section");
/// Throws ValidationError unless `f` only involves the x_i.
void require_base_function(const SuperPolynomial& f, std::string_view what = "function");

/// theta^1..theta^d followed by xi_1..xi_d.
std::vector<SuperPolynomial> section_basis(const Signature& sig);
/// Coefficients of a section in the basis order above (degree-0 functions).
std::vector<SuperPolynomial> section_components(const SuperPolynomial& x);
SuperPolynomial section_from_components(const Signature& sig, const std::vector<SuperPolynomial>& comps);

/// [X,Y] = {{X,Theta},Y}.
SuperPolynomial dorfman(const PreCourant& theta, const SuperPolynomial& x, const SuperPolynomial& y);
/// rho(X).f = {{X,Theta},f}.
SuperPolynomial anchor_apply(const PreCourant& theta, const SuperPolynomial& x, const SuperPolynomial& f);
/// <X,Y> = {X,Y}.
SuperPolynomial pairing(const SuperPolynomial& x, const SuperPolynomial& y);
/// [X,[Y,Z]] - [[X,Y],Z] - [Y,[X,Z]].
SuperPolynomial jacobiator(const PreCourant& theta, const SuperPolynomial& x, const SuperPolynomial& y,
                           const SuperPolynomial& z);

struct AxiomResidual {
  std::string label;
  SuperPolynomial residual;
};

/// Evaluates both pre-Courant axioms on every triple drawn from `sections`:
///   rho(X)<Y,Z> = <[X,Y],Z> + <Y,[X,Z]>
///   rho(X)<Y,Z> = <X,[Y,Z] + [Z,Y]>
/// Returns one residual per evaluation, in triple order.
std::vector<AxiomResidual> check_pre_courant_axioms(const PreCourant& theta, const std::vector<SuperPolynomial>& sections);

}  // namespace courant
