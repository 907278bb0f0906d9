#pragma once

// Iterated deformations, the lambda recursion and the executable identity
// catalog T-01 .. T-21.

#include "courant/tensor.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace courant {

/// Theta deformed k times by I; theta_k(theta, i, 0) == theta.
PreCourant theta_k(const PreCourant& theta, const TensorFunction& i, int k);

/// {theta1, theta2} == 0.
bool compatibility_check(const PreCourant& theta1, const PreCourant& theta2);

/// A base structure followed by a word of deformations by two registered
/// tensors, each step 'I' or 'J'.
struct DeformationPath {
  PreCourant base;
  std::string steps;

  PreCourant evaluate(const TensorFunction& i, const TensorFunction& j) const;
};

struct LambdaSequence {
  Rational lambda0;
  std::vector<Rational> values;  // lambda_0 .. lambda_K
};

/// Smallest m in [1, max_m] with lambda0 == 4/((-3)^m - 1).
std::optional<int> excluded_lambda_index(const Rational& lambda0, int max_m);
/// (-3)^k l0 / (1 + (1 - (-3)^k) l0 / 4); throws DomainError on a zero denominator.
Rational lambda_closed_form(const Rational& lambda0, int k);
/// lambda_k = -3 lambda_{k-1} / (1 + lambda_{k-1}) for k <= big_k. Throws
/// DomainError naming m when lambda0 is excluded for some m <= big_k.
LambdaSequence lambda_seq(const Rational& lambda0, int big_k);

enum class CheckStatus { Passed, Failed, NotApplicable };
std::string to_string(CheckStatus s);

struct IdentityBounds {
  int k = 3;
  int m = 3;
  int n = 3;
  int s = 3;
  int t = 3;
};

struct IdentityOptions {
  /// Experimental: accept torsion of I vanishing on the image of J in place
  /// of "I Nijenhuis" where the catalog allows it (T-10).
  bool weak_gate = false;
};

/// Structures and tensors an identity is evaluated on. `i` and `j` may be
/// arbitrary endomorphisms; identities that need skew tensors gate on it.
struct IdentityBindings {
  std::string instance;
  PreCourant theta;
  Endomorphism i;
  std::optional<Endomorphism> j;
  /// Used when the instance leaves lambda0 undetermined (both sides zero),
  /// and for the arithmetic part of T-13.
  std::optional<Rational> lambda0;
};

struct IdentityReport {
  std::string identity_id;
  std::string instance;
  CheckStatus status = CheckStatus::NotApplicable;
  /// Number of exact comparisons performed.
  std::size_t checks = 0;
  /// Total number of nonzero residual terms over all comparisons.
  std::size_t residual_terms = 0;
  /// Labels of failing comparisons (truncated) and skipped hypotheses.
  std::vector<std::string> failures;
  std::vector<std::string> skipped;
  /// Extra named values (classification flags, constants found).
  std::map<std::string, std::string> details;

  bool passed() const { return status == CheckStatus::Passed; }
};

class UnknownIdentityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "T-01" .. "T-21".
const std::vector<std::string>& identity_ids();

/// Evaluates one catalog identity for every parameter value up to `bounds`.
/// Hypotheses are checked first; a failed hypothesis skips the affected
/// statement and is listed in `skipped`. The status is NotApplicable when
/// nothing was evaluated.
IdentityReport verify_identity(const std::string& id, const IdentityBindings& bindings, const IdentityBounds& bounds,
                               const IdentityOptions& options = {});

/// lambda0 with Theta_{{J,{I,J}}} = lambda0 Theta_{J,J,I}. When both sides
/// vanish the relation holds for every lambda0 and `fallback` (default 0) is
/// returned; nullopt when no lambda0 exists.
std::optional<Rational> resolve_lambda0(const PreCourant& theta, const TensorFunction& i, const TensorFunction& j,
                                        const std::optional<Rational>& fallback = std::nullopt);

struct PnHierarchyEntry {
  int n = 0;  // tensor I^n o J
  int k = 0;  // structure Theta_k
  bool poisson = false;
};

struct PnCompatibility {
  int k = 0;
  int m = 0;
  int n = 0;
  bool compatible = false;  // (Theta_k)_{I^m o J, I^n o J} == 0
};

struct PnHierarchy {
  bool applicable = false;
  std::string reason;
  PairClassification input;
  std::vector<PnHierarchyEntry> tensors;
  std::vector<PnCompatibility> compatibility;

  bool all_hold() const;
};

/// Poisson flags of I^n o J for Theta_k (n <= n_max, k <= k_max) and their
/// pairwise compatibility. Requires (J, I) Poisson-Nijenhuis and
/// Theta_{{J,{I,J}}} = 0.
PnHierarchy build_pn_hierarchy(const PreCourant& theta, const TensorFunction& j, const TensorFunction& i, int n_max,
                               int k_max);

}  // namespace courant
