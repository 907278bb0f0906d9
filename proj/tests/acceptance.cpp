// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include "courant/catalog.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace courant;
using testing_support::Gen;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool same_map(const BilinearMap& a, const BilinearMap& b, const Signature& sig) {
  return probe_residual_terms(a, b, sig) == 0;
}

BilinearMap of_function(const SuperPolynomial& f) {
  const auto op = BracketOperator::of_function(f);
  return [op](const SuperPolynomial& x, const SuperPolynomial& y) { return op(x, y); };
}

int parity(const SuperPolynomial& f) { return *f.homogeneous_degree() % 2; }

Outcome bracket_laws() {
  const auto t0 = Clock::now();
  Gen g(1);
  int triples = 0;
  int bad = 0;
  int nontrivial = 0;
  while (triples < 1200) {
    const Signature sig(g.uniform(0, 2), g.uniform(1, 4));
    const auto f = g.homogeneous(sig, g.uniform(0, 4));
    const auto h = g.homogeneous(sig, g.uniform(0, 4));
    const auto k = g.homogeneous(sig, g.uniform(0, 4));
    if (f.is_zero() || h.is_zero() || k.is_zero()) continue;
    ++triples;
    const int s = parity(f) * parity(h) ? -1 : 1;
    const bool anti = bracket(f, h) == -s * bracket(h, f);
    const bool leibniz = bracket(f, h * k) == bracket(f, h) * k + s * (h * bracket(f, k));
    const bool jacobi = bracket(f, bracket(h, k)) == bracket(bracket(f, h), k) + s * bracket(h, bracket(f, k));
    if (!(anti && leibniz && jacobi)) ++bad;
    if (!bracket(f, bracket(h, k)).is_zero()) ++nontrivial;
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << triples << " triples (" << nontrivial << " with nonzero {F,{G,H}}), " << bad << " violations, " << secs << " s";
  return {bad == 0 && secs < 10, os.str()};
}

Outcome courant_recovery() {
  const Signature sig(0, 3);
  const auto basis = section_basis(sig);
  auto jac_nonzero = [&](const PreCourant& t) {
    int n = 0;
    for (const auto& x : basis) {
      for (const auto& y : basis) {
        for (const auto& z : basis) n += jacobiator(t, x, y, z).is_zero() ? 0 : 1;
      }
    }
    return n;
  };
  const auto heis = lie_algebra_theta(sig, testing_support::heisenberg_constants());
  const auto sl2 = lie_algebra_theta(sig, testing_support::sl2_constants());
  const auto bad = lie_algebra_theta(sig, testing_support::jacobi_breaking_constants());
  const bool ok = is_courant(heis) && jac_nonzero(heis) == 0 && is_courant(sl2) && jac_nonzero(sl2) == 0 &&
                  !is_courant(bad) && jac_nonzero(bad) > 0;
  return {ok, "heisenberg, sl2 Courant with vanishing Jacobiator; breaking set has " +
                  std::to_string(jac_nonzero(bad)) + " nonzero basis triples"};
}

Outcome block_tensors() {
  Gen g(3);
  int cases = 0;
  int bad = 0;
  int deforming_pi = 0;
  int nijenhuis_n = 0;
  int deforming_e = 0;
  for (const auto& mu : testing_support::lie_algebras()) {
    const Signature& sig = mu.signature();
    const int d = sig.d();
    const auto c = testing_support::constants_of(mu);
    for (int trial = 0; trial < 12; ++trial) {
      ++cases;
      bool ok = true;
      // a) J_pi deforming iff [pi,pi]_mu = 0
      Matrix pi = g.antisymmetric(d);
      if (trial % 3 == 0) {
        pi = zero_matrix(d);
        if (d >= 2) {
          pi[0][1] = g.nonzero(3);
          pi[1][0] = -pi[0][1];
        }
      }
      const auto jp = j_pi(sig, pi);
      const auto schouten = bracket(jp.value(), bracket(jp.value(), mu.theta()));
      const auto eta = deforming_constant(mu, jp);
      ok &= deform_theta(mu, {jp, jp}).theta() == schouten;
      ok &= eta.has_value() == schouten.is_zero();
      if (eta) {
        ok &= *eta == 0;
        ++deforming_pi;
      }
      // b) J_pi squares to zero, torsion is half the Schouten square
      ok &= power(endo_of(jp), 2).is_zero();
      ok &= same_map(torsion(mu, endo_of(jp)), of_function(Rational(1, 2) * schouten), sig);
      // c) J_omega is always Poisson
      const auto jw = j_omega(sig, g.antisymmetric(d));
      ok &= deform_theta(mu, {jw, jw}).theta().is_zero();
      // d) I_N skew; with N^2 = alpha id, Nijenhuis iff N is
      const Rational alpha = trial % 2 ? Rational(1) : Rational(0);
      const Matrix n = g.square_root_of_scalar(d, alpha);
      const auto in = endo_of(i_n(sig, n));
      ok &= in.is_skew();
      const bool nij = is_nijenhuis(mu, in);
      ok &= nij == testing_support::constants_nijenhuis(c, n);
      nijenhuis_n += nij ? 1 : 0;
      // e) (N, pi; 0, -N*) deforming iff the three bidegree conditions
      Matrix nn = trial % 4 < 2 ? g.matrix(d) : identity_matrix(d);
      if (trial % 4 == 3) {
        for (auto& row : nn) {
          for (auto& v : row) v *= Rational(1, 2);
        }
      }
      const Matrix pp = trial % 3 == 1 ? g.antisymmetric(d) : pi;
      const auto jn = i_n(sig, nn);
      const auto jq = j_pi(sig, pp);
      const auto got = deforming_constant(mu, j_general(sig, nn, pp, zero_matrix(d)));
      const auto eta_n = proportionality(deform_theta(mu, {jn, jn}).theta(), mu.theta());
      const bool mixed = (deform_theta(mu, {jn, jq}).theta() + deform_theta(mu, {jq, jn}).theta()).is_zero();
      const bool poisson = bracket(jq.value(), bracket(jq.value(), mu.theta())).is_zero();
      const bool want = eta_n.has_value() && mixed && poisson;
      ok &= got.has_value() == want;
      if (got && want) {
        ok &= *got == *eta_n;
        ++deforming_e;
      }
      if (!ok) ++bad;
    }
  }
  std::ostringstream os;
  os << cases << " random instances over 6 Lie algebras (d<=4), " << bad << " violations; " << deforming_pi
     << " Poisson bivectors, " << nijenhuis_n << " Nijenhuis I_N, " << deforming_e << " deforming block tensors";
  return {bad == 0 && deforming_pi > 0 && deforming_e > 0, os.str()};
}

Outcome maurer_cartan() {
  int cases = 0;
  int bad = 0;
  int holds = 0;
  auto check = [&](const PreCourant& theta, const Matrix& pi) {
    const Signature& sig = theta.signature();
    Matrix half = identity_matrix(sig.d());
    for (auto& row : half) {
      for (auto& v : row) v *= Rational(1, 2);
    }
    const auto j = j_general(sig, half, pi, zero_matrix(sig.d()));
    const auto p = j_pi(sig, pi).value();
    const auto parts = decompose(theta);
    const bool mc = (bracket(p, parts.gamma) - Rational(1, 2) * bracket(p, bracket(p, parts.mu))).is_zero();
    const auto eta = deforming_constant(theta, j);
    ++cases;
    holds += mc ? 1 : 0;
    if (mc != eta.has_value() || (eta && *eta != Rational(1, 4))) ++bad;
  };
  const auto& two = builtin_example("maurer-cartan-2d").definition.theta;
  for (int t = -4; t <= 4; ++t) {
    Matrix pi = zero_matrix(2);
    pi[0][1] = Rational(t, 2);
    pi[0][1].canonicalize();
    pi[1][0] = -pi[0][1];
    check(two, pi);
  }
  const int holds_2d = holds;
  Gen g(4);
  const auto& three = builtin_example("maurer-cartan-3d").definition.theta;
  for (int trial = 0; trial < 20; ++trial) check(three, g.antisymmetric(3));
  std::ostringstream os;
  os << cases << " bivectors (9 on the 2-dimensional bialgebra, 20 on a 3-dimensional one); Maurer-Cartan held in "
     << holds << " (" << holds_2d << " in dimension 2); " << bad << " disagreements with deforming and eta = 1/4";
  return {bad == 0 && holds_2d > 0, os.str()};
}

Outcome torsion_forms() {
  Gen g(5);
  const std::vector<Rational> alphas{0, 1, -1, Rational(1, 4)};
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Rational alpha = alphas[trial % 4];
    const int d = alpha == -1 ? 2 * g.uniform(1, 2) : g.uniform(1, 3);
    const Signature sig(0, d);
    const auto theta = PreCourant::make(g.homogeneous(sig, 3, 5));
    const auto e = g.skew_square(sig, alpha);
    if (!e.is_skew() || !(compose(e, e) == alpha * Endomorphism::identity(sig))) {
      ++bad;
      continue;
    }
    const auto op = BracketOperator::of(theta);
    const bool ok = same_map(torsion(op, e), torsion_via_squares(op, e), sig) &&
                    same_map(torsion(op, e), of_function(torsion_function(theta, func_of(e), alpha)), sig);
    if (!ok) ++bad;
  }
  return {bad == 0, "100 skew tensors with I^2 = alpha id, alpha in {0, 1, -1, 1/4}: " + std::to_string(bad) +
                        " disagreements among the three torsion forms"};
}

Outcome hierarchy_compatibility() {
  const auto& ex = builtin_example("book-nijenhuis");
  const auto& theta = ex.definition.theta;
  const auto i = func_of(ex.definition.find("I")->value);
  std::vector<PreCourant> th;
  for (int k = 0; k <= 4; ++k) th.push_back(theta_k(theta, i, k));
  int bad = 0;
  for (int k = 0; k <= 4; ++k) {
    for (int m = 0; m <= 4; ++m) bad += compatibility_check(th[k], th[m]) ? 0 : 1;
  }
  const bool nontrivial = !proportionality(th[1].theta(), theta.theta()).has_value();
  const bool ok = is_courant(theta) && is_nijenhuis(theta, endo_of(i)) && nontrivial && bad == 0;
  return {ok, "Nijenhuis I on the book algebra, Theta_1 not a multiple of Theta; " + std::to_string(bad) +
                  " of 25 brackets {Theta_k, Theta_m} nonzero"};
}

Outcome lambda_sequence() {
  int bad = 0;
  for (const Rational& l0 : {Rational(1), Rational(2), Rational(-1, 2), Rational(1, 3)}) {
    const auto seq = lambda_seq(l0, 10);
    Rational l = l0;
    for (int k = 0; k <= 10; ++k) {
      if (seq.values[k] != l || lambda_closed_form(l0, k) != l) ++bad;
      l = -3 * l / (1 + l);
      l.canonicalize();
    }
  }
  auto rejected = [](const Rational& l0) {
    try {
      lambda_seq(l0, 10);
    } catch (const DomainError&) {
      return true;
    }
    return false;
  };
  const bool minus_two = rejected(Rational(-2));
  const bool half = rejected(Rational(1, 2));
  std::ostringstream os;
  os << bad << " mismatches between recursion and closed form; lambda0 = 1/2 "
     << (half ? "rejected" : "accepted") << "; lambda0 = -2 " << (minus_two ? "rejected" : "accepted");
  if (!minus_two) {
    os << " (-2 is not of the form 4/((-3)^m - 1): m = 1 gives -1, and from -2 the recursion runs "
          "-2, -6, -18/5, ... with 1 + lambda never zero)";
  }
  return {bad == 0 && half && minus_two, os.str()};
}

std::string last_json;

Outcome full_catalog() {
  const auto t0 = Clock::now();
  RunOptions o;
  o.bounds = {3, 3, 3, 3, 3};
  const auto report = verify_all(o);
  last_json = report_json(report);
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << report.tasks.size() << " identity instances over " << report.structures.size() << " builtins: "
     << report.count(CheckStatus::Passed) << " passed, " << report.count(CheckStatus::Failed) << " failed, "
     << report.count(CheckStatus::NotApplicable) << " not-applicable, " << secs << " s";
  for (const auto& t : report.tasks) {
    if (t.status == CheckStatus::Failed) os << "\n      failed " << t.identity_id << " on " << t.instance;
    if (t.status != CheckStatus::NotApplicable) continue;
    os << "\n      n/a " << t.identity_id << " on " << t.instance << ":";
    for (const auto& s : t.skipped) os << " [" << s << "]";
  }
  return {report.count(CheckStatus::Failed) == 0 && secs < 120, os.str()};
}

Outcome pn_hierarchy() {
  const auto& ex = builtin_example("pn-pair");
  const auto h = build_pn_hierarchy(ex.definition.theta, func_of(ex.definition.find("J")->value),
                                    func_of(ex.definition.find("I")->value), 3, 3);
  std::size_t poisson = 0;
  std::size_t compatible = 0;
  for (const auto& e : h.tensors) poisson += e.poisson ? 1 : 0;
  for (const auto& e : h.compatibility) compatible += e.compatible ? 1 : 0;
  std::ostringstream os;
  os << "I^n J Poisson for Theta_k: " << poisson << "/" << h.tensors.size() << "; compatible pairs: " << compatible
     << "/" << h.compatibility.size();
  return {h.applicable && h.all_hold() && h.tensors.size() == 16, os.str()};
}

Outcome cli_determinism() {
  int round_trip_bad = 0;
  int json_bad = 0;
  for (const auto& ex : builtin_examples()) {
    const auto text = emit_definition(ex.definition);
    const auto back = parse_definition(text);
    if (!same_definition(back, ex.definition) || emit_definition(back) != text) ++round_trip_bad;
    RunOptions one;
    RunOptions three;
    three.jobs = 3;
    const auto a = report_json(run_setup(back, one));
    if (a != report_json(run_setup(back, one)) || a != report_json(run_setup(back, three))) ++json_bad;
  }
  RunOptions o;
  o.bounds = {3, 3, 3, 3, 3};
  o.jobs = 2;
  const bool all_same = report_json(verify_all(o)) == last_json;
  std::ostringstream os;
  os << round_trip_bad << " round-trip failures over " << builtin_examples().size() << " builtins; " << json_bad
     << " non-deterministic reports; verify-all JSON identical for --jobs 1 and 2: " << (all_same ? "yes" : "no");
  return {round_trip_bad == 0 && json_bad == 0 && all_same && !last_json.empty(), os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"bracket laws", bracket_laws},
      {"Courant recovery", courant_recovery},
      {"block tensors", block_tensors},
      {"Maurer-Cartan", maurer_cartan},
      {"torsion forms", torsion_forms},
      {"hierarchy compatibility", hierarchy_compatibility},
      {"lambda sequence", lambda_sequence},
      {"full identity catalog", full_catalog},
      {"PN hierarchy", pn_hierarchy},
      {"round trip and deterministic JSON", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    failed += out.ok ? 0 : 1;
    std::cout << "criterion " << i + 1 << ": " << (out.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << out.detail << ")" << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
