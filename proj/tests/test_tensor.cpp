#include "support.hpp"

#include <doctest.h>

using namespace courant;
using testing_support::gen;
using testing_support::Gen;
using testing_support::constants_nijenhuis;
using testing_support::lie_algebras;

namespace {

bool same_map(const BilinearMap& a, const BilinearMap& b, const Signature& sig) {
  return probe_residual_terms(a, b, sig) == 0;
}

BilinearMap of(const BracketOperator& op) {
  return [op](const SuperPolynomial& x, const SuperPolynomial& y) { return op(x, y); };
}

BilinearMap of_function(const SuperPolynomial& f) { return of(BracketOperator::of_function(f)); }

}  // namespace

TEST_CASE("function and matrix forms of skew tensors") {
  Gen g(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Signature sig(g.uniform(0, 2), g.uniform(1, 4));
    auto f = g.skew_tensor(sig).value();
    if (sig.n() > 0 && g.coin()) f = gen(sig, GeneratorKind::X, 1) * f;
    const auto t = TensorFunction::make(f);
    const auto e = endo_of(t);
    CHECK(e.is_skew());
    CHECK(func_of(e) == t);
    CHECK(endo_of(func_of(e)) == e);
    for (const auto& x : section_basis(sig)) CHECK(e.apply(x) == bracket(x, t.value()));
  }
  const Signature sig(0, 2);
  CHECK_FALSE(Endomorphism::identity(sig).is_skew());
  CHECK_THROWS_AS(func_of(Endomorphism::identity(sig)), ValidationError);
  CHECK(endo_of(TensorFunction::make(SuperPolynomial(sig))).is_zero());
  CHECK(power(endo_of(i_n(sig, identity_matrix(2))), 0) == Endomorphism::identity(sig));
}

TEST_CASE("block forms of the standard tensors") {
  const Signature sig(0, 3);
  Matrix pi = zero_matrix(3);
  pi[0][2] = 1;
  pi[2][0] = -1;
  const auto jp = endo_of(j_pi(sig, pi));
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      if (!(r < 3 && c >= 3)) CHECK(jp.at(r, c).is_zero());
    }
  }
  CHECK(power(jp, 2).is_zero());
  // pi#(xi_1) = theta^3
  CHECK(jp.apply(gen(sig, GeneratorKind::Xi, 1)) == gen(sig, GeneratorKind::Theta, 3));

  const auto half = endo_of(j_general(sig, [] {
    Matrix m = identity_matrix(3);
    for (auto& row : m) {
      for (auto& v : row) v /= 2;
    }
    return m;
  }(), zero_matrix(3), zero_matrix(3)));
  for (int i = 0; i < 6; ++i) {
    CHECK(half.at(i, i) == SuperPolynomial::constant(sig, i < 3 ? Rational(1, 2) : Rational(-1, 2)));
  }

  Gen g(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix n = g.matrix(3);
    CHECK(endo_of(i_n(sig, n)).is_skew());
    CHECK(j_general(sig, n, zero_matrix(3), zero_matrix(3)) == i_n(sig, n));
    // I_N J_pi + J_pi I_N = 0 exactly when N pi# = pi# N*
    const Matrix p = g.antisymmetric(3);
    const auto in = endo_of(i_n(sig, n));
    const auto jpp = endo_of(j_pi(sig, p));
    bool commute = true;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        Rational lhs = 0;
        Rational rhs = 0;
        for (int k = 0; k < 3; ++k) {
          lhs += n[a][k] * p[b][k];  // (N pi#)(xi_b), theta^a component
          rhs += p[k][a] * n[b][k];  // (pi# N*)(xi_b)
        }
        if (lhs != rhs) commute = false;
      }
    }
    CHECK((compose(in, jpp) + compose(jpp, in)).is_zero() == commute);
  }
}

TEST_CASE("the identity tensor scales by bidegree") {
  Gen g(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Signature sig(g.uniform(0, 2), g.uniform(1, 3));
    const auto id = i_n(sig, identity_matrix(sig.d())).value();
    const auto u = g.homogeneous(sig, g.uniform(1, 4));
    SuperPolynomial want(sig);
    for (const auto& [m, c] : u.terms()) {
      SuperPolynomial t(sig);
      t.add_term(m, c);
      const auto bd = m.bidegree(sig);
      want += Rational(bd.l - bd.k) * t;
    }
    CHECK(bracket(id, u) == want);
  }
}

TEST_CASE("deforming a function and deforming its bracket agree") {
  Gen g(10);
  for (int trial = 0; trial < 25; ++trial) {
    const Signature sig(g.uniform(0, 1), g.uniform(1, 3));
    const auto theta = PreCourant::make(g.homogeneous(sig, 3, 4));
    auto jf = g.skew_tensor(sig).value();
    if (sig.n() > 0 && g.coin()) jf = gen(sig, GeneratorKind::X, 1) * jf;
    const auto j = TensorFunction::make(jf);
    const auto lhs = BracketOperator::of(deform_theta(theta, j));
    const auto rhs = BracketOperator::of(theta).deformed(endo_of(j));
    CHECK(same_map(of(lhs), of(rhs), sig));
    CHECK(deform_theta(theta, {j, j}) == deform_theta(deform_theta(theta, j), j));
  }
  const Signature sig(0, 2);
  CHECK(deform_theta(PreCourant::make(SuperPolynomial(sig)), i_n(sig, identity_matrix(2))).theta().is_zero());
  const auto mu = lie_algebras()[0];
  CHECK(same_map(of(BracketOperator::of(mu).deformed(Endomorphism::identity(mu.signature()))),
                 of(BracketOperator::of(mu)), mu.signature()));
}

TEST_CASE("torsion forms agree for tensors squaring to a scalar") {
  Gen g(55);
  const std::vector<Rational> alphas{0, 1, -1, Rational(1, 4)};
  int tested = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Rational alpha = alphas[trial % 4];
    const int d = alpha == -1 ? 2 : g.uniform(1, 3);
    const Signature sig(0, d);
    const auto theta = PreCourant::make(g.homogeneous(sig, 3, 4));
    const Endomorphism e = g.skew_square(sig, alpha);
    REQUIRE(e.is_skew());
    REQUIRE(compose(e, e) == alpha * Endomorphism::identity(sig));
    const auto op = BracketOperator::of(theta);
    const auto fn = torsion_function(theta, func_of(e), alpha);
    CHECK(same_map(torsion(op, e), torsion_via_squares(op, e), sig));
    CHECK(same_map(torsion(op, e), of_function(fn), sig));
    ++tested;
  }
  CHECK(tested == 100);
  const Signature sig(0, 2);
  const auto theta = PreCourant::make(g.homogeneous(sig, 3, 4));
  CHECK_THROWS_AS(torsion_function(theta, i_n(sig, identity_matrix(2)), 0), DomainError);
}

TEST_CASE("torsion of arbitrary endomorphisms") {
  Gen g(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Signature sig(g.uniform(0, 1), g.uniform(1, 2));
    const auto theta = PreCourant::make(g.homogeneous(sig, 3, 3));
    const auto op = BracketOperator::of(theta);
    Endomorphism e(sig);
    for (int r = 0; r < e.dim(); ++r) {
      for (int c = 0; c < e.dim(); ++c) e.set(r, c, g.rational(2));
    }
    CHECK(same_map(torsion(op, e), torsion_via_squares(op, e), sig));
    CHECK(vanishes_on_probes(torsion(op, g.rational(3) * Endomorphism::identity(sig)), sig));
  }
}

TEST_CASE("Nijenhuis concomitant") {
  Gen g(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Signature sig(0, g.uniform(1, 3));
    const auto theta = PreCourant::make(g.homogeneous(sig, 3, 4));
    const auto op = BracketOperator::of(theta);
    const auto i = g.skew_tensor(sig);
    const auto j = g.skew_tensor(sig);
    const auto ei = endo_of(i);
    const auto ej = endo_of(j);
    const auto two_t = [&](const SuperPolynomial& x, const SuperPolynomial& y) {
      return Rational(2) * torsion(op, ei)(x, y);
    };
    CHECK(same_map(nijenhuis_concomitant(op, ei, ei), two_t, sig));
    const auto sum = [&](const SuperPolynomial& x, const SuperPolynomial& y) {
      return torsion(op, ei)(x, y) + torsion(op, ej)(x, y) + nijenhuis_concomitant(op, ei, ej)(x, y);
    };
    CHECK(same_map(torsion(op, ei + ej), sum, sig));
    CHECK(vanishes_on_probes(nijenhuis_concomitant(op, ei, Endomorphism::zero(sig)), sig));
    CHECK(concomitant(theta, i, j) == concomitant(theta, j, i));
    CHECK(concomitant(theta, i, i) == Rational(2) * deform_theta(theta, {i, i}).theta());
  }
}

TEST_CASE("concomitant of anti-commuting tensors") {
  Gen g(14);
  int anti = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Signature sig(0, 3);
    const auto theta = PreCourant::make(g.homogeneous(sig, 3, 4));
    // I_N with N = diag(+-1) and J_pi with pi supported where N pi# = pi# N*
    Matrix n = zero_matrix(3);
    for (int a = 0; a < 3; ++a) n[a][a] = g.coin() ? 1 : -1;
    Matrix pi = zero_matrix(3);
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        if (n[a][a] == -n[b][b]) continue;
        pi[a][b] = g.rational(3);
        pi[b][a] = -pi[a][b];
      }
    }
    const auto i = i_n(sig, n);
    const auto j = j_pi(sig, pi);
    const auto ei = endo_of(i);
    const auto ej = endo_of(j);
    REQUIRE((compose(ei, ej) + compose(ej, ei)).is_zero());
    ++anti;
    const auto ij = func_of(compose(ei, ej));
    CHECK(concomitant(theta, i, j) ==
          Rational(2) * (deform_theta(theta, {i, j}).theta() - deform_theta(theta, ij).theta()));
    const auto op = BracketOperator::of(theta);
    const auto half_c = of_function(Rational(1, 2) * concomitant(theta, i, j));
    CHECK(same_map(nijenhuis_concomitant(op, ei, ej), half_c, sig));
  }
  CHECK(anti == 40);
}

TEST_CASE("bivector, 2-form and block tensors on Lie algebras") {
  Gen g(15);
  for (const auto& mu : lie_algebras()) {
    const Signature& sig = mu.signature();
    const int d = sig.d();
    for (int trial = 0; trial < 8; ++trial) {
      // J_pi: deforming iff [pi,pi]_mu = 0, and then with eta 0
      const Matrix pi = g.antisymmetric(d);
      const auto jp = j_pi(sig, pi);
      const auto schouten = bracket(jp.value(), bracket(jp.value(), mu.theta()));
      CHECK(deform_theta(mu, {jp, jp}).theta() == schouten);
      const auto eta = deforming_constant(mu, jp);
      CHECK(eta.has_value() == schouten.is_zero());
      if (eta) CHECK(*eta == 0);
      CHECK(same_map(torsion(mu, endo_of(jp)), of_function(Rational(1, 2) * schouten), sig));
      CHECK(torsion_function(mu, jp, 0) == Rational(1, 2) * schouten);

      // J_omega: always Poisson
      const auto jw = j_omega(sig, g.antisymmetric(d));
      CHECK(deform_theta(mu, {jw, jw}).theta().is_zero());

      // I_N with N^2 = alpha id: Nijenhuis iff N is
      const Rational alpha = g.coin() ? Rational(1) : Rational(0);
      const Matrix n = g.square_root_of_scalar(d, alpha);
      const auto in = endo_of(i_n(sig, n));
      const auto c = testing_support::constants_of(mu);
      CHECK(is_nijenhuis(mu, in) == constants_nijenhuis(c, n));

      // (N, pi; 0, -N*) deforms with eta iff the three bidegree conditions hold
      Matrix nn = g.coin() ? g.matrix(d) : identity_matrix(d);
      if (g.coin()) {
        for (auto& row : nn) {
          for (auto& v : row) v *= 2;
        }
      }
      const Matrix pp = g.coin() ? zero_matrix(d) : g.antisymmetric(d);
      const auto jn = i_n(sig, nn);
      const auto jpp = j_pi(sig, pp);
      const auto j = j_general(sig, nn, pp, zero_matrix(d));
      const auto got = deforming_constant(mu, j);
      const auto mu_nn = deform_theta(mu, {jn, jn}).theta();
      const auto eta_n = proportionality(mu_nn, mu.theta());
      const bool mixed = (deform_theta(mu, {jn, jpp}).theta() + deform_theta(mu, {jpp, jn}).theta()).is_zero();
      const bool poisson = bracket(jpp.value(), bracket(jpp.value(), mu.theta())).is_zero();
      const bool want = eta_n.has_value() && mixed && poisson;
      CHECK(got.has_value() == want);
      if (got && want) CHECK(*got == *eta_n);
    }
  }
}

TEST_CASE("proportionality") {
  const Signature sig(0, 2);
  const auto a = gen(sig, GeneratorKind::Xi, 1) * gen(sig, GeneratorKind::Xi, 2) * gen(sig, GeneratorKind::Theta, 1);
  const auto b = gen(sig, GeneratorKind::Xi, 1) * gen(sig, GeneratorKind::Theta, 1) * gen(sig, GeneratorKind::Theta, 2);
  CHECK(proportionality(Rational(-3, 2) * a, a) == Rational(-3, 2));
  CHECK_FALSE(proportionality(a + b, a).has_value());
  CHECK(proportionality(SuperPolynomial(sig), a) == Rational(0));
  CHECK(proportionality(SuperPolynomial(sig), SuperPolynomial(sig)) == Rational(0));
  CHECK_FALSE(proportionality(a, SuperPolynomial(sig)).has_value());
}

TEST_CASE("pair classification") {
  const Signature sig(0, 3);
  auto book = zero_constants(3);
  set_bracket(book, 1, 2, 2, 1);
  set_bracket(book, 1, 3, 3, 1);
  const auto mu = lie_algebra_theta(sig, book);
  Matrix n = zero_matrix(3);
  n[0][0] = n[1][1] = 1;
  n[2][2] = -1;
  Matrix pi = zero_matrix(3);
  pi[0][1] = 1;
  pi[1][0] = -1;
  const auto c = classify_pair(mu, i_n(sig, n), j_pi(sig, pi));
  CHECK(c.pair_class == PairClass::PoissonNijenhuis);
  CHECK(c.compatible_pair);
  CHECK(c.poisson_j);
  CHECK(c.deforming_eta == Rational(0));
  CHECK_FALSE(c.degenerate_theta);

  // A tensor that is not Nijenhuis paired with itself.
  const auto j = j_general(sig, [] {
    Matrix m = zero_matrix(3);
    m[0][1] = 1;
    m[1][2] = 1;
    return m;
  }(), pi, zero_matrix(3));
  const auto self = classify_pair(mu, j, j);
  const bool sq_zero = power(endo_of(j), 2).is_zero();
  CHECK(self.anti_commute == sq_zero);
  CHECK(self.compatible_pair == (sq_zero && deform_theta(mu, {j, j}).theta().is_zero()));

  const auto zero = classify_pair(PreCourant::make(SuperPolynomial(sig)), i_n(sig, n), j_pi(sig, pi));
  CHECK(zero.degenerate_theta);
  CHECK(zero.pair_class == PairClass::PoissonNijenhuis);
  for (auto pc : {PairClass::None, PairClass::Compatible, PairClass::DeformingNijenhuis, PairClass::PoissonNijenhuis,
                  PairClass::Nijenhuis}) {
    CHECK(parse_pair_class(to_string(pc)) == pc);
  }
  CHECK_THROWS_AS(parse_pair_class("bogus"), ValidationError);
}

TEST_CASE("central operator on the Heisenberg algebra") {
  const Signature sig(0, 3);
  const auto mu = lie_algebra_theta(sig, testing_support::heisenberg_constants());
  Matrix n = zero_matrix(3);
  n[2][0] = 1;
  n[2][1] = 2;
  const auto i = i_n(sig, n);
  CHECK(is_nijenhuis(mu, endo_of(i)));
  CHECK(deforming_constant(mu, i) == Rational(0));
  CHECK(bracket(i.value(), bracket(i.value(), mu.theta())).is_zero());
}
