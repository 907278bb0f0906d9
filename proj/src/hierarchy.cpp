#include "courant/hierarchy.hpp"

#include "courant/big_bracket.hpp"

#include <functional>
#include <map>

namespace courant {

PreCourant theta_k(const PreCourant& theta, const TensorFunction& i, int k) {
  PreCourant out = theta;
  for (int step = 0; step < k; ++step) out = deform_theta(out, i);
  return out;
}

bool compatibility_check(const PreCourant& theta1, const PreCourant& theta2) {
  return bracket(theta1.theta(), theta2.theta()).is_zero();
}

PreCourant DeformationPath::evaluate(const TensorFunction& i, const TensorFunction& j) const {
  PreCourant out = base;
  for (char c : steps) {
    if (c == 'I') {
      out = deform_theta(out, i);
    } else if (c == 'J') {
      out = deform_theta(out, j);
    } else {
      throw ValidationError(std::string("deformation step must be I or J, got '") + c + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// lambda sequence

namespace {

Rational minus_three_pow(int k) {
  Rational out = 1;
  for (int e = 0; e < k; ++e) out *= -3;
  return out;
}

}  // namespace

std::optional<int> excluded_lambda_index(const Rational& lambda0, int max_m) {
  for (int m = 1; m <= max_m; ++m) {
    if (lambda0 == Rational(4) / (minus_three_pow(m) - 1)) return m;
  }
  return std::nullopt;
}

Rational lambda_closed_form(const Rational& lambda0, int k) {
  const Rational p = minus_three_pow(k);
  const Rational denom = 1 + (1 - p) / 4 * lambda0;
  if (denom == 0) throw DomainError("lambda closed form: zero denominator at k = " + std::to_string(k));
  return p * lambda0 / denom;
}

LambdaSequence lambda_seq(const Rational& lambda0, int big_k) {
  if (auto m = excluded_lambda_index(lambda0, big_k)) {
    throw DomainError("lambda0 = " + to_string(lambda0) + " is excluded: it equals 4/((-3)^m - 1) for m = " +
                      std::to_string(*m));
  }
  LambdaSequence out{lambda0, {lambda0}};
  for (int k = 1; k <= big_k; ++k) {
    const Rational& prev = out.values.back();
    out.values.push_back(-3 * prev / (1 + prev));
  }
  return out;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "not-applicable";
}

// ---------------------------------------------------------------------------
// helpers shared by the catalog

namespace {

using Poly = SuperPolynomial;

// Theta_T = {T, Theta} for any degree-2 function T.
Poly dfm(const Poly& theta, const Poly& t) { return bracket(t, theta); }

Poly dfm(Poly theta, const std::vector<Poly>& steps) {
  for (const auto& t : steps) theta = dfm(theta, t);
  return theta;
}

Poly conc(const Poly& theta, const Poly& a, const Poly& b) {
  return dfm(dfm(theta, a), b) + dfm(dfm(theta, b), a);
}

bool anticommute(const Endomorphism& a, const Endomorphism& b) {
  return (compose(a, b) + compose(b, a)).is_zero();
}

Endomorphism scaled_identity(const Signature& sig, const Rational& c) { return c * Endomorphism::identity(sig); }

// [X,Y]_{A,B} + [X,Y]_{B,A}.
BilinearMap conc_map(const BracketOperator& b, const Endomorphism& x, const Endomorphism& y) {
  const auto bxy = b.deformed(std::vector<Endomorphism>{x, y});
  const auto byx = b.deformed(std::vector<Endomorphism>{y, x});
  return [bxy, byx](const Poly& u, const Poly& v) { return bxy(u, v) + byx(u, v); };
}

BilinearMap as_map(const BracketOperator& b) {
  return [b](const Poly& u, const Poly& v) { return b(u, v); };
}

class Run {
 public:
  Run(IdentityReport& report, const Signature& sig) : report_(report), probes_(probe_sections(sig)) {}

  bool gate(bool cond, const std::string& what) {
    if (!cond) report_.skipped.push_back(what);
    return cond;
  }

  void zero(const std::string& label, const Poly& f) {
    ++report_.checks;
    if (!f.is_zero()) {
      report_.residual_terms += f.size();
      fail(label);
    }
  }

  void equal(const std::string& label, const Poly& a, const Poly& b) { zero(label, a - b); }

  void zero_map(const std::string& label, const BilinearMap& m) {
    ++report_.checks;
    std::size_t terms = 0;
    for (const auto& x : probes_) {
      for (const auto& y : probes_) terms += m(x, y).size();
    }
    if (terms != 0) {
      report_.residual_terms += terms;
      fail(label);
    }
  }

  void equal_maps(const std::string& label, const BilinearMap& a, const BilinearMap& b) {
    zero_map(label, [&a, &b](const Poly& x, const Poly& y) { return a(x, y) - b(x, y); });
  }

  void truth(const std::string& label, bool ok) {
    ++report_.checks;
    if (!ok) {
      ++report_.residual_terms;
      fail(label);
    }
  }

  bool vanishes(const BilinearMap& m) const {
    for (const auto& x : probes_) {
      for (const auto& y : probes_) {
        if (!m(x, y).is_zero()) return false;
      }
    }
    return true;
  }

  bool nijenhuis(const BracketOperator& b, const Endomorphism& t) const { return vanishes(torsion(b, t)); }

  // T I(JX, Y) = T I(X, JY) = 0.
  bool torsion_on_image(const BracketOperator& b, const Endomorphism& i, const Endomorphism& j) const {
    const auto ti = torsion(b, i);
    return vanishes([&](const Poly& x, const Poly& y) { return ti(j.apply(x), y); }) &&
           vanishes([&](const Poly& x, const Poly& y) { return ti(x, j.apply(y)); });
  }

 private:
  void fail(const std::string& label) {
    constexpr std::size_t kMaxListed = 20;
    if (report_.failures.size() < kMaxListed) report_.failures.push_back(label);
  }

  IdentityReport& report_;
  std::vector<Poly> probes_;
};

std::string tag(std::initializer_list<std::pair<const char*, int>> params) {
  std::string out = "[";
  bool first = true;
  for (const auto& [name, value] : params) {
    if (!first) out += ",";
    first = false;
    out += name;
    out += "=";
    out += std::to_string(value);
  }
  return out + "]";
}

// Everything an identity needs, derived once from the bindings.
struct Ctx {
  const IdentityBindings& b;
  const IdentityBounds& bounds;
  const IdentityOptions& options;
  Run& run;
  Signature sig;
  Poly theta;
  BracketOperator base;
  Endomorphism ei;
  std::optional<Poly> fi;  // function of I when skew
  std::optional<Endomorphism> ej;
  std::optional<Poly> fj;

  Ctx(const IdentityBindings& bind, const IdentityBounds& bd, const IdentityOptions& opt, Run& r)
      : b(bind),
        bounds(bd),
        options(opt),
        run(r),
        sig(bind.theta.signature()),
        theta(bind.theta.theta()),
        base(BracketOperator::of(bind.theta)),
        ei(bind.i),
        ej(bind.j) {
    if (ei.is_skew()) fi = func_of(ei).value();
    if (ej && ej->is_skew()) fj = func_of(*ej).value();
  }

  bool need_i_skew() { return run.gate(fi.has_value(), "I is skew"); }
  bool need_j() { return run.gate(ej.has_value(), "J is bound"); }
  bool need_both_skew() { return need_i_skew() && need_j() && run.gate(fj.has_value(), "J is skew"); }

  std::optional<Poly> fn(const Endomorphism& e) const {
    if (!e.is_skew()) return std::nullopt;
    return func_of(e).value();
  }
  Poly fn_checked(const Endomorphism& e) const {
    auto f = fn(e);
    if (!f) throw ValidationError("internal: expected a skew tensor");
    return *f;
  }

  // Theta_0 .. Theta_max deformed by I (function level).
  std::vector<Poly> thetas(int max) const {
    std::vector<Poly> out{theta};
    for (int k = 1; k <= max; ++k) out.push_back(dfm(out.back(), *fi));
    return out;
  }

  BracketOperator op(const Poly& f) const { return BracketOperator::of_function(f); }

  bool compatible_pair(const Poly& th) const {
    return anticommute(ei, *ej) && conc(th, *fi, *fj).is_zero();
  }

  // {J, {I, J}}.
  Poly jij() const { return bracket(*fj, bracket(*fi, *fj)); }

  std::optional<Rational> lambda0() const {
    return resolve_lambda0(b.theta, TensorFunction::make(*fi), TensorFunction::make(*fj), b.lambda0);
  }
};

// ---------------------------------------------------------------------------
// catalog entries

void t01(Ctx& c) {
  if (!c.need_i_skew()) return;
  const auto th = c.thetas(c.bounds.k);
  for (int k = 1; k <= c.bounds.k; ++k) {
    const auto lhs = torsion(c.op(th[k]), c.ei);
    const auto prev = torsion(c.base.deformed(std::vector<Endomorphism>(k - 1, c.ei)), c.ei);
    const Endomorphism& i = c.ei;
    BilinearMap rhs = [prev, i](const Poly& x, const Poly& y) {
      return prev(i.apply(x), y) + prev(x, i.apply(y)) - i.apply(prev(x, y));
    };
    c.run.equal_maps("torsion recursion " + tag({{"k", k}}), lhs, rhs);
  }
}

void t02(Ctx& c) {
  if (!c.need_i_skew()) return;
  if (!c.run.gate(c.run.nijenhuis(c.base, c.ei), "I Nijenhuis for Theta")) return;
  const bool courant = bracket(c.theta, c.theta).is_zero();
  const auto th = c.thetas(c.bounds.k);
  for (int k = 1; k <= c.bounds.k; ++k) {
    c.run.zero_map("torsion for Theta_k " + tag({{"k", k}}), torsion(c.op(th[k]), c.ei));
    if (courant) c.run.zero("Theta_k Courant " + tag({{"k", k}}), bracket(th[k], th[k]));
  }
  c.run.gate(courant, "Theta Courant (Courant part of the statement)");
}

void t03(Ctx& c) {
  const Endomorphism& i = c.ei;
  const auto ti = torsion(c.base, i);
  for (int n = 2; n <= std::max(2, c.bounds.n); ++n) {
    const Endomorphism in1 = power(i, n - 1);
    const Endomorphism i2 = compose(i, i);
    const Endomorphism i2n2 = power(i, 2 * n - 2);
    const auto tn = torsion(c.base, power(i, n));
    const auto tn1 = torsion(c.base, in1);
    const auto tn2 = torsion(c.base, power(i, n - 2));
    BilinearMap rhs = [=](const Poly& x, const Poly& y) {
      return ti(in1.apply(x), in1.apply(y)) + i.apply(tn1(i.apply(x), y) + tn1(x, i.apply(y))) -
             i2.apply(tn2(i.apply(x), i.apply(y))) + i2n2.apply(ti(x, y));
    };
    c.run.equal_maps("torsion of I^n " + tag({{"n", n}}), tn, rhs);
  }
}

void t04(Ctx& c) {
  if (!c.need_i_skew()) return;
  if (!c.run.gate(bracket(c.theta, c.theta).is_zero(), "Theta Courant")) return;
  if (!c.run.gate(c.run.nijenhuis(c.base, c.ei), "I Nijenhuis for Theta")) return;
  const int top = std::max(c.bounds.k, c.bounds.m);
  const auto th = c.thetas(top);
  for (int k = 0; k <= c.bounds.k; ++k) {
    for (int m = 0; m <= c.bounds.m; ++m) {
      c.run.zero("{Theta_k, Theta_m} " + tag({{"k", k}, {"m", m}}), bracket(th[k], th[m]));
    }
  }
}

void t05(Ctx& c) {
  const Endomorphism& i = c.ei;
  const auto ti = torsion(c.base, i);
  for (int n = 1; n <= std::max(1, c.bounds.n); ++n) {
    const auto lhs = c.base.deformed(power(i, 2 * n + 1));
    const auto first = c.base.deformed(std::vector<Endomorphism>{power(i, 2 * n), i});
    std::vector<Endomorphism> pw;
    for (int e = 0; e <= 2 * n - 1; ++e) pw.push_back(power(i, e));
    BilinearMap rhs = [=](const Poly& x, const Poly& y) {
      Poly out = first(x, y);
      for (int a = 0; a <= 2 * n - 1; ++a) {
        const int e = 2 * n - 1 - a;
        out -= pw[e].apply(ti(pw[a].apply(x), y) + ti(x, pw[a].apply(y)));
      }
      return out;
    };
    c.run.equal_maps("odd power bracket " + tag({{"n", n}}), as_map(lhs), rhs);
  }
}

void t06(Ctx& c) {
  if (!c.run.gate(c.run.nijenhuis(c.base, c.ei), "I Nijenhuis for Theta")) return;
  for (int n = 0; n <= c.bounds.n; ++n) {
    const auto lhs = c.base.deformed(power(c.ei, n));
    const auto rhs = c.base.deformed(std::vector<Endomorphism>(n, c.ei));
    c.run.equal_maps("[.,.]_{I^n} = [.,.]_{I,..,I} " + tag({{"n", n}}), as_map(lhs), as_map(rhs));
  }
  for (int m = 0; m <= c.bounds.m; ++m) {
    for (int n = 0; n <= c.bounds.n; ++n) {
      const auto lhs = c.base.deformed(std::vector<Endomorphism>{power(c.ei, m), power(c.ei, n)});
      const auto rhs = c.base.deformed(power(c.ei, m + n));
      c.run.equal_maps("[.,.]_{I^m,I^n} = [.,.]_{I^(m+n)} " + tag({{"m", m}, {"n", n}}), as_map(lhs), as_map(rhs));
    }
  }
}

void t07(Ctx& c) {
  if (!c.need_both_skew()) return;
  if (!c.run.gate(anticommute(c.ei, *c.ej), "I and J anti-commute")) return;
  const Endomorphism& i = c.ei;
  const auto ti = torsion(c.base, i);
  for (int n = 1; n <= std::max(1, c.bounds.n); ++n) {
    const Endomorphism prev_t = compose(power(i, n - 1), *c.ej);
    const auto lhs = conc_map(c.base, i, compose(power(i, n), *c.ej));
    const auto prev = conc_map(c.base, i, prev_t);
    BilinearMap rhs = [=](const Poly& x, const Poly& y) {
      return i.apply(prev(x, y)) + Rational(2) * ti(prev_t.apply(x), y) + Rational(2) * ti(x, prev_t.apply(y));
    };
    c.run.equal_maps("concomitant recursion " + tag({{"n", n}}), lhs, rhs);
  }
}

void t08(Ctx& c) {
  if (!c.need_both_skew()) return;
  if (!c.run.gate(c.compatible_pair(c.theta), "(I,J) compatible pair")) return;
  if (!c.run.gate(c.run.torsion_on_image(c.base, c.ei, *c.ej), "torsion of I vanishes on the image of J")) return;
  const auto th = c.thetas(c.bounds.k);
  for (int n = 0; n <= c.bounds.n; ++n) {
    const Endomorphism ijn = compose(power(c.ei, n), *c.ej);
    const Poly f = c.fn_checked(ijn);
    for (int k = 0; k <= c.bounds.k; ++k) {
      c.run.zero("C_{Theta_k}(I, I^n o J) " + tag({{"k", k}, {"n", n}}), conc(th[k], *c.fi, f));
    }
    c.run.truth("I anti-commutes with I^n o J " + tag({{"n", n}}), anticommute(c.ei, ijn));
  }
}

void t09(Ctx& c) {
  if (!c.need_both_skew()) return;
  const Poly& i = *c.fi;
  const Poly& j = *c.fj;
  const Poly th_i = dfm(c.theta, i);
  const Poly cij = conc(c.theta, i, j);
  c.run.equal("C_{Theta_I}(I,J) general", conc(th_i, i, j), conc(c.theta, i, bracket(j, i)) + bracket(i, cij));
  if (c.run.gate(anticommute(c.ei, *c.ej), "I and J anti-commute (second form)")) {
    const Poly ij = c.fn_checked(compose(c.ei, *c.ej));
    c.run.equal("C_{Theta_I}(I,J) anti-commuting", conc(th_i, i, j),
                Rational(2) * conc(c.theta, i, ij) + bracket(i, cij));
    c.run.equal("{J,I} = 2 I o J", bracket(j, i), Rational(2) * ij);
  }
}

void t10(Ctx& c) {
  if (!c.need_both_skew()) return;
  if (!c.run.gate(anticommute(c.ei, *c.ej), "I and J anti-commute")) return;
  const Poly& i = *c.fi;
  const Poly& j = *c.fj;
  const Poly ij = c.fn_checked(compose(c.ei, *c.ej));
  c.run.equal("C(I,J) = 2(Theta_{I,J} - Theta_{IoJ})", conc(c.theta, i, j),
              Rational(2) * (dfm(c.theta, {i, j}) - dfm(c.theta, ij)));
  const bool strong = c.run.nijenhuis(c.base, c.ei);
  const bool weak = c.options.weak_gate && c.run.torsion_on_image(c.base, c.ei, *c.ej);
  const std::string what = c.options.weak_gate ? "I Nijenhuis or torsion of I vanishes on the image of J"
                                               : "I Nijenhuis for Theta";
  if (!c.run.gate(strong || weak, what)) return;
  if (!c.run.gate(conc(c.theta, i, j).is_zero(), "(I,J) compatible pair")) return;
  for (int n = 0; n <= c.bounds.n; ++n) {
    std::vector<Poly> steps(n, i);
    steps.push_back(j);
    const Poly rhs = c.fn_checked(compose(power(c.ei, n), *c.ej));
    c.run.equal("Theta_{I,..,I,J} = Theta_{I^n o J} " + tag({{"n", n}}), dfm(c.theta, steps), dfm(c.theta, rhs));
  }
}

void t11(Ctx& c) {
  if (!c.need_both_skew()) return;
  if (!c.run.gate(c.run.nijenhuis(c.base, c.ei), "I Nijenhuis for Theta")) return;
  if (!c.run.gate(c.compatible_pair(c.theta), "(I,J) compatible pair")) return;
  const auto th = c.thetas(c.bounds.k);
  const bool j_nij = c.run.gate(c.run.nijenhuis(c.base, *c.ej), "J Nijenhuis (second statement)");
  for (int s = 0; s <= c.bounds.s; ++s) {
    const Endomorphism odd = power(c.ei, 2 * s + 1);
    const Poly fodd = c.fn_checked(odd);
    for (int n = 0; n <= c.bounds.n; ++n) {
      const int m_top = j_nij ? c.bounds.m : 0;
      for (int m = 0; m <= m_top; ++m) {
        const Endomorphism other = compose(power(c.ei, n), power(*c.ej, 2 * m + 1));
        const Poly fother = c.fn_checked(other);
        c.run.truth("anti-commute " + tag({{"s", s}, {"n", n}, {"m", m}}), anticommute(odd, other));
        for (int k = 0; k <= c.bounds.k; ++k) {
          c.run.zero("C_{Theta_k}(I^(2s+1), I^n o J^(2m+1)) " + tag({{"k", k}, {"s", s}, {"n", n}, {"m", m}}),
                     conc(th[k], fodd, fother));
        }
      }
    }
  }
}

void t12(Ctx& c) {
  if (!c.need_both_skew()) return;
  const Poly& i = *c.fi;
  const Poly& j = *c.fj;
  const Poly k3 = c.jij();
  const Poly cij = conc(c.theta, i, j);
  const Poly jji = dfm(c.theta, {j, j, i});
  const Poly th_k = dfm(c.theta, k3);
  c.run.equal("Theta_{J,I,J}", dfm(c.theta, {j, i, j}), Rational(1, 3) * (jji + th_k + bracket(j, cij)));
  c.run.equal("Theta_{I,J,J}", dfm(c.theta, {i, j, j}),
              Rational(-1, 3) * (jji + th_k - Rational(2) * bracket(j, cij)));
  if (c.run.gate(anticommute(c.ei, *c.ej), "I and J anti-commute (cocycle transport)")) {
    const auto th = c.thetas(c.bounds.k);
    for (int k = 0; k <= c.bounds.k; ++k) {
      const Poly rhs = dfm(th_k, std::vector<Poly>(k, i));
      for (int r = 0; r <= k; ++r) {
        c.run.equal("((Theta_r)_K)_{I^s} " + tag({{"r", r}, {"s", k - r}}),
                    dfm(dfm(th[r], k3), std::vector<Poly>(k - r, i)), rhs);
      }
    }
  }
  if (!c.run.gate(cij.is_zero(), "I and J anti-commute w.r.t. Theta")) return;
  const auto l0 = c.lambda0();
  if (!c.run.gate(l0.has_value(), "Theta_{{J,{I,J}}} = lambda0 Theta_{J,J,I}")) return;
  const Rational alpha = -(*l0 + 1) / 3;
  c.run.equal("Theta_{I,J,J} = alpha Theta_{J,J,I}", dfm(c.theta, {i, j, j}), alpha * jji);
  const auto eta = proportionality(dfm(c.theta, {j, j}), c.theta);
  if (!c.run.gate(eta.has_value(), "J deforming for Theta")) return;
  c.run.equal("Theta_{I,J,J} = eta alpha Theta_I", dfm(c.theta, {i, j, j}), *eta * alpha * dfm(c.theta, i));
}

// Shared hypotheses of the lambda statements.
bool lambda_gates(Ctx& c, std::optional<Rational>& l0) {
  if (!c.need_both_skew()) return false;
  if (!c.run.gate(c.compatible_pair(c.theta), "(I,J) compatible pair")) return false;
  if (!c.run.gate(c.run.torsion_on_image(c.base, c.ei, *c.ej), "torsion of I vanishes on the image of J")) return false;
  l0 = c.lambda0();
  if (!c.run.gate(l0.has_value(), "Theta_{{J,{I,J}}} = lambda0 Theta_{J,J,I}")) return false;
  return c.run.gate(!excluded_lambda_index(*l0, c.bounds.k + 1), "lambda0 not in the excluded set");
}

void t13(Ctx& c) {
  if (c.b.lambda0) {
    const Rational p = *c.b.lambda0;
    if (c.run.gate(!excluded_lambda_index(p, c.bounds.k + 1), "parameter lambda0 not in the excluded set")) {
      const auto seq = lambda_seq(p, c.bounds.k);
      for (int k = 0; k <= c.bounds.k; ++k) {
        c.run.truth("recursion = closed form " + tag({{"k", k}}), seq.values[k] == lambda_closed_form(p, k));
      }
    }
  }
  std::optional<Rational> l0;
  if (!lambda_gates(c, l0)) return;
  const Poly& i = *c.fi;
  const Poly& j = *c.fj;
  const auto seq = lambda_seq(*l0, c.bounds.k);
  const auto th = c.thetas(c.bounds.k);
  const Poly k3 = c.jij();
  for (int k = 0; k <= c.bounds.k; ++k) {
    const Rational& lk = seq.values[k];
    const Poly jji_k = dfm(th[k], {j, j, i});
    c.run.equal("(Theta_k)_K = lambda_k (Theta_k)_{J,J,I} " + tag({{"k", k}}), dfm(th[k], k3), lk * jji_k);
    std::vector<Poly> steps{j, j};
    steps.insert(steps.end(), k + 1, i);
    c.run.equal("lambda_k (Theta_k)_{J,J,I} = lambda0 Theta_{J,J,I^(k+1)} " + tag({{"k", k}}), lk * jji_k,
                *l0 * dfm(c.theta, steps));
    if (*l0 == 0) {
      std::vector<Poly> st{j, j};
      st.insert(st.end(), k, i);
      Rational f = 1;
      for (int e = 0; e < k; ++e) f *= Rational(-1, 3);
      c.run.equal("(Theta_k)_{J,J} = (-1/3)^k Theta_{J,J,I^k} " + tag({{"k", k}}), dfm(th[k], {j, j}),
                  f * dfm(c.theta, st));
    }
  }
}

void t14(Ctx& c) {
  std::optional<Rational> l0;
  if (!lambda_gates(c, l0)) return;
  const Poly& j = *c.fj;
  const auto eta = proportionality(dfm(c.theta, {j, j}), c.theta);
  if (!c.run.gate(eta.has_value(), "J deforming for Theta")) return;
  const auto seq = lambda_seq(*l0, c.bounds.k);
  const auto th = c.thetas(c.bounds.k);
  for (int k = 0; k <= c.bounds.k; ++k) {
    Rational factor = 1;
    if (*l0 != 0) {
      factor = *l0 / seq.values[k];
    } else {
      for (int e = 0; e < k; ++e) factor *= Rational(-1, 3);
    }
    c.run.equal("(Theta_k)_{J,J} = c_k eta Theta_k " + tag({{"k", k}}), dfm(th[k], {j, j}), factor * *eta * th[k]);
  }
  if (!c.run.gate(c.run.nijenhuis(c.base, c.ei), "(J,I) deforming-Nijenhuis: I Nijenhuis")) return;
  for (int n = 0; n <= c.bounds.n; ++n) {
    const Endomorphism odd = power(c.ei, 2 * n + 1);
    const Poly fodd = c.fn_checked(odd);
    c.run.truth("J, I^(2n+1) anti-commute " + tag({{"n", n}}), anticommute(odd, *c.ej));
    for (int k = 0; k <= c.bounds.k; ++k) {
      const auto tag_kn = tag({{"k", k}, {"n", n}});
      c.run.zero("C_{Theta_k}(I^(2n+1), J) " + tag_kn, conc(th[k], fodd, j));
      c.run.truth("I^(2n+1) Nijenhuis for Theta_k " + tag_kn, c.run.nijenhuis(c.op(th[k]), odd));
      c.run.truth("J deforming for Theta_k " + tag_kn, proportionality(dfm(th[k], {j, j}), th[k]).has_value());
    }
  }
}

void t15(Ctx& c) {
  if (!c.need_both_skew()) return;
  if (!c.run.gate(c.compatible_pair(c.theta), "(I,J) compatible pair")) return;
  if (!c.run.gate(dfm(c.theta, c.jij()).is_zero(), "Theta_{{J,{I,J}}} = 0")) return;
  if (!c.run.gate(c.run.torsion_on_image(c.base, c.ei, *c.ej), "torsion of I vanishes on the image of J")) return;
  const Poly& j = *c.fj;
  if (!c.run.gate(dfm(c.theta, {j, j}).is_zero(), "J Poisson for Theta")) return;
  const auto th = c.thetas(c.bounds.k);
  for (int k = 0; k <= c.bounds.k; ++k) {
    c.run.zero("J Poisson for Theta_k " + tag({{"k", k}}), dfm(th[k], {j, j}));
  }
}

void t16(Ctx& c) {
  if (!c.need_both_skew()) return;
  if (!c.run.gate(anticommute(c.ei, *c.ej), "I and J anti-commute")) return;
  const Endomorphism& i = c.ei;
  const Endomorphism& j = *c.ej;
  const auto cij = conc_map(c.base, i, j);
  const auto ti = torsion(c.base, i);
  const auto tj = torsion(c.base, j);
  const auto lhs_j = torsion(c.op(dfm(c.theta, *c.fi)), j);
  const auto lhs_i = torsion(c.op(dfm(c.theta, *c.fj)), i);
  BilinearMap rhs_j = [=](const Poly& x, const Poly& y) {
    return -j.apply(cij(x, y)) - tj(i.apply(x), y) - tj(x, i.apply(y)) - i.apply(tj(x, y));
  };
  BilinearMap rhs_i = [=](const Poly& x, const Poly& y) {
    return -i.apply(cij(x, y)) - ti(j.apply(x), y) - ti(x, j.apply(y)) - j.apply(ti(x, y));
  };
  c.run.equal_maps("torsion of J for Theta_I", lhs_j, rhs_j);
  c.run.equal_maps("torsion of I for Theta_J", lhs_i, rhs_i);
}

void t17(Ctx& c) {
  if (!c.need_both_skew()) return;
  const int top = std::max(c.bounds.n, c.bounds.m);
  const auto h = build_pn_hierarchy(c.b.theta, TensorFunction::make(*c.fj), TensorFunction::make(*c.fi), top,
                                    c.bounds.k);
  if (!c.run.gate(h.applicable, h.reason)) return;
  for (const auto& e : h.tensors) {
    c.run.truth("I^n o J Poisson for Theta_k " + tag({{"k", e.k}, {"n", e.n}}), e.poisson);
  }
  for (const auto& e : h.compatibility) {
    c.run.truth("(Theta_k)_{I^m o J, I^n o J} = 0 " + tag({{"k", e.k}, {"m", e.m}, {"n", e.n}}), e.compatible);
  }
  const auto th = c.thetas(c.bounds.k);
  for (int k = 0; k <= c.bounds.k; ++k) {
    const auto bk = c.op(th[k]);
    for (int m = 0; m <= c.bounds.m; ++m) {
      const Endomorphism odd = power(c.ei, 2 * m + 1);
      const Poly fodd = c.fn_checked(odd);
      const bool nij = c.run.nijenhuis(bk, odd);
      for (int n = 0; n <= c.bounds.n; ++n) {
        const Endomorphism injn = compose(power(c.ei, n), *c.ej);
        const Poly f = c.fn_checked(injn);
        const auto t = tag({{"k", k}, {"m", m}, {"n", n}});
        c.run.truth("(I^n o J, I^(2m+1)) PN: anti-commute " + t, anticommute(odd, injn));
        c.run.zero("(I^n o J, I^(2m+1)) PN: concomitant " + t, conc(th[k], fodd, f));
        c.run.truth("(I^n o J, I^(2m+1)) PN: Nijenhuis " + t, nij);
      }
    }
  }
}

void t18(Ctx& c) {
  if (!c.need_both_skew()) return;
  const Endomorphism i2 = compose(c.ei, c.ei);
  std::optional<Rational> alpha;
  if (i2.is_zero()) {
    alpha = 0;
  } else if (i2.at(0, 0).is_zero() || i2.at(0, 0).depends_on_x()) {
    alpha = std::nullopt;
  } else {
    const Rational a = i2.at(0, 0).terms().begin()->second;
    if (i2 == scaled_identity(c.sig, a)) alpha = a;
  }
  if (!c.run.gate(alpha.has_value(), "I^2 = alpha id")) return;
  if (!c.run.gate(c.compatible_pair(c.theta), "(J,I) compatible pair")) return;
  if (!c.run.gate(c.run.nijenhuis(c.base, c.ei), "I Nijenhuis for Theta")) return;
  const Poly& j = *c.fj;
  const auto eta = proportionality(dfm(c.theta, {j, j}), c.theta);
  if (!c.run.gate(eta.has_value(), "J deforming for Theta")) return;
  const auto l0 = c.lambda0();
  if (!c.run.gate(l0.has_value(), "Theta_{{J,{I,J}}} = lambda0 Theta_{J,J,I}")) return;
  const Poly ij = c.fn_checked(compose(c.ei, *c.ej));
  c.run.equal("Theta_{IoJ,IoJ} = (2+5 lambda0)/18 eta alpha Theta", dfm(c.theta, {ij, ij}),
              (2 + 5 * *l0) / 18 * *eta * *alpha * c.theta);
  for (int n = 0; n <= c.bounds.n; ++n) {
    const Endomorphism injn = compose(power(c.ei, n), *c.ej);
    const Poly f = c.fn_checked(injn);
    const auto t = tag({{"n", n}});
    c.run.truth("(I^n o J, I) deforming-Nijenhuis: deforming " + t,
                proportionality(dfm(c.theta, {f, f}), c.theta).has_value());
    c.run.truth("(I^n o J, I) deforming-Nijenhuis: anti-commute " + t, anticommute(c.ei, injn));
    c.run.zero("(I^n o J, I) deforming-Nijenhuis: concomitant " + t, conc(c.theta, *c.fi, f));
  }
}

void t19(Ctx& c) {
  if (!c.need_j()) return;
  if (!c.run.gate(anticommute(c.ei, *c.ej), "I and J anti-commute")) return;
  const Endomorphism& i = c.ei;
  const Endomorphism& j = *c.ej;
  const Endomorphism ii = compose(i, i);
  const Endomorphism jj = compose(j, j);
  const auto ti = torsion(c.base, i);
  const auto tj = torsion(c.base, j);
  const auto lhs = torsion(c.base, compose(i, j));
  BilinearMap rhs = [=](const Poly& x, const Poly& y) {
    const Poly a = ti(j.apply(x), j.apply(y)) - j.apply(ti(j.apply(x), y) + ti(x, j.apply(y))) - jj.apply(ti(x, y));
    const Poly b = tj(i.apply(x), i.apply(y)) - i.apply(tj(i.apply(x), y) + tj(x, i.apply(y))) - ii.apply(tj(x, y));
    return Rational(1, 2) * (a + b);
  };
  c.run.equal_maps("torsion of I o J", lhs, rhs);
}

// Predicates of a Nijenhuis pair (A, B) for the structure `th`.
void nijenhuis_pair(Ctx& c, const std::string& label, const Poly& th, const Endomorphism& a,
                    const Endomorphism& b) {
  const auto op = c.op(th);
  c.run.truth(label + " anti-commute", anticommute(a, b));
  c.run.zero(label + " concomitant", conc(th, c.fn_checked(a), c.fn_checked(b)));
  c.run.truth(label + " first Nijenhuis", c.run.nijenhuis(op, a));
  c.run.truth(label + " second Nijenhuis", c.run.nijenhuis(op, b));
}

void t20(Ctx& c) {
  if (!c.need_both_skew()) return;
  if (!c.run.gate(c.compatible_pair(c.theta), "(I,J) compatible pair")) return;
  if (!c.run.gate(c.run.nijenhuis(c.base, c.ei) && c.run.nijenhuis(c.base, *c.ej), "I and J Nijenhuis")) return;
  const Endomorphism& i = c.ei;
  const Endomorphism& j = *c.ej;
  const Endomorphism ij = compose(i, j);
  nijenhuis_pair(c, "(I, IoJ)", c.theta, i, ij);
  nijenhuis_pair(c, "(J, IoJ)", c.theta, j, ij);
  for (int m = 0; m <= c.bounds.m; ++m) {
    for (int n = 0; n <= c.bounds.n; ++n) {
      if (m % 2 == 0 && n % 2 == 0) continue;
      c.run.truth("I^m o J^n Nijenhuis " + tag({{"m", m}, {"n", n}}),
                  c.run.nijenhuis(c.base, compose(power(i, m), power(j, n))));
    }
  }
  // Deformation words T_1 .. T_s over {I, J}.
  std::vector<std::pair<std::string, Poly>> words{{"", c.theta}};
  std::size_t begin = 0;
  for (int len = 1; len <= c.bounds.s; ++len) {
    const std::size_t end = words.size();
    for (std::size_t w = begin; w < end; ++w) {
      words.push_back({words[w].first + "I", dfm(words[w].second, *c.fi)});
      words.push_back({words[w].first + "J", dfm(words[w].second, *c.fj)});
    }
    begin = end;
  }
  std::vector<Endomorphism> pi{i};
  std::vector<Endomorphism> pj{j};
  for (int e = 1; e <= std::max({c.bounds.m, c.bounds.t, c.bounds.n}); ++e) {
    pi.push_back(compose(compose(pi.back(), i), i));
    pj.push_back(compose(compose(pj.back(), j), j));
  }
  for (const auto& [word, th] : words) {
    const std::string w = "Theta_{" + word + "}";
    for (int m = 0; m <= c.bounds.m; ++m) {
      for (int t = 0; t <= c.bounds.t; ++t) {
        nijenhuis_pair(c, "(I^(2m+1), J^(2t+1)) for " + w + " " + tag({{"m", m}, {"t", t}}), th, pi[m], pj[t]);
        for (int n = 0; n <= c.bounds.n; ++n) {
          nijenhuis_pair(c, "(I^(2m+1) o J^n, J^(2t+1)) for " + w + " " + tag({{"m", m}, {"n", n}, {"t", t}}), th,
                         compose(pi[m], power(j, n)), pj[t]);
        }
      }
    }
  }
}

void t21(Ctx& c) {
  if (!c.need_both_skew()) return;
  const Endomorphism minus_id = scaled_identity(c.sig, -1);
  const Endomorphism& i = c.ei;
  const Endomorphism& j = *c.ej;
  if (!c.run.gate(compose(i, i) == minus_id && compose(j, j) == minus_id, "I^2 = J^2 = -id")) return;
  if (!c.run.gate(c.compatible_pair(c.theta), "(I,J) compatible pair")) return;
  if (!c.run.gate(c.run.nijenhuis(c.base, i) && c.run.nijenhuis(c.base, j), "I and J Nijenhuis")) return;
  const Endomorphism k = compose(i, j);
  c.run.truth("K^2 = -id", compose(k, k) == minus_id);
  c.run.truth("I o J o K = -id", compose(compose(i, j), k) == minus_id);
  const std::vector<std::pair<std::string, const Endomorphism*>> ts{{"I", &i}, {"J", &j}, {"K", &k}};
  for (std::size_t a = 0; a < ts.size(); ++a) {
    for (std::size_t b = a; b < ts.size(); ++b) {
      c.run.zero_map("N(" + ts[a].first + "," + ts[b].first + ")",
                     nijenhuis_concomitant(c.base, *ts[a].second, *ts[b].second));
    }
  }
}

using Entry = void (*)(Ctx&);

const std::map<std::string, Entry>& catalog() {
  static const std::map<std::string, Entry> table{
      {"T-01", t01}, {"T-02", t02}, {"T-03", t03}, {"T-04", t04}, {"T-05", t05}, {"T-06", t06}, {"T-07", t07},
      {"T-08", t08}, {"T-09", t09}, {"T-10", t10}, {"T-11", t11}, {"T-12", t12}, {"T-13", t13}, {"T-14", t14},
      {"T-15", t15}, {"T-16", t16}, {"T-17", t17}, {"T-18", t18}, {"T-19", t19}, {"T-20", t20}, {"T-21", t21},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : catalog()) out.push_back(id);
    return out;
  }();
  return ids;
}

IdentityReport verify_identity(const std::string& id, const IdentityBindings& bindings, const IdentityBounds& bounds,
                               const IdentityOptions& options) {
  const auto it = catalog().find(id);
  if (it == catalog().end()) throw UnknownIdentityError("unknown identity '" + id + "'");
  if (bounds.k < 0 || bounds.m < 0 || bounds.n < 0 || bounds.s < 0 || bounds.t < 0) {
    throw ValidationError("identity bounds must be non-negative");
  }
  IdentityReport report;
  report.identity_id = id;
  report.instance = bindings.instance;
  Run run(report, bindings.theta.signature());
  Ctx ctx(bindings, bounds, options, run);
  it->second(ctx);
  if (!report.failures.empty()) {
    report.status = CheckStatus::Failed;
  } else if (report.checks > 0) {
    report.status = CheckStatus::Passed;
  } else {
    report.status = CheckStatus::NotApplicable;
  }
  return report;
}

std::optional<Rational> resolve_lambda0(const PreCourant& theta, const TensorFunction& i, const TensorFunction& j,
                                        const std::optional<Rational>& fallback) {
  const Poly k3 = bracket(j.value(), bracket(i.value(), j.value()));
  const Poly lhs = dfm(theta.theta(), k3);
  const Poly jji = dfm(theta.theta(), {j.value(), j.value(), i.value()});
  if (jji.is_zero()) {
    if (lhs.is_zero()) return fallback.value_or(Rational(0));
    return std::nullopt;
  }
  return proportionality(lhs, jji);
}

// ---------------------------------------------------------------------------
// Poisson-Nijenhuis hierarchy

bool PnHierarchy::all_hold() const {
  if (!applicable) return false;
  for (const auto& e : tensors) {
    if (!e.poisson) return false;
  }
  for (const auto& e : compatibility) {
    if (!e.compatible) return false;
  }
  return true;
}

PnHierarchy build_pn_hierarchy(const PreCourant& theta, const TensorFunction& j, const TensorFunction& i, int n_max,
                               int k_max) {
  if (n_max < 0 || k_max < 0) throw ValidationError("hierarchy bounds must be non-negative");
  PnHierarchy out;
  out.input = classify_pair(theta, i, j);
  if (out.input.pair_class != PairClass::PoissonNijenhuis) {
    out.reason = "(J,I) Poisson-Nijenhuis";
    return out;
  }
  const Poly k3 = bracket(j.value(), bracket(i.value(), j.value()));
  if (!dfm(theta.theta(), k3).is_zero()) {
    out.reason = "Theta_{{J,{I,J}}} = 0";
    return out;
  }
  out.applicable = true;
  const Endomorphism ei = endo_of(i);
  const Endomorphism ej = endo_of(j);
  std::vector<Poly> fs;
  for (int n = 0; n <= n_max; ++n) fs.push_back(func_of(compose(power(ei, n), ej)).value());
  Poly th = theta.theta();
  for (int k = 0; k <= k_max; ++k) {
    for (int n = 0; n <= n_max; ++n) {
      out.tensors.push_back({n, k, dfm(th, {fs[n], fs[n]}).is_zero()});
    }
    for (int m = 0; m <= n_max; ++m) {
      for (int n = m + 1; n <= n_max; ++n) {
        out.compatibility.push_back({k, m, n, dfm(th, {fs[m], fs[n]}).is_zero()});
      }
    }
    th = dfm(th, i.value());
  }
  return out;
}

}  // namespace courant
