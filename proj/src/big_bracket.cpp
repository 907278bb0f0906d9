#include "courant/big_bracket.hpp"

#include <bit>

namespace courant {
namespace {

std::uint64_t below(int bit) { return (std::uint64_t{1} << bit) - 1; }
std::uint64_t above(int bit) { return bit >= 63 ? 0 : ~std::uint64_t{0} << (bit + 1); }

int parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1 : 1; }

SuperPolynomial partial(const SuperPolynomial& f, const Generator& g, bool from_left) {
  const Signature& sig = f.signature();
  SuperPolynomial out(sig);
  if (!g.is_odd()) {
    if (g.index < 1 || g.index > sig.n()) {
      throw SignatureError("generator " + g.name() + " outside base dimension n=" + std::to_string(sig.n()));
    }
    const int i = g.index - 1;
    for (const auto& [m, c] : f.terms()) {
      const auto& exps = g.kind == GeneratorKind::X ? m.x : m.p;
      if (exps[i] == 0) continue;
      Monomial r = m;
      auto& rexps = g.kind == GeneratorKind::X ? r.x : r.p;
      --rexps[i];
      out.add_term(r, c * exps[i]);
    }
    return out;
  }
  const int bit = odd_bit(sig, g);
  const std::uint64_t b = std::uint64_t{1} << bit;
  for (const auto& [m, c] : f.terms()) {
    if (!(m.odd & b)) continue;
    Monomial r = m;
    r.odd &= ~b;
    const int sign = parity_sign(m.odd & (from_left ? below(bit) : above(bit)));
    out.add_term(r, sign > 0 ? c : Rational(-c));
  }
  return out;
}

// Accumulates c * (f_rest)(g_rest) where f_rest/g_rest are the monomials with
// one conjugate generator already stripped.
void add_product(SuperPolynomial& out, const Monomial& f_rest, const Monomial& g_rest, Rational c, Monomial& scratch) {
  if (f_rest.odd & g_rest.odd) return;
  const std::size_t n = f_rest.x.size();
  scratch.x.resize(n);
  scratch.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    scratch.x[i] = f_rest.x[i] + g_rest.x[i];
    scratch.p[i] = f_rest.p[i] + g_rest.p[i];
  }
  scratch.odd = f_rest.odd | g_rest.odd;
  if (merge_sign(f_rest.odd, g_rest.odd) < 0) c = -c;
  out.add_term(scratch, c);
}

}  // namespace

SuperPolynomial left_partial(const SuperPolynomial& f, const Generator& g) { return partial(f, g, true); }

SuperPolynomial right_partial(const SuperPolynomial& f, const Generator& g) { return partial(f, g, false); }

SuperPolynomial bracket(const SuperPolynomial& f, const SuperPolynomial& g) {
  require_same_signature(f, g);
  const Signature& sig = f.signature();
  const int d = sig.d();
  const int n = sig.n();
  const std::uint64_t xi_mask = below(d);
  SuperPolynomial out(sig);
  Monomial scratch;

  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      const Rational cfg = cf * cg;

      // theta^a on the left, xi_a on the right.
      for (std::uint64_t hits = (mf.odd >> d) & mg.odd & xi_mask; hits != 0; hits &= hits - 1) {
        const int xb = std::countr_zero(hits);
        const int tb = xb + d;
        Monomial fr = mf;
        Monomial gr = mg;
        fr.odd &= ~(std::uint64_t{1} << tb);
        gr.odd &= ~(std::uint64_t{1} << xb);
        const int sign = parity_sign(mf.odd & above(tb)) * parity_sign(mg.odd & below(xb));
        add_product(out, fr, gr, sign > 0 ? cfg : Rational(-cfg), scratch);
      }
      // xi_a on the left, theta^a on the right.
      for (std::uint64_t hits = mf.odd & xi_mask & (mg.odd >> d); hits != 0; hits &= hits - 1) {
        const int xb = std::countr_zero(hits);
        const int tb = xb + d;
        Monomial fr = mf;
        Monomial gr = mg;
        fr.odd &= ~(std::uint64_t{1} << xb);
        gr.odd &= ~(std::uint64_t{1} << tb);
        const int sign = parity_sign(mf.odd & above(xb)) * parity_sign(mg.odd & below(tb));
        add_product(out, fr, gr, sign > 0 ? cfg : Rational(-cfg), scratch);
      }
      for (int i = 0; i < n; ++i) {
        if (mf.p[i] != 0 && mg.x[i] != 0) {
          Monomial fr = mf;
          Monomial gr = mg;
          --fr.p[i];
          --gr.x[i];
          add_product(out, fr, gr, cfg * mf.p[i] * mg.x[i], scratch);
        }
        if (mf.x[i] != 0 && mg.p[i] != 0) {
          Monomial fr = mf;
          Monomial gr = mg;
          --fr.x[i];
          --gr.p[i];
          add_product(out, fr, gr, -(cfg * mf.x[i] * mg.p[i]), scratch);
        }
      }
    }
  }
  return out;
}

}  // namespace courant
