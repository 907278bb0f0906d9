#include "courant/courant.hpp"

#include "courant/big_bracket.hpp"

#include <bit>

namespace courant {

PreCourant PreCourant::make(SuperPolynomial theta) {
  const auto degs = theta.total_degrees();
  if (!degs.empty() && (degs.size() != 1 || *degs.begin() != 3)) {
    throw ValidationError("pre-Courant structure must be homogeneous of total degree 3, got " + theta.to_string());
  }
  return PreCourant(std::move(theta));
}

bool is_courant(const PreCourant& theta) { return bracket(theta.theta(), theta.theta()).is_zero(); }

CourantDecomposition decompose(const PreCourant& theta) {
  const auto& t = theta.theta();
  return {bidegree_project(t, {1, 2}), bidegree_project(t, {2, 1}), bidegree_project(t, {0, 3}),
          bidegree_project(t, {3, 0})};
}

void require_section(const SuperPolynomial& x, std::string_view what) {
  for (const auto& [m, c] : x.terms()) {
    if (m.odd_count() != 1 || m.has_p()) {
      throw ValidationError(std::string(what) + " must be linear in xi/theta with x-polynomial coefficients, got " +
                            x.to_string());
    }
  }
}

void require_base_function(const SuperPolynomial& f, std::string_view what) {
  for (const auto& [m, c] : f.terms()) {
    if (m.odd != 0 || m.has_p()) {
      throw ValidationError(std::string(what) + " must be a polynomial in x only, got " + f.to_string());
    }
  }
}

std::vector<SuperPolynomial> section_basis(const Signature& sig) {
  std::vector<SuperPolynomial> out;
  out.reserve(2 * sig.d());
  for (int a = 1; a <= sig.d(); ++a) out.push_back(SuperPolynomial::generator(sig, {GeneratorKind::Theta, a}));
  for (int a = 1; a <= sig.d(); ++a) out.push_back(SuperPolynomial::generator(sig, {GeneratorKind::Xi, a}));
  return out;
}

std::vector<SuperPolynomial> section_components(const SuperPolynomial& x) {
  require_section(x);
  const Signature& sig = x.signature();
  const int d = sig.d();
  std::vector<SuperPolynomial> comps(2 * d, SuperPolynomial(sig));
  for (const auto& [m, c] : x.terms()) {
    const int bit = std::countr_zero(m.odd);
    // xi_a sits at bit a-1 and maps to slot d+a-1; theta^a at d+a-1 maps to a-1.
    const int slot = bit < d ? bit + d : bit - d;
    Monomial base = m;
    base.odd = 0;
    comps[slot].add_term(base, c);
  }
  return comps;
}

SuperPolynomial section_from_components(const Signature& sig, const std::vector<SuperPolynomial>& comps) {
  if (comps.size() != static_cast<std::size_t>(2 * sig.d())) {
    throw ValidationError("section needs " + std::to_string(2 * sig.d()) + " components");
  }
  const auto basis = section_basis(sig);
  SuperPolynomial out(sig);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_zero()) continue;
    require_base_function(comps[i], "section component");
    out += multiply(comps[i], basis[i]);
  }
  return out;
}

SuperPolynomial dorfman(const PreCourant& theta, const SuperPolynomial& x, const SuperPolynomial& y) {
  return bracket(bracket(x, theta.theta()), y);
}

SuperPolynomial anchor_apply(const PreCourant& theta, const SuperPolynomial& x, const SuperPolynomial& f) {
  f.require_degree(0, "anchor_apply argument");
  return bracket(bracket(x, theta.theta()), f);
}

SuperPolynomial pairing(const SuperPolynomial& x, const SuperPolynomial& y) { return bracket(x, y); }

SuperPolynomial jacobiator(const PreCourant& theta, const SuperPolynomial& x, const SuperPolynomial& y,
                           const SuperPolynomial& z) {
  return dorfman(theta, x, dorfman(theta, y, z)) - dorfman(theta, dorfman(theta, x, y), z) -
         dorfman(theta, y, dorfman(theta, x, z));
}

std::vector<AxiomResidual> check_pre_courant_axioms(const PreCourant& theta,
                                                    const std::vector<SuperPolynomial>& sections) {
  std::vector<AxiomResidual> out;
  const std::size_t count = sections.size();
  for (std::size_t i = 0; i < count; ++i) {
    const auto& x = sections[i];
    const auto ad_x = bracket(x, theta.theta());
    for (std::size_t j = 0; j < count; ++j) {
      const auto& y = sections[j];
      const auto xy = bracket(ad_x, y);
      for (std::size_t k = 0; k < count; ++k) {
        const auto& z = sections[k];
        const auto lhs = bracket(ad_x, pairing(y, z));
        const auto xz = bracket(ad_x, z);
        const std::string tag = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
        out.push_back({"metric" + tag, lhs - pairing(xy, z) - pairing(y, xz)});
        const auto sym = dorfman(theta, y, z) + dorfman(theta, z, y);
        out.push_back({"symmetric" + tag, lhs - pairing(x, sym)});
      }
    }
  }
  return out;
}

}  // namespace courant
