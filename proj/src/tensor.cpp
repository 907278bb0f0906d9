#include "courant/tensor.hpp"

#include "courant/big_bracket.hpp"

#include <bit>

namespace courant {
namespace {

bool is_base_function(const SuperPolynomial& f) {
  for (const auto& [m, c] : f.terms()) {
    if (m.odd != 0 || m.has_p()) return false;
  }
  return true;
}

// Component slot of an odd generator bit.
int slot_of_bit(int bit, int d) { return bit < d ? bit + d : bit - d; }

}  // namespace

Endomorphism::Endomorphism(const Signature& sig) : sig_(sig), entries_(4 * sig.d() * sig.d(), SuperPolynomial(sig)) {}

Endomorphism Endomorphism::identity(const Signature& sig) {
  Endomorphism e(sig);
  for (int i = 0; i < e.dim(); ++i) e.set(i, i, Rational(1));
  return e;
}

Endomorphism Endomorphism::from_rows(const Signature& sig, const std::vector<std::vector<Rational>>& rows) {
  Endomorphism e(sig);
  if (rows.size() != static_cast<std::size_t>(e.dim())) {
    throw ValidationError("matrix needs " + std::to_string(e.dim()) + " rows, got " + std::to_string(rows.size()));
  }
  for (int r = 0; r < e.dim(); ++r) {
    if (rows[r].size() != static_cast<std::size_t>(e.dim())) {
      throw ValidationError("matrix row " + std::to_string(r + 1) + " needs " + std::to_string(e.dim()) + " entries");
    }
    for (int c = 0; c < e.dim(); ++c) e.set(r, c, rows[r][c]);
  }
  return e;
}

Endomorphism Endomorphism::from_blocks(const Signature& sig, const std::vector<std::vector<Rational>>& a,
                                       const std::vector<std::vector<Rational>>& b,
                                       const std::vector<std::vector<Rational>>& c,
                                       const std::vector<std::vector<Rational>>& e) {
  const int d = sig.d();
  Endomorphism out(sig);
  auto put = [&](const std::vector<std::vector<Rational>>& block, int r0, int c0, const char* name) {
    if (block.empty()) return;
    if (block.size() != static_cast<std::size_t>(d)) {
      throw ValidationError(std::string("block ") + name + " must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    for (int r = 0; r < d; ++r) {
      if (block[r].size() != static_cast<std::size_t>(d)) {
        throw ValidationError(std::string("block ") + name + " must be " + std::to_string(d) + "x" + std::to_string(d));
      }
      for (int col = 0; col < d; ++col) out.set(r0 + r, c0 + col, block[r][col]);
    }
  };
  put(a, 0, 0, "A->A");
  put(b, 0, d, "A*->A");
  put(c, d, 0, "A->A*");
  put(e, d, d, "A*->A*");
  return out;
}

void Endomorphism::set(int row, int col, SuperPolynomial value) {
  require_same_signature(value, entries_[0]);
  if (!is_base_function(value)) {
    throw ValidationError("matrix entries must be polynomials in x, got " + value.to_string());
  }
  entries_[row * dim() + col] = std::move(value);
}

void Endomorphism::set(int row, int col, const Rational& value) {
  set(row, col, SuperPolynomial::constant(sig_, value));
}

SuperPolynomial Endomorphism::apply(const SuperPolynomial& section) const {
  require_same_signature(section, entries_[0]);
  const auto comps = section_components(section);
  std::vector<SuperPolynomial> out(dim(), SuperPolynomial(sig_));
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) {
      if (comps[c].is_zero() || at(r, c).is_zero()) continue;
      out[r] += multiply(at(r, c), comps[c]);
    }
  }
  return section_from_components(sig_, out);
}

Endomorphism Endomorphism::adjoint() const {
  // The pairing swaps the A and A* halves, so E* = G E^T G with G the swap.
  const int d = sig_.d();
  Endomorphism out(sig_);
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) {
      out.entries_[r * dim() + c] = at((c + d) % dim(), (r + d) % dim());
    }
  }
  return out;
}

bool Endomorphism::is_skew() const { return (*this + adjoint()).is_zero(); }

bool Endomorphism::is_constant() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const SuperPolynomial& f) { return !f.depends_on_x(); });
}

bool Endomorphism::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const SuperPolynomial& f) { return f.is_zero(); });
}

std::string Endomorphism::key() const {
  std::string out;
  for (const auto& f : entries_) {
    out += f.to_string();
    out += ';';
  }
  return out;
}

Endomorphism& Endomorphism::operator+=(const Endomorphism& o) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

Endomorphism& Endomorphism::operator-=(const Endomorphism& o) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

Endomorphism& Endomorphism::operator*=(const Rational& c) {
  for (auto& f : entries_) f *= c;
  return *this;
}

bool operator==(const Endomorphism& a, const Endomorphism& b) {
  return a.sig_ == b.sig_ && a.entries_ == b.entries_;
}

Endomorphism compose(const Endomorphism& a, const Endomorphism& b) {
  require_same_signature(a.at(0, 0), b.at(0, 0));
  Endomorphism out(a.signature());
  const int dim = a.dim();
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      SuperPolynomial acc(a.signature());
      for (int k = 0; k < dim; ++k) {
        if (a.at(r, k).is_zero() || b.at(k, c).is_zero()) continue;
        acc += multiply(a.at(r, k), b.at(k, c));
      }
      out.set(r, c, std::move(acc));
    }
  }
  return out;
}

Endomorphism power(const Endomorphism& e, int n) {
  if (n < 0) throw DomainError("power: exponent must be >= 0");
  Endomorphism out = Endomorphism::identity(e.signature());
  for (int i = 0; i < n; ++i) out = compose(out, e);
  return out;
}

TensorFunction TensorFunction::make(SuperPolynomial value) {
  for (const auto& [m, c] : value.terms()) {
    if (m.has_p() || m.odd_count() != 2) {
      throw ValidationError("tensor function must be quadratic in xi/theta with x-polynomial coefficients, got " +
                            value.to_string());
    }
  }
  return TensorFunction(std::move(value));
}

Endomorphism endo_of(const TensorFunction& j) {
  const Signature& sig = j.signature();
  Endomorphism out(sig);
  const auto basis = section_basis(sig);
  for (int c = 0; c < out.dim(); ++c) {
    const auto comps = section_components(bracket(basis[c], j.value()));
    for (int r = 0; r < out.dim(); ++r) out.set(r, c, comps[r]);
  }
  return out;
}

TensorFunction func_of(const Endomorphism& e) {
  if (!e.is_skew()) throw ValidationError("func_of: endomorphism is not skew-symmetric");
  const Signature& sig = e.signature();
  const int d = sig.d();
  const int dim = 2 * d;
  // With J = sum_{i<j} c_ij g_i g_j, the dual section of g_i is sent to
  // c_ij g_j + (terms in other generators), so c_ij is read off a single entry.
  SuperPolynomial value(sig);
  for (int bi = 0; bi < dim; ++bi) {
    const int dual_slot = (slot_of_bit(bi, d) + d) % dim;
    for (int bj = bi + 1; bj < dim; ++bj) {
      const auto& coeff = e.at(slot_of_bit(bj, d), dual_slot);
      if (coeff.is_zero()) continue;
      SuperPolynomial pair(sig);
      Monomial m = Monomial::one(sig);
      m.odd = (std::uint64_t{1} << bi) | (std::uint64_t{1} << bj);
      pair.add_term(m, Rational(1));
      value += multiply(coeff, pair);
    }
  }
  auto out = TensorFunction::make(std::move(value));
  if (!(endo_of(out) == e)) throw ValidationError("func_of: endomorphism does not round-trip");
  return out;
}

PreCourant deform_theta(const PreCourant& theta, const TensorFunction& j) {
  return PreCourant::make(bracket(j.value(), theta.theta()));
}

PreCourant deform_theta(const PreCourant& theta, const std::vector<TensorFunction>& steps) {
  PreCourant out = theta;
  for (const auto& s : steps) out = deform_theta(out, s);
  return out;
}

// ---------------------------------------------------------------------------
// BracketOperator

struct BracketOperator::Node {
  Signature sig;
  std::optional<SuperPolynomial> function;
  std::shared_ptr<const Node> parent;
  std::optional<Endomorphism> t;
  // n = 0 only: table[i * dim + j] holds the components of [e_i, e_j].
  std::vector<std::vector<Rational>> table;

  bool tabulated() const { return !table.empty(); }
  int dim() const { return 2 * sig.d(); }
};

namespace {

std::vector<Rational> constant_components(const SuperPolynomial& x) {
  const Signature& sig = x.signature();
  const int d = sig.d();
  std::vector<Rational> out(2 * d);
  for (const auto& [m, c] : x.terms()) {
    if (m.odd_count() != 1 || m.has_p() || m.has_x()) {
      throw ValidationError("expected a constant section, got " + x.to_string());
    }
    out[slot_of_bit(std::countr_zero(m.odd), d)] += c;
  }
  return out;
}

SuperPolynomial section_of_constants(const Signature& sig, const std::vector<Rational>& comps) {
  const int d = sig.d();
  SuperPolynomial out(sig);
  Monomial m = Monomial::one(sig);
  for (int s = 0; s < 2 * d; ++s) {
    if (comps[s] == 0) continue;
    const int bit = s < d ? s + d : s - d;
    m.odd = std::uint64_t{1} << bit;
    out.add_term(m, comps[s]);
  }
  return out;
}

}  // namespace

BracketOperator BracketOperator::of_function(const SuperPolynomial& f) {
  auto node = std::make_shared<Node>(Node{f.signature(), f, nullptr, std::nullopt, {}});
  const Signature& sig = f.signature();
  if (sig.n() == 0) {
    const auto basis = section_basis(sig);
    const int dim = node->dim();
    node->table.resize(dim * dim);
    for (int i = 0; i < dim; ++i) {
      const auto ad = bracket(basis[i], f);
      for (int j = 0; j < dim; ++j) node->table[i * dim + j] = constant_components(bracket(ad, basis[j]));
    }
  }
  return BracketOperator(std::move(node));
}

BracketOperator BracketOperator::deformed(const Endomorphism& t) const {
  require_same_signature(t.at(0, 0), SuperPolynomial(signature()));
  auto node = std::make_shared<Node>(Node{signature(), std::nullopt, node_, t, {}});
  if (node_->tabulated()) {
    const int dim = node->dim();
    const auto& p = node_->table;
    std::vector<std::vector<Rational>> tm(dim, std::vector<Rational>(dim));
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        const auto& entry = t.at(r, c);
        if (!entry.is_zero()) tm[r][c] = entry.terms().begin()->second;
      }
    }
    node->table.assign(dim * dim, std::vector<Rational>(dim));
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        auto& out = node->table[i * dim + j];
        for (int k = 0; k < dim; ++k) {
          if (tm[k][i] != 0) {
            for (int s = 0; s < dim; ++s) out[s] += tm[k][i] * p[k * dim + j][s];
          }
          if (tm[k][j] != 0) {
            for (int s = 0; s < dim; ++s) out[s] += tm[k][j] * p[i * dim + k][s];
          }
        }
        const auto& pij = p[i * dim + j];
        for (int r = 0; r < dim; ++r) {
          for (int s = 0; s < dim; ++s) {
            if (tm[r][s] != 0 && pij[s] != 0) out[r] -= tm[r][s] * pij[s];
          }
        }
      }
    }
  }
  return BracketOperator(std::move(node));
}

BracketOperator BracketOperator::deformed(const std::vector<Endomorphism>& ts) const {
  BracketOperator out = *this;
  for (const auto& t : ts) out = out.deformed(t);
  return out;
}

const Signature& BracketOperator::signature() const { return node_->sig; }

SuperPolynomial BracketOperator::operator()(const SuperPolynomial& x, const SuperPolynomial& y) const {
  const Node& node = *node_;
  if (node.tabulated()) {
    const int dim = node.dim();
    const auto cx = constant_components(x);
    const auto cy = constant_components(y);
    std::vector<Rational> out(dim);
    for (int i = 0; i < dim; ++i) {
      if (cx[i] == 0) continue;
      for (int j = 0; j < dim; ++j) {
        if (cy[j] == 0) continue;
        const Rational w = cx[i] * cy[j];
        const auto& row = node.table[i * dim + j];
        for (int s = 0; s < dim; ++s) {
          if (row[s] != 0) out[s] += w * row[s];
        }
      }
    }
    return section_of_constants(node.sig, out);
  }
  if (node.function) return bracket(bracket(x, *node.function), y);
  const BracketOperator parent(node.parent);
  const Endomorphism& t = *node.t;
  return parent(t.apply(x), y) + parent(x, t.apply(y)) - t.apply(parent(x, y));
}

// ---------------------------------------------------------------------------
// Torsion and concomitants

BilinearMap torsion(const BracketOperator& b, const Endomorphism& t) {
  const BracketOperator bt = b.deformed(t);
  return [b, bt, t](const SuperPolynomial& x, const SuperPolynomial& y) {
    return b(t.apply(x), t.apply(y)) - t.apply(bt(x, y));
  };
}

BilinearMap torsion_via_squares(const BracketOperator& b, const Endomorphism& t) {
  const BracketOperator btt = b.deformed(t).deformed(t);
  const BracketOperator bt2 = b.deformed(compose(t, t));
  return [btt, bt2](const SuperPolynomial& x, const SuperPolynomial& y) {
    return Rational(1, 2) * (btt(x, y) - bt2(x, y));
  };
}

SuperPolynomial torsion_function(const PreCourant& theta, const TensorFunction& i, const Rational& alpha) {
  const Endomorphism e = endo_of(i);
  if (!(compose(e, e) == alpha * Endomorphism::identity(e.signature()))) {
    throw DomainError("torsion_function: I^2 != " + to_string(alpha) + " id");
  }
  const auto tii = bracket(i.value(), bracket(i.value(), theta.theta()));
  return Rational(1, 2) * (tii - alpha * theta.theta());
}

SuperPolynomial concomitant(const PreCourant& theta, const TensorFunction& i, const TensorFunction& j) {
  const auto ti = bracket(i.value(), theta.theta());
  const auto tj = bracket(j.value(), theta.theta());
  return bracket(j.value(), ti) + bracket(i.value(), tj);
}

BilinearMap nijenhuis_concomitant(const BracketOperator& b, const Endomorphism& i, const Endomorphism& j) {
  const Endomorphism ij = compose(i, j);
  const Endomorphism ji = compose(j, i);
  return [b, i, j, ij, ji](const SuperPolynomial& x, const SuperPolynomial& y) {
    const auto ix = i.apply(x);
    const auto jx = j.apply(x);
    const auto iy = i.apply(y);
    const auto jy = j.apply(y);
    const auto xy = b(x, y);
    return b(ix, jy) - i.apply(b(x, jy)) - j.apply(b(ix, y)) + ij.apply(xy) + b(jx, iy) - j.apply(b(x, iy)) -
           i.apply(b(jx, y)) + ji.apply(xy);
  };
}

std::vector<SuperPolynomial> probe_sections(const Signature& sig) {
  auto out = section_basis(sig);
  const std::size_t base = out.size();
  for (int i = 1; i <= sig.n(); ++i) {
    const auto xi = SuperPolynomial::generator(sig, {GeneratorKind::X, i});
    for (std::size_t k = 0; k < base; ++k) out.push_back(multiply(xi, out[k]));
  }
  return out;
}

bool vanishes_on_probes(const BilinearMap& m, const Signature& sig) {
  const auto probes = probe_sections(sig);
  for (const auto& x : probes) {
    for (const auto& y : probes) {
      if (!m(x, y).is_zero()) return false;
    }
  }
  return true;
}

std::size_t probe_residual_terms(const BilinearMap& m, const BilinearMap& n, const Signature& sig) {
  const auto probes = probe_sections(sig);
  std::size_t total = 0;
  for (const auto& x : probes) {
    for (const auto& y : probes) total += (m(x, y) - n(x, y)).size();
  }
  return total;
}

std::optional<Rational> proportionality(const SuperPolynomial& a, const SuperPolynomial& b) {
  if (a.is_zero()) return Rational(0);
  if (b.is_zero()) return std::nullopt;
  const auto& [m, c] = *b.terms().begin();
  Rational eta = a.coefficient(m) / c;
  if (a == eta * b) return eta;
  return std::nullopt;
}

std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::None: return "none";
    case PairClass::Compatible: return "compatible";
    case PairClass::DeformingNijenhuis: return "deforming-Nijenhuis";
    case PairClass::PoissonNijenhuis: return "Poisson-Nijenhuis";
    case PairClass::Nijenhuis: return "Nijenhuis";
  }
  return "none";
}

PairClass parse_pair_class(std::string_view text) {
  for (auto c : {PairClass::None, PairClass::Compatible, PairClass::DeformingNijenhuis, PairClass::PoissonNijenhuis,
                 PairClass::Nijenhuis}) {
    if (to_string(c) == text) return c;
  }
  throw ValidationError("unknown pair class '" + std::string(text) + "'");
}

bool is_nijenhuis(const PreCourant& theta, const Endomorphism& t) {
  return vanishes_on_probes(torsion(theta, t), theta.signature());
}

std::optional<Rational> deforming_constant(const PreCourant& theta, const TensorFunction& j) {
  const auto tjj = bracket(j.value(), bracket(j.value(), theta.theta()));
  return proportionality(tjj, theta.theta());
}

PairClassification classify_pair(const PreCourant& theta, const TensorFunction& i, const TensorFunction& j) {
  PairClassification out;
  const Endomorphism ei = endo_of(i);
  const Endomorphism ej = endo_of(j);
  out.anti_commute = (compose(ei, ej) + compose(ej, ei)).is_zero();
  out.anti_commute_wrt_theta = concomitant(theta, i, j).is_zero();
  out.compatible_pair = out.anti_commute && out.anti_commute_wrt_theta;
  out.nijenhuis_i = is_nijenhuis(theta, ei);
  out.nijenhuis_j = is_nijenhuis(theta, ej);
  out.deforming_eta = deforming_constant(theta, j);
  out.poisson_j = bracket(j.value(), bracket(j.value(), theta.theta())).is_zero();
  out.degenerate_theta = theta.theta().is_zero();
  if (out.compatible_pair && out.nijenhuis_i && out.poisson_j) {
    out.pair_class = PairClass::PoissonNijenhuis;
  } else if (out.compatible_pair && out.nijenhuis_i && out.deforming_eta) {
    out.pair_class = PairClass::DeformingNijenhuis;
  } else if (out.compatible_pair && out.nijenhuis_i && out.nijenhuis_j) {
    out.pair_class = PairClass::Nijenhuis;
  } else if (out.compatible_pair) {
    out.pair_class = PairClass::Compatible;
  }
  return out;
}

}  // namespace courant
