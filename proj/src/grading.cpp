#include "courant/grading.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace courant {

Signature::Signature(int n, int d) : n_(n), d_(d) {
  if (n < 0) throw SignatureError("signature: n must be >= 0");
  if (d < 1 || d > kMaxRank) {
    throw SignatureError("signature: d must lie in [1, " + std::to_string(kMaxRank) + "]");
  }
}

Generator Generator::parse(std::string_view token) {
  auto split = [&](std::string_view prefix, GeneratorKind kind) -> std::optional<Generator> {
    if (token.size() <= prefix.size() || token.substr(0, prefix.size()) != prefix) return std::nullopt;
    const auto digits = token.substr(prefix.size());
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return std::nullopt;
    }
    if (digits.size() > 6) return std::nullopt;
    return Generator{kind, std::stoi(std::string(digits))};
  };
  // "theta" before "x" is irrelevant (disjoint prefixes) but "xi" must be
  // tried before "x".
  if (auto g = split("theta", GeneratorKind::Theta)) return *g;
  if (auto g = split("xi", GeneratorKind::Xi)) return *g;
  if (auto g = split("x", GeneratorKind::X)) return *g;
  if (auto g = split("p", GeneratorKind::P)) return *g;
  throw std::invalid_argument("unknown generator '" + std::string(token) + "'");
}

std::string Generator::name() const {
  switch (kind) {
    case GeneratorKind::X: return "x" + std::to_string(index);
    case GeneratorKind::P: return "p" + std::to_string(index);
    case GeneratorKind::Xi: return "xi" + std::to_string(index);
    case GeneratorKind::Theta: return "theta" + std::to_string(index);
  }
  return "?";
}

Monomial Monomial::one(const Signature& sig) {
  Monomial m;
  m.x.assign(sig.n(), 0);
  m.p.assign(sig.n(), 0);
  return m;
}

int Monomial::odd_count() const { return std::popcount(odd); }

Bidegree Monomial::bidegree(const Signature& sig) const {
  const std::uint64_t xi_mask = (std::uint64_t{1} << sig.d()) - 1;
  int k = std::popcount(odd & ~xi_mask);
  int l = std::popcount(odd & xi_mask);
  for (auto e : p) {
    k += static_cast<int>(e);
    l += static_cast<int>(e);
  }
  return {k, l};
}

int Monomial::total_degree() const {
  int deg = odd_count();
  for (auto e : p) deg += 2 * static_cast<int>(e);
  return deg;
}

bool Monomial::has_p() const {
  return std::any_of(p.begin(), p.end(), [](auto e) { return e != 0; });
}

bool Monomial::has_x() const {
  return std::any_of(x.begin(), x.end(), [](auto e) { return e != 0; });
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.odd != b.odd) return a.odd < b.odd;
  if (a.p != b.p) return a.p < b.p;
  return a.x < b.x;
}

int odd_bit(const Signature& sig, const Generator& g) {
  if (g.index < 1 || g.index > sig.d()) {
    throw SignatureError("generator " + g.name() + " outside rank d=" + std::to_string(sig.d()));
  }
  if (g.kind == GeneratorKind::Xi) return g.index - 1;
  if (g.kind == GeneratorKind::Theta) return sig.d() + g.index - 1;
  throw SignatureError("generator " + g.name() + " is even");
}

Generator odd_generator_at(const Signature& sig, int bit) {
  if (bit < sig.d()) return {GeneratorKind::Xi, bit + 1};
  return {GeneratorKind::Theta, bit - sig.d() + 1};
}

int merge_sign(std::uint64_t left, std::uint64_t right) {
  // Each odd generator of `right` moves left past the generators of `left`
  // with a larger canonical position.
  int swaps = 0;
  while (right != 0) {
    const int j = std::countr_zero(right);
    right &= right - 1;
    const std::uint64_t above = (j == 63) ? 0 : (~std::uint64_t{0} << (j + 1));
    swaps += std::popcount(left & above);
  }
  return (swaps & 1) ? -1 : 1;
}

SuperPolynomial SuperPolynomial::constant(const Signature& sig, const Rational& c) {
  SuperPolynomial f(sig);
  f.add_term(Monomial::one(sig), c);
  return f;
}

SuperPolynomial SuperPolynomial::generator(const Signature& sig, const Generator& g) {
  return normalize(sig, {RawTerm{{g}, Rational(1)}});
}

Rational SuperPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SuperPolynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& other) {
  require_same_signature(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& other) {
  require_same_signature(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) { return multiply(a, b); }

bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
  return a.sig_ == b.sig_ && a.terms_ == b.terms_;
}

std::set<int> SuperPolynomial::total_degrees() const {
  std::set<int> out;
  for (const auto& [m, c] : terms_) out.insert(m.total_degree());
  return out;
}

std::set<Bidegree> SuperPolynomial::bidegrees() const {
  std::set<Bidegree> out;
  for (const auto& [m, c] : terms_) out.insert(m.bidegree(sig_));
  return out;
}

std::optional<int> SuperPolynomial::homogeneous_degree() const {
  const auto degs = total_degrees();
  if (degs.size() == 1) return *degs.begin();
  return std::nullopt;
}

void SuperPolynomial::require_degree(int deg, std::string_view what) const {
  const auto degs = total_degrees();
  if (degs.empty()) return;
  if (degs.size() != 1 || *degs.begin() != deg) {
    std::ostringstream msg;
    msg << what << ": expected homogeneous total degree " << deg << ", found degrees {";
    bool first = true;
    for (int d : degs) {
      msg << (first ? "" : ",") << d;
      first = false;
    }
    msg << "}";
    throw HomogeneityError(msg.str());
  }
}

bool SuperPolynomial::depends_on_x() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.has_x(); });
}

bool SuperPolynomial::depends_on_p() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.has_p(); });
}

std::string SuperPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (int i = 0; i < sig_.n(); ++i) {
      if (m.x[i] == 0) continue;
      factors.push_back("x" + std::to_string(i + 1) + (m.x[i] > 1 ? "^" + std::to_string(m.x[i]) : ""));
    }
    for (int i = 0; i < sig_.n(); ++i) {
      if (m.p[i] == 0) continue;
      factors.push_back("p" + std::to_string(i + 1) + (m.p[i] > 1 ? "^" + std::to_string(m.p[i]) : ""));
    }
    for (std::uint64_t bits = m.odd; bits != 0; bits &= bits - 1) {
      factors.push_back(odd_generator_at(sig_, std::countr_zero(bits)).name());
    }
    if (factors.empty()) {
      out << courant::to_string(mag);
      continue;
    }
    if (mag != 1) out << courant::to_string(mag) << "*";
    for (std::size_t i = 0; i < factors.size(); ++i) out << (i ? "*" : "") << factors[i];
  }
  return out.str();
}

SuperPolynomial normalize(const Signature& sig, const std::vector<RawTerm>& raw_terms) {
  SuperPolynomial out(sig);
  for (const auto& term : raw_terms) {
    Monomial m = Monomial::one(sig);
    int sign = 1;
    bool dead = false;
    for (const auto& g : term.word) {
      switch (g.kind) {
        case GeneratorKind::X:
        case GeneratorKind::P: {
          if (g.index < 1 || g.index > sig.n()) {
            throw SignatureError("generator " + g.name() + " outside base dimension n=" + std::to_string(sig.n()));
          }
          auto& exps = g.kind == GeneratorKind::X ? m.x : m.p;
          ++exps[g.index - 1];
          break;
        }
        case GeneratorKind::Xi:
        case GeneratorKind::Theta: {
          const int bit = odd_bit(sig, g);
          const std::uint64_t b = std::uint64_t{1} << bit;
          if (m.odd & b) {
            dead = true;
            break;
          }
          sign *= merge_sign(m.odd, b);
          m.odd |= b;
          break;
        }
      }
    }
    if (!dead) out.add_term(m, sign > 0 ? term.coefficient : Rational(-term.coefficient));
  }
  return out;
}

void require_same_signature(const SuperPolynomial& a, const SuperPolynomial& b) {
  if (!(a.signature() == b.signature())) {
    throw SignatureError("signature mismatch: (" + std::to_string(a.signature().n()) + "," +
                         std::to_string(a.signature().d()) + ") vs (" + std::to_string(b.signature().n()) + "," +
                         std::to_string(b.signature().d()) + ")");
  }
}

SuperPolynomial multiply(const SuperPolynomial& f, const SuperPolynomial& g) {
  require_same_signature(f, g);
  SuperPolynomial out(f.signature());
  const int n = f.signature().n();
  Monomial m;
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      if (mf.odd & mg.odd) continue;
      m.odd = mf.odd | mg.odd;
      m.x.resize(n);
      m.p.resize(n);
      for (int i = 0; i < n; ++i) {
        m.x[i] = mf.x[i] + mg.x[i];
        m.p[i] = mf.p[i] + mg.p[i];
      }
      Rational c = cf * cg;
      if (merge_sign(mf.odd, mg.odd) < 0) c = -c;
      out.add_term(m, c);
    }
  }
  return out;
}

SuperPolynomial bidegree_project(const SuperPolynomial& f, Bidegree bd) {
  SuperPolynomial out(f.signature());
  for (const auto& [m, c] : f.terms()) {
    if (m.bidegree(f.signature()) == bd) out.add_term(m, c);
  }
  return out;
}

SuperPolynomial degree_project(const SuperPolynomial& f, int deg) {
  SuperPolynomial out(f.signature());
  for (const auto& [m, c] : f.terms()) {
    if (m.total_degree() == deg) out.add_term(m, c);
  }
  return out;
}

}  // namespace courant
