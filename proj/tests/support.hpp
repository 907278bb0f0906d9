#pragma once

// Shared test helpers: random generators for property tests and an
// independent bracket oracle working on explicit generator words.

#include "courant/big_bracket.hpp"
#include "courant/builders.hpp"
#include "courant/tensor.hpp"

#include <random>
#include <vector>

namespace testing_support {

using namespace courant;

// Generator word of a normalized monomial; the odd letters come out in
// canonical order so the word evaluates to the monomial with sign +1.
inline std::vector<Generator> word_of(const Signature& sig, const Monomial& m) {
  std::vector<Generator> w;
  for (int i = 0; i < sig.n(); ++i) {
    for (std::uint32_t e = 0; e < m.x[i]; ++e) w.push_back({GeneratorKind::X, i + 1});
  }
  for (int i = 0; i < sig.n(); ++i) {
    for (std::uint32_t e = 0; e < m.p[i]; ++e) w.push_back({GeneratorKind::P, i + 1});
  }
  for (int a = 1; a <= sig.d(); ++a) {
    if (m.odd >> (a - 1) & 1U) w.push_back({GeneratorKind::Xi, a});
  }
  for (int a = 1; a <= sig.d(); ++a) {
    if (m.odd >> (sig.d() + a - 1) & 1U) w.push_back({GeneratorKind::Theta, a});
  }
  return w;
}

// {g, h} for single generators.
inline int pair_value(const Generator& g, const Generator& h) {
  if (g.index != h.index) return 0;
  if (g.kind == GeneratorKind::P && h.kind == GeneratorKind::X) return 1;
  if (g.kind == GeneratorKind::X && h.kind == GeneratorKind::P) return -1;
  if (g.kind == GeneratorKind::Theta && h.kind == GeneratorKind::Xi) return 1;
  if (g.kind == GeneratorKind::Xi && h.kind == GeneratorKind::Theta) return 1;
  return 0;
}

// Biderivation expansion letter by letter: pull the left letter to the end
// of its word, the right letter to the front of its word, contract them.
inline SuperPolynomial oracle_bracket(const SuperPolynomial& f, const SuperPolynomial& g) {
  const Signature& sig = f.signature();
  std::vector<RawTerm> out;
  for (const auto& [ma, ca] : f.terms()) {
    const auto a = word_of(sig, ma);
    for (const auto& [mb, cb] : g.terms()) {
      const auto b = word_of(sig, mb);
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
          const int v = pair_value(a[i], b[j]);
          if (!v) continue;
          int sign = v;
          if (a[i].is_odd()) {
            for (std::size_t k = i + 1; k < a.size(); ++k) sign *= a[k].is_odd() ? -1 : 1;
          }
          if (b[j].is_odd()) {
            for (std::size_t k = 0; k < j; ++k) sign *= b[k].is_odd() ? -1 : 1;
          }
          RawTerm t{{}, ca * cb * sign};
          for (std::size_t k = 0; k < a.size(); ++k) {
            if (k != i) t.word.push_back(a[k]);
          }
          for (std::size_t k = 0; k < b.size(); ++k) {
            if (k != j) t.word.push_back(b[k]);
          }
          out.push_back(std::move(t));
        }
      }
    }
  }
  return normalize(sig, out);
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(int span = 5) {
    const int num = uniform(-span, span);
    const int den = uniform(1, 3);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational nonzero(int span = 5) {
    for (;;) {
      const Rational q = rational(span);
      if (q != 0) return q;
    }
  }

  /// One word of total degree `deg` (x carry degree 0, p degree 2, odd 1).
  std::vector<Generator> word(const Signature& sig, int deg, int max_x = 2) {
    std::vector<Generator> w;
    const int max_p = sig.n() > 0 ? deg / 2 : 0;
    int ps = uniform(0, max_p);
    while (sig.n() > 0 && deg - 2 * ps > 2 * sig.d()) ++ps;
    for (int i = 0; i < ps; ++i) w.push_back({GeneratorKind::P, uniform(1, sig.n())});
    for (int i = 0; i < deg - 2 * ps; ++i) {
      w.push_back({coin() ? GeneratorKind::Xi : GeneratorKind::Theta, uniform(1, sig.d())});
    }
    if (sig.n() > 0) {
      const int xs = uniform(0, max_x);
      for (int i = 0; i < xs; ++i) w.push_back({GeneratorKind::X, uniform(1, sig.n())});
    }
    std::shuffle(w.begin(), w.end(), rng_);
    return w;
  }

  /// Homogeneous of total degree `deg`; may be zero when odd letters repeat.
  SuperPolynomial homogeneous(const Signature& sig, int deg, int terms = 3) {
    std::vector<RawTerm> raw;
    for (int t = 0; t < terms; ++t) raw.push_back({word(sig, deg), nonzero()});
    return normalize(sig, raw);
  }

  Matrix matrix(int d) {
    Matrix m = zero_matrix(d);
    for (auto& row : m) {
      for (auto& v : row) v = uniform(0, 2) ? rational(3) : Rational(0);
    }
    return m;
  }
  Matrix antisymmetric(int d) {
    Matrix m = zero_matrix(d);
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        m[a][b] = uniform(0, 2) ? rational(3) : Rational(0);
        m[b][a] = -m[a][b];
      }
    }
    return m;
  }
  StructureConstants constants(int d) {
    StructureConstants c = zero_constants(d);
    for (int a = 1; a <= d; ++a) {
      for (int b = a + 1; b <= d; ++b) {
        for (int k = 1; k <= d; ++k) {
          if (uniform(0, 2) == 0) set_bracket(c, a, b, k, rational(2));
        }
      }
    }
    return c;
  }

  /// Constant skew endomorphism (N, pi; omega, -N*).
  TensorFunction skew_tensor(const Signature& sig) {
    return j_general(sig, matrix(sig.d()), antisymmetric(sig.d()), antisymmetric(sig.d()));
  }

  /// N with N^2 = alpha id for alpha in {0, 1, 1/4, -1}; -1 needs even d.
  Matrix square_root_of_scalar(int d, const Rational& alpha) {
    if (alpha == -1) {
      Matrix m = zero_matrix(d);
      for (int b = 0; b + 1 < d; b += 2) {
        const Rational a = rational(2);
        const Rational x = nonzero(2);
        m[b][b] = a;
        m[b][b + 1] = x;
        m[b + 1][b] = (-1 - a * a) / x;
        m[b + 1][b + 1] = -a;
      }
      return m;
    }
    std::vector<Rational> u(d);
    std::vector<Rational> v(d);
    Rational vu = 0;
    while (vu == 0) {
      for (int i = 0; i < d; ++i) {
        u[i] = rational(3);
        v[i] = rational(3);
      }
      vu = 0;
      for (int i = 0; i < d; ++i) vu += v[i] * u[i];
      if (alpha == 0) break;
    }
    Matrix m = zero_matrix(d);
    if (alpha == 0) {
      // rank one u v^T with v.u = 0
      Rational vv = 0;
      for (int i = 0; i < d; ++i) vv += v[i] * v[i];
      if (vv != 0) {
        for (int i = 0; i < d; ++i) u[i] -= vu / vv * v[i];
      }
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) m[r][c] = u[r] * v[c];
      }
      return m;
    }
    // reflection id - 2 u v^T / (v.u), scaled
    const Rational scale = alpha == 1 ? Rational(1) : Rational(1, 2);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) m[r][c] = scale * ((r == c ? 1 : 0) - 2 * u[r] * v[c] / vu);
    }
    return m;
  }

  /// Skew endomorphism with square alpha id: I_N conjugated by random B-field,
  /// beta-field and diagonal rescalings, all of which preserve the pairing.
  Endomorphism skew_square(const Signature& sig, const Rational& alpha) {
    const int d = sig.d();
    const Matrix zero = zero_matrix(d);
    const Matrix id = identity_matrix(d);
    Endomorphism e = endo_of(i_n(sig, square_root_of_scalar(d, alpha)));
    for (int step = 0; step < 3; ++step) {
      Endomorphism g(sig);
      Endomorphism ginv(sig);
      const int kind = uniform(0, 2);
      if (kind == 2) {
        Matrix p = zero_matrix(d);
        Matrix pinv_t = zero_matrix(d);
        Matrix pinv = zero_matrix(d);
        Matrix p_t = zero_matrix(d);
        for (int i = 0; i < d; ++i) {
          p[i][i] = p_t[i][i] = nonzero(3);
          pinv[i][i] = pinv_t[i][i] = 1 / p[i][i];
        }
        g = Endomorphism::from_blocks(sig, p, zero, zero, pinv_t);
        ginv = Endomorphism::from_blocks(sig, pinv, zero, zero, p_t);
      } else {
        Matrix b = antisymmetric(d);
        Matrix minus = b;
        for (auto& row : minus) {
          for (auto& v : row) v = -v;
        }
        g = kind == 0 ? Endomorphism::from_blocks(sig, id, zero, b, id) : Endomorphism::from_blocks(sig, id, b, zero, id);
        ginv = kind == 0 ? Endomorphism::from_blocks(sig, id, zero, minus, id)
                         : Endomorphism::from_blocks(sig, id, minus, zero, id);
      }
      e = compose(g, compose(e, ginv));
    }
    return e;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline SuperPolynomial gen(const Signature& sig, GeneratorKind k, int i) {
  return SuperPolynomial::generator(sig, {k, i});
}

inline StructureConstants heisenberg_constants() {
  StructureConstants c = zero_constants(3);
  set_bracket(c, 1, 2, 3, 1);
  return c;
}

inline StructureConstants sl2_constants() {
  StructureConstants c = zero_constants(3);
  set_bracket(c, 1, 2, 2, 2);
  set_bracket(c, 1, 3, 3, -2);
  set_bracket(c, 2, 3, 1, 1);
  return c;
}

inline StructureConstants jacobi_breaking_constants() {
  StructureConstants c = zero_constants(3);
  set_bracket(c, 1, 2, 3, 1);
  set_bracket(c, 1, 3, 1, 1);
  return c;
}

/// Heisenberg, sl2, book, so3, 2d affine, su2 + R.
inline std::vector<PreCourant> lie_algebras() {
  const Signature s3(0, 3);
  std::vector<PreCourant> out{lie_algebra_theta(s3, heisenberg_constants()),
                              lie_algebra_theta(s3, sl2_constants())};
  auto book = zero_constants(3);
  set_bracket(book, 1, 2, 2, 1);
  set_bracket(book, 1, 3, 3, 1);
  out.push_back(lie_algebra_theta(s3, book));
  auto so3 = zero_constants(3);
  set_bracket(so3, 1, 2, 3, 1);
  set_bracket(so3, 2, 3, 1, 1);
  set_bracket(so3, 3, 1, 2, 1);
  out.push_back(lie_algebra_theta(s3, so3));
  auto aff = zero_constants(2);
  set_bracket(aff, 1, 2, 2, 1);
  out.push_back(lie_algebra_theta(Signature(0, 2), aff));
  auto u2 = zero_constants(4);
  set_bracket(u2, 2, 3, 4, 2);
  set_bracket(u2, 3, 4, 2, 2);
  set_bracket(u2, 4, 2, 3, 2);
  out.push_back(lie_algebra_theta(Signature(0, 4), u2));
  return out;
}

// Torsion of a linear map on a Lie algebra, straight from the constants.
inline bool constants_nijenhuis(const StructureConstants& c, const Matrix& n) {
  const int d = static_cast<int>(c.size());
  auto br = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
    std::vector<Rational> w(d);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        for (int k = 0; k < d; ++k) w[k] += u[a] * v[b] * c[a][b][k];
      }
    }
    return w;
  };
  auto apply = [&](const std::vector<Rational>& u) {
    std::vector<Rational> w(d);
    for (int r = 0; r < d; ++r) {
      for (int k = 0; k < d; ++k) w[r] += n[r][k] * u[k];
    }
    return w;
  };
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      std::vector<Rational> ea(d);
      std::vector<Rational> eb(d);
      ea[a] = 1;
      eb[b] = 1;
      const auto na = apply(ea);
      const auto nb = apply(eb);
      auto inner = br(na, eb);
      const auto t2 = br(ea, nb);
      const auto n_ab = apply(br(ea, eb));
      for (int k = 0; k < d; ++k) inner[k] += t2[k] - n_ab[k];
      const auto lhs = br(na, nb);
      const auto rhs = apply(inner);
      for (int k = 0; k < d; ++k) {
        if (lhs[k] != rhs[k]) return false;
      }
    }
  }
  return true;
}

/// Structure constants read back from the Dorfman bracket on A.
inline StructureConstants constants_of(const PreCourant& mu) {
  const Signature& sig = mu.signature();
  const int d = sig.d();
  StructureConstants c = zero_constants(d);
  const auto basis = section_basis(sig);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const auto comps = section_components(dorfman(mu, basis[a], basis[b]));
      for (int k = 0; k < d; ++k) c[a][b][k] = comps[k].is_zero() ? Rational(0) : comps[k].terms().begin()->second;
    }
  }
  return c;
}

}  // namespace testing_support
