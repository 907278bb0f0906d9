#include "courant/builders.hpp"

namespace courant {
namespace {

void require_square(const Matrix& m, int d, const char* what) {
  if (m.size() != static_cast<std::size_t>(d)) {
    throw ValidationError(std::string(what) + " must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  for (const auto& row : m) {
    if (row.size() != static_cast<std::size_t>(d)) {
      throw ValidationError(std::string(what) + " must be " + std::to_string(d) + "x" + std::to_string(d));
    }
  }
}

void require_antisymmetric(const Matrix& m, int d, const char* what) {
  require_square(m, d, what);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (m[a][b] != -m[b][a]) throw ValidationError(std::string(what) + " must be antisymmetric");
    }
  }
}

Matrix transpose(const Matrix& m) {
  Matrix out = m;
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) out[c][r] = m[r][c];
  }
  return out;
}

void require_constants(const StructureConstants& c, int d) {
  if (c.size() != static_cast<std::size_t>(d)) throw ValidationError("structure constants must be d x d x d");
  for (int a = 0; a < d; ++a) {
    if (c[a].size() != static_cast<std::size_t>(d)) throw ValidationError("structure constants must be d x d x d");
    for (int b = 0; b < d; ++b) {
      if (c[a][b].size() != static_cast<std::size_t>(d)) throw ValidationError("structure constants must be d x d x d");
    }
  }
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int k = 0; k < d; ++k) {
        if (c[a][b][k] != -c[b][a][k]) {
          throw ValidationError("structure constants must be antisymmetric in the lower indices");
        }
      }
    }
  }
}

// -sum_{a<b} c[a][b][k] * u_a u_b v_k; the overall minus makes the induced
// bracket on the u-duals equal to c.
SuperPolynomial cubic(const Signature& sig, const StructureConstants& c, GeneratorKind lower, GeneratorKind upper) {
  const int d = sig.d();
  std::vector<RawTerm> terms;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      for (int k = 0; k < d; ++k) {
        if (c[a][b][k] == 0) continue;
        terms.push_back({{{lower, a + 1}, {lower, b + 1}, {upper, k + 1}}, Rational(-c[a][b][k])});
      }
    }
  }
  return normalize(sig, terms);
}

}  // namespace

StructureConstants zero_constants(int d) {
  return StructureConstants(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
}

void set_bracket(StructureConstants& c, int a, int b, int k, const Rational& value) {
  c.at(a - 1).at(b - 1).at(k - 1) = value;
  c.at(b - 1).at(a - 1).at(k - 1) = -value;
}

Matrix zero_matrix(int d) { return Matrix(d, std::vector<Rational>(d)); }

Matrix identity_matrix(int d) {
  Matrix m = zero_matrix(d);
  for (int i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

PreCourant lie_algebra_theta(const Signature& sig, const StructureConstants& c) {
  require_constants(c, sig.d());
  return PreCourant::make(cubic(sig, c, GeneratorKind::Xi, GeneratorKind::Theta));
}

PreCourant bialgebra_theta(const Signature& sig, const StructureConstants& c, const StructureConstants& cstar) {
  require_constants(c, sig.d());
  require_constants(cstar, sig.d());
  return PreCourant::make(cubic(sig, c, GeneratorKind::Xi, GeneratorKind::Theta) +
                          cubic(sig, cstar, GeneratorKind::Theta, GeneratorKind::Xi));
}

Endomorphism block_endomorphism(const Signature& sig, const Matrix& n, const Matrix& pi, const Matrix& omega) {
  const int d = sig.d();
  require_square(n, d, "N");
  require_antisymmetric(pi, d, "pi");
  require_antisymmetric(omega, d, "omega");
  Matrix minus_nt = transpose(n);
  for (auto& row : minus_nt) {
    for (auto& v : row) v = -v;
  }
  return Endomorphism::from_blocks(sig, n, transpose(pi), transpose(omega), minus_nt);
}

TensorFunction j_general(const Signature& sig, const Matrix& n, const Matrix& pi, const Matrix& omega) {
  return func_of(block_endomorphism(sig, n, pi, omega));
}

TensorFunction j_pi(const Signature& sig, const Matrix& pi) {
  return j_general(sig, zero_matrix(sig.d()), pi, zero_matrix(sig.d()));
}

TensorFunction j_omega(const Signature& sig, const Matrix& omega) {
  return j_general(sig, zero_matrix(sig.d()), zero_matrix(sig.d()), omega);
}

TensorFunction i_n(const Signature& sig, const Matrix& n) {
  return j_general(sig, n, zero_matrix(sig.d()), zero_matrix(sig.d()));
}

}  // namespace courant
