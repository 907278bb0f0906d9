#pragma once

// Constructors for common structures on A (+) A* over a point or with
// constant coefficients.
//
// Matrix conventions (all d x d, indices 0-based):
//   N[r][c]     : N e_c = sum_r N[r][c] e_r
//   pi[a][b]    : pi#(xi_a) = sum_b pi[a][b] theta^b   (antisymmetric)
//   omega[a][b] : omega_flat(theta^a) = sum_b omega[a][b] xi_b   (antisymmetric)
//   c[a][b][k]  : [e_a, e_b] = sum_k c[a][b][k] e_k   (antisymmetric in a,b)

#include "courant/tensor.hpp"

#include <vector>

namespace courant {

using Matrix = std::vector<std::vector<Rational>>;
using StructureConstants = std::vector<std::vector<std::vector<Rational>>>;

/// Zero d x d x d constants; fill with set_bracket.
StructureConstants zero_constants(int d);
/// Sets [e_a, e_b] = value * e_k and [e_b, e_a] = -value * e_k (1-based).
void set_bracket(StructureConstants& c, int a, int b, int k, const Rational& value);

Matrix zero_matrix(int d);
Matrix identity_matrix(int d);

/// mu with dorfman(theta^a, theta^b) = sum_k c[a][b][k] theta^k.
/// Throws ValidationError unless c is antisymmetric in its first two indices.
PreCourant lie_algebra_theta(const Signature& sig, const StructureConstants& c);
/// mu + gamma with the A* bracket dorfman(xi_a, xi_b) = sum_k cstar[a][b][k] xi_k.
PreCourant bialgebra_theta(const Signature& sig, const StructureConstants& c, const StructureConstants& cstar);

TensorFunction j_pi(const Signature& sig, const Matrix& pi);
TensorFunction j_omega(const Signature& sig, const Matrix& omega);
/// I_N = (N, 0; 0, -N*).
TensorFunction i_n(const Signature& sig, const Matrix& n);
/// (N, pi#; omega_flat, -N*).
TensorFunction j_general(const Signature& sig, const Matrix& n, const Matrix& pi, const Matrix& omega);
/// The block matrix of j_general without converting to a function.
Endomorphism block_endomorphism(const Signature& sig, const Matrix& n, const Matrix& pi, const Matrix& omega);

}  // namespace courant
