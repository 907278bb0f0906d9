#pragma once

// The canonical Poisson bracket of bidegree (-1,-1) on the function algebra.
// Conjugate pairs: {p^i, x_i} = 1 and {theta^a, xi_a} = 1; every other pair of
// generators brackets to zero.

#include "courant/grading.hpp"

namespace courant {

/// Ordinary partial derivative for even `g`; for odd `g`, move g to the
/// front of each monomial (collecting the Koszul sign) and delete it.
SuperPolynomial left_partial(const SuperPolynomial& f, const Generator& g);

/// Mirror of left_partial: odd `g` is moved to the back before deletion.
SuperPolynomial right_partial(const SuperPolynomial& f, const Generator& g);

/// The big bracket {F,G}. Bilinear, a biderivation in both slots, of total
/// degree -2. Throws SignatureError on mismatched signatures.
///
/// Convention:
///   {F,G} = sum_i   F d/dp^i (right) * d/dx_i (left) G
///                 - F d/dx_i (right) * d/dp^i (left) G
///         + sum_a   F d/dtheta^a (right) * d/dxi_a (left) G
///                 + F d/dxi_a (right) * d/dtheta^a (left) G
SuperPolynomial bracket(const SuperPolynomial& f, const SuperPolynomial& g);

}  // namespace courant
