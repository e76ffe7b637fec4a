#pragma once

#include "gpsparx/la/matrix.hpp"

namespace gpsparx::la {

// In-place lower Cholesky of a symmetric positive definite matrix; only the
// lower triangle of the input is read, the strict upper triangle is zeroed on
// success. Returns false on a non-positive pivot (matrix not PD to working
// precision), leaving the content unspecified.
bool cholesky_lower(Matrix& a);

// Solve L x = b in place (forward substitution).
void solve_lower(const Matrix& l, Vector& b);

// Solve L^T x = b in place (back substitution against the stored lower
// factor).
void solve_lower_transposed(const Matrix& l, Vector& b);

// Solve (L L^T) x = b in place.
void solve_cholesky(const Matrix& l, Vector& b);

// R = (L^{-1})^T, stored row-major upper triangular: row i of R is column i of
// L^{-1}, which keeps the inner loops of spd_inverse_from contiguous.
Matrix invert_lower_transposed(const Matrix& l);

// Given R = (L^{-1})^T, the full symmetric (L L^T)^{-1}.
Matrix spd_inverse_from(const Matrix& r);

// sum_i log L(i,i)
double sum_log_diag(const Matrix& l);

// y = A x
Vector matvec(const Matrix& a, const Vector& x);

}  // namespace gpsparx::la
