#pragma once

#include <vector>

#include "fdp/exactnum/rational.hpp"

namespace fdp::linalg {

using exactnum::Rational;

using Matrix = std::vector<std::vector<Rational>>; // row-major

// Basis of the right null space of a (rows x cols) matrix: vectors x with
// A x = 0. Fraction-free elimination with partial pivoting on the cleared
// integer matrix keeps intermediate growth polynomial.
std::vector<std::vector<Rational>> null_space(const Matrix& a, size_t cols);

// Solve A x = b exactly; raises check_failed when inconsistent and domain
// when underdetermined.
std::vector<Rational> solve(const Matrix& a, const std::vector<Rational>& b);

// Rank by exact elimination.
size_t rank(Matrix a);

// Invert a square matrix; raises on singularity.
Matrix inverse(const Matrix& a);

} // namespace fdp::linalg
