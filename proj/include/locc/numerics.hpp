#pragma once

// Dense complex linear-algebra kernels sized for desk-scale quantum systems
// (total dimension <= 64). Everything here is a pure function; no global state.

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "locc/error.hpp"

namespace locc {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, CVector entries);

    static ComplexMatrix identity(std::size_t n);
    // Builds a matrix whose columns are the given vectors (all the same length).
    static ComplexMatrix from_columns(const std::vector<CVector>& columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return entries_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const CVector& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(Complex scalar) const;
    CVector operator*(const CVector& v) const;

    CVector column(std::size_t c) const;
    double frobenius_norm() const;
    bool all_finite() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVector entries_;  // row-major
};

struct SvdResult {
    ComplexMatrix left;                   // columns orthonormal, rows x k
    std::vector<double> singular_values;  // descending, k = min(rows, cols)
    ComplexMatrix right;                  // columns orthonormal, cols x k
};

struct PolarResult {
    ComplexMatrix unitary;
    ComplexMatrix positive;  // Hermitian PSD, m = unitary * positive
};

struct SpectralPair {
    double coefficient;  // in (0, 1] after filtering
    CVector vector;      // unit norm
};

// One-sided Jacobi SVD with fixed row-cyclic pivot order; deterministic for a
// given input. Sweeps until all off-diagonal rotations fall below 1e-14
// (relative), capped at 60 sweeps.
SvdResult svd(const ComplexMatrix& m);

// m = unitary * positive. Singular inputs get the unitary factor completed
// through the SVD (U_polar = U_svd * V_svd^dagger).
PolarResult polar_decompose(const ComplexMatrix& m);

// Eigendecomposition of a Hermitian PSD matrix, keeping only eigenpairs with
// coefficient > eps * (largest coefficient).
std::vector<SpectralPair> spectral_decompose_positive(const ComplexMatrix& p, double eps);

// Number of singular values above eps * sigma_max; 0 for the zero matrix.
std::size_t rank_with_tolerance(const ComplexMatrix& m, double eps);

// Kronecker product of vectors, lexicographic with the LAST factor's index
// varying fastest.
CVector kron(const std::vector<CVector>& vectors);

// Size of a maximal linearly independent subset of the given vectors.
std::size_t independent_count(const std::vector<CVector>& vectors, double eps);

inline Complex inner(const CVector& a, const CVector& b) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm2(const CVector& v);
void normalize(CVector& v);

// Deterministic standard-normal sampler (Box-Muller over mt19937_64 output),
// so seeded results are identical across standard libraries.
class GaussianSampler {
  public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double next();
    Complex next_complex() {
        double re = next();
        double im = next();
        return Complex(re, im);
    }
    CVector complex_vector(std::size_t n);

  private:
    double next_uniform();  // in (0, 1)

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace locc
