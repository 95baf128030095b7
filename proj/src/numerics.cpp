#include "locc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace locc {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, CVector entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw Error(ErrorKind::InvalidMatrix, "entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<CVector>& columns) {
    if (columns.empty()) throw Error(ErrorKind::InvalidInput, "no columns");
    std::size_t rows = columns[0].size();
    for (const auto& c : columns)
        if (c.size() != rows) throw Error(ErrorKind::ShapeMismatch, "column length mismatch");
    ComplexMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product shapes");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            Complex a = (*this)(i, k);
            if (a == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw Error(ErrorKind::ShapeMismatch, "matrix sum shapes");
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw Error(ErrorKind::ShapeMismatch, "matrix difference shapes");
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= rhs.entries_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex scalar) const {
    ComplexMatrix out = *this;
    for (auto& e : out.entries_) e *= scalar;
    return out;
}

CVector ComplexMatrix::operator*(const CVector& v) const {
    if (v.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "matrix-vector shapes");
    CVector out(rows_, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

CVector ComplexMatrix::column(std::size_t c) const {
    CVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto& e : entries_) acc += std::norm(e);
    return std::sqrt(acc);
}

bool ComplexMatrix::all_finite() const {
    for (const auto& e : entries_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

double norm2(const CVector& v) {
    double acc = 0.0;
    for (const auto& e : v) acc += std::norm(e);
    return std::sqrt(acc);
}

void normalize(CVector& v) {
    double n = norm2(v);
    if (n > 0.0)
        for (auto& e : v) e /= n;
}

namespace {

constexpr double kJacobiTol = 1e-14;
constexpr int kMaxSweeps = 60;

// One-sided Jacobi on a tall (rows >= cols) matrix. Rotations are applied in a
// fixed row-cyclic pair order so the factorization is deterministic.
SvdResult svd_tall(const ComplexMatrix& input) {
    std::size_t m = input.rows(), n = input.cols();
    ComplexMatrix a = input;
    ComplexMatrix v = ComplexMatrix::identity(n);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                Complex g(0.0, 0.0);
                for (std::size_t k = 0; k < m; ++k) {
                    alpha += std::norm(a(k, p));
                    beta += std::norm(a(k, q));
                    g += std::conj(a(k, p)) * a(k, q);
                }
                double gmag = std::abs(g);
                if (gmag <= kJacobiTol * std::sqrt(alpha * beta) || gmag == 0.0) continue;
                rotated = true;

                Complex phase = g / gmag;
                double zeta = (beta - alpha) / (2.0 * gmag);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;

                // Right-multiply columns (p, q) by [[c, s*phase], [-s*conj(phase), c]].
                for (std::size_t k = 0; k < m; ++k) {
                    Complex ap = a(k, p), aq = a(k, q);
                    a(k, p) = c * ap - s * std::conj(phase) * aq;
                    a(k, q) = s * phase * ap + c * aq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Complex vp = v(k, p), vq = v(k, q);
                    v(k, p) = c * vp - s * std::conj(phase) * vq;
                    v(k, q) = s * phase * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) acc += std::norm(a(k, j));
        sigma[j] = std::sqrt(acc);
    }

    // Stable descending sort of singular values, permuting U and V columns along.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    ComplexMatrix u(m, n), vperm(n, n);
    std::vector<double> svals(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t src = order[j];
        svals[j] = sigma[src];
        for (std::size_t k = 0; k < n; ++k) vperm(k, j) = v(k, src);
        if (sigma[src] > 0.0) {
            for (std::size_t k = 0; k < m; ++k) u(k, j) = a(k, src) / sigma[src];
        }
    }

    // Complete null columns of U against canonical basis vectors (deterministic).
    double scale = svals.empty() ? 0.0 : svals[0];
    for (std::size_t j = 0; j < n; ++j) {
        if (svals[j] > scale * 1e-300 && svals[j] > 0.0) continue;
        for (std::size_t cand = 0; cand < m; ++cand) {
            CVector e(m, Complex(0.0, 0.0));
            e[cand] = 1.0;
            for (std::size_t jj = 0; jj < n; ++jj) {
                if (jj == j) continue;
                bool filled = svals[jj] > 0.0 || jj < j;
                if (!filled) continue;
                Complex ov(0.0, 0.0);
                for (std::size_t k = 0; k < m; ++k) ov += std::conj(u(k, jj)) * e[k];
                for (std::size_t k = 0; k < m; ++k) e[k] -= ov * u(k, jj);
            }
            double nn = norm2(e);
            if (nn > 0.5) {
                for (std::size_t k = 0; k < m; ++k) u(k, j) = e[k] / nn;
                break;
            }
        }
    }

    return SvdResult{std::move(u), std::move(svals), std::move(vperm)};
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
    if (m.empty()) throw Error(ErrorKind::InvalidMatrix, "empty matrix");
    if (!m.all_finite()) throw Error(ErrorKind::InvalidMatrix, "non-finite entries");
    if (m.rows() >= m.cols()) return svd_tall(m);
    SvdResult t = svd_tall(m.adjoint());
    return SvdResult{std::move(t.right), std::move(t.singular_values), std::move(t.left)};
}

PolarResult polar_decompose(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "polar needs a square matrix");
    SvdResult s = svd(m);
    ComplexMatrix vdag = s.right.adjoint();
    ComplexMatrix unitary = s.left * vdag;
    // positive = V * diag(sigma) * V^dagger
    ComplexMatrix vs = s.right;
    for (std::size_t j = 0; j < s.singular_values.size(); ++j)
        for (std::size_t i = 0; i < vs.rows(); ++i) vs(i, j) *= s.singular_values[j];
    ComplexMatrix positive = vs * s.right.adjoint();
    return PolarResult{std::move(unitary), std::move(positive)};
}

std::vector<SpectralPair> spectral_decompose_positive(const ComplexMatrix& p, double eps) {
    if (p.rows() != p.cols()) throw Error(ErrorKind::ShapeMismatch, "not square");
    if (eps <= 0.0) throw Error(ErrorKind::InvalidInput, "eps must be positive");
    double scale = std::max(1.0, p.frobenius_norm());
    if ((p - p.adjoint()).frobenius_norm() > 1e-8 * scale)
        throw Error(ErrorKind::NotPositive, "matrix is not Hermitian");

    // For a Hermitian PSD matrix the right singular vectors are eigenvectors;
    // the Rayleigh quotient recovers the signed eigenvalue.
    SvdResult s = svd(p);
    std::vector<SpectralPair> pairs;
    for (std::size_t j = 0; j < s.singular_values.size(); ++j) {
        CVector v = s.right.column(j);
        Complex quad = inner(v, p * v);
        double lambda = quad.real();
        if (lambda < -1e-8 * scale)
            throw Error(ErrorKind::NotPositive, "negative eigenvalue beyond tolerance");
        pairs.push_back(SpectralPair{std::max(lambda, 0.0), std::move(v)});
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const SpectralPair& a, const SpectralPair& b) {
                         return a.coefficient > b.coefficient;
                     });
    double largest = pairs.empty() ? 0.0 : pairs[0].coefficient;
    std::vector<SpectralPair> kept;
    for (auto& pr : pairs)
        if (pr.coefficient > eps * largest && pr.coefficient > 0.0) kept.push_back(std::move(pr));
    return kept;
}

std::size_t rank_with_tolerance(const ComplexMatrix& m, double eps) {
    if (eps <= 0.0) throw Error(ErrorKind::InvalidInput, "eps must be positive");
    SvdResult s = svd(m);
    if (s.singular_values.empty() || s.singular_values[0] == 0.0) return 0;
    double cutoff = eps * s.singular_values[0];
    std::size_t count = 0;
    for (double sv : s.singular_values)
        if (sv > cutoff) ++count;
    return count;
}

CVector kron(const std::vector<CVector>& vectors) {
    if (vectors.empty()) throw Error(ErrorKind::InvalidInput, "kron of no vectors");
    CVector out{Complex(1.0, 0.0)};
    for (const auto& v : vectors) {
        if (v.empty()) throw Error(ErrorKind::InvalidInput, "kron factor is empty");
        CVector next(out.size() * v.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) next[i * v.size() + j] = out[i] * v[j];
        out = std::move(next);
    }
    return out;
}

std::size_t independent_count(const std::vector<CVector>& vectors, double eps) {
    if (vectors.empty()) return 0;
    std::size_t len = vectors[0].size();
    for (const auto& v : vectors)
        if (v.size() != len) throw Error(ErrorKind::ShapeMismatch, "vector length mismatch");
    return rank_with_tolerance(ComplexMatrix::from_columns(vectors), eps);
}

double GaussianSampler::next_uniform() {
    // 53-bit mantissa from the raw 64-bit stream, mapped into (0, 1).
    std::uint64_t bits = rng_();
    return (static_cast<double>(bits >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double GaussianSampler::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = next_uniform();
    double u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

CVector GaussianSampler::complex_vector(std::size_t n) {
    CVector v(n);
    for (auto& e : v) e = next_complex();
    return v;
}

}  // namespace locc
