#pragma once

// Dense complex linear algebra used by every other module: square complex
// matrices, a Hermitian wrapper, a cyclic Jacobi eigensolver, Kronecker
// products, partial transpose / trace and a few determinant helpers.
//
// Composite index convention: |i> (x) |k> lives at row i * d2 + k (0-based).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace witness_forge {

using cplx = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim);
    CMatrix(std::size_t dim, std::vector<cplx> entries);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t dim);
    /// e_ij = |i><j|
    static CMatrix unit(std::size_t dim, std::size_t i, std::size_t j);
    /// |x><x|
    static CMatrix projector(std::span<const cplx> x);

    std::size_t dim() const { return dim_; }
    cplx &operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const cplx &operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    std::span<const cplx> data() const { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conj() const;
    cplx trace() const;
    double max_abs() const;
    double frobenius_norm() const;
    bool all_finite() const;

    CMatrix &operator+=(const CMatrix &o);
    CMatrix &operator-=(const CMatrix &o);
    CMatrix &operator*=(cplx s);

    friend CMatrix operator+(CMatrix a, const CMatrix &b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix &b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix &a, const CMatrix &b);
    friend bool operator==(const CMatrix &, const CMatrix &) = default;

    std::vector<cplx> apply(std::span<const cplx> x) const;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// max_ij |A_ij - B_ij|; dimensions must agree.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

/// Tr(A^dagger B)
cplx hs_inner(const CMatrix &a, const CMatrix &b);

class NotHermitian : public std::invalid_argument {
public:
    NotHermitian(double asymmetry, double tolerance);
    double asymmetry() const { return asymmetry_; }

private:
    double asymmetry_;
};

/// max_ij |H_ij - conj(H_ji)|
double hermitian_asymmetry(const CMatrix &m);

/// A CMatrix that satisfies H = H^dagger up to 1e-12 * max|H| (or a caller tolerance).
class HermMatrix {
public:
    static constexpr double kDefaultRelTol = 1e-12;

    HermMatrix() = default;
    explicit HermMatrix(CMatrix m, double rel_tol = kDefaultRelTol);
    /// Symmetrizes (M + M^dagger) / 2 after checking the asymmetry tolerance.
    static HermMatrix symmetrized(const CMatrix &m, double rel_tol = kDefaultRelTol);

    const CMatrix &matrix() const { return m_; }
    std::size_t dim() const { return m_.dim(); }
    const cplx &operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    double trace() const { return m_.trace().real(); }

private:
    CMatrix m_;
};

/// Default PSD slack: 1e-10 * max(1, ||H||_F).
double psd_tolerance(const HermMatrix &h);

struct EigenSystem {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column k is the eigenvector of values[k]
    int sweeps = 0;
    bool converged = false;
};

/// Cyclic Jacobi. Converged when the off-diagonal Frobenius mass falls below
/// 1e-14 * ||H||_F; at most 100 sweeps.
EigenSystem eigh(const HermMatrix &h);
std::vector<double> eigvals_hermitian(const HermMatrix &h);
double lambda_min(const HermMatrix &h);

/// (A (x) B)_{(i dB + k),(j dB + l)} = A_ij B_kl
CMatrix kron(const CMatrix &a, const CMatrix &b);

struct Dims {
    std::size_t d1;
    std::size_t d2;
};

enum class Subsystem { first = 1, second = 2 };

CMatrix partial_transpose(const CMatrix &r, Dims dims, Subsystem which);
HermMatrix partial_transpose(const HermMatrix &r, Dims dims, Subsystem which);

/// (i,j) -> Sum_k R_{(i,k),(j,k)}
CMatrix partial_trace_second(const CMatrix &r, Dims dims);
/// (k,l) -> Sum_i R_{(i,k),(i,l)}
CMatrix partial_trace_first(const CMatrix &r, Dims dims);

/// Exchanges the tensor factors: A (x) B -> B (x) A.
CMatrix swap_factors(const CMatrix &r, Dims dims);

enum class DetBranch { quotient, limit };

struct DetResult {
    cplx value;
    DetBranch branch;
};

/// Determinant of the matrix with diagonal gamma_i and off-diagonal entries
/// (i,j) -> alpha_j beta_i, via (1 + Sum_k a_k b_k / (g_k - a_k b_k)) Prod_i (g_i - a_i b_i).
/// When some g_k == a_k b_k the quotient is replaced by the expanded product,
/// Prod_i delta_i + Sum_k a_k b_k Prod_{i != k} delta_i.
DetResult det_rank_one_pattern(std::span<const cplx> gamma, std::span<const cplx> alpha,
                               std::span<const cplx> beta);

/// Coefficients C_0..C_d of det(M - lambda I) = Sum_k (-lambda)^{d-k} C_k
/// via Faddeev-LeVerrier. C_0 = 1, C_d = det M.
std::vector<cplx> char_poly_coeffs(const CMatrix &m);

/// LU with partial pivoting.
cplx determinant(const CMatrix &m);

/// Small dense real matrix (row-major) for coefficient tables, rotations and
/// contractions.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    RealMatrix(std::initializer_list<std::initializer_list<double>> rows);
    static RealMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const double> data() const { return data_; }

    RealMatrix transpose() const;
    RealMatrix &operator*=(double s);
    friend RealMatrix operator*(const RealMatrix &a, const RealMatrix &b);
    friend RealMatrix operator*(RealMatrix a, double s) { return a *= s; }
    friend bool operator==(const RealMatrix &, const RealMatrix &) = default;

    CMatrix to_complex() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double max_abs_diff(const RealMatrix &a, const RealMatrix &b);
/// Largest singular value.
double operator_norm(const RealMatrix &a);
double determinant(const RealMatrix &a);

}  // namespace witness_forge
