#include "witness_forge/hermlin.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace witness_forge {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw std::invalid_argument(msg.str());
    }
}

void require_composite(std::size_t dim, Dims dims, const char *what) {
    if (dims.d1 * dims.d2 != dim) {
        std::ostringstream msg;
        msg << what << ": matrix of dimension " << dim << " does not split as " << dims.d1 << " x "
            << dims.d2;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

CMatrix::CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

CMatrix::CMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim_ * dim_) {
        throw std::invalid_argument("CMatrix: expected dim*dim entries");
    }
    if (!all_finite()) {
        throw std::invalid_argument("CMatrix: non-finite entry");
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw std::invalid_argument("CMatrix: rows must form a square matrix");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!all_finite()) {
        throw std::invalid_argument("CMatrix: non-finite entry");
    }
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::unit(std::size_t dim, std::size_t i, std::size_t j) {
    CMatrix m(dim);
    m(i, j) = 1.0;
    return m;
}

CMatrix CMatrix::projector(std::span<const cplx> x) {
    CMatrix m(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = x[i] * std::conj(x[j]);
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::conj() const {
    CMatrix r(*this);
    for (auto &z : r.data_) z = std::conj(z);
    return r;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto &z : data_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto &z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool CMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix &CMatrix::operator+=(const CMatrix &o) {
    require_same_dim(dim_, o.dim_, "CMatrix +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

CMatrix &CMatrix::operator-=(const CMatrix &o) {
    require_same_dim(dim_, o.dim_, "CMatrix -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

CMatrix &CMatrix::operator*=(cplx s) {
    for (auto &z : data_) z *= s;
    return *this;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    require_same_dim(a.dim_, b.dim_, "CMatrix *");
    const std::size_t n = a.dim_;
    CMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

std::vector<cplx> CMatrix::apply(std::span<const cplx> x) const {
    require_same_dim(dim_, x.size(), "CMatrix::apply");
    std::vector<cplx> y(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

cplx hs_inner(const CMatrix &a, const CMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "hs_inner");
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) s += std::conj(a.data()[k]) * b.data()[k];
    return s;
}

NotHermitian::NotHermitian(double asymmetry, double tolerance)
    : std::invalid_argument([&] {
          std::ostringstream msg;
          msg << "matrix is not Hermitian: max |H_ij - conj(H_ji)| = " << asymmetry
              << " exceeds tolerance " << tolerance;
          return msg.str();
      }()),
      asymmetry_(asymmetry) {}

double hermitian_asymmetry(const CMatrix &m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

HermMatrix::HermMatrix(CMatrix m, double rel_tol) : m_(std::move(m)) {
    if (!m_.all_finite()) throw std::invalid_argument("HermMatrix: non-finite entry");
    const double tol = rel_tol * m_.max_abs();
    const double asym = hermitian_asymmetry(m_);
    if (asym > tol) throw NotHermitian(asym, tol);
}

HermMatrix HermMatrix::symmetrized(const CMatrix &m, double rel_tol) {
    HermMatrix checked(m, rel_tol);
    CMatrix s = m;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        s(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < m.dim(); ++j) {
            const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            s(i, j) = v;
            s(j, i) = std::conj(v);
        }
    }
    checked.m_ = std::move(s);
    return checked;
}

double psd_tolerance(const HermMatrix &h) {
    return 1e-10 * std::max(1.0, h.matrix().frobenius_norm());
}

EigenSystem eigh(const HermMatrix &h) {
    const std::size_t n = h.dim();
    CMatrix a = h.matrix();
    CMatrix v = CMatrix::identity(n);
    EigenSystem out;

    const double norm = a.frobenius_norm();
    const double target = 1e-14 * norm;
    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    out.converged = off_mass() <= target;
    while (!out.converged && out.sweeps < 100) {
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Negligible against both diagonals: drop it.
                if (out.sweeps > 4 && std::abs(app) + 100.0 * mag == std::abs(app) &&
                    std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                // Phase e^{-i theta} on q makes the pivot real, then a real rotation.
                const cplx phase = std::conj(apq) / mag;
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // G on (p,q): [[c, s], [-s*phase, c*phase]]
                const cplx gpp = c, gpq = s, gqp = -s * phase, gqq = c * phase;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
        out.converged = off_mass() <= target;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    out.values.resize(n);
    out.vectors = CMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> eigvals_hermitian(const HermMatrix &h) { return eigh(h).values; }

double lambda_min(const HermMatrix &h) {
    if (h.dim() == 0) return 0.0;
    return eigh(h).values.front();
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    const std::size_t na = a.dim(), nb = b.dim();
    CMatrix r(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return r;
}

CMatrix partial_transpose(const CMatrix &r, Dims dims, Subsystem which) {
    require_composite(r.dim(), dims, "partial_transpose");
    const auto [d1, d2] = dims;
    CMatrix out(r.dim());
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j)
            for (std::size_t k = 0; k < d2; ++k)
                for (std::size_t l = 0; l < d2; ++l) {
                    const cplx v = r(i * d2 + k, j * d2 + l);
                    if (which == Subsystem::second)
                        out(i * d2 + l, j * d2 + k) = v;
                    else
                        out(j * d2 + k, i * d2 + l) = v;
                }
    return out;
}

HermMatrix partial_transpose(const HermMatrix &r, Dims dims, Subsystem which) {
    return HermMatrix(partial_transpose(r.matrix(), dims, which));
}

CMatrix partial_trace_second(const CMatrix &r, Dims dims) {
    require_composite(r.dim(), dims, "partial_trace_second");
    const auto [d1, d2] = dims;
    CMatrix out(d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j)
            for (std::size_t k = 0; k < d2; ++k) out(i, j) += r(i * d2 + k, j * d2 + k);
    return out;
}

CMatrix partial_trace_first(const CMatrix &r, Dims dims) {
    require_composite(r.dim(), dims, "partial_trace_first");
    const auto [d1, d2] = dims;
    CMatrix out(d2);
    for (std::size_t k = 0; k < d2; ++k)
        for (std::size_t l = 0; l < d2; ++l)
            for (std::size_t i = 0; i < d1; ++i) out(k, l) += r(i * d2 + k, i * d2 + l);
    return out;
}

CMatrix swap_factors(const CMatrix &r, Dims dims) {
    require_composite(r.dim(), dims, "swap_factors");
    const auto [d1, d2] = dims;
    CMatrix out(r.dim());
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j)
            for (std::size_t k = 0; k < d2; ++k)
                for (std::size_t l = 0; l < d2; ++l)
                    out(k * d1 + i, l * d1 + j) = r(i * d2 + k, j * d2 + l);
    return out;
}

DetResult det_rank_one_pattern(std::span<const cplx> gamma, std::span<const cplx> alpha,
                               std::span<const cplx> beta) {
    const std::size_t n = gamma.size();
    if (n == 0) throw std::invalid_argument("det_rank_one_pattern: empty input");
    if (alpha.size() != n || beta.size() != n)
        throw std::invalid_argument("det_rank_one_pattern: gamma, alpha, beta must have equal length");

    std::vector<cplx> delta(n);
    bool degenerate = false;
    for (std::size_t k = 0; k < n; ++k) {
        delta[k] = gamma[k] - alpha[k] * beta[k];
        if (delta[k] == cplx(0.0)) degenerate = true;
    }

    if (!degenerate) {
        cplx sum = 1.0, prod = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            sum += alpha[k] * beta[k] / delta[k];
            prod *= delta[k];
        }
        return {sum * prod, DetBranch::quotient};
    }

    cplx total = 1.0;
    for (std::size_t i = 0; i < n; ++i) total *= delta[i];
    for (std::size_t k = 0; k < n; ++k) {
        cplx term = alpha[k] * beta[k];
        for (std::size_t i = 0; i < n; ++i)
            if (i != k) term *= delta[i];
        total += term;
    }
    return {total, DetBranch::limit};
}

std::vector<cplx> char_poly_coeffs(const CMatrix &m) {
    const std::size_t n = m.dim();
    // c[j]: coefficient of lambda^j in det(lambda I - M), c[n] = 1.
    std::vector<cplx> c(n + 1);
    c[n] = 1.0;
    CMatrix mk(n);  // M_0 = 0
    const CMatrix eye = CMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk + c[n - k + 1] * eye;
        c[n - k] = -(m * mk).trace() / static_cast<double>(k);
    }
    // det(M - lambda I) = Sum_k (-lambda)^{n-k} C_k  =>  C_k = (-1)^k c[n-k]
    std::vector<cplx> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out[k] = (k % 2 == 0 ? 1.0 : -1.0) * c[n - k];
    return out;
}

cplx determinant(const CMatrix &m) {
    const std::size_t n = m.dim();
    CMatrix a = m;
    cplx det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == cplx(0.0)) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a(r, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("RealMatrix: entry count mismatch");
    for (double x : data_)
        if (!std::isfinite(x)) throw std::invalid_argument("RealMatrix: non-finite entry");
}

RealMatrix::RealMatrix(std::initializer_list<std::initializer_list<double>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto &row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("RealMatrix: ragged rows");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

RealMatrix RealMatrix::transpose() const {
    RealMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

RealMatrix &RealMatrix::operator*=(double s) {
    for (auto &x : data_) x *= s;
    return *this;
}

RealMatrix operator*(const RealMatrix &a, const RealMatrix &b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("RealMatrix *: shape mismatch");
    RealMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k)
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
}

CMatrix RealMatrix::to_complex() const {
    if (rows_ != cols_) throw std::invalid_argument("RealMatrix::to_complex: not square");
    CMatrix m(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double max_abs_diff(const RealMatrix &a, const RealMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

double operator_norm(const RealMatrix &a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const RealMatrix gram = a.transpose() * a;
    const double top = eigvals_hermitian(HermMatrix::symmetrized(gram.to_complex())).back();
    return std::sqrt(std::max(0.0, top));
}

double determinant(const RealMatrix &a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
    return determinant(a.to_complex()).real();
}

}  // namespace witness_forge
