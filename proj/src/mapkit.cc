#include "witness_forge/mapkit.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "witness_forge/duality.h"

namespace witness_forge {

namespace {

// Rounding in constructed coefficient tables can leave -1e-17 where the
// exact value is zero.
constexpr double kNegativeSlack = 1e-12;

bool check_bistochastic(const RealMatrix &a) {
    const std::size_t d = a.rows();
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            row += a(i, j);
            col += a(j, i);
        }
        if (std::abs(row - 1.0) > 1e-12 || std::abs(col - 1.0) > 1e-12) return false;
    }
    return true;
}

}  // namespace

GenMap::GenMap(std::size_t d, RealMatrix a, double c) : d_(d), a_(std::move(a)), c_(c) {
    if (d_ == 0) throw std::invalid_argument("GenMap: dimension must be positive");
    if (a_.rows() != d_ || a_.cols() != d_) throw std::invalid_argument("GenMap: a must be d x d");
    if (!(c_ > 0.0) || !std::isfinite(c_)) throw std::invalid_argument("GenMap: off-diagonal coefficient must be > 0");
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) {
            double &v = a_(i, j);
            if (v < -kNegativeSlack) {
                std::ostringstream msg;
                msg << "GenMap: a(" << i << "," << j << ") = " << v << " is negative";
                throw std::invalid_argument(msg.str());
            }
            if (v < 0.0) v = 0.0;
        }
    bistochastic_ = check_bistochastic(a_);
}

GenMap GenMap::scaled(double s) const {
    if (!(s > 0.0)) throw std::invalid_argument("GenMap::scaled: factor must be positive");
    return GenMap(d_, a_ * s, c_ * s);
}

CMatrix GenMap::apply(const CMatrix &x) const { return gen_apply(*this, x); }

MapRep::MapRep(std::size_t d, std::vector<CMatrix> action) : d_(d), action_(std::move(action)) {
    if (d_ == 0) throw std::invalid_argument("MapRep: dimension must be positive");
    if (action_.size() != d_ * d_) throw std::invalid_argument("MapRep: need d*d action entries");
    double scale = 1.0;
    for (const auto &m : action_) {
        if (m.dim() != d_) throw std::invalid_argument("MapRep: action entries must be d x d");
        if (!m.all_finite()) throw std::invalid_argument("MapRep: non-finite action entry");
        scale = std::max(scale, m.max_abs());
    }
    const double tol = 1e-12 * scale;
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = i; j < d_; ++j) {
            const double dev = max_abs_diff(action_[i * d_ + j].adjoint(), action_[j * d_ + i]);
            if (dev > tol) {
                std::ostringstream msg;
                msg << "MapRep: not Hermiticity preserving, phi(e_" << i << j << ")^dagger differs from phi(e_"
                    << j << i << ") by " << dev;
                throw std::invalid_argument(msg.str());
            }
        }
}

CMatrix MapRep::apply(const CMatrix &x) const {
    if (x.dim() != d_) throw std::invalid_argument("MapRep::apply: dimension mismatch");
    CMatrix out(d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) {
            const cplx xij = x(i, j);
            if (xij != cplx(0.0)) out += xij * action(i, j);
        }
    return out;
}

MapRep compose(const MapRep &f, const MapRep &g) {
    if (f.d() != g.d()) throw std::invalid_argument("compose: dimension mismatch");
    std::vector<CMatrix> table;
    table.reserve(g.table().size());
    for (const auto &gij : g.table()) table.push_back(f.apply(gij));
    return MapRep(f.d(), std::move(table));
}

double max_action_diff(const MapRep &f, const MapRep &g) {
    if (f.d() != g.d()) throw std::invalid_argument("max_action_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < f.table().size(); ++k)
        worst = std::max(worst, max_abs_diff(f.table()[k], g.table()[k]));
    return worst;
}

MapRep identity_map(std::size_t d) {
    std::vector<CMatrix> table;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) table.push_back(CMatrix::unit(d, i, j));
    return MapRep(d, std::move(table));
}

MapRep scaled(const MapRep &m, double s) {
    std::vector<CMatrix> table = m.table();
    for (auto &t : table) t *= s;
    return MapRep(m.d(), std::move(table));
}

MapRep operator+(const MapRep &f, const MapRep &g) {
    if (f.d() != g.d()) throw std::invalid_argument("MapRep +: dimension mismatch");
    std::vector<CMatrix> table = f.table();
    for (std::size_t k = 0; k < table.size(); ++k) table[k] += g.table()[k];
    return MapRep(f.d(), std::move(table));
}

CyclicSpec::CyclicSpec(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) throw std::invalid_argument("CyclicSpec: empty alpha");
    double sum = 0.0;
    for (double x : alpha_) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("CyclicSpec: alpha entries must be >= 0");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "CyclicSpec: alpha must sum to 1 (got " << sum << ")";
        throw std::invalid_argument(msg.str());
    }
}

RealMatrix CyclicSpec::matrix() const {
    const std::size_t d = alpha_.size();
    RealMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) a(i, j) = alpha_[(j + d - i) % d];
    return a;
}

bool is_cyclic(const RealMatrix &a, double tol) {
    const std::size_t d = a.rows();
    if (a.cols() != d) return false;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (std::abs(a(i, j) - a(0, (j + d - i) % d)) > tol) return false;
    return true;
}

CMatrix gen_apply(const GenMap &m, const CMatrix &x) {
    const std::size_t d = m.d();
    if (x.dim() != d) throw std::invalid_argument("gen_apply: dimension mismatch");
    CMatrix out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i == j) continue;
            out(i, j) = -m.c() * x(i, j);
        }
    for (std::size_t i = 0; i < d; ++i) {
        const cplx xii = x(i, i);
        for (std::size_t j = 0; j < d; ++j) out(j, j) += m.a(i, j) * xii;
    }
    return out;
}

MapRep from_gen(const GenMap &m) {
    const std::size_t d = m.d();
    std::vector<CMatrix> table;
    table.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) table.push_back(gen_apply(m, CMatrix::unit(d, i, j)));
    return MapRep(d, std::move(table));
}

GenMap cyclic_gen_b(const CyclicSpec &spec) {
    const std::size_t d = spec.d();
    if (d < 2) throw std::invalid_argument("cyclic_gen_b: need d >= 2");
    return GenMap(d, spec.matrix(), 1.0 / static_cast<double>(d - 1));
}

GenMap choi_abc(double a, double b, double c) {
    if (!(a >= 0.0 && b >= 0.0 && c >= 0.0)) throw std::invalid_argument("choi_abc: parameters must be >= 0");
    const double s = a + b + c;
    if (!(s > 0.0)) throw std::invalid_argument("choi_abc: a + b + c must be positive");
    RealMatrix m{{a, b, c}, {c, a, b}, {b, c, a}};
    return GenMap(3, m * (1.0 / s), 1.0 / s);
}

GenMap tau_dk(std::size_t d, std::size_t k) {
    if (d < 2) throw std::invalid_argument("tau_dk: need d >= 2");
    if (k > d - 1) {
        std::ostringstream msg;
        msg << "tau_dk: k = " << k << " outside [0, " << d - 1 << "]";
        throw std::invalid_argument(msg.str());
    }
    RealMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        a(i, i) = static_cast<double>(d - k - 1);
        for (std::size_t m = 1; m <= k; ++m) a(i, (i + m) % d) += 1.0;
    }
    return GenMap(d, std::move(a), 1.0);
}

GenMap phi_dk(std::size_t d, std::size_t k) {
    return tau_dk(d, k).scaled(1.0 / static_cast<double>(d - 1));
}

GenMap phi_p(const std::vector<double> &p) {
    if (p.size() < 2) throw std::invalid_argument("phi_p: need p_0..p_d with d >= 1");
    const std::size_t d = p.size() - 1;
    RealMatrix a(d, d);
    for (std::size_t j = 0; j < d; ++j) a(j, j) = p[0];
    if (d == 1) {
        a(0, 0) += p[1];
    } else {
        a(0, d - 1) += p[d];
        for (std::size_t j = 1; j < d; ++j) a(j, j - 1) += p[j];
    }
    return GenMap(d, std::move(a), 1.0);
}

GenMap lambda_identity(std::size_t d, double lambda) {
    return GenMap(d, RealMatrix::identity(d) * lambda, 1.0);
}

MapRep robertson4() {
    constexpr std::size_t d = 4;
    std::vector<CMatrix> table(d * d, CMatrix(d));
    auto e = [](std::size_t i, std::size_t j) { return CMatrix::unit(d, i - 1, j - 1); };
    auto set = [&](std::size_t i, std::size_t j, const CMatrix &v) {
        table[(i - 1) * d + (j - 1)] = v;
        table[(j - 1) * d + (i - 1)] = v.adjoint();
    };
    set(1, 1, 0.5 * (e(3, 3) + e(4, 4)));
    set(2, 2, 0.5 * (e(3, 3) + e(4, 4)));
    set(3, 3, 0.5 * (e(1, 1) + e(2, 2)));
    set(4, 4, 0.5 * (e(1, 1) + e(2, 2)));
    set(1, 3, 0.5 * (e(1, 3) + e(4, 2)));
    set(1, 4, 0.5 * (e(1, 4) - e(3, 2)));
    set(2, 3, 0.5 * (e(2, 3) - e(4, 1)));
    set(2, 4, 0.5 * (e(2, 4) + e(3, 1)));
    // e_12, e_21, e_34, e_43 map to zero.
    return MapRep(d, std::move(table));
}

MapRep epsilon_map(std::size_t d) {
    std::vector<CMatrix> table(d * d, CMatrix(d));
    for (std::size_t i = 0; i < d; ++i) table[i * d + i] = CMatrix::unit(d, i, i);
    return MapRep(d, std::move(table));
}

MapRep transpose_map(std::size_t d) {
    std::vector<CMatrix> table;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) table.push_back(CMatrix::unit(d, j, i));
    return MapRep(d, std::move(table));
}

GenMap dual_gen(const GenMap &m) { return GenMap(m.d(), m.a().transpose(), m.c()); }

MapRep conjugate_by_unitary(const MapRep &m, const CMatrix &u) {
    if (u.dim() != m.d()) throw std::invalid_argument("conjugate_by_unitary: dimension mismatch");
    const double dev = max_abs_diff(u.adjoint() * u, CMatrix::identity(u.dim()));
    if (dev > 1e-10) {
        std::ostringstream msg;
        msg << "conjugate_by_unitary: U is not unitary, ||U^dagger U - I||_max = " << dev;
        throw std::invalid_argument(msg.str());
    }
    const CMatrix ud = u.adjoint();
    std::vector<CMatrix> table;
    table.reserve(m.table().size());
    for (const auto &t : m.table()) table.push_back(u * t * ud);
    return MapRep(m.d(), std::move(table));
}

std::vector<CMatrix> kraus_from_choi(const MapRep &m) {
    const std::size_t d = m.d();
    const HermMatrix choi = jam(m);
    const EigenSystem es = eigh(choi);
    const double tol = psd_tolerance(choi);
    if (es.values.front() < -tol) {
        std::ostringstream msg;
        msg << "kraus_from_choi: map is not completely positive (lambda_min of Choi matrix = "
            << es.values.front() << ")";
        throw std::invalid_argument(msg.str());
    }
    std::vector<CMatrix> kraus;
    for (std::size_t k = es.values.size(); k-- > 0;) {
        const double lam = es.values[k];
        if (lam <= tol) break;
        const double w = std::sqrt(lam);
        // Eigenvector v = Sum v_(i,m) |i>|m>  ->  K_mi = sqrt(lam) v_(i,m).
        CMatrix op(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t r = 0; r < d; ++r) op(r, i) = w * es.vectors(i * d + r, k);
        kraus.push_back(std::move(op));
    }
    return kraus;
}

CMatrix apply_kraus(const std::vector<CMatrix> &kraus, const CMatrix &x) {
    CMatrix out(x.dim());
    for (const auto &k : kraus) out += k * x * k.adjoint();
    return out;
}

}  // namespace witness_forge
