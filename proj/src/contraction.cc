#include "witness_forge/contraction.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace witness_forge {

namespace {

// (e_i, f_a e_i) for the d - 1 diagonal generators: rows a, columns i.
RealMatrix cartan_table(std::size_t d) {
    const GeneratorBasis basis = su_generators(d);
    RealMatrix t(d - 1, d);
    for (std::size_t a = 0; a + 1 < d; ++a)
        for (std::size_t i = 0; i < d; ++i) t(a, i) = basis.f[a](i, i).real();
    return t;
}

}  // namespace

GeneratorBasis su_generators(std::size_t d) {
    if (d < 2) throw std::invalid_argument("su_generators: d must be >= 2");
    GeneratorBasis basis{d, {}};
    basis.f.reserve(d * d - 1);
    for (std::size_t l = 1; l < d; ++l) {
        CMatrix m(d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (std::size_t k = 0; k < l; ++k) m(k, k) = norm;
        m(l, l) = -static_cast<double>(l) * norm;
        basis.f.push_back(std::move(m));
    }
    const double s = 1.0 / std::numbers::sqrt2;
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k + 1; l < d; ++l) {
            CMatrix u(d);
            u(k, l) = u(l, k) = s;
            basis.f.push_back(std::move(u));
        }
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k + 1; l < d; ++l) {
            CMatrix v(d);
            v(k, l) = cplx(0.0, -s);
            v(l, k) = cplx(0.0, s);
            basis.f.push_back(std::move(v));
        }
    return basis;
}

void validate_rotation(const RealMatrix &r) {
    if (r.rows() != r.cols()) throw std::invalid_argument("rotation: matrix must be square");
    const double orth = max_abs_diff(r * r.transpose(), RealMatrix::identity(r.rows()));
    if (orth > 1e-10) {
        std::ostringstream msg;
        msg << "rotation: R R^T deviates from I by " << orth;
        throw std::invalid_argument(msg.str());
    }
    const double det = determinant(r);
    if (std::abs(det - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "rotation: det R = " << det << ", expected 1";
        throw std::invalid_argument(msg.str());
    }
}

RealMatrix rotation_from_givens(std::size_t n, const std::vector<double> &angles) {
    if (angles.size() != n * (n - 1) / 2) {
        std::ostringstream msg;
        msg << "rotation_from_givens: need " << n * (n - 1) / 2 << " angles for n = " << n << ", got "
            << angles.size();
        throw std::invalid_argument(msg.str());
    }
    RealMatrix r = RealMatrix::identity(n);
    std::size_t idx = 0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
            RealMatrix g = RealMatrix::identity(n);
            const double c = std::cos(angles[idx]), s = std::sin(angles[idx]);
            ++idx;
            g(p, p) = c;
            g(q, q) = c;
            g(p, q) = -s;
            g(q, p) = s;
            r = r * g;
        }
    return r;
}

ContractionSpec ContractionSpec::general(RealMatrix a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("contraction: matrix must be square");
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n + 1))));
    if (d < 2 || d * d - 1 != n) throw std::invalid_argument("contraction: size must be d^2 - 1 for some d >= 2");
    const double norm = operator_norm(a);
    if (norm > 1.0 + 1e-10) {
        std::ostringstream msg;
        msg << "contraction: operator norm " << norm << " exceeds 1";
        throw std::invalid_argument(msg.str());
    }
    return ContractionSpec(d, std::move(a));
}

ContractionSpec ContractionSpec::rotation(const RealMatrix &r, double lambda) {
    validate_rotation(r);
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("contraction: lambda must lie in [0, 1]");
    const std::size_t d = r.rows() + 1;
    const std::size_t n = d * d - 1;
    RealMatrix a(n, n);
    for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t j = 0; j + 1 < d; ++j) a(i, j) = lambda * r(i, j);
    for (std::size_t i = d - 1; i < n; ++i) a(i, i) = -1.0;
    return ContractionSpec(d, std::move(a));
}

MapRep contraction_map(const ContractionSpec &spec) {
    const std::size_t d = spec.d();
    const GeneratorBasis basis = su_generators(d);
    const RealMatrix &a = spec.matrix();
    const std::size_t n = basis.f.size();
    const double inv = 1.0 / static_cast<double>(d - 1);

    std::vector<CMatrix> table;
    table.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            CMatrix out(d);
            if (i == j)
                for (std::size_t k = 0; k < d; ++k) out(k, k) = 1.0 / static_cast<double>(d);
            // Tr(f_b e_ij) = (f_b)_ji
            for (std::size_t b = 0; b < n; ++b) {
                const cplx tb = basis.f[b](j, i);
                if (tb == cplx{}) continue;
                for (std::size_t al = 0; al < n; ++al) {
                    const double aab = a(al, b);
                    if (aab == 0.0) continue;
                    out += basis.f[al] * (inv * aab * tb);
                }
            }
            table.push_back(std::move(out));
        }
    return MapRep(d, std::move(table));
}

GenMap rotation_family_a(const RealMatrix &r, double lambda, std::size_t d) {
    if (d < 2 || r.rows() != d - 1) throw std::invalid_argument("rotation_family_a: R must be (d-1) x (d-1)");
    validate_rotation(r);
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("rotation_family_a: lambda must lie in [0, 1]");
    const RealMatrix t = cartan_table(d);
    const RealMatrix core = t.transpose() * r * t;  // core(j, i) = Sum (e_j, f_a e_j) R_ab (e_i, f_b e_i)
    const double inv = 1.0 / static_cast<double>(d - 1);
    RealMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double v = 1.0 / static_cast<double>(d) + lambda * inv * core(j, i);
            a(i, j) = std::abs(v) < 1e-15 ? 0.0 : v;
        }
    return GenMap(d, std::move(a), inv);
}

AaCheck check_aa(const GenMap &m, double lambda) {
    const std::size_t d = m.d();
    const double dd = static_cast<double>(d);
    const double l2 = lambda * lambda;
    const double scale = 1.0 / ((dd - 1.0) * (dd - 1.0));
    AaCheck out;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double gram = 0.0;
            for (std::size_t k = 0; k < d; ++k) gram += m.a(i, k) * m.a(j, k);
            const double rhs = scale * (l2 * (i == j ? 1.0 : 0.0) + dd - 2.0 + (1.0 - l2) / dd);
            out.residual = std::max(out.residual, std::abs(gram - rhs));
        }
    out.holds = m.bistochastic() && out.residual <= 1e-10;
    return out;
}

std::optional<double> solve_lambda(const GenMap &m) {
    if (!m.bistochastic()) return std::nullopt;
    const std::size_t d = m.d();
    if (d < 2) return std::nullopt;
    const double dd = static_cast<double>(d);
    const double sq = (dd - 1.0) * (dd - 1.0);
    // (d-1)^2 G_ij - (d-2) - 1/d = mu (delta_ij - 1/d), mu = lambda^2
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double gram = 0.0;
            for (std::size_t k = 0; k < d; ++k) gram += m.a(i, k) * m.a(j, k);
            const double y = sq * gram - (dd - 2.0) - 1.0 / dd;
            const double x = (i == j ? 1.0 : 0.0) - 1.0 / dd;
            num += x * y;
            den += x * x;
        }
    double mu = num / den;
    if (mu < -1e-12 || mu > 1.0 + 1e-12) return std::nullopt;
    mu = std::clamp(mu, 0.0, 1.0);
    const double lambda = std::sqrt(mu);
    if (check_aa(m, lambda).residual > 1e-9) return std::nullopt;
    return lambda;
}

GenMap appendix_d3(double lambda1, double lambda2, double phi1, double phi2) {
    if (std::abs(lambda1) > 1.0 || std::abs(lambda2) > 1.0)
        throw std::invalid_argument("appendix_d3: |lambda_i| must be <= 1");
    const double lp = lambda1 + lambda2, lm = lambda1 - lambda2;
    const double fp = phi1 + phi2, fm = phi1 - phi2;
    const double r3 = std::sqrt(3.0);

    const double cp = std::cos(fp), sp = std::sin(fp);
    const double p2 = 2.0 * cp, pa = -cp - r3 * sp, pb = -cp + r3 * sp;
    const RealMatrix p1{{p2, pa, pb}, {pb, p2, pa}, {pa, pb, p2}};

    const double cm = std::cos(fm), sm = std::sin(fm);
    const double qa = cm + r3 * sm, qb = -2.0 * cm, qc = cm - r3 * sm;
    const RealMatrix pm{{qa, qb, qc}, {qb, qc, qa}, {qc, qa, qb}};

    RealMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const double v = 1.0 / 3.0 + lp / 12.0 * p1(i, j) + lm / 12.0 * pm(i, j);
            a(i, j) = std::abs(v) < 1e-15 ? 0.0 : v;
        }
    return GenMap(3, std::move(a), 0.5);
}

}  // namespace witness_forge
