#include "witness_forge/poscert.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "witness_forge/rng.h"

namespace witness_forge {

namespace {

// Boundary slack for the closed-form parameter conditions: non-strict
// inequalities accept up to this much violation, strict ones require this margin.
constexpr double kConditionSlack = 1e-12;

// Product of b over indices not in {skip1, skip2}.
double product_except(const std::vector<double> &b, std::size_t skip1, std::size_t skip2) {
    double prod = 1.0;
    for (std::size_t k = 0; k < b.size(); ++k)
        if (k != skip1 && k != skip2) prod *= b[k];
    return prod;
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::vector<double> b_raw(const GenMap &unit, const std::vector<double> &p) {
    const std::size_t d = unit.d();
    std::vector<double> b(d);
    for (std::size_t i = 0; i < d; ++i) {
        double s = p[i];
        for (std::size_t j = 0; j < d; ++j) s += unit.a(i, j) * p[j];
        b[i] = s;
    }
    return b;
}

double cd_raw(const GenMap &unit, const std::vector<double> &p) {
    const auto b = b_raw(unit, p);
    double c = product_except(b, kNone, kNone);
    for (std::size_t i = 0; i < b.size(); ++i) c -= p[i] * product_except(b, i, kNone);
    return c;
}

double cd_normalized(const GenMap &unit, const std::vector<double> &p) {
    const auto b = b_raw(unit, p);
    double scale = 1.0;
    for (double x : b) scale *= std::max(x, 1.0);
    return cd_raw(unit, p) / scale;
}

std::vector<double> cd_gradient(const GenMap &unit, const std::vector<double> &p) {
    const std::size_t d = unit.d();
    const auto b = b_raw(unit, p);
    std::vector<double> dcdb(d);
    for (std::size_t k = 0; k < d; ++k) {
        double g = product_except(b, k, kNone);
        for (std::size_t i = 0; i < d; ++i)
            if (i != k) g -= p[i] * product_except(b, i, k);
        dcdb[k] = g;
    }
    std::vector<double> grad(d);
    for (std::size_t j = 0; j < d; ++j) {
        // dB_k/dp_j = delta_kj + a_kj
        double g = dcdb[j] - product_except(b, j, kNone);
        for (std::size_t k = 0; k < d; ++k) g += dcdb[k] * unit.a(k, j);
        grad[j] = g;
    }
    return grad;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0, theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) theta = t;
    }
    for (auto &x : v) x = std::max(x - theta, 0.0);
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto &x : v) x /= sum;
    return v;
}

// Projected gradient descent with Armijo backtracking.
std::vector<double> descend(const GenMap &unit, std::vector<double> p, std::size_t max_iterations) {
    double f = cd_raw(unit, p);
    double step = 1.0;
    for (std::size_t it = 0; it < max_iterations; ++it) {
        const auto g = cd_gradient(unit, p);
        bool moved = false;
        while (step > 1e-18) {
            std::vector<double> trial(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) trial[i] = p[i] - step * g[i];
            trial = project_to_simplex(std::move(trial));
            double decrease = 0.0, dist = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                decrease += g[i] * (trial[i] - p[i]);
                dist = std::max(dist, std::abs(trial[i] - p[i]));
            }
            if (dist < 1e-15) break;
            const double ft = cd_raw(unit, trial);
            if (ft <= f + 1e-4 * decrease) {
                p = std::move(trial);
                f = ft;
                moved = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return p;
}

std::vector<std::vector<double>> simplex_seeds(std::size_t d, const SimplexBudget &budget) {
    std::vector<std::vector<double>> seeds;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> v(d, 0.0);
        v[i] = 1.0;
        seeds.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            std::vector<double> v(d, 0.0);
            v[i] = v[j] = 0.5;
            seeds.push_back(std::move(v));
        }
    seeds.emplace_back(d, 1.0 / static_cast<double>(d));
    Rng rng(budget.seed);
    for (std::size_t r = 0; r < budget.random_points; ++r) seeds.push_back(rng.simplex_point(d));
    return seeds;
}

Certificate psd_certificate(const std::string &property, const HermMatrix &h) {
    const EigenSystem es = eigh(h);
    Certificate cert;
    cert.property = property;
    cert.lambda_min = es.values.front();
    cert.tolerance = psd_tolerance(h);
    cert.holds = cert.lambda_min >= -cert.tolerance;
    cert.verdict = cert.holds ? property : "not_" + property;
    if (!cert.holds) {
        cert.witness_vector.resize(h.dim());
        for (std::size_t i = 0; i < h.dim(); ++i) cert.witness_vector[i] = es.vectors(i, 0);
    }
    return cert;
}

}  // namespace

SimplexPoint::SimplexPoint(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw std::invalid_argument("SimplexPoint: empty");
    double sum = 0.0;
    for (double x : p_) {
        if (!(x >= 0.0)) throw std::invalid_argument("SimplexPoint: entries must be >= 0");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("SimplexPoint: entries must sum to 1");
}

std::string to_string(Positivity p) {
    switch (p) {
        case Positivity::positive: return "positive";
        case Positivity::not_positive: return "not_positive";
        case Positivity::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::vector<double> b_values(const GenMap &m, const SimplexPoint &p) {
    if (p.size() != m.d()) throw std::invalid_argument("b_values: dimension mismatch");
    return b_raw(m.unit_normalized(), p.values());
}

double cd_value(const GenMap &m, const SimplexPoint &p) {
    if (p.size() != m.d()) throw std::invalid_argument("cd_value: dimension mismatch");
    return cd_raw(m.unit_normalized(), p.values());
}

std::vector<double> ck_coefficients(const GenMap &m, const SimplexPoint &p) {
    const std::size_t d = m.d();
    if (p.size() != d) throw std::invalid_argument("ck_coefficients: dimension mismatch");
    const auto b = b_raw(m.unit_normalized(), p.values());

    // Elementary symmetric polynomials of a list, e[0..n].
    auto elementary = [](const std::vector<double> &v) {
        std::vector<double> e(v.size() + 1, 0.0);
        e[0] = 1.0;
        for (double x : v)
            for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += x * e[k - 1];
        return e;
    };

    const auto eb = elementary(b);
    std::vector<double> c = eb;
    for (std::size_t m_idx = 0; m_idx < d; ++m_idx) {
        std::vector<double> rest;
        for (std::size_t i = 0; i < d; ++i)
            if (i != m_idx) rest.push_back(b[i]);
        const auto er = elementary(rest);
        for (std::size_t k = 1; k <= d; ++k) c[k] -= p[m_idx] * er[k - 1];
    }
    return c;
}

CMatrix theorem1_matrix(const GenMap &m, std::span<const cplx> x) {
    const std::size_t d = m.d();
    if (x.size() != d) throw std::invalid_argument("theorem1_matrix: dimension mismatch");
    const GenMap unit = m.unit_normalized();
    CMatrix a(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i == j) {
                double s = 0.0;
                for (std::size_t k = 0; k < d; ++k) s += unit.a(i, k) * std::norm(x[k]);
                a(i, i) = s;
            } else {
                a(i, j) = -x[i] * std::conj(x[j]);
            }
        }
    return a;
}

PositivityVerdict certify_gen_positive(const GenMap &m, const SimplexBudget &budget) {
    const std::size_t d = m.d();
    // Transposed coefficients make the C_d matrix equal phi(|x><x|) itself.
    const GenMap oriented = dual_gen(m.unit_normalized());

    PositivityVerdict out;
    out.method = "simplex_cd";
    out.tolerance = budget.tolerance;
    out.min_value = std::numeric_limits<double>::infinity();
    for (const auto &seed : simplex_seeds(d, budget)) {
        auto p = descend(oriented, seed, budget.max_iterations);
        const double v = cd_normalized(oriented, p);
        if (v < out.min_value) {
            out.min_value = v;
            out.argmin_simplex = std::move(p);
        }
    }

    if (out.min_value >= -budget.tolerance) {
        out.verdict = Positivity::positive;
        return out;
    }

    std::vector<cplx> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = std::sqrt(out.argmin_simplex[i]);
    const HermMatrix image = HermMatrix::symmetrized(gen_apply(m, CMatrix::projector(x)));
    out.witness_eigenvalue = lambda_min(image);
    out.witness_vector = std::move(x);
    out.verdict = out.witness_eigenvalue < -psd_tolerance(image) ? Positivity::not_positive
                                                                  : Positivity::inconclusive;
    return out;
}

HermMatrix b_matrix(const GenMap &m) {
    const GenMap unit = m.unit_normalized();
    const std::size_t d = m.d();
    CMatrix b(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) b(i, j) = i == j ? unit.a(i, i) : -1.0;
    return HermMatrix(std::move(b));
}

Certificate certify_cp(const GenMap &m) {
    Certificate cert = psd_certificate("cp", b_matrix(m));
    cert.evidence = {{"b_matrix_lambda_min", cert.lambda_min}};
    return cert;
}

Certificate certify_cp_choi(const MapRep &m) { return psd_certificate("cp", jam(m)); }

Certificate certify_ccp(const MapRep &m) {
    return psd_certificate("ccp", jam(compose(m, transpose_map(m.d()))));
}

PositivityVerdict positivity_probe(const MapRep &m, std::size_t restarts, std::uint64_t seed, double tolerance) {
    const std::size_t d = m.d();
    const HermMatrix w = jam(m);
    ProductBudget budget;
    budget.seeds = restarts;
    budget.seed = seed;
    const ProductMin pm = min_product_expectation(w, d, budget);

    PositivityVerdict out;
    out.method = "sphere_probe";
    out.min_value = pm.value;
    out.tolerance = tolerance * std::max(1.0, w.matrix().max_abs());
    // <a (x) y| jam |a (x) y> = <y| phi(|x><x|) |y> with x = conj(a).
    std::vector<cplx> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = std::conj(pm.first[i]);

    if (pm.value >= -out.tolerance) {
        out.verdict = Positivity::positive;
        out.probe_only = true;
        return out;
    }
    const HermMatrix image = HermMatrix::symmetrized(m.apply(CMatrix::projector(x)));
    out.witness_eigenvalue = lambda_min(image);
    out.witness_vector = std::move(x);
    out.verdict = out.witness_eigenvalue < -psd_tolerance(image) ? Positivity::not_positive
                                                                  : Positivity::inconclusive;
    return out;
}

bool cho_kye_check(double a, double b, double c) {
    if (a < 0.0 || b < 0.0 || c < 0.0) throw std::invalid_argument("cho_kye_check: parameters must be >= 0");
    const double eps = kConditionSlack;
    if (!(a < 2.0 - eps)) return false;           // (i)
    if (!(a + b + c >= 2.0 - eps)) return false;  // (ii)
    const double bc = b * c;
    const double upper = (2.0 - a) * (2.0 - a) / 4.0;
    if (!(bc < upper - eps)) return false;  // (iii), shared upper bound
    if (a <= 1.0) return bc >= (1.0 - a) * (1.0 - a) - eps;
    return true;
}

bool phi_p_check(const std::vector<double> &p) {
    if (p.size() < 2) throw std::invalid_argument("phi_p_check: need p_0..p_d");
    const std::size_t d = p.size() - 1;
    const double eps = kConditionSlack;
    double product = 1.0;
    for (std::size_t i = 1; i <= d; ++i) {
        if (!(p[i] > eps)) return false;  // a)
        product *= p[i];
    }
    const double p0 = p[0];
    const double dm1 = static_cast<double>(d) - 1.0;
    if (!(dm1 > p0 + eps && p0 >= dm1 - 1.0 - eps)) return false;  // b)
    const double bound = std::pow(dm1 - p0, static_cast<double>(d));
    return product >= bound - eps * std::max(1.0, bound);  // c)
}

}  // namespace witness_forge
