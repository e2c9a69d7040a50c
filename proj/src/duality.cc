#include "witness_forge/duality.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "witness_forge/rng.h"

namespace witness_forge {

namespace {

std::size_t local_dim(const HermMatrix &w, std::size_t d, const char *what) {
    if (d == 0 || d * d != w.dim()) {
        std::ostringstream msg;
        msg << what << ": operator of dimension " << w.dim() << " is not d^2 for d = " << d;
        throw std::invalid_argument(msg.str());
    }
    return d;
}

// <f| M |f>-style contractions of W over one tensor factor.
CMatrix contract_first(const CMatrix &w, std::size_t d, std::span<const cplx> f1) {
    CMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const cplx coef = std::conj(f1[i]) * f1[j];
            if (coef == cplx(0.0)) continue;
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) m(k, l) += coef * w(i * d + k, j * d + l);
        }
    return m;
}

CMatrix contract_second(const CMatrix &w, std::size_t d, std::span<const cplx> f2) {
    CMatrix m(d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
            const cplx coef = std::conj(f2[k]) * f2[l];
            if (coef == cplx(0.0)) continue;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) m(i, j) += coef * w(i * d + k, j * d + l);
        }
    return m;
}

std::pair<double, std::vector<cplx>> smallest_pair(const CMatrix &m) {
    const EigenSystem es = eigh(HermMatrix::symmetrized(m, 1e-9));
    std::vector<cplx> v(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) v[i] = es.vectors(i, 0);
    return {es.values.front(), std::move(v)};
}

double norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto &z : v) s += std::norm(z);
    return std::sqrt(s);
}

std::vector<cplx> kron_vec(std::span<const cplx> a, std::span<const cplx> b) {
    std::vector<cplx> out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a)
        for (const auto &y : b) out.push_back(x * y);
    return out;
}

double expectation(const CMatrix &m, std::span<const cplx> v) {
    const auto mv = m.apply(v);
    cplx s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * mv[i];
    return s.real();
}

}  // namespace

HermMatrix jam(const MapRep &m) {
    const std::size_t d = m.d();
    CMatrix out(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const CMatrix &block = m.action(i, j);
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) out(i * d + k, j * d + l) = block(k, l);
        }
    return HermMatrix(std::move(out));
}

MapRep unjam(const HermMatrix &w, std::size_t d) {
    local_dim(w, d, "unjam");
    const CMatrix swapped = swap_factors(w.matrix(), {d, d});
    const CMatrix eye = CMatrix::identity(d);
    std::vector<CMatrix> table;
    table.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const CMatrix at = CMatrix::unit(d, i, j).transpose();
            table.push_back(partial_trace_second(swapped * kron(eye, at), {d, d}));
        }
    return MapRep(d, std::move(table));
}

cplx map_inner(const MapRep &f, const MapRep &g) {
    if (f.d() != g.d()) throw std::invalid_argument("map_inner: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t k = 0; k < f.table().size(); ++k) s += hs_inner(f.table()[k], g.table()[k]);
    return s;
}

Pairing pairing_both(const HermMatrix &rho, const MapRep &m) {
    const std::size_t d = m.d();
    local_dim(rho, d, "pairing");
    const HermMatrix choi = jam(m);
    const double via_choi = (choi.matrix() * rho.matrix()).trace().real();

    cplx blockwise = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            // Tr(phi(e_ij) rho_ji), rho_ji the (j,i) block of rho.
            const CMatrix &phi = m.action(i, j);
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) blockwise += phi(k, l) * rho(j * d + l, i * d + k);
        }

    const double scale = std::max(1.0, choi.matrix().frobenius_norm() * rho.matrix().frobenius_norm());
    if (std::abs(via_choi - blockwise.real()) > 1e-10 * scale) {
        std::ostringstream msg;
        msg << "pairing: evaluation paths disagree (" << via_choi << " vs " << blockwise.real() << ")";
        throw std::logic_error(msg.str());
    }
    return {via_choi, blockwise.real()};
}

double pairing(const HermMatrix &rho, const MapRep &m) { return pairing_both(rho, m).value(); }

ProductMin min_product_expectation(const HermMatrix &w, std::size_t d, const ProductBudget &budget) {
    local_dim(w, d, "min_product_expectation");
    if (budget.seeds == 0) throw std::invalid_argument("min_product_expectation: need at least one seed");
    const CMatrix &wm = w.matrix();
    Rng rng(budget.seed);

    ProductMin best;
    best.value = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < budget.seeds; ++s) {
        std::vector<cplx> f1;
        if (s < d) {
            f1.assign(d, 0.0);
            f1[s] = 1.0;
        } else if (s == d) {
            f1.assign(d, 1.0 / std::sqrt(static_cast<double>(d)));
        } else {
            f1 = rng.unit_vector(d);
        }

        std::vector<cplx> f2;
        double value = std::numeric_limits<double>::infinity();
        bool converged = false;
        for (std::size_t round = 0; round < budget.rounds; ++round) {
            auto [v2, vec2] = smallest_pair(contract_first(wm, d, f1));
            f2 = std::move(vec2);
            auto [v1, vec1] = smallest_pair(contract_second(wm, d, f2));
            f1 = std::move(vec1);
            const double improvement = value - v1;
            value = std::min(value, std::min(v1, v2));
            if (round > 0 && improvement < budget.improvement_tol) {
                converged = true;
                break;
            }
        }
        // Report the value actually attained by the final pair.
        const auto prod = kron_vec(f1, f2);
        const double attained = expectation(wm, prod) / std::pow(norm(prod), 2);
        if (attained < best.value) {
            best.value = attained;
            best.first = f1;
            best.second = f2;
            best.converged = converged;
        }
    }
    return best;
}

Certificate is_entanglement_witness(const HermMatrix &w, std::size_t d, const ProductBudget &budget) {
    local_dim(w, d, "is_entanglement_witness");
    Certificate cert;
    cert.property = "witness";
    cert.lambda_min = lambda_min(w);
    const double psd_tol = psd_tolerance(w);
    const double product_tol = budget.tolerance * std::max(1.0, w.matrix().max_abs());
    const ProductMin pm = min_product_expectation(w, d, budget);
    const bool not_psd = cert.lambda_min < -psd_tol;
    const bool block_positive = pm.value >= -product_tol;
    cert.holds = not_psd && block_positive;
    cert.tolerance = product_tol;
    if (cert.holds) {
        cert.verdict = "witness";
    } else if (!not_psd) {
        cert.verdict = "not_witness_psd";
    } else {
        cert.verdict = "not_witness_negative_on_products";
        cert.witness_vector = kron_vec(pm.first, pm.second);
    }
    cert.evidence = {{"product_min", pm.value},
                     {"psd_tolerance", psd_tol},
                     {"product_min_converged", pm.converged ? 1.0 : 0.0}};
    cert.budget = {{"seeds", static_cast<double>(budget.seeds)},
                   {"rounds", static_cast<double>(budget.rounds)},
                   {"seed", static_cast<double>(budget.seed)}};
    return cert;
}

UPB::UPB(std::size_t d, std::vector<ProductVector> members) : d_(d), members_(std::move(members)) {
    if (members_.empty() || members_.size() >= d_ * d_)
        throw std::invalid_argument("UPB: need 0 < K < d^2 members");
    for (const auto &pv : members_) {
        if (pv.first.size() != d_ || pv.second.size() != d_)
            throw std::invalid_argument("UPB: member vectors must have length d");
        if (std::abs(norm(pv.first) - 1.0) > 1e-12 || std::abs(norm(pv.second) - 1.0) > 1e-12)
            throw std::invalid_argument("UPB: member vectors must be normalized");
    }
    for (std::size_t a = 0; a < members_.size(); ++a)
        for (std::size_t b = a + 1; b < members_.size(); ++b) {
            const auto va = kron_vec(members_[a].first, members_[a].second);
            const auto vb = kron_vec(members_[b].first, members_[b].second);
            cplx ip = 0.0;
            for (std::size_t i = 0; i < va.size(); ++i) ip += std::conj(va[i]) * vb[i];
            if (std::abs(ip) > 1e-10) throw std::invalid_argument("UPB: product vectors are not orthogonal");
        }
}

UPB tiles_upb() {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    auto v = [](cplx a, cplx b, cplx c) { return std::vector<cplx>{a, b, c}; };
    std::vector<ProductVector> members{
        {v(1, 0, 0), v(r2, -r2, 0)},
        {v(r2, -r2, 0), v(0, 0, 1)},
        {v(0, 0, 1), v(0, r2, -r2)},
        {v(0, r2, -r2), v(1, 0, 0)},
        {v(r3, r3, r3), v(r3, r3, r3)},
    };
    return UPB(3, std::move(members));
}

HermMatrix upb_projector(const UPB &u) {
    const std::size_t d = u.d();
    CMatrix pi(d * d);
    for (const auto &pv : u.members()) pi += CMatrix::projector(kron_vec(pv.first, pv.second));
    return HermMatrix::symmetrized(pi);
}

HermMatrix upb_state(const UPB &u) {
    return HermMatrix::symmetrized(CMatrix::identity(u.d() * u.d()) - upb_projector(u).matrix());
}

std::vector<cplx> canonical_max_entangled(std::size_t d) {
    std::vector<cplx> psi(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) psi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
    return psi;
}

Witness witness_from_map(const MapRep &m, const std::string &source, const ProductBudget &budget) {
    Witness out;
    out.w = jam(m);
    out.d = m.d();
    out.source = source;
    const Certificate cert = is_entanglement_witness(out.w, out.d, budget);
    out.lambda_min = cert.lambda_min;
    out.product_min = cert.evidence.front().second;
    out.valid = cert.holds;
    return out;
}

Witness terhal_witness(const UPB &u, std::span<const cplx> psi, const ProductBudget &budget) {
    const std::size_t d = u.d();
    if (psi.size() != d * d) throw std::invalid_argument("terhal_witness: Psi must live in C^d (x) C^d");
    if (std::abs(norm(psi) - 1.0) > 1e-10) throw std::invalid_argument("terhal_witness: Psi must be a unit vector");
    const CMatrix psi_proj = CMatrix::projector(psi);
    const CMatrix reduced = partial_trace_second(psi_proj, {d, d});
    if (max_abs_diff(reduced, CMatrix::identity(d) * (1.0 / static_cast<double>(d))) > 1e-10)
        throw std::invalid_argument("terhal_witness: Psi is not maximally entangled");

    const HermMatrix rho = upb_state(u);
    const double overlap = expectation(rho.matrix(), psi);
    if (!(overlap > 1e-12)) {
        std::ostringstream msg;
        msg << "terhal_witness: <Psi|rho|Psi> = " << overlap << " must be positive";
        throw std::invalid_argument(msg.str());
    }

    const HermMatrix pi = upb_projector(u);
    const ProductMin pm = min_product_expectation(pi, d, budget);
    if (!(pm.value > budget.tolerance)) {
        std::ostringstream msg;
        msg << "terhal_witness: product minimum of the UPB projector is " << pm.value
            << "; no positive epsilon found";
        throw std::invalid_argument(msg.str());
    }
    const double eps = 0.99 * pm.value;

    Witness out;
    out.w = HermMatrix::symmetrized(pi.matrix() - psi_proj * (static_cast<double>(d) * eps));
    out.d = d;
    out.epsilon = eps;
    out.source = "terhal_upb";

    const double detection = pairing(rho, unjam(out.w, d));
    if (!(detection < 0.0)) {
        std::ostringstream msg;
        msg << "terhal_witness: Tr(W rho) = " << detection << " is not negative";
        throw std::logic_error(msg.str());
    }

    const Certificate cert = is_entanglement_witness(out.w, d, budget);
    out.lambda_min = cert.lambda_min;
    out.product_min = cert.evidence.front().second;
    out.valid = cert.holds;
    return out;
}

}  // namespace witness_forge
