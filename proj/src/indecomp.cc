#include "witness_forge/indecomp.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "witness_forge/duality.h"

namespace witness_forge {

namespace {

constexpr double kSumTol = 1e-12;

struct Split {
    std::size_t k;
    bool odd;
    double first = 0.0, second = 0.0, middle = 0.0;  // middle = alpha_k for even d
};

Split split(const CyclicSpec &spec) {
    const std::size_t d = spec.d();
    Split s{d / 2, d % 2 == 1};
    const std::size_t first_end = s.odd ? s.k : s.k - 1;
    for (std::size_t m = 1; m <= first_end; ++m) s.first += spec.alpha(m);
    for (std::size_t m = s.k + 1; m < d; ++m) s.second += spec.alpha(m);
    if (!s.odd) s.middle = spec.alpha(s.k);
    return s;
}

}  // namespace

std::string to_string(Theorem4Case c) {
    switch (c) {
        case Theorem4Case::none: return "none";
        case Theorem4Case::i1: return "i.1";
        case Theorem4Case::i2: return "i.2";
        case Theorem4Case::ii1: return "ii.1";
        case Theorem4Case::ii2: return "ii.2";
    }
    return "none";
}

Theorem4Result theorem4_check(const CyclicSpec &spec) {
    Theorem4Result out;
    if (spec.d() < 3) return out;
    const Split s = split(spec);
    out.first_sum = s.first;
    out.second_sum = s.second;
    if (s.first > kSumTol && std::abs(s.first - s.second) > kSumTol) {
        out.which = s.odd ? Theorem4Case::i1 : Theorem4Case::ii1;
        return out;
    }
    const double diag = spec.alpha(0) + s.middle;
    if (s.first <= kSumTol && diag > kSumTol && diag < 1.0 - kSumTol)
        out.which = s.odd ? Theorem4Case::i2 : Theorem4Case::ii2;
    return out;
}

double optimal_a(const CyclicSpec &spec) {
    const Theorem4Result t = theorem4_check(spec);
    switch (t.which) {
        case Theorem4Case::i1: return (1.0 - spec.alpha(0)) / (2.0 * t.first_sum);
        case Theorem4Case::ii1: return (1.0 - spec.alpha(0) - spec.alpha(spec.d() / 2)) / (2.0 * t.first_sum);
        case Theorem4Case::i2:
        case Theorem4Case::ii2: return 2.0;
        case Theorem4Case::none: break;
    }
    throw std::invalid_argument("optimal_a: no indecomposability case applies to this spec");
}

double fg_value(const CyclicSpec &spec, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("fg_value: a must be positive");
    const Split s = split(spec);
    return -a * (1.0 - spec.alpha(0) - s.middle) + a * a * s.first + s.second;
}

HermMatrix assemble_rho(const CMatrix &a, const RealMatrix &d) {
    const std::size_t n = a.dim();
    if (d.rows() != n || d.cols() != n) throw std::invalid_argument("assemble_rho: table size mismatch");
    CMatrix rho(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rho(i * n + i, j * n + j) += a(i, j);
            if (i != j) {
                if (d(i, j) < 0.0) throw std::invalid_argument("assemble_rho: D must be nonnegative");
                rho(i * n + j, i * n + j) += d(i, j);
            }
        }
    return HermMatrix(std::move(rho));
}

DetectorState detector_state(std::size_t d, double a) {
    if (d < 3) throw std::invalid_argument("detector_state: d must be >= 3");
    if (!(a > 0.0)) throw std::invalid_argument("detector_state: a must be positive");
    DetectorState s;
    s.d = d;
    s.a = a;
    s.parity = d % 2 == 1 ? Parity::odd : Parity::even;
    const std::size_t k = d / 2;
    s.D = RealMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t m = 1; m < d; ++m) {
            double v;
            if (s.parity == Parity::odd)
                v = m <= k ? a * a : 1.0;
            else
                v = m < k ? a * a : (m == k ? a : 1.0);
            s.D(i, (i + m) % d) = v;
        }
    CMatrix amat(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) amat(i, j) = a;
    s.rho = assemble_rho(amat, s.D);

    const HermMatrix pt = partial_transpose(s.rho, Dims{d, d}, Subsystem::second);
    s.rho_lambda_min = lambda_min(s.rho);
    s.ppt_lambda_min = lambda_min(pt);
    const double tol = psd_tolerance(s.rho);
    if (s.rho_lambda_min < -tol || s.ppt_lambda_min < -tol) {
        std::ostringstream msg;
        msg << "detector_state: " << (s.rho_lambda_min < -tol ? "rho" : "rho^Gamma") << " has eigenvalue "
            << std::min(s.rho_lambda_min, s.ppt_lambda_min) << " below -" << tol;
        throw std::runtime_error(msg.str());
    }
    return s;
}

DetectorState detector_state(const CyclicSpec &spec, double a) { return detector_state(spec.d(), a); }

bool ppt_block_condition(const CMatrix &a, const RealMatrix &d) {
    const std::size_t n = a.dim();
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
        if (a(i, i).real() < -kSumTol) ok = false;
        for (std::size_t j = 0; j < n && ok; ++j) {
            if (i == j) continue;
            if (d(i, j) < 0.0 || d(i, j) * d(j, i) < std::norm(a(i, j)) - kSumTol) ok = false;
        }
    }

    const HermMatrix rho = assemble_rho(a, d);
    const double spectral = lambda_min(partial_transpose(rho, Dims{n, n}, Subsystem::second));
    const double tol = psd_tolerance(rho);
    if ((ok && spectral < -tol) || (!ok && spectral > tol)) {
        std::ostringstream msg;
        msg << "ppt_block_condition: block screen says " << (ok ? "PPT" : "not PPT")
            << " but the partial-transpose spectrum has minimum " << spectral;
        throw std::logic_error(msg.str());
    }
    return ok;
}

GenMap to_gen_b(const GenMap &m) {
    const double target = 1.0 / static_cast<double>(m.d() - 1);
    return m.scaled(target / m.c());
}

IndecompCertificate certify_indecomposable(const GenMap &m, const CyclicSpec &spec, const SimplexBudget &budget) {
    IndecompCertificate cert{m};
    cert.alpha = spec.alpha();
    auto fail = [&](std::string gate, std::string detail) {
        cert.failed_gate = std::move(gate);
        cert.detail = std::move(detail);
        return cert;
    };

    const std::size_t d = m.d();
    if (d != spec.d() || d < 3) return fail("input", "map and spec dimensions must agree and be >= 3");
    const double target_c = 1.0 / static_cast<double>(d - 1);
    if (std::abs(m.c() - target_c) > 1e-12) return fail("input", "off-diagonal coefficient must be 1/(d-1)");
    if (max_abs_diff(m.a(), spec.matrix()) > 1e-12) return fail("input", "coefficient matrix is not the circulant of spec");

    cert.positivity = certify_gen_positive(m, budget);
    if (!cert.positivity.positive())
        return fail("positivity", "map not certified positive (" + to_string(cert.positivity.verdict) + ")");

    const Theorem4Result t4 = theorem4_check(spec);
    cert.theorem4 = t4.which;
    if (!t4.fired()) return fail("theorem4_check", "no indecomposability case applies");

    cert.a = optimal_a(spec);
    DetectorState det;
    try {
        det = detector_state(d, cert.a);
    } catch (const std::runtime_error &e) {
        return fail("detector_state", e.what());
    }
    cert.rho_lambda_min = det.rho_lambda_min;
    cert.ppt_lambda_min = det.ppt_lambda_min;

    const Pairing p = pairing_both(det.rho, from_gen(m));
    cert.pairing = p.blockwise;
    cert.pairing_choi = p.via_choi;
    cert.expected_pairing = static_cast<double>(d) * fg_value(spec, cert.a);
    if (std::abs(cert.pairing - cert.expected_pairing) > 1e-10) {
        std::ostringstream msg;
        msg << "pairing " << cert.pairing << " differs from d*F(a) = " << cert.expected_pairing;
        return fail("pairing_identity", msg.str());
    }
    if (!(cert.pairing < -1e-9)) return fail("pairing_sign", "pairing is not negative");

    cert.verdict = "indecomposable";
    return cert;
}

}  // namespace witness_forge
