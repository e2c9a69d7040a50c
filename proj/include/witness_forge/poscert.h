#pragma once

// Positivity, complete positivity and complete copositivity certificates.
//
// For the GenMap class, positivity reduces to a polynomial condition on the
// probability simplex p_i = |x_i|^2:
//
//   B_i(p) = p_i + Sum_j a_ij p_j,
//   C_d(p) = Prod_k B_k - Sum_i p_i Prod_{k != i} B_k  >= 0,
//
// which is (1 - Sum_i p_i / B_i) Prod_k B_k with the quotients expanded so
// that vanishing B_i never divides. All of these work in the unit-coefficient
// normalization; maps with c != 1 are rescaled first.

#include <cstdint>
#include <string>
#include <vector>

#include "witness_forge/certificate.h"
#include "witness_forge/duality.h"
#include "witness_forge/hermlin.h"
#include "witness_forge/mapkit.h"

namespace witness_forge {

class SimplexPoint {
public:
    explicit SimplexPoint(std::vector<double> p);
    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double> &values() const { return p_; }

private:
    std::vector<double> p_;
};

enum class Positivity { positive, not_positive, inconclusive };
std::string to_string(Positivity p);

struct PositivityVerdict {
    Positivity verdict = Positivity::inconclusive;
    double min_value = 0.0;
    /// Simplex argmin (Theorem-1 route) or empty.
    std::vector<double> argmin_simplex;
    /// Unit vector x; for not_positive, phi(|x><x|) has eigenvalue witness_eigenvalue < -tolerance.
    std::vector<cplx> witness_vector;
    double witness_eigenvalue = 0.0;
    double tolerance = 0.0;
    /// Set when positivity rests on a falsification search only.
    bool probe_only = false;
    std::string method;

    bool positive() const { return verdict == Positivity::positive; }
};

struct SimplexBudget {
    std::size_t random_points = 200;
    std::size_t max_iterations = 400;
    std::uint64_t seed = 0xC401;
    /// Threshold on the normalized minimum.
    double tolerance = 1e-9;
};

std::vector<double> b_values(const GenMap &m, const SimplexPoint &p);
double cd_value(const GenMap &m, const SimplexPoint &p);

/// C_0..C_d of det(A(x) - lambda I) for the rank-one-plus-diagonal A(x):
/// C_k = e_k(B) - Sum_m p_m e_{k-1}(B without m). Equals C_d above at k = d.
std::vector<double> ck_coefficients(const GenMap &m, const SimplexPoint &p);

/// A(x): diagonal Sum_j a_ij |x_j|^2, off-diagonal -x_i conj(x_j) (unit normalization).
CMatrix theorem1_matrix(const GenMap &m, std::span<const cplx> x);

/// Deterministic multi-start projected-gradient minimization of the
/// scale-normalized C_d, C_d / Prod_k max(B_k, 1). Positive iff the minimum
/// found is >= -budget.tolerance.
PositivityVerdict certify_gen_positive(const GenMap &m, const SimplexBudget &budget = {});

/// diag a_ii, off-diagonal -1 (unit normalization).
HermMatrix b_matrix(const GenMap &m);

/// CP iff b_matrix is PSD.
Certificate certify_cp(const GenMap &m);
/// CP iff jam(m) is PSD.
Certificate certify_cp_choi(const MapRep &m);
/// CcP iff jam(m o transpose) is PSD.
Certificate certify_ccp(const MapRep &m);

/// Minimizes lambda_min(phi(|x><x|)) over unit x by alternating
/// eigenvector descent on jam(m), seed 0xC401 unless overridden. Positive
/// verdicts are labeled probe_only.
PositivityVerdict positivity_probe(const MapRep &m, std::size_t restarts = 64, std::uint64_t seed = 0xC401,
                                   double tolerance = 1e-9);

/// Cho-Kye conditions (i)-(iii) on Phi[a,b,c].
bool cho_kye_check(double a, double b, double c);
/// Conditions a)-c) on p = (p_0, ..., p_d).
bool phi_p_check(const std::vector<double> &p);

}  // namespace witness_forge
