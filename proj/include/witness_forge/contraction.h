#pragma once

// Positive maps parameterized by contractions of R^(d^2-1):
//
//   phi(X) = I Tr X / d + 1/(d-1) Sum_ab f_a A_ab Tr(f_b X),
//
// with f_a an orthonormal traceless Hermitian basis. The block choice
// A = diag(lambda R, -I) lands in GenMap with c = 1/(d-1).

#include <optional>
#include <vector>

#include "witness_forge/hermlin.h"
#include "witness_forge/mapkit.h"

namespace witness_forge {

/// d^2 - 1 generators ordered d_1..d_{d-1}, then u_kl, then v_kl (k < l, lexicographic).
struct GeneratorBasis {
    std::size_t d = 0;
    std::vector<CMatrix> f;
};

GeneratorBasis su_generators(std::size_t d);

/// Throws unless R R^T = I and det R = 1, both within 1e-10.
void validate_rotation(const RealMatrix &r);

/// Product of Givens rotations G(p, q, theta) over p < q in lexicographic
/// order; n (n - 1) / 2 angles. For n = 2 this is [[cos, -sin], [sin, cos]].
RealMatrix rotation_from_givens(std::size_t n, const std::vector<double> &angles);

class ContractionSpec {
public:
    /// A is (d^2-1) x (d^2-1) with operator norm <= 1 + 1e-10.
    static ContractionSpec general(RealMatrix a);
    /// A = diag(lambda R, -I) with R in SO(d-1), lambda in [0, 1].
    static ContractionSpec rotation(const RealMatrix &r, double lambda);

    std::size_t d() const { return d_; }
    const RealMatrix &matrix() const { return a_; }

private:
    ContractionSpec(std::size_t d, RealMatrix a) : d_(d), a_(std::move(a)) {}
    std::size_t d_;
    RealMatrix a_;
};

MapRep contraction_map(const ContractionSpec &spec);

/// a_ij = 1/d + lambda/(d-1) Sum_ab (e_j, f_a e_j) R_ab (e_i, f_b e_i), c = 1/(d-1).
GenMap rotation_family_a(const RealMatrix &r, double lambda, std::size_t d);

struct AaCheck {
    bool holds = false;
    double residual = 0.0;
};

/// Sum_k a_ik a_jk = (lambda^2 delta_ij + d - 2 + (1 - lambda^2)/d) / (d-1)^2,
/// holds at residual <= 1e-10 for a bistochastic a.
AaCheck check_aa(const GenMap &m, double lambda);

/// Least-squares lambda^2 over all d^2 Gram equations; accepted when the
/// residual is <= 1e-9 and lambda^2 lies in [0, 1] up to 1e-12.
std::optional<double> solve_lambda(const GenMap &m);

/// d = 3 contraction R(phi1) diag(lambda1, lambda2) R(phi2) as the displayed
/// P_0 + P_1 + P_2 bistochastic matrix; c = 1/2.
GenMap appendix_d3(double lambda1, double lambda2, double phi1, double phi2);

}  // namespace witness_forge
