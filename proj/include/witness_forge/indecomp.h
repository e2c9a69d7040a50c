#pragma once

// Indecomposability of cyclic maps via PPT detector states.
//
// For a circulant bistochastic a (a_ij = alpha_{j-i}) with off-diagonal
// coefficient 1/(d-1), the state
//
//   rho = a Sum_ij e_ij (x) e_ij + Sum_{i != j} D_ij e_ii (x) e_jj
//
// is PPT, and <rho, phi> = d F(a) (odd d) or d G(a) (even d); a negative
// pairing with a positive phi certifies phi is not decomposable.

#include <string>
#include <vector>

#include "witness_forge/hermlin.h"
#include "witness_forge/mapkit.h"
#include "witness_forge/poscert.h"

namespace witness_forge {

enum class Theorem4Case { none, i1, i2, ii1, ii2 };
std::string to_string(Theorem4Case c);

struct Theorem4Result {
    Theorem4Case which = Theorem4Case::none;
    /// alpha_1 + .. + alpha_k (odd) or alpha_1 + .. + alpha_{k-1} (even)
    double first_sum = 0.0;
    /// alpha_{k+1} + .. + alpha_{2k} (odd) or alpha_{k+1} + .. + alpha_{2k-1} (even)
    double second_sum = 0.0;
    bool fired() const { return which != Theorem4Case::none; }
};

/// Sums compare against 1e-12: "> 0" means > 1e-12, "!=" means |x - y| > 1e-12,
/// "= 0" means <= 1e-12.
Theorem4Result theorem4_check(const CyclicSpec &spec);

/// Case 1: the minimizer of F (or G); case 2: a = 2. Throws when no case fires.
double optimal_a(const CyclicSpec &spec);

/// F(a) for odd d, G(a) for even d.
double fg_value(const CyclicSpec &spec, double a);

enum class Parity { odd, even };

struct DetectorState {
    std::size_t d = 0;
    double a = 0.0;
    RealMatrix D;  // zero diagonal
    Parity parity = Parity::odd;
    HermMatrix rho;
    double rho_lambda_min = 0.0;
    double ppt_lambda_min = 0.0;
};

/// Assembles rho and checks rho >= -psd_tol and rho^Gamma >= -psd_tol from
/// their spectra; throws std::runtime_error naming the offending eigenvalue.
DetectorState detector_state(std::size_t d, double a);
DetectorState detector_state(const CyclicSpec &spec, double a);

/// rho from an arbitrary Hermitian A table and nonnegative D table.
HermMatrix assemble_rho(const CMatrix &a, const RealMatrix &d);

/// rho^Gamma >= 0 screen: D >= 0, A_ii >= 0 and D_ij D_ji >= |A_ij|^2 - 1e-12
/// for i != j. Cross-checked against the partial-transpose spectrum on every
/// call (std::logic_error on disagreement).
bool ppt_block_condition(const CMatrix &a, const RealMatrix &d);

struct IndecompCertificate {
    explicit IndecompCertificate(GenMap m) : map(std::move(m)) {}

    GenMap map;
    std::vector<double> alpha;
    std::string verdict = "not_certified";  // or "indecomposable"
    std::string failed_gate;                // empty when certified
    std::string detail;
    Theorem4Case theorem4 = Theorem4Case::none;
    PositivityVerdict positivity;
    double a = 0.0;
    double pairing = 0.0;          // blockwise sum
    double pairing_choi = 0.0;     // Tr(jam(phi) rho)
    double expected_pairing = 0.0; // d F(a) or d G(a)
    double rho_lambda_min = 0.0;
    double ppt_lambda_min = 0.0;

    bool indecomposable() const { return verdict == "indecomposable"; }
};

/// Rescales c to 1/(d-1).
GenMap to_gen_b(const GenMap &m);

/// Gates, in order: input (c = 1/(d-1), circulant a matching spec),
/// positivity, theorem4_check, detector_state, pairing_identity (within
/// 1e-10 of d F(a)), pairing_sign (< -1e-9). Stops at the first failure.
IndecompCertificate certify_indecomposable(const GenMap &m, const CyclicSpec &spec,
                                           const SimplexBudget &budget = {});

}  // namespace witness_forge
