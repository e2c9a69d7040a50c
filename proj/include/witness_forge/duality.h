#pragma once

// Choi-Jamiolkowski correspondence between maps on M_d and operators on
// C^d (x) C^d, the duality pairing <rho, phi> = Tr(jam(phi) rho), product
// state minimization and witness construction from unextendible product bases.
//
// P+ is unnormalized: Sum_ij e_ij (x) e_ij.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "witness_forge/certificate.h"
#include "witness_forge/hermlin.h"
#include "witness_forge/mapkit.h"

namespace witness_forge {

/// Sum_ij e_ij (x) phi(e_ij)
HermMatrix jam(const MapRep &m);
/// Inverse of jam: a -> Tr_2[W' (I (x) a^T)] with W' the factor-swapped W.
MapRep unjam(const HermMatrix &w, std::size_t d);

/// (f, g) = Tr Sum_ij f(e_ij)^dagger g(e_ij)
cplx map_inner(const MapRep &f, const MapRep &g);

struct Pairing {
    double via_choi;   // Tr(jam(phi) rho)
    double blockwise;  // Sum_ij Tr(phi(e_ij) rho_ji)
    double value() const { return blockwise; }
};

/// Both evaluation paths; throws std::logic_error if they disagree by more
/// than 1e-10 * max(1, scale).
Pairing pairing_both(const HermMatrix &rho, const MapRep &m);
double pairing(const HermMatrix &rho, const MapRep &m);

struct ProductBudget {
    std::size_t seeds = 64;
    std::size_t rounds = 200;
    double improvement_tol = 1e-12;
    std::uint64_t seed = 0x5EED;
    /// Relative threshold for "nonnegative on product vectors".
    double tolerance = 1e-9;
};

struct ProductMin {
    double value = 0.0;
    std::vector<cplx> first;
    std::vector<cplx> second;
    bool converged = false;
    bool probe_only() const { return !converged; }
};

/// Alternating smallest-eigenvector descent for min <f1 (x) f2| W |f1 (x) f2>
/// over unit product vectors. The returned value is attained, so it is an
/// upper bound on the true minimum.
ProductMin min_product_expectation(const HermMatrix &w, std::size_t d, const ProductBudget &budget = {});

/// Witness iff lambda_min(W) < -psd_tol and the product minimum is >= -tolerance * max(1, max|W|).
Certificate is_entanglement_witness(const HermMatrix &w, std::size_t d, const ProductBudget &budget = {});

struct ProductVector {
    std::vector<cplx> first;
    std::vector<cplx> second;
};

class UPB {
public:
    UPB(std::size_t d, std::vector<ProductVector> members);
    std::size_t d() const { return d_; }
    const std::vector<ProductVector> &members() const { return members_; }

private:
    std::size_t d_;
    std::vector<ProductVector> members_;
};

/// The five-member Tiles basis of C^3 (x) C^3.
UPB tiles_upb();
/// Sum_i |a_i><a_i| (x) |b_i><b_i|
HermMatrix upb_projector(const UPB &u);
/// I (x) I - upb_projector(u)
HermMatrix upb_state(const UPB &u);

/// Sum_i |i>|i> / sqrt(d)
std::vector<cplx> canonical_max_entangled(std::size_t d);

struct Witness {
    HermMatrix w;
    std::size_t d = 0;
    double lambda_min = 0.0;
    double product_min = 0.0;
    bool valid = false;
    double epsilon = 0.0;  // only set for UPB witnesses
    std::string source;
};

/// jam(m) with its validity evidence filled in.
Witness witness_from_map(const MapRep &m, const std::string &source, const ProductBudget &budget = {});

/// Pi - d eps' |Psi><Psi| with eps' = 0.99 * (probed product minimum of Pi).
Witness terhal_witness(const UPB &u, std::span<const cplx> psi, const ProductBudget &budget = {});

}  // namespace witness_forge
