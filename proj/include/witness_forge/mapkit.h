#pragma once

// Linear maps on M_d: the class of maps fixed by a nonnegative coefficient
// matrix on the diagonal units and a uniform negative multiple of the
// off-diagonal units, general maps stored by their action on matrix units,
// and the catalog of named families.
//
// Shift convention: s e_i = e_{i+1 mod d}.

#include <cstddef>
#include <string>
#include <vector>

#include "witness_forge/hermlin.h"

namespace witness_forge {

/// phi(e_ii) = Sum_j a_ij e_jj,  phi(e_ij) = -c e_ij (i != j).
///
/// c = 1 is the unit-coefficient normalization; c = 1/(d-1) with a
/// bistochastic a gives the unital, trace-preserving normalization.
class GenMap {
public:
    GenMap(std::size_t d, RealMatrix a, double c);

    std::size_t d() const { return d_; }
    const RealMatrix &a() const { return a_; }
    double a(std::size_t i, std::size_t j) const { return a_(i, j); }
    double c() const { return c_; }
    bool bistochastic() const { return bistochastic_; }

    /// Positive multiple of the map: (a, c) -> (s a, s c).
    GenMap scaled(double s) const;
    /// Rescales to c = 1, the normalization the positivity criteria use.
    GenMap unit_normalized() const { return scaled(1.0 / c_); }

    CMatrix apply(const CMatrix &x) const;

    friend bool operator==(const GenMap &, const GenMap &) = default;

private:
    std::size_t d_;
    RealMatrix a_;
    double c_;
    bool bistochastic_;
};

/// Linear map phi: M_d -> M_d held as the table phi(e_ij), index i * d + j.
class MapRep {
public:
    MapRep(std::size_t d, std::vector<CMatrix> action);

    std::size_t d() const { return d_; }
    const CMatrix &action(std::size_t i, std::size_t j) const { return action_[i * d_ + j]; }
    const std::vector<CMatrix> &table() const { return action_; }

    CMatrix apply(const CMatrix &x) const;

private:
    std::size_t d_;
    std::vector<CMatrix> action_;
};

/// Table-level composition: (f o g)(X) = f(g(X)).
MapRep compose(const MapRep &f, const MapRep &g);
/// Entrywise max over all matrix units.
double max_action_diff(const MapRep &f, const MapRep &g);
MapRep identity_map(std::size_t d);
MapRep scaled(const MapRep &m, double s);
MapRep operator+(const MapRep &f, const MapRep &g);

/// Circulant coefficients: a_ij = alpha_{(j - i) mod d}.
class CyclicSpec {
public:
    explicit CyclicSpec(std::vector<double> alpha);

    std::size_t d() const { return alpha_.size(); }
    const std::vector<double> &alpha() const { return alpha_; }
    double alpha(std::size_t m) const { return alpha_[m % alpha_.size()]; }
    RealMatrix matrix() const;

private:
    std::vector<double> alpha_;
};

/// Row i of a is the cyclic shift of row 0 by i.
bool is_cyclic(const RealMatrix &a, double tol = 1e-12);

CMatrix gen_apply(const GenMap &m, const CMatrix &x);
MapRep from_gen(const GenMap &m);

/// Circulant bistochastic a with c = 1/(d-1).
GenMap cyclic_gen_b(const CyclicSpec &spec);

/// d = 3 circulant (a, b, c) / (a + b + c) with off-diagonal coefficient 1/(a + b + c).
GenMap choi_abc(double a, double b, double c);
/// (d-k) eps(X) + Sum_{i=1..k} eps(s^i X s^{*i}) - X; c = 1.
GenMap tau_dk(std::size_t d, std::size_t k);
/// tau_dk / (d - 1).
GenMap phi_dk(std::size_t d, std::size_t k);
/// p = (p_0, ..., p_d): phi(e_11) = p_0 e_11 + p_d e_dd,
/// phi(e_jj) = p_0 e_jj + p_{j-1} e_{j-1,j-1} for j >= 2, c = 1.
GenMap phi_p(const std::vector<double> &p);
/// a = lambda I, c = 1: X -> (lambda + 1) eps(X) - X.
GenMap lambda_identity(std::size_t d, double lambda);

MapRep robertson4();
MapRep epsilon_map(std::size_t d);
MapRep transpose_map(std::size_t d);

/// Adjoint with respect to the Hilbert-Schmidt product: a -> a^T, same c.
GenMap dual_gen(const GenMap &m);

/// X -> U phi(X) U^dagger. U must satisfy ||U^dagger U - I||_max <= 1e-10.
MapRep conjugate_by_unitary(const MapRep &m, const CMatrix &u);

/// Kraus operators from the spectral decomposition of the Choi matrix.
/// Throws if the Choi matrix has an eigenvalue below -psd_tol.
std::vector<CMatrix> kraus_from_choi(const MapRep &m);
/// Sum_k K X K^dagger.
CMatrix apply_kraus(const std::vector<CMatrix> &kraus, const CMatrix &x);

}  // namespace witness_forge
