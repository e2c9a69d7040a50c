#include <doctest.h>

#include <cmath>

#include "oracles.h"
#include "witness_forge/duality.h"
#include "witness_forge/mapkit.h"
#include "witness_forge/poscert.h"
#include "witness_forge/rng.h"

using namespace witness_forge;

namespace {

CMatrix p_plus(std::size_t d) {
    CMatrix p(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) p(i * d + i, j * d + j) = 1.0;
    return p;
}

CMatrix swap_operator(std::size_t d) {
    CMatrix s(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) s(i * d + k, k * d + i) = 1.0;
    return s;
}

std::vector<cplx> kron_vec(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    std::vector<cplx> out;
    for (const auto &x : a)
        for (const auto &y : b) out.push_back(x * y);
    return out;
}

double expectation(const CMatrix &w, const std::vector<cplx> &v) {
    const auto wv = w.apply(v);
    cplx s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * wv[i];
    return s.real();
}

}  // namespace

TEST_CASE("jam matches the index-loop Choi matrix") {
    Rng rng(40);
    for (int t = 0; t < 30; ++t) {
        const std::size_t d = 2 + t % 4;
        const MapRep m = oracle::random_map(rng, d);
        const auto ref = oracle::choi(m);
        const auto got = oracle::dense(jam(m).matrix());
        double diff = 0.0;
        for (std::size_t i = 0; i < d * d; ++i)
            for (std::size_t j = 0; j < d * d; ++j) diff = std::max(diff, std::abs(ref[i][j] - got[i][j]));
        CHECK(diff == 0.0);
    }
    CHECK(jam(identity_map(3)).matrix() == p_plus(3));
}

TEST_CASE("unjam inverts jam") {
    Rng rng(41);
    for (int t = 0; t < 100; ++t) {
        const std::size_t d = 2 + t % 4;
        const MapRep m = oracle::random_map(rng, d);
        CHECK(max_action_diff(unjam(jam(m), d), m) <= 1e-12);
    }
    CHECK(max_action_diff(unjam(HermMatrix(p_plus(3)), 3), identity_map(3)) == 0.0);
    CHECK(max_action_diff(unjam(HermMatrix(swap_operator(3)), 3), transpose_map(3)) == 0.0);
    CHECK_THROWS(unjam(HermMatrix(p_plus(3)), 2));
}

TEST_CASE("map inner product") {
    for (std::size_t d = 2; d <= 5; ++d) {
        const double dd = static_cast<double>(d);
        CHECK(map_inner(identity_map(d), identity_map(d)).real() == doctest::Approx(dd * dd));
        CHECK(map_inner(epsilon_map(d), identity_map(d)).real() == doctest::Approx(dd));
    }
    Rng rng(42);
    for (int t = 0; t < 20; ++t) {
        const MapRep f = oracle::random_map(rng, 3), g = oracle::random_map(rng, 3);
        // Equals the Hilbert-Schmidt product of the Choi matrices.
        const cplx ref = hs_inner(jam(f).matrix(), jam(g).matrix());
        CHECK(std::abs(map_inner(f, g) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("pairing examples") {
    for (std::size_t d = 2; d <= 5; ++d) {
        const double dd = static_cast<double>(d);
        CHECK(pairing(HermMatrix(p_plus(d)), identity_map(d)) == doctest::Approx(dd * dd));
        // <P+, transpose> = Tr(SWAP P+) = d
        CHECK(pairing(HermMatrix(p_plus(d)), transpose_map(d)) == doctest::Approx(dd));
    }
    const MapRep choi = from_gen(choi_abc(1, 1, 0));
    CHECK(pairing(HermMatrix(kron(CMatrix::unit(3, 0, 0), CMatrix::unit(3, 0, 0))), choi) == doctest::Approx(0.5));
    // The Choi map is not CP, so P+ against its jam gives a negative number once
    // the weight is on the off-diagonal blocks: Tr(jam P+) = Sum_ij phi(e_ij)_ij.
    CHECK(pairing(HermMatrix(p_plus(3)), choi) == doctest::Approx(1.5 - 6 * 0.5));
}

TEST_CASE("pairing agrees with the brute-force trace on random inputs") {
    Rng rng(43);
    for (int t = 0; t < 50; ++t) {
        const std::size_t d = 2 + t % 4;
        const MapRep m = oracle::random_map(rng, d);
        const CMatrix rho = oracle::random_state(rng, d * d);
        const double ref = oracle::trace_product(oracle::choi(m), oracle::dense(rho)).real();
        const Pairing p = pairing_both(HermMatrix::symmetrized(rho), m);
        CHECK(std::abs(p.via_choi - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        CHECK(std::abs(p.blockwise - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("pairing is nonnegative between positive maps and separable states") {
    Rng rng(44);
    const std::vector<GenMap> maps{choi_abc(1, 1, 0), phi_dk(4, 1), phi_dk(5, 2), lambda_identity(3, 2.0)};
    for (const auto &g : maps) {
        const std::size_t d = g.d();
        const MapRep m = from_gen(g);
        for (int t = 0; t < 40; ++t) {
            const auto x = rng.unit_vector(d), y = rng.unit_vector(d);
            const HermMatrix rho = HermMatrix::symmetrized(CMatrix::projector(kron_vec(x, y)));
            CHECK(pairing(rho, m) >= -1e-12);
        }
    }
}

TEST_CASE("product-vector minimization") {
    CHECK(min_product_expectation(HermMatrix(CMatrix::identity(9)), 3).value == doctest::Approx(1.0));
    // <x y|P+|x y> = |Sum x_i y_i|^2 vanishes on orthogonal conjugates.
    CHECK(std::abs(min_product_expectation(HermMatrix(p_plus(3)), 3).value) <= 1e-12);
    CHECK(min_product_expectation(jam(from_gen(choi_abc(1, 1, 0))), 3).value >= -1e-9);
    // SWAP: <x y|S|x y> = |<x|y>|^2, minimum 0.
    CHECK(std::abs(min_product_expectation(HermMatrix(swap_operator(3)), 3).value) <= 1e-12);
    // The returned value is attained by the returned vectors.
    const HermMatrix w = jam(from_gen(phi_dk(4, 1)));
    const ProductMin pm = min_product_expectation(w, 4);
    CHECK(expectation(w.matrix(), kron_vec(pm.first, pm.second)) == doctest::Approx(pm.value).epsilon(1e-10));
}

TEST_CASE("entanglement witness verdicts") {
    CHECK(is_entanglement_witness(jam(from_gen(choi_abc(1, 1, 0))), 3).holds);
    CHECK_FALSE(is_entanglement_witness(HermMatrix(CMatrix::identity(9)), 3).holds);
    CHECK_FALSE(is_entanglement_witness(HermMatrix(p_plus(3) * cplx(-1.0)), 3).holds);
    CHECK(is_entanglement_witness(HermMatrix(swap_operator(3)), 3).holds);
    const Witness w = witness_from_map(from_gen(phi_dk(4, 1)), "phi-dk");
    CHECK(w.valid);
    CHECK(w.lambda_min < 0.0);
    CHECK(w.product_min >= -1e-9);
    CHECK_FALSE(witness_from_map(identity_map(3), "identity").valid);
}

TEST_CASE("Tiles basis") {
    const UPB u = tiles_upb();
    REQUIRE(u.members().size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            const auto a = kron_vec(u.members()[i].first, u.members()[i].second);
            const auto b = kron_vec(u.members()[j].first, u.members()[j].second);
            cplx dot = 0.0;
            for (std::size_t k = 0; k < 9; ++k) dot += std::conj(a[k]) * b[k];
            CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-15);
        }
    const HermMatrix rho = upb_state(u);
    CHECK(rho.trace() == doctest::Approx(4.0));
    const auto spec = eigvals_hermitian(rho);
    CHECK(std::abs(spec[4]) <= 1e-12);
    CHECK(spec[5] == doctest::Approx(1.0));
    // PPT
    CHECK(lambda_min(partial_transpose(rho, {3, 3}, Subsystem::second)) >= -1e-12);
    // No product vector is orthogonal to all members: Pi is strictly positive on product vectors.
    CHECK(min_product_expectation(upb_projector(u), 3).value > 0.01);
}

TEST_CASE("Terhal witness") {
    const UPB u = tiles_upb();
    const auto psi = canonical_max_entangled(3);
    const Witness w = terhal_witness(u, psi);
    CHECK(w.valid);
    CHECK(w.epsilon > 0.0);
    CHECK(w.lambda_min < 0.0);
    CHECK(w.product_min >= 0.0);
    const HermMatrix rho = upb_state(u);
    const double overlap = expectation(rho.matrix(), psi);
    const double detection = pairing(rho, unjam(w.w, 3));
    CHECK(detection == doctest::Approx(-3.0 * w.epsilon * overlap).epsilon(1e-10));
    CHECK(detection < 0.0);

    std::vector<cplx> bad(9, 0.0);
    bad[0] = 1.0;
    CHECK_THROWS_AS(terhal_witness(u, bad), std::invalid_argument);
    CHECK_THROWS_AS(terhal_witness(u, std::vector<cplx>(4, 0.5)), std::invalid_argument);
}

TEST_CASE("UPB validation") {
    const std::vector<cplx> e0{1.0, 0.0}, e1{0.0, 1.0};
    CHECK_THROWS(UPB(2, {{e0, e0}, {e0, e0}}));
    CHECK_THROWS(UPB(3, {{e0, e0}}));
    CHECK_NOTHROW(UPB(2, {{e0, e0}, {e1, e1}}));
}
