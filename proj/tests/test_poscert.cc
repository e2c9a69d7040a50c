#include <doctest.h>

#include <cmath>

#include "oracles.h"
#include "witness_forge/duality.h"
#include "witness_forge/mapkit.h"
#include "witness_forge/poscert.h"
#include "witness_forge/rng.h"

using namespace witness_forge;

namespace {

GenMap random_cyclic(Rng &rng, std::size_t d) {
    return cyclic_gen_b(CyclicSpec(rng.simplex_point(d)));
}

std::vector<cplx> sqrt_vector(const std::vector<double> &p) {
    std::vector<cplx> x;
    for (double v : p) x.emplace_back(std::sqrt(v));
    return x;
}

}  // namespace

TEST_CASE("B values and C_d at simplex vertices") {
    const GenMap choi = choi_abc(1, 1, 0);
    const auto b = b_values(choi, SimplexPoint({1.0, 0.0, 0.0}));
    CHECK(b == std::vector<double>{2.0, 0.0, 1.0});
    CHECK(cd_value(choi, SimplexPoint({1.0, 0.0, 0.0})) == 0.0);
    // Barycenter of lambda I: B = (1 + lambda)/d, C_d = B^d (1 - d / (1 + lambda)).
    const GenMap lam = lambda_identity(3, 1.0);
    const double bary = std::pow(2.0 / 3.0, 3) * (1.0 - 3.0 / 2.0);
    CHECK(cd_value(lam, SimplexPoint({1.0 / 3, 1.0 / 3, 1.0 / 3})) == doctest::Approx(bary));
    CHECK_THROWS_AS(SimplexPoint({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(SimplexPoint({1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(b_values(choi, SimplexPoint({0.5, 0.5})), std::invalid_argument);
}

TEST_CASE("C_d is the determinant of the criterion matrix") {
    Rng rng(50);
    for (int t = 0; t < 60; ++t) {
        const std::size_t d = 3 + t % 4;
        RealMatrix a(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.uniform(0.0, 2.0);
        const GenMap m(d, a, 1.0);
        const auto p = rng.simplex_point(d);
        const CMatrix am = theorem1_matrix(m, sqrt_vector(p));
        const cplx det = oracle::permutation_det(oracle::dense(am));
        const double cd = cd_value(m, SimplexPoint(p));
        CHECK(std::abs(det.imag()) <= 1e-12);
        CHECK(std::abs(det.real() - cd) <= 1e-10 * std::max(1.0, std::abs(cd)));
    }
}

TEST_CASE("C_k coefficients match Faddeev-LeVerrier") {
    Rng rng(51);
    for (int t = 0; t < 60; ++t) {
        const std::size_t d = 2 + t % 4;
        RealMatrix a(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.uniform(0.0, 2.0);
        const GenMap m(d, a, rng.uniform(0.2, 2.0));
        const auto p = rng.simplex_point(d);
        const auto ck = ck_coefficients(m, SimplexPoint(p));
        const auto ref = oracle::faddeev_leverrier(oracle::dense(theorem1_matrix(m.unit_normalized(), sqrt_vector(p))));
        REQUIRE(ck.size() == d + 1);
        for (std::size_t k = 0; k <= d; ++k) CHECK(std::abs(ck[k] - ref[k].real()) <= 1e-10 * std::max(1.0, std::abs(ref[k])));
        CHECK(ck[d] == doctest::Approx(cd_value(m, SimplexPoint(p))).epsilon(1e-10));
    }
}

TEST_CASE("lambda I boundary for positivity and CP") {
    for (std::size_t d = 3; d <= 6; ++d) {
        const double edge = static_cast<double>(d) - 1.0;
        CHECK(certify_gen_positive(lambda_identity(d, edge)).positive());
        CHECK(certify_cp(lambda_identity(d, edge)).holds);
        const PositivityVerdict below = certify_gen_positive(lambda_identity(d, edge - 1e-3));
        CHECK(below.verdict == Positivity::not_positive);
        CHECK_FALSE(certify_cp(lambda_identity(d, edge - 1e-3)).holds);
        // The witness vector really is mapped outside the cone.
        REQUIRE(below.witness_vector.size() == d);
        const CMatrix img = gen_apply(lambda_identity(d, edge - 1e-3), CMatrix::projector(below.witness_vector));
        CHECK(lambda_min(HermMatrix::symmetrized(img)) < -1e-12);
    }
}

TEST_CASE("zero coefficient matrix is not positive") {
    for (std::size_t d = 2; d <= 5; ++d) {
        const GenMap zero(d, RealMatrix(d, d), 1.0);
        CHECK(certify_gen_positive(zero).verdict == Positivity::not_positive);
    }
}

TEST_CASE("catalog positivity claims") {
    for (std::size_t d = 3; d <= 6; ++d)
        for (std::size_t k = 0; k < d; ++k) CHECK(certify_gen_positive(tau_dk(d, k)).positive());
    CHECK(certify_gen_positive(choi_abc(1, 1, 0)).positive());
    CHECK(certify_gen_positive(choi_abc(1, 0, 1)).positive());
    CHECK(certify_gen_positive(choi_abc(1, 0, 0)).verdict == Positivity::not_positive);
}

TEST_CASE("b matrix spectra") {
    const auto spec = eigvals_hermitian(b_matrix(choi_abc(1, 1, 0)));
    CHECK(spec[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(spec[1] == doctest::Approx(2.0));
    CHECK(spec[2] == doctest::Approx(2.0));
    const Certificate cp = certify_cp(choi_abc(1, 1, 0));
    CHECK_FALSE(cp.holds);
    CHECK(cp.lambda_min == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("the two CP tests agree") {
    Rng rng(52);
    int cp = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t d = 2 + t % 4;
        RealMatrix a(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.uniform(0.0, 2.5 * static_cast<double>(d - 1) * (i == j) + 0.5);
        const GenMap m(d, a, rng.uniform(0.3, 1.5));
        const Certificate b = certify_cp(m);
        const Certificate c = certify_cp_choi(from_gen(m));
        CHECK(b.holds == c.holds);
        if (b.holds) {
            ++cp;
            CHECK(certify_gen_positive(m).positive());
        }
    }
    CHECK(cp > 10);
    CHECK(cp < 90);
}

TEST_CASE("complete copositivity") {
    CHECK(certify_ccp(transpose_map(3)).holds);
    CHECK_FALSE(certify_ccp(identity_map(3)).holds);
    for (std::size_t d = 3; d <= 5; ++d) {
        CHECK(certify_ccp(from_gen(tau_dk(d, d - 1))).holds);
        CHECK(certify_cp(tau_dk(d, 0)).holds);
    }
}

TEST_CASE("probe agrees with the simplex certificate") {
    Rng rng(53);
    for (int t = 0; t < 100; ++t) {
        const std::size_t d = 3 + t % 3;
        const GenMap m = random_cyclic(rng, d);
        const PositivityVerdict exact = certify_gen_positive(m);
        const PositivityVerdict probe = positivity_probe(from_gen(m), 16, 7 + static_cast<std::uint64_t>(t));
        // The probe never refutes a certified map.
        if (exact.positive()) CHECK(probe.verdict != Positivity::not_positive);
        if (probe.verdict == Positivity::not_positive) {
            CHECK_FALSE(exact.positive());
            const CMatrix img = gen_apply(m, CMatrix::projector(probe.witness_vector));
            CHECK(lambda_min(HermMatrix::symmetrized(img)) < 0.0);
        }
        if (probe.positive()) CHECK(probe.probe_only);
    }
}

TEST_CASE("probe finds violations of non-positive maps") {
    const MapRep m = transpose_map(3) + scaled(identity_map(3), -0.1);
    const PositivityVerdict v = positivity_probe(m);
    CHECK(v.verdict == Positivity::not_positive);
    CHECK(v.min_value == doctest::Approx(-0.1).epsilon(1e-8));
    CHECK(positivity_probe(transpose_map(3)).positive());
    CHECK(positivity_probe(robertson4()).positive());
}

TEST_CASE("Cho-Kye conditions") {
    CHECK(cho_kye_check(1, 0, 1));
    CHECK(cho_kye_check(1, 1, 0));
    CHECK_FALSE(cho_kye_check(2, 0, 0));      // a < 2 fails
    CHECK_FALSE(cho_kye_check(0.5, 0.5, 0.5));  // a + b + c < 2
    CHECK_FALSE(cho_kye_check(0, 1, 1));      // bc = (2 - a)^2 / 4: decomposable edge
    CHECK_FALSE(cho_kye_check(0.5, 1.5, 0));  // bc < (1 - a)^2
    CHECK(cho_kye_check(1.5, 0.5, 0));         // a > 1 needs only the shared bounds
    CHECK_THROWS_AS(cho_kye_check(-1, 1, 1), std::invalid_argument);
}

TEST_CASE("phi_p conditions") {
    // d = 3: 1 <= p0 < 2 and p1 p2 p3 >= (2 - p0)^3.
    CHECK(phi_p_check({1.0, 1.0, 1.0, 1.0}));
    CHECK_FALSE(phi_p_check({1.0, 1.0, 1.0, 0.9}));
    CHECK_FALSE(phi_p_check({2.0, 1.0, 1.0, 1.0}));
    CHECK_FALSE(phi_p_check({0.9, 2.0, 2.0, 2.0}));
    CHECK_FALSE(phi_p_check({1.5, 0.0, 1.0, 1.0}));
    CHECK(phi_p_check({1.5, 0.5, 0.5, 0.5}));
    CHECK_THROWS_AS(phi_p_check({1.0}), std::invalid_argument);
    // Maps passing the conditions are positive.
    for (double p0 : {1.0, 1.25, 1.5, 1.75})
        for (double q : {0.3, 0.6, 1.0}) {
            const std::vector<double> p{p0, q, q, q};
            if (phi_p_check(p)) CHECK(certify_gen_positive(phi_p(p)).positive());
        }
}
