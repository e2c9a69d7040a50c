#include <doctest.h>

#include <cmath>

#include "oracles.h"
#include "witness_forge/hermlin.h"
#include "witness_forge/rng.h"

using namespace witness_forge;

namespace {

CMatrix p_plus(std::size_t d) {
    CMatrix p(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) p(i * d + i, j * d + j) = 1.0;
    return p;
}

double max_abs_vec(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("eigvals of identity and Pauli X") {
    CHECK(eigvals_hermitian(HermMatrix(CMatrix::identity(3))) == std::vector<double>{1.0, 1.0, 1.0});
    const auto x = eigvals_hermitian(HermMatrix(CMatrix::unit(2, 0, 1) + CMatrix::unit(2, 1, 0)));
    CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eigvals agree with characteristic-polynomial roots") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix h = oracle::random_hermitian(rng, 4);
        const auto roots = oracle::durand_kerner_real(oracle::faddeev_leverrier(oracle::dense(h)));
        CHECK(max_abs_vec(eigvals_hermitian(HermMatrix(h)), roots) <= 1e-9);
    }
}

TEST_CASE("eigenvectors satisfy H v = lambda v and are orthonormal") {
    Rng rng(12);
    for (std::size_t n : {1u, 2u, 5u, 9u, 16u}) {
        const CMatrix h = oracle::random_hermitian(rng, n);
        const EigenSystem es = eigh(HermMatrix(h));
        CHECK(es.converged);
        const CMatrix hv = h * es.vectors;
        double resid = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                resid = std::max(resid, std::abs(hv(i, k) - es.values[k] * es.vectors(i, k)));
        CHECK(resid <= 1e-10 * std::max(1.0, h.frobenius_norm()));
        CHECK(max_abs_diff(es.vectors.adjoint() * es.vectors, CMatrix::identity(n)) <= 1e-12);
        CHECK(std::is_sorted(es.values.begin(), es.values.end()));
    }
}

TEST_CASE("eigenvalue sum equals trace") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const CMatrix h = oracle::random_hermitian(rng, n);
        const auto ev = eigvals_hermitian(HermMatrix(h));
        double sum = 0.0;
        for (double v : ev) sum += v;
        CHECK(std::abs(sum - h.trace().real()) <= 1e-10 * static_cast<double>(n) * std::max(1.0, h.max_abs()));
    }
}

TEST_CASE("non-Hermitian input is rejected with its asymmetry") {
    CMatrix m = CMatrix::unit(2, 0, 1);
    try {
        HermMatrix h(m);
        FAIL("expected rejection");
    } catch (const NotHermitian &e) {
        CHECK(e.asymmetry() == doctest::Approx(1.0));
    }
}

TEST_CASE("kron bookkeeping and trace multiplicativity") {
    CHECK(kron(CMatrix::identity(2), CMatrix::identity(2)) == CMatrix::identity(4));
    const CMatrix e = kron(CMatrix::unit(2, 0, 1), CMatrix::unit(2, 0, 1));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) CHECK(e(r, c) == cplx(r == 0 && c == 3 ? 1.0 : 0.0));
    Rng rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const CMatrix a = oracle::random_matrix(rng, 3), b = oracle::random_matrix(rng, 2);
        CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) <= 1e-12 * std::max(1.0, std::abs(a.trace() * b.trace())));
    }
}

TEST_CASE("kron is associative up to relabeling") {
    Rng rng(15);
    const CMatrix a = oracle::random_hermitian(rng, 2), b = oracle::random_hermitian(rng, 2),
                  c = oracle::random_hermitian(rng, 3);
    const auto l = eigvals_hermitian(HermMatrix(kron(kron(a, b), c)));
    const auto r = eigvals_hermitian(HermMatrix(kron(a, kron(b, c))));
    CHECK(max_abs_vec(l, r) <= 1e-10);
}

TEST_CASE("partial transpose of P+ is SWAP") {
    const CMatrix pt = partial_transpose(p_plus(2), Dims{2, 2}, Subsystem::second);
    CMatrix swap(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) swap(i * 2 + k, k * 2 + i) = 1.0;
    CHECK(pt == swap);
    const auto ev = eigvals_hermitian(HermMatrix(pt));
    CHECK(max_abs_vec(ev, {-1.0, 1.0, 1.0, 1.0}) <= 1e-14);
}

TEST_CASE("partial transpose: involution, trace, product states, index oracle") {
    Rng rng(16);
    for (int trial = 0; trial < 10; ++trial) {
        const CMatrix r = oracle::random_hermitian(rng, 9);
        for (Subsystem s : {Subsystem::first, Subsystem::second}) {
            const CMatrix once = partial_transpose(r, Dims{3, 3}, s);
            CHECK(partial_transpose(once, Dims{3, 3}, s) == r);
            CHECK(std::abs(once.trace() - r.trace()) <= 1e-14);
        }
        const auto ref = oracle::partial_transpose_second(oracle::dense(r), 3);
        CHECK(oracle::dense(partial_transpose(r, Dims{3, 3}, Subsystem::second)) == ref);
    }
    const CMatrix sigma = oracle::random_state(rng, 2), omega = oracle::random_state(rng, 3);
    const CMatrix prod = kron(sigma, omega);
    const auto base = eigvals_hermitian(HermMatrix::symmetrized(prod));
    for (Subsystem s : {Subsystem::first, Subsystem::second})
        CHECK(max_abs_vec(eigvals_hermitian(HermMatrix::symmetrized(partial_transpose(prod, Dims{2, 3}, s))), base) <= 1e-12);
    CHECK_THROWS_AS(partial_transpose(CMatrix(5), Dims{2, 2}, Subsystem::second), std::invalid_argument);
}

TEST_CASE("partial traces") {
    Rng rng(17);
    const CMatrix a = oracle::random_matrix(rng, 3), b = oracle::random_matrix(rng, 2);
    CHECK(max_abs_diff(partial_trace_second(kron(a, b), Dims{3, 2}), a * b.trace()) <= 1e-12);
    CHECK(max_abs_diff(partial_trace_first(kron(a, b), Dims{3, 2}), b * a.trace()) <= 1e-12);
    CHECK(max_abs_diff(partial_trace_second(p_plus(3), Dims{3, 3}), CMatrix::identity(3)) == 0.0);
    const CMatrix r = oracle::random_matrix(rng, 6);
    CHECK(std::abs(partial_trace_second(r, Dims{2, 3}).trace() - r.trace()) <= 1e-12);
    CHECK_THROWS_AS(partial_trace_second(CMatrix(5), Dims{2, 3}), std::invalid_argument);
}

TEST_CASE("swap_factors exchanges tensor factors") {
    Rng rng(18);
    const CMatrix a = oracle::random_matrix(rng, 2), b = oracle::random_matrix(rng, 3);
    CHECK(max_abs_diff(swap_factors(kron(a, b), Dims{2, 3}), kron(b, a)) <= 1e-15);
}

TEST_CASE("rank-one determinant pattern") {
    const std::vector<cplx> g1{cplx(2.5, -1.0)}, a1{cplx(0.3, 0.2)}, b1{cplx(-1.1, 0.4)};
    CHECK(std::abs(det_rank_one_pattern(g1, a1, b1).value - g1[0]) <= 1e-15);

    const std::vector<cplx> g{2.0, 3.0, 5.0}, zero(3, 0.0), any{1.0, -2.0, 0.5};
    CHECK(det_rank_one_pattern(g, zero, any).value == cplx(30.0));

    Rng rng(19);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<cplx> gamma(n), alpha(n), beta(n);
            for (std::size_t i = 0; i < n; ++i) {
                gamma[i] = cplx(rng.normal(), rng.normal());
                alpha[i] = cplx(rng.normal(), rng.normal());
                beta[i] = cplx(rng.normal(), rng.normal());
            }
            oracle::Dense m(n, std::vector<cplx>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m[i][j] = i == j ? gamma[i] : alpha[j] * beta[i];
            const cplx direct = oracle::permutation_det(m);
            const DetResult r = det_rank_one_pattern(gamma, alpha, beta);
            CHECK(r.branch == DetBranch::quotient);
            CHECK(std::abs(r.value - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
        }
}

TEST_CASE("rank-one determinant at the excluded points uses the limit form") {
    Rng rng(20);
    for (std::size_t n = 2; n <= 5; ++n) {
        std::vector<cplx> gamma(n), alpha(n), beta(n);
        for (std::size_t i = 0; i < n; ++i) {
            alpha[i] = cplx(rng.normal(), rng.normal());
            beta[i] = cplx(rng.normal(), rng.normal());
            gamma[i] = cplx(rng.normal(), rng.normal());
        }
        gamma[0] = alpha[0] * beta[0];
        gamma[n - 1] = alpha[n - 1] * beta[n - 1];
        oracle::Dense m(n, std::vector<cplx>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = i == j ? gamma[i] : alpha[j] * beta[i];
        const DetResult r = det_rank_one_pattern(gamma, alpha, beta);
        CHECK(r.branch == DetBranch::limit);
        const cplx direct = oracle::permutation_det(m);
        CHECK(std::abs(r.value - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("characteristic polynomial coefficients") {
    const auto c = char_poly_coeffs(CMatrix::identity(2));
    CHECK(c == std::vector<cplx>{1.0, 2.0, 1.0});
    const auto cd = char_poly_coeffs(CMatrix{{2.0, 0.0}, {0.0, -3.0}});
    CHECK(cd[1] == cplx(-1.0));
    CHECK(cd[2] == cplx(-6.0));
    Rng rng(21);
    for (std::size_t n = 1; n <= 6; ++n) {
        const CMatrix m = oracle::random_matrix(rng, n);
        const auto ours = char_poly_coeffs(m);
        const auto ref = oracle::faddeev_leverrier(oracle::dense(m));
        for (std::size_t k = 0; k <= n; ++k) CHECK(std::abs(ours[k] - ref[k]) <= 1e-9 * std::max(1.0, std::abs(ref[k])));
        const cplx det = oracle::permutation_det(oracle::dense(m));
        CHECK(std::abs(determinant(m) - det) <= 1e-10 * std::max(1.0, std::abs(det)));
        CHECK(std::abs(ours[n] - det) <= 1e-9 * std::max(1.0, std::abs(det)));
    }
}

TEST_CASE("real matrices: norm, determinant, products") {
    const RealMatrix r{{0.0, -1.0}, {1.0, 0.0}};
    CHECK(operator_norm(r) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(determinant(r) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_abs_diff(r * r.transpose(), RealMatrix::identity(2)) == 0.0);
    const RealMatrix s{{3.0, 0.0}, {0.0, -0.5}};
    CHECK(operator_norm(s) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(determinant(s) == doctest::Approx(-1.5).epsilon(1e-14));
}
