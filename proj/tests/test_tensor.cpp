#include "corrmap/eig.hpp"
#include "corrmap/random.hpp"
#include "corrmap/tensor.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace corrmap;

namespace {

const CMatrix pauli_x = [] {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}();

const CMatrix pauli_z = [] {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}();

CVector bell_phi_plus() {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

}  // namespace

TEST_CASE("kron identity and basis projectors") {
    REQUIRE((kron(identity(2), identity(2)) - identity(4)).norm() == 0.0);

    const CMatrix p = kron(basis_projector(2, 0), basis_projector(2, 1));
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j)
            REQUIRE(p(i, j) == (i == 1 && j == 1 ? Complex(1) : Complex(0)));
}

TEST_CASE("kron respects factorwise multiplication") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const CMatrix a = rng.hermitian(2), b = rng.hermitian(2);
        const CVector x = rng.haar_ket(2), y = rng.haar_ket(2);
        const CVector lhs = kron(a, b) * kron(CMatrix(x), CMatrix(y));
        const CVector rhs = kron(CMatrix(a * x), CMatrix(b * y));
        REQUIRE((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("kron associativity") {
    CMatrix a(2, 2), b(2, 2), c(2, 2);
    a << 0.5, 0.25, -0.75, 1.0;
    b << 1.0, -0.5, 0.125, 0.25;
    c << -1.0, 0.5, 0.75, -0.25;
    REQUIRE((kron(kron(a, b), c) - kron(a, kron(b, c))).norm() == 0.0);

    Rng rng(12);
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrix x = rng.hermitian(2), y = rng.hermitian(3), z = rng.hermitian(2);
        REQUIRE((kron(kron(x, y), z) - kron(x, kron(y, z))).norm() < 1e-12);
    }
}

TEST_CASE("partial trace of product states") {
    Rng rng(21);
    const DimSpec dims{2, 3, 1};
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrix eta = rng.density(2), tau = rng.density(3);
        REQUIRE((trace_env(kron(eta, tau), dims) - eta).norm() < 1e-13);
        REQUIRE((trace_sys(kron(eta, tau), dims) - tau).norm() < 1e-13);
    }
}

TEST_CASE("partial trace of the maximally entangled state") {
    const CMatrix rho = projector(bell_phi_plus());
    const CMatrix reduced = trace_env(rho, DimSpec{2, 2, 1});
    REQUIRE((reduced - 0.5 * identity(2)).norm() < 1e-14);
}

TEST_CASE("partial trace matches brute-force index sums") {
    Rng rng(22);
    const DimSpec dims{2, 3, 2};
    const CMatrix m = rng.hermitian(dims.total());

    const std::array<std::array<bool, 3>, 5> selections{{{true, false, false},
                                                         {false, true, true},
                                                         {true, true, false},
                                                         {false, false, true},
                                                         {true, true, true}}};
    for (const auto& keep : selections) {
        const CMatrix got = partial_trace(m, dims, keep);
        const CMatrix want =
            oracle::partial_trace_3(m, dims.d_s, dims.d_ec, dims.d_er, keep[0], keep[1], keep[2]);
        REQUIRE((got - want).norm() < 1e-12);
    }
}

TEST_CASE("correlation part of a state is traceless on both sides") {
    Rng rng(23);
    const DimSpec dims{2, 2, 1};
    for (int rep = 0; rep < 5; ++rep) {
        const CMatrix rho = rng.density(4);
        const CMatrix eta = oracle::partial_trace_3(rho, 2, 2, 1, true, false, false);
        const CMatrix tau = oracle::partial_trace_3(rho, 2, 2, 1, false, true, true);
        const CMatrix chi = rho - kron(eta, tau);
        REQUIRE(trace_env(chi, dims).norm() < 1e-12);
        REQUIRE(trace_sys(chi, dims).norm() < 1e-12);
    }
}

TEST_CASE("partial trace is linear and trace preserving") {
    Rng rng(24);
    const DimSpec dims{2, 2, 2};
    const CMatrix m1 = rng.hermitian(8), m2 = rng.hermitian(8);
    const Complex c1(0.3, -0.2), c2(-1.1, 0.7);

    const CMatrix lhs = trace_env(c1 * m1 + c2 * m2, dims);
    const CMatrix rhs = c1 * trace_env(m1, dims) + c2 * trace_env(m2, dims);
    REQUIRE((lhs - rhs).norm() < 1e-12);
    REQUIRE(std::abs(trace_env(m1, dims).trace() - m1.trace()) < 1e-12);
}

TEST_CASE("partial trace rejects mismatched dimensions") {
    REQUIRE_THROWS_AS(trace_env(identity(5), DimSpec{2, 2, 1}), ValidationError);
}

TEST_CASE("hermitian_eig on a diagonal matrix sorts ascending") {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    const EigDecomp eig = hermitian_eig(m);
    REQUIRE(eig.values(0) == Catch::Approx(1.0));
    REQUIRE(eig.values(1) == Catch::Approx(2.0));
    REQUIRE(eig.values(2) == Catch::Approx(3.0));
    // permutation eigenvectors: |<col_k| e_perm(k)>| = 1
    REQUIRE(std::abs(eig.vectors(1, 0)) == Catch::Approx(1.0));
    REQUIRE(std::abs(eig.vectors(2, 1)) == Catch::Approx(1.0));
    REQUIRE(std::abs(eig.vectors(0, 2)) == Catch::Approx(1.0));
}

TEST_CASE("hermitian_eig of Pauli X") {
    const EigDecomp eig = hermitian_eig(pauli_x);
    REQUIRE(eig.values(0) == Catch::Approx(-1.0));
    REQUIRE(eig.values(1) == Catch::Approx(1.0));
    CVector minus(2), plus(2);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    REQUIRE(std::abs(minus.dot(eig.vectors.col(0))) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(plus.dot(eig.vectors.col(1))) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
    Rng rng(31);
    const CMatrix h = rng.hermitian(8);
    const EigDecomp eig = hermitian_eig(h);
    REQUIRE((eig.reconstruct() - h).norm() < 1e-10);

    const CMatrix big = rng.hermitian(64);
    const EigDecomp eig64 = hermitian_eig(big);
    REQUIRE((eig64.vectors.adjoint() * eig64.vectors - identity(64)).norm() < 1e-10);
    REQUIRE((eig64.reconstruct() - big).norm() < 1e-10);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    REQUIRE_THROWS_AS(hermitian_eig(m), ValidationError);
}

TEST_CASE("expm of the zero Hamiltonian is the identity") {
    REQUIRE((expm_hermitian(CMatrix::Zero(3, 3), 1.7) - identity(3)).norm() < 1e-14);
}

TEST_CASE("expm of Pauli Z is a phase gate") {
    const CMatrix u = expm_hermitian(pauli_z, M_PI / 2);
    REQUIRE(std::abs(u(0, 0) - std::exp(Complex(0, -M_PI / 2))) < 1e-12);
    REQUIRE(std::abs(u(1, 1) - std::exp(Complex(0, M_PI / 2))) < 1e-12);
    REQUIRE(std::abs(u(0, 1)) < 1e-14);
    REQUIRE(std::abs(u(1, 0)) < 1e-14);
}

TEST_CASE("expm matches the series oracle") {
    Rng rng(32);
    for (int rep = 0; rep < 5; ++rep) {
        const CMatrix h = rng.hermitian(4);
        const CMatrix got = expm_hermitian(h, 0.3);
        const CMatrix want = oracle::taylor_expm(h, 0.3);
        REQUIRE((got - want).norm() < 1e-9);
        REQUIRE(is_unitary(got, 1e-10));
    }
}

TEST_CASE("expm forward then backward is the identity") {
    Rng rng(33);
    const CMatrix h = rng.hermitian(6);
    const CMatrix round_trip = expm_hermitian(h, 0.8) * expm_hermitian(h, -0.8);
    REQUIRE((round_trip - identity(6)).norm() < 1e-10);
}

TEST_CASE("expm rejects non-Hermitian input") {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    REQUIRE_THROWS_AS(expm_hermitian(m, 1.0), ValidationError);
}

TEST_CASE("min eigenvalue and PSD predicates") {
    REQUIRE(min_eigenvalue(identity(4)) == Catch::Approx(1.0));
    REQUIRE(is_psd(identity(4), 1e-9));

    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = -0.1;
    REQUIRE(min_eigenvalue(m) == Catch::Approx(-0.1));
    REQUIRE_FALSE(is_psd(m, 1e-9));
}

TEST_CASE("transpose-map Choi matrix is not PSD") {
    // In the trace-d_S convention the Choi matrix of the qubit transpose map
    // is the SWAP operator; its negative eigenvalue is -1 (-1/2 after
    // rescaling the Choi matrix to unit trace).
    CMatrix swap = CMatrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;

    Eigen::SelfAdjointEigenSolver<CMatrix> direct(swap);  // explicit 4x4 eigensolve
    REQUIRE(direct.eigenvalues()(0) == Catch::Approx(-1.0));

    REQUIRE(min_eigenvalue(swap) == Catch::Approx(-1.0));
    REQUIRE_FALSE(is_psd(swap, 1e-9));
    REQUIRE(min_eigenvalue(CMatrix(0.5 * swap)) == Catch::Approx(-0.5));
}
