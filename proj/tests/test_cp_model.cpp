#include <doctest.h>

#include <cmath>

#include "gpick/cp_model.hpp"
#include "gpick/gdomain.hpp"
#include "gpick/interpolation.hpp"
#include "gpick/kernels.hpp"
#include "support.hpp"

using namespace gpick;
using gpick::testing::Gen;
using gpick::testing::max_abs;

namespace {

const NodeSet kTwo{{0.0, 0.0}, {1.0, 0.25}};

CPCertificate ones_certificate(Complex atom) {
    return {kTwo, {atom}, {BlockHermitian::scalar(CMatrix::Ones(2, 2))}};
}

BlockHermitian b_gram(Complex alpha, const NodeSet& nodes) {
    const int n = static_cast<int>(nodes.size());
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = b_kernel(alpha, nodes[i], nodes[j]);
    return BlockHermitian::scalar(g);
}

CPCertificate random_certificate(Gen& gen, int nodes, int atoms, int d) {
    CPCertificate cert;
    cert.nodes = gen.nodes(nodes);
    for (int a = 0; a < atoms; ++a) {
        cert.atoms.push_back(a == 0 ? Complex(0.0) : gen.circle());
        cert.blocks.emplace_back(gen.psd(nodes * d, gen.integer(1, nodes * d)), d);
    }
    return cert;
}

}  // namespace

TEST_CASE("AtomicMeasure validation") {
    CHECK_NOTHROW(AtomicMeasure{{0.0, 1.0}, {0.5, 0.5}}.validate());
    CHECK_THROWS_AS(AtomicMeasure({{0.0, 0.0}, {0.5, 0.5}}).validate(), InvalidInputError);
    CHECK_THROWS_AS(AtomicMeasure({{1.5}, {1.0}}).validate(), InvalidInputError);
    CHECK_THROWS_AS(AtomicMeasure({{0.5}, {0.0}}).validate(), InvalidInputError);
    CHECK_THROWS_AS(AtomicMeasure({{0.5}, {}}).validate(), InvalidInputError);
}

TEST_CASE("delta_eval examples") {
    const CPCertificate cert = ones_certificate(0.3);
    CHECK(max_abs(delta_eval(cert, 0, 1, {0.0})) == 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(delta_eval(cert, i, j, {1.0})(0, 0) - 1.0) < 1e-15);
    CHECK_THROWS_AS(delta_eval(cert, 0, 1, {1.0, 2.0}), InvalidInputError);
    CHECK_THROWS_AS(delta_eval(cert, 0, 2, {1.0}), InvalidInputError);
}

TEST_CASE("b-kernel certificate applied to 1 - phi conj(phi) gives 1") {
    const Complex alpha = 0.3;
    const CPCertificate cert =
        certificate_from_measure(kTwo, AtomicMeasure{{alpha}, {1.0}}, [](Complex a, const NodeSet& n) { return b_gram(a, n); });
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Complex h = 1.0 - phi(alpha, kTwo[i]) * std::conj(phi(alpha, kTwo[j]));
            CHECK(std::abs(delta_eval(cert, i, j, {h})(0, 0) - 1.0) < 1e-14);
        }
    }
    CHECK(max_abs(residual_of(cert).flat() - CMatrix::Ones(2, 2)) < 1e-14);
}

TEST_CASE("cp_check examples") {
    CPCertificate ids{kTwo, {0.0, 1.0}, {BlockHermitian::identity(2, 1), BlockHermitian::identity(2, 1)}};
    CHECK(cp_check(ids, 50, 1, 1e-9));

    CMatrix bad(2, 2);
    bad << 1, 0, 0, -1;
    CPCertificate neg{kTwo, {0.0, 1.0}, {BlockHermitian::identity(2, 1), BlockHermitian::scalar(bad)}};
    CHECK_FALSE(cp_check(neg, 50, 1, 1e-9));

    InterpolationProblem prob{kTwo, {CMatrix::Zero(1, 1), CMatrix::Constant(1, 1, -0.5)}};
    const FeasibilityResult res = delta_feasibility(prob, default_atoms(16));
    REQUIRE(res.status == FeasibilityStatus::feasible);
    CHECK(cp_check(*res.certificate, 100, 2, 1e-9));
}

TEST_CASE("residual_of examples") {
    CPCertificate zero{kTwo, {0.5}, {BlockHermitian(2, 1)}};
    CHECK(max_abs(residual_of(zero).flat()) == 0.0);

    CMatrix expected(2, 2);
    expected << 1, 1, 1, 0.75;
    CHECK(max_abs(residual_of(ones_certificate(0.3)).flat() - expected) < 1e-15);
}

TEST_CASE("gns_factor examples") {
    const GNSFactor f = gns_factor(ones_certificate(0.3), 1e-9);
    REQUIRE(f.rep_dims == std::vector<int>{1});
    CHECK(std::abs(f.factors[0](0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(f.factors[0](1, 0) - 1.0) < 1e-14);
    CHECK(std::abs(f.pi({Complex(0.7, 0.1)})(0, 0) - Complex(0.7, 0.1)) == 0.0);

    CPCertificate ids{kTwo, {0.0}, {BlockHermitian::identity(2, 2)}};
    const GNSFactor g = gns_factor(ids, 1e-9);
    CHECK(g.rep_dims == std::vector<int>{4});
    CHECK(max_abs(g.factors[0] * g.factors[0].adjoint() - CMatrix::Identity(4, 4)) < 1e-14);
}

TEST_CASE("gns_factor reconstructs a solver certificate") {
    Gen gen(3);
    InterpolationProblem prob{kTwo, {CMatrix::Constant(1, 1, 0.2), CMatrix::Constant(1, 1, Complex(-0.1, 0.3))}};
    const FeasibilityResult res = delta_feasibility(prob, default_atoms(16));
    REQUIRE(res.status == FeasibilityStatus::feasible);
    const CPCertificate& cert = *res.certificate;
    const GNSFactor f = gns_factor(cert, 1e-9);
    const auto m = cert.atoms.size();
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        std::vector<Complex> h1(m), h2(m), prod(m);
        for (std::size_t a = 0; a < m; ++a) {
            h1[a] = gen.gaussian();
            h2[a] = gen.gaussian();
            prod[a] = std::conj(h2[a]) * h1[a];
        }
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const CMatrix lhs = f.L(i, h1) * f.L(j, h2).adjoint();
                worst = std::max(worst, max_abs(lhs - delta_eval(cert, i, j, prod)));
            }
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("property: delta_eval is linear and Hermitian") {
    Gen gen(4);
    for (int k = 0; k < 50; ++k) {
        const int n = gen.integer(1, 4);
        const int d = gen.integer(1, 2);
        const int atoms = gen.integer(1, 4);
        const CPCertificate cert = random_certificate(gen, n, atoms, d);
        std::vector<Complex> h(atoms), g(atoms), comb(atoms), hbar(atoms);
        const Complex c1 = gen.gaussian(), c2 = gen.gaussian();
        for (int a = 0; a < atoms; ++a) {
            h[a] = gen.gaussian();
            g[a] = gen.gaussian();
            comb[a] = c1 * h[a] + c2 * g[a];
            hbar[a] = std::conj(h[a]);
        }
        const int i = gen.integer(0, n - 1), j = gen.integer(0, n - 1);
        const CMatrix lin = c1 * delta_eval(cert, i, j, h) + c2 * delta_eval(cert, i, j, g);
        CHECK(max_abs(delta_eval(cert, i, j, comb) - lin) < 1e-10 * std::max(1.0, max_abs(lin)));
        CHECK(max_abs(delta_eval(cert, i, j, h).adjoint() - delta_eval(cert, j, i, hbar)) < 1e-12 * std::max(1.0, max_abs(lin)));
        CHECK(cp_check(cert, 20, static_cast<std::uint64_t>(k), 1e-9));
        const BlockHermitian r = residual_of(cert);
        CHECK(max_abs(r.flat() - r.flat().adjoint()) <= 1e-12);
    }
}

TEST_CASE("property: pi is a unital multiplicative diagonal map") {
    Gen gen(5);
    for (int k = 0; k < 30; ++k) {
        const CPCertificate cert = random_certificate(gen, gen.integer(1, 4), gen.integer(1, 4), 1);
        const GNSFactor f = gns_factor(cert, 1e-9);
        const auto m = cert.atoms.size();
        std::vector<Complex> a(m), b(m), ab(m), one(m, 1.0);
        for (std::size_t t = 0; t < m; ++t) {
            a[t] = gen.gaussian();
            b[t] = gen.gaussian();
            ab[t] = a[t] * b[t];
        }
        CHECK(max_abs(f.pi(ab) - f.pi(a) * f.pi(b)) <= 1e-14 * std::max(1.0, max_abs(f.pi(ab))));
        CHECK(max_abs(f.pi(one) - CMatrix::Identity(f.state_dim(), f.state_dim())) == 0.0);
        for (std::size_t t = 0; t < m; ++t) {
            const CMatrix rec = f.factors[t] * f.factors[t].adjoint();
            CHECK(max_abs(rec - cert.blocks[t].flat()) <= 1e-8 * std::max(1.0, hermitian_norm(rec)));
        }
    }
}
