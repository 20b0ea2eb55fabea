#include <doctest.h>

#include <cmath>

#include "gpick/gdomain.hpp"
#include "gpick/kernels.hpp"
#include "support.hpp"

using namespace gpick;
using gpick::testing::Gen;
using gpick::testing::max_abs;

namespace {

const GPoint kOrigin{0.0, 0.0};
const GPoint kHalf{1.0, 0.25};

/// Disk Szego kernel 1 / (1 - z conj(w)).
Complex disk_szego(Complex z, Complex w) { return 1.0 / (1.0 - z * std::conj(w)); }

}  // namespace

TEST_CASE("szego examples") {
    CHECK(std::abs(szego(kOrigin, kOrigin) - 1.0) < 1e-15);
    CHECK(std::abs(szego(kHalf, kHalf) - 256.0 / 81.0) < 1e-12);
    Gen gen(1);
    for (int k = 0; k < 20; ++k) CHECK(std::abs(szego(kOrigin, gen.point()) - 1.0) < 1e-15);
    CHECK_THROWS_AS(szego({2.0, 1.0}, {2.0, 1.0}), DegenerateDenominatorError);
}

TEST_CASE("szego_gram examples") {
    const KernelSample one = szego_gram({kOrigin});
    CHECK(one.gram.size() == 1);
    CHECK(std::abs(one.gram.flat()(0, 0) - 1.0) < 1e-15);

    const KernelSample two = szego_gram({kOrigin, kHalf});
    CMatrix expected(2, 2);
    expected << 1, 1, 1, 256.0 / 81.0;
    CHECK(max_abs(two.gram.flat() - expected) < 1e-12);

    Gen gen(2);
    CHECK(min_eig(szego_gram(gen.nodes(10)).gram) >= -1e-10);
}

TEST_CASE("b_kernel examples") {
    Gen gen(3);
    for (int k = 0; k < 10; ++k) CHECK(std::abs(b_kernel(gen.disk(), kOrigin, kOrigin) - 1.0) < 1e-15);
    CHECK(std::abs(b_kernel(0.3, kHalf, kHalf) - 4.0 / 3.0) < 1e-14);

    const NodeSet nodes = gen.nodes(10);
    CMatrix g(10, 10);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) g(i, j) = b_kernel(Complex(0.0, 0.7), nodes[i], nodes[j]);
    CHECK(min_eig(BlockHermitian::scalar(g)) >= -1e-10);
}

TEST_CASE("d_kernel examples") {
    Gen gen(4);
    const NodeSet nodes = gen.nodes(5);
    const VectorField zero = [](const GPoint&) { return CVector(CVector::Zero(3)); };
    CHECK(max_abs(d_kernel(0.2, zero, nodes[0], nodes[1])) == 0.0);

    const VectorField one = [](const GPoint&) { return CVector(CVector::Ones(1)); };
    CHECK(std::abs(d_kernel(0.2, one, nodes[0], nodes[1])(0, 0) - b_kernel(0.2, nodes[0], nodes[1])) < 1e-15);

    const CMatrix coeffs = gen.matrix(3, 3);
    const VectorField u = [&](const GPoint& pt) {
        CVector v(3);
        v << 1.0, pt.s, pt.p;
        return CVector(coeffs * v);
    };
    const KernelSample g = d_kernel_gram(Complex(-0.4, 0.5), u, nodes);
    CHECK(g.gram.block_dim() == 3);
    CHECK(min_eig(g.gram) >= -1e-10);
}

TEST_CASE("admissibility_check examples") {
    const AdmissibilityReport szego_pass = admissibility_check(szego_gram({kOrigin, kHalf}), 128, 1e-9);
    CHECK(szego_pass.pass);
    CHECK(szego_pass.worst_eig >= -1e-10);

    KernelSample constant{{kOrigin, kHalf}, BlockHermitian::scalar(CMatrix::Ones(2, 2))};
    const AdmissibilityReport fail = admissibility_check(constant, 128, 1e-9);
    CHECK_FALSE(fail.pass);
    // At alpha = 1 (a grid point) the scaled matrix is [[1, 1], [1, 0.75]].
    CHECK(fail.worst_eig == doctest::Approx((1.75 - std::sqrt(4.0625)) / 2.0).epsilon(1e-12));

    Gen gen(5);
    for (int k = 0; k < 10; ++k) {
        KernelSample single{{gen.point()}, BlockHermitian::scalar(CMatrix::Constant(1, 1, gen.uniform(0.1, 3.0)))};
        CHECK(admissibility_check(single).pass);
    }
}

TEST_CASE("admissible_family examples") {
    Gen gen(6);
    const NodeSet nodes = gen.nodes(4);
    const auto base = admissible_family(nodes, 1, 0);
    REQUIRE(base.size() == 1);
    CHECK(max_abs(base[0].gram.flat() - szego_gram(nodes).gram.flat()) == 0.0);

    const auto fam = admissible_family(nodes, 5, 3);
    CHECK(fam.size() == 5);
    for (const auto& k : fam) CHECK(admissibility_check(k, 128, 1e-9).pass);

    const KernelSample sz = szego_gram(nodes);
    const KernelSample same = schur_multiply(sz, BlockHermitian::scalar(CMatrix::Ones(4, 4)));
    CHECK(max_abs(same.gram.flat() - sz.gram.flat()) < 1e-15);

    const auto blocks = admissible_family(nodes, 3, 9, 2);
    for (const auto& k : blocks) {
        CHECK(k.gram.block_dim() == 2);
        CHECK(admissibility_check(k, 128, 1e-9).pass);
    }
    CHECK(max_abs(blocks[0].gram.block(0, 1) - sz.gram.flat()(0, 1) * CMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("property: Szego denominator factors over root pairs") {
    Gen gen(7);
    for (int k = 0; k < 1000; ++k) {
        const GPoint a = gen.point(0.999);
        const GPoint b = gen.point(0.999);
        const Complex direct = (1.0 - a.p * std::conj(b.p)) * (1.0 - a.p * std::conj(b.p)) -
                               (a.s - std::conj(b.s) * a.p) * std::conj(b.s - std::conj(a.s) * b.p);
        CHECK(std::abs(direct - szego_denominator_product(a, b)) <= 1e-12);
        CHECK(std::abs(szego(a, b) - std::conj(szego(b, a))) <= 1e-12 * std::abs(szego(a, b)));
        const Complex alpha = gen.disk();
        CHECK(std::abs(b_kernel(alpha, a, b) - std::conj(b_kernel(alpha, b, a))) <= 1e-12 * std::abs(b_kernel(alpha, a, b)));
    }
}

TEST_CASE("property: b_kernel is the disk Szego kernel of the pushed-forward points") {
    Gen gen(8);
    for (int k = 0; k < 200; ++k) {
        const GPoint a = gen.point();
        const GPoint b = gen.point();
        const Complex alpha = gen.disk();
        const Complex expected = disk_szego(phi(alpha, a), phi(alpha, b));
        CHECK(std::abs(b_kernel(alpha, a, b) - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("property: random admissible families pass the check") {
    Gen gen(9);
    for (int k = 0; k < 20; ++k) {
        const NodeSet nodes = gen.nodes(gen.integer(1, 6));
        for (const auto& member : admissible_family(nodes, 4, static_cast<std::uint64_t>(k), gen.integer(1, 2))) {
            CHECK(admissibility_check(member, 128, 1e-9).pass);
        }
    }
}
