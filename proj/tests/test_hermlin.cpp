#include <doctest.h>

#include <cmath>

#include "gpick/hermlin.hpp"
#include "support.hpp"

using namespace gpick;
using gpick::testing::Gen;
using gpick::testing::max_abs;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

CMatrix cols(std::initializer_list<std::initializer_list<Complex>> columns) {
    const auto n = static_cast<Eigen::Index>(columns.size());
    const auto d = static_cast<Eigen::Index>(columns.begin()->size());
    CMatrix m(d, n);
    Eigen::Index c = 0;
    for (const auto& col : columns) {
        Eigen::Index r = 0;
        for (Complex v : col) m(r++, c) = v;
        ++c;
    }
    return m;
}

}  // namespace

TEST_CASE("BlockHermitian keeps exact symmetry and block access") {
    Gen gen(1);
    const CMatrix raw = gen.matrix(6, 6);
    const BlockHermitian m(raw, 2);
    CHECK(m.nodes() == 3);
    CHECK(m.block_dim() == 2);
    CHECK(m.flat() == m.flat().adjoint());
    CHECK(max_abs(m.flat() - 0.5 * (raw + raw.adjoint())) < 1e-15);

    BlockHermitian z(3, 2);
    const CMatrix b = gen.matrix(2, 2);
    z.set_block(0, 2, b);
    CHECK(z.block(0, 2) == b);
    CHECK(z.block(2, 0) == b.adjoint());
    CHECK_THROWS_AS(BlockHermitian(gen.matrix(5, 5), 2), InvalidInputError);
}

TEST_CASE("min_eig examples") {
    CHECK(min_eig(BlockHermitian::identity(4, 1)) == doctest::Approx(1.0));
    const double expected = (1.75 - std::sqrt(4.0625)) / 2.0;
    CHECK(min_eig(mat2(1, 1, 1, 0.75)) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(expected + 0.13278) < 1e-5);
    CHECK(min_eig(mat2(2, 1, 1, 2)) == doctest::Approx(1.0));
}

TEST_CASE("chol_factor examples") {
    const CMatrix ones = CMatrix::Ones(2, 2);
    const CMatrix l = chol_factor(ones, 1e-9);
    REQUIRE(l.cols() == 1);
    CHECK(std::abs(l(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(l(1, 0) - 1.0) < 1e-14);

    const CMatrix id = CMatrix::Identity(3, 3);
    const CMatrix li = chol_factor(id, 1e-9);
    CHECK(li.cols() == 3);
    CHECK(max_abs(li * li.adjoint() - id) < 1e-14);

    CHECK_THROWS_AS(chol_factor(mat2(1, 0, 0, -1), 1e-9), NotPsdError);
    CHECK(chol_factor(CMatrix::Zero(2, 2), 1e-9).cols() == 0);
}

TEST_CASE("psd_project examples") {
    const CMatrix p = psd_project(mat2(1, 0, 0, -1));
    CHECK(max_abs(p - mat2(1, 0, 0, 0)) < 1e-15);
    CHECK(max_abs(psd_project(CMatrix(-CMatrix::Identity(3, 3)))) < 1e-15);
    Gen gen(2);
    const CMatrix m = gen.psd(4, 4);
    CHECK(max_abs(psd_project(m) - m) < 1e-12 * hermitian_norm(m));
}

TEST_CASE("solve_isometry examples") {
    const auto data = IsometryData::make(cols({{1, 0}, {1, -0.5}}), cols({{0, 1}, {-0.5, 1}}));
    CHECK(data.gram_defect() < 1e-15);
    const PartialIsometry v = solve_isometry(data, 1e-10);
    CHECK(v.rank() == 2);
    CHECK(max_abs(v.matrix() - mat2(0, 1, 1, 0)) < 1e-14);

    Gen gen(3);
    const CMatrix x = gen.matrix(4, 2);
    const PartialIsometry same = solve_isometry(IsometryData::make(x, x), 1e-10);
    CHECK(max_abs(same.matrix() * x - x) < 1e-12);
    CHECK(max_abs(same.matrix() - same.domain * same.domain.adjoint()) < 1e-12);

    CHECK_THROWS_AS(solve_isometry(IsometryData::make(cols({{1, 0}}), cols({{2, 0}})), 1e-10), GramMismatchError);
}

TEST_CASE("extend_to_unitary examples") {
    PartialIsometry v1{cols({{1, 0}}), cols({{0, 1}})};
    const UnitaryExtension u = extend_to_unitary(v1);
    CHECK(u.enlarged_dim == 0);
    CHECK(max_abs(u.unitary - mat2(0, 1, 1, 0)) < 1e-15);

    Gen gen(4);
    const CMatrix q = gen.matrix(3, 3).householderQr().householderQ();
    const UnitaryExtension same = extend_to_unitary({CMatrix::Identity(3, 3), q});
    CHECK(same.enlarged_dim == 0);
    CHECK(max_abs(same.unitary - q) < 1e-14);

    PartialIsometry inject{CMatrix::Ones(1, 1), cols({{std::sqrt(0.5), std::sqrt(0.5)}})};
    const UnitaryExtension grown = extend_to_unitary(inject);
    CHECK(grown.enlarged_dim == 1);
    CHECK(grown.padded_domain);
    CHECK(grown.unitary.rows() == 2);
    CHECK(max_abs(grown.unitary.adjoint() * grown.unitary - CMatrix::Identity(2, 2)) < 1e-14);
    CHECK(max_abs(grown.unitary.col(0) - inject.range) < 1e-15);
}

TEST_CASE("orthonormal_complement") {
    const CMatrix basis = cols({{std::sqrt(0.5), std::sqrt(0.5), 0}});
    const CMatrix comp = orthonormal_complement(basis, 3);
    CHECK(comp.cols() == 2);
    CHECK(max_abs(basis.adjoint() * comp) < 1e-15);
    CHECK(max_abs(comp.adjoint() * comp - CMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("property: psd_project is idempotent and lands in the cone") {
    Gen gen(5);
    for (int k = 0; k < 100; ++k) {
        const int n = gen.integer(1, 8);
        const CMatrix raw = gen.matrix(n, n);
        const CMatrix h = raw + raw.adjoint();
        const CMatrix p = psd_project(h);
        CHECK(min_eig(p) >= -1e-10);
        CHECK(max_abs(psd_project(p) - p) < 1e-12 * std::max(1.0, hermitian_norm(p)));
    }
}

TEST_CASE("property: chol_factor reconstructs random PSD matrices") {
    Gen gen(6);
    for (int k = 0; k < 100; ++k) {
        const int n = gen.integer(1, 10);
        const int r = gen.integer(1, n);
        const CMatrix m = gen.psd(n, r);
        const CMatrix l = chol_factor(m, 1e-12);
        CHECK(l.cols() == r);
        CHECK(max_abs(l * l.adjoint() - m) <= 1e-9 * hermitian_norm(m));
    }
}

TEST_CASE("property: extend_to_unitary is unitary and agrees with V1 on its domain") {
    Gen gen(7);
    for (int k = 0; k < 50; ++k) {
        const int din = gen.integer(1, 6);
        const int dout = gen.integer(1, 6);
        const int r = gen.integer(0, std::min(din, dout));
        const CMatrix dom = gen.matrix(din, din).householderQr().householderQ() * CMatrix::Identity(din, r);
        const CMatrix rng = gen.matrix(dout, dout).householderQr().householderQ() * CMatrix::Identity(dout, r);
        const PartialIsometry v1{dom, rng};
        const UnitaryExtension ext = extend_to_unitary(v1);
        const int n = std::max(din, dout);
        CHECK(ext.enlarged_dim == std::abs(din - dout));
        CHECK(max_abs(ext.unitary.adjoint() * ext.unitary - CMatrix::Identity(n, n)) < 1e-11);
        for (int t = 0; t < 50 && r > 0; ++t) {
            const CVector x = dom * gen.matrix(r, 1);
            CVector padded = CVector::Zero(n);
            padded.head(din) = x;
            const CVector image = ext.unitary * padded;
            CHECK(max_abs(image.head(dout) - v1.matrix() * x) < 1e-10);
            CHECK(max_abs(image.tail(n - dout)) < 1e-10);
        }
    }
}

TEST_CASE("property: solve_isometry preserves Grams") {
    Gen gen(8);
    const double tol = 1e-9;
    for (int k = 0; k < 100; ++k) {
        const int d = gen.integer(1, 6);
        const int n = gen.integer(1, 8);
        const int rank = gen.integer(1, std::min(d, n));
        const CMatrix x = gen.matrix(d, rank) * gen.matrix(rank, n);
        const CMatrix u = gen.matrix(d + 2, d + 2).householderQr().householderQ();
        const CMatrix y = u.leftCols(d) * x;
        const PartialIsometry v = solve_isometry(IsometryData::make(x, y), tol * std::max(1.0, max_abs(x.adjoint() * x)));
        CHECK(v.rank() == rank);
        const CMatrix vx = v.matrix() * x;
        const double scale = std::max(1.0, max_abs(x.adjoint() * x));
        CHECK(max_abs(vx.adjoint() * vx - x.adjoint() * x) <= 10 * tol * scale);
        CHECK(max_abs(vx - y) <= 1e-8 * std::max(1.0, max_abs(y)));
    }
}
