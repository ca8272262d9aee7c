#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qhr/complex_matrix.hpp"
#include "qhr/qft.hpp"
#include "qhr/random_unitary.hpp"
#include "qhr/reflection.hpp"

using namespace qhr;

namespace {

CVector random_unit_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [re, im] = detail::gaussian_pair(gen);
        v[i] = Complex(re, im);
    }
    const double nn = v.norm();
    for (std::size_t i = 0; i < n; ++i) v[i] /= nn;
    return v;
}

}  // namespace

TEST_CASE("fold_angle lands in (-pi, pi]") {
    CHECK(fold_angle(pi) == Catch::Approx(pi));
    CHECK(fold_angle(-pi) == Catch::Approx(pi));
    CHECK(fold_angle(3.0 * pi) == Catch::Approx(pi));
    CHECK(fold_angle(-1.3467 * pi) == Catch::Approx(0.6533 * pi));
    CHECK(fold_angle(0.25) == Catch::Approx(0.25));
}

TEST_CASE("reflection_matrix basics") {
    SECTION("basis-vector standard reflection") {
        const HouseholderFactor f(CVector::basis(3, 0), pi);
        CMatrix expected = CMatrix::identity(3);
        expected(0, 0) = -1.0;
        CHECK(max_abs_diff(reflection_matrix(f), expected) < 1e-15);
    }
    SECTION("Hadamard as a single reflection") {
        CVector v(2);
        v[0] = -0.5 * std::sqrt(2.0 - std::sqrt(2.0));
        v[1] = 0.5 * std::sqrt(2.0 + std::sqrt(2.0));
        CHECK(max_abs_diff(reflection_matrix({v, pi}), qft_matrix(2)) < 1e-14);
    }
    SECTION("phi = 0 is the identity") {
        const HouseholderFactor f(random_unit_vector(4, 7), 0.0);
        CHECK(f.is_identity());
        CHECK(max_abs_diff(reflection_matrix(f), CMatrix::identity(4)) == 0.0);
    }
    SECTION("non-normalized vectors are rejected") {
        CVector v(2);
        v[0] = 0.9;
        v[1] = 0.1;
        CHECK_THROWS_AS(HouseholderFactor(v, pi), std::invalid_argument);
    }
}

TEST_CASE("reflection invariants") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const CVector v = random_unit_vector(4, 900 + s);
        const double phi = fold_angle(0.1 + 1.3 * static_cast<double>(s));

        const CMatrix mpi = reflection_matrix({v, pi});
        CHECK(max_abs_diff(mat_mul(mpi, mpi), CMatrix::identity(4)) < 1e-12);  // involution
        CHECK(max_abs_diff(mpi, adjoint(mpi)) < 1e-12);                        // hermitean at pi

        const CMatrix m = reflection_matrix({v, phi});
        const CMatrix minv = reflection_matrix({v, -phi});
        CHECK(max_abs_diff(mat_mul(m, minv), CMatrix::identity(4)) < 1e-12);
        CHECK(std::abs(determinant(m) - std::polar(1.0, phi)) < 1e-10);

        // global phase of v is irrelevant
        CVector w = v;
        for (std::size_t i = 0; i < w.dim(); ++i) w[i] *= std::polar(1.0, 1.234);
        CHECK(max_abs_diff(reflection_matrix({w, phi}), m) < 1e-12);
    }
}

TEST_CASE("apply_reflection") {
    const HouseholderFactor f(CVector::basis(3, 0), pi);
    const CVector e2 = CVector::basis(3, 1);
    const CVector r = apply_reflection(f, e2);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r[i] - e2[i]) == 0.0);

    // v itself is an eigenvector with eigenvalue e^{i phi}
    const CVector v = random_unit_vector(5, 42);
    const double phi = 0.73;
    const CVector ev = apply_reflection({v, phi}, v);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(ev[i] - std::polar(1.0, phi) * v[i]) < 1e-13);

    // dense-product oracle
    for (std::uint64_t s = 0; s < 5; ++s) {
        const CVector u = random_unit_vector(6, 1000 + s);
        const CVector x = random_unit_vector(6, 2000 + s);
        const HouseholderFactor g(u, -1.9 + 0.7 * static_cast<double>(s));
        const CVector fast = apply_reflection(g, x);
        const CVector dense = mat_vec(reflection_matrix(g), x);
        for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(fast[i] - dense[i]) < 1e-12);
    }

    CHECK_THROWS_AS(apply_reflection(f, CVector::basis(4, 0)), std::invalid_argument);
}

TEST_CASE("phase_gate_matrix") {
    CHECK(max_abs_diff(phase_gate_matrix({{0.0, 0.0, 0.0}}), CMatrix::identity(3)) == 0.0);

    const PhaseGate g{{0.0, pi / 4.0, -3.0 * pi / 4.0}};
    const CMatrix m = phase_gate_matrix(g);
    CHECK(std::abs(m(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(m(1, 1) - std::polar(1.0, pi / 4.0)) < 1e-15);
    CHECK(std::abs(m(2, 2) - std::polar(1.0, -3.0 * pi / 4.0)) < 1e-15);
    CHECK(std::abs(m(0, 1)) == 0.0);

    // det Phi = e^{i sum phases} against the elimination determinant
    const double sum = g.phases[0] + g.phases[1] + g.phases[2];
    CHECK(std::abs(determinant(m) - std::polar(1.0, sum)) < 1e-12);
}
