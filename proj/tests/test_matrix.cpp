#include <doctest.h>

#include <random>

#include "tatedr/matrix.hpp"

using tatedr::kInfValuation;
using tatedr::LaurentScalar;
using tatedr::Rational;
using tatedr::ScalarMatrix;
using tatedr::ZeroStatus;

namespace {

LaurentScalar t(int k) { return LaurentScalar::tPower(k); }
LaurentScalar q(long n) { return LaurentScalar::fromLong(n); }

ScalarMatrix fromRows(const std::vector<std::vector<LaurentScalar>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    ScalarMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return m;
}

}  // namespace

TEST_CASE("identity matrix has full rank") {
    auto rep = tatedr::rankReport(fromRows({{q(1), q(0)}, {q(0), q(1)}}));
    CHECK(rep.rank == 2);
    CHECK(rep.kernelDim == 0);
    CHECK(rep.cokernelDim == 0);
    CHECK(rep.reliable);
}

TEST_CASE("rank-one square matrix") {
    auto rep = tatedr::rankReport(fromRows({{q(1), q(1)}, {q(1), q(1)}}));
    CHECK(rep.rank == 1);
    CHECK(rep.kernelDim == 1);
    CHECK(rep.cokernelDim == 1);
    CHECK(rep.reliable);
}

TEST_CASE("diagonal with a small pivot reports the weakest pivot valuation") {
    auto rep = tatedr::rankReport(fromRows({{t(1), q(0)}, {q(0), q(1)}}));
    CHECK(rep.rank == 2);
    CHECK(rep.minPivotValuation == 1);
    CHECK(rep.reliable);
}

TEST_CASE("kernel bases match pinned examples") {
    auto z = tatedr::kernelBasis(fromRows({{LaurentScalar::zero()}}));
    REQUIRE(z.size() == 1);
    CHECK(z[0][0].identicalTo(LaurentScalar::one()));

    auto k1 = tatedr::kernelBasis(fromRows({{q(1), -q(1)}}));
    REQUIRE(k1.size() == 1);
    CHECK(LaurentScalar::equalAtPrecision(k1[0][0], q(1)));
    CHECK(LaurentScalar::equalAtPrecision(k1[0][1], q(1)));

    auto k2 = tatedr::kernelBasis(fromRows({{t(1), -q(1)}}));
    REQUIRE(k2.size() == 1);
    CHECK(LaurentScalar::equalAtPrecision(k2[0][0], q(1)));
    CHECK(LaurentScalar::equalAtPrecision(k2[0][1], t(1)));
}

TEST_CASE("kernel vectors substitute back to zero at precision") {
    ScalarMatrix m = fromRows({{q(1), t(1), t(-1)}, {q(2), q(3), t(2)}});
    auto basis = tatedr::kernelBasis(m);
    REQUIRE(basis.size() == 1);
    for (const auto& v : basis) {
        auto img = m.apply(v);
        for (const auto& e : img) CHECK(e.zeroStatus() != ZeroStatus::NonZero);
    }
}

TEST_CASE("cokernel dimensions") {
    CHECK(tatedr::cokernelDim(fromRows({{LaurentScalar::zero()}})) == 1);
    CHECK(tatedr::cokernelDim(fromRows({{q(1), q(0)}, {q(0), q(1)}})) == 0);
    CHECK(tatedr::cokernelDim(fromRows({{t(-1)}})) == 0);
}

TEST_CASE("eliminating an entry indistinguishable from zero flags the report") {
    LaurentScalar nearZero = LaurentScalar::inexactZero(8, 8);
    auto rep = tatedr::rankReport(fromRows({{q(1), q(1)}, {q(1), q(1) + nearZero}}));
    CHECK(rep.rank == 1);
    CHECK_FALSE(rep.reliable);
}

TEST_CASE("unit row scaling preserves rank data") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> coeff(-5, 5);
    for (int iter = 0; iter < 40; ++iter) {
        ScalarMatrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.set(i, j, q(coeff(rng)));
        auto rep = tatedr::rankReport(m);
        ScalarMatrix scaled = m;
        LaurentScalar u = q(3) + t(1);  // a unit
        for (int j = 0; j < 3; ++j) scaled.set(1, j, m.at(1, j) * u);
        auto rep2 = tatedr::rankReport(scaled);
        CHECK(rep.rank == rep2.rank);
        CHECK(rep.kernelDim == rep2.kernelDim);
        CHECK(rep.cokernelDim == rep2.cokernelDim);
    }
}

TEST_CASE("block diagonal rank adds") {
    ScalarMatrix m(4, 4);
    m.set(0, 0, q(1));
    m.set(0, 1, q(2));
    m.set(1, 0, q(2));
    m.set(1, 1, q(4));  // block rank 1
    m.set(2, 2, t(1));
    m.set(3, 3, q(5));  // block rank 2
    CHECK(tatedr::rankReport(m).rank == 3);
}

TEST_CASE("rank-nullity on random matrices") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<long> coeff(-4, 4);
    std::uniform_int_distribution<int> val(0, 2);
    for (int iter = 0; iter < 60; ++iter) {
        int r = dim(rng), c = dim(rng);
        ScalarMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m.set(i, j, q(coeff(rng)) * t(val(rng)));
        auto rep = tatedr::rankReport(m);
        CHECK(rep.rank + rep.kernelDim == c);
        CHECK(rep.rank + rep.cokernelDim == r);
        CHECK(static_cast<int>(tatedr::kernelBasis(m).size()) == rep.kernelDim);
    }
}
