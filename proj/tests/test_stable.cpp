#include "hypermod/stable.hpp"
#include "hypermod/ranges.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace hypermod;

namespace {

std::vector<std::uint64_t> head(const PoincareSeries& s, std::size_t n)
{
    return std::vector<std::uint64_t>(s.coefficients.begin(), s.coefficients.begin() + static_cast<long>(n));
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    std::uint64_t b = 1;
    for (std::uint64_t j = 1; j <= k; ++j)
        b = b * (n - k + j) / j;
    return b;
}

}  // namespace

TEST_CASE("single-generator series have closed forms")
{
    for (int d = 1; d <= 8; ++d) {
        const auto s = free_gca_series({{d, 1}}, 50);
        for (int D = 0; D <= 50; ++D) {
            std::uint64_t expected = 0;
            if (d % 2)
                expected = (D == 0 || D == d) ? 1 : 0;
            else
                expected = D % d == 0 ? 1 : 0;
            CHECK(s.coefficients[static_cast<std::size_t>(D)] == expected);
        }
    }
    // m even generators of degree 2: binom(D/2 + m - 1, m - 1)
    for (std::uint64_t m = 1; m <= 5; ++m) {
        const auto s = free_gca_series({{2, m}}, 40);
        for (std::uint64_t D = 0; D <= 40; ++D)
            CHECK(s.coefficients[D] == (D % 2 ? 0 : binom(D / 2 + m - 1, m - 1)));
    }
    // m odd generators of degree 1: binom(m, D)
    for (std::uint64_t m = 1; m <= 6; ++m) {
        const auto s = free_gca_series({{1, m}}, 10);
        for (std::uint64_t D = 0; D <= 10; ++D)
            CHECK(s.coefficients[D] == binom(m, D));
    }
}

TEST_CASE("series examples")
{
    CHECK(head(free_gca_series({{3, 1}}, 6), 5) == std::vector<std::uint64_t>{1, 0, 0, 1, 0});
    CHECK(head(free_gca_series({{2, 1}}, 6), 5) == std::vector<std::uint64_t>{1, 0, 1, 0, 1});
    CHECK(free_gca_series({{3, 1}, {5, 1}}, 8).coefficients == std::vector<std::uint64_t>{1, 0, 0, 1, 0, 1, 0, 0, 1});
    CHECK_THROWS_AS(free_gca_series({{0, 1}}, 4), std::invalid_argument);
    CHECK(free_gca_series({}, 3).coefficients == std::vector<std::uint64_t>{1, 0, 0, 0});
}

TEST_CASE("stable series of builtins")
{
    CHECK(head(stable_moduli_series(builtin("p1"), 6), 4) == std::vector<std::uint64_t>{1, 0, 0, 1});
    CHECK(stable_moduli_series(builtin("p2"), 8).coefficients ==
          std::vector<std::uint64_t>{1, 0, 0, 1, 0, 1, 0, 0, 1});
    CHECK(head(stable_moduli_series(builtin("torus"), 8), 6) == std::vector<std::uint64_t>{1, 0, 2, 1, 3, 2});
}

TEST_CASE("grw series")
{
    for (const auto& name : testing_support::builtin_names()) {
        auto v = builtin(name);
        const auto stable = stable_moduli_series(v, 12);
        const auto grw = grw_series(v, 12);
        CAPTURE(name);
        if (v.ring->betti(2 * v.dim - 1) == 0)
            CHECK(grw == stable);
        CHECK(grw == multiply(stable, free_gca_series({{1, v.ring->betti(2 * v.dim - 1)}}, 12)));
    }
    auto t = builtin("torus");
    CHECK(grw_series(t, 10) == multiply(stable_moduli_series(t, 10), free_gca_series({{1, 2}}, 10)));
    CHECK(head(grw_series(t, 10), 4) == std::vector<std::uint64_t>{1, 2, 3, 5});
}

TEST_CASE("series multiplication is commutative and truncation stable")
{
    std::mt19937 rng(6);
    std::uniform_int_distribution<int> deg(1, 7);
    std::uniform_int_distribution<int> mult(1, 3);
    for (int trial = 0; trial < 30; ++trial) {
        GeneratorCounts a, b;
        for (int i = 0; i < 3; ++i) {
            a.emplace_back(deg(rng), mult(rng));
            b.emplace_back(deg(rng), mult(rng));
        }
        const auto sa = free_gca_series(a, 30), sb = free_gca_series(b, 30);
        CHECK(multiply(sa, sb) == multiply(sb, sa));
        GeneratorCounts ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        CHECK(multiply(sa, sb) == free_gca_series(ab, 30));
        const auto low = free_gca_series(a, 12);
        CHECK(low.coefficients == head(sa, 13));
        CHECK(multiply(low, sb).max_degree == 12);
    }
}

TEST_CASE("overflow is detected")
{
    CHECK_THROWS_AS(free_gca_series({{1, 200}}, 100), std::overflow_error);
}

TEST_CASE("comparison refuses non-simply-connected varieties")
{
    for (const char* name : {"torus", "curve2", "abelian2", "product:p1,torus"}) {
        auto v = builtin(name);
        CHECK_THROWS_AS(compare_stable(v, 10), std::domain_error);
    }
}

TEST_CASE("P1 comparison examples")
{
    auto p1 = builtin("p1");
    auto r = compare_stable(with_alpha(p1, ring_element(p1.ring, "h", 9)), 9);
    CHECK(r.certified_range == 2);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.all_equal);
    CHECK(r.rows[0].betti == 1);
    CHECK(r.rows[0].stable == 1);
    CHECK(r.rows[1].betti == 0);
    CHECK(r.rows[2].stable == 0);

    r = compare_stable(with_alpha(p1, ring_element(p1.ring, "h", 30)), 30, 16);
    CHECK(r.certified_range == 13);
    CHECK(r.all_equal);
    REQUIRE(r.rows.size() == 17);
    for (const auto& row : r.rows) {
        CHECK(row.betti == ((row.degree == 0 || row.degree == 3) ? 1u : 0u));
        CHECK(row.certified == (row.degree <= 13));
    }
    CHECK(compare_stable(with_alpha(p1, ring_element(p1.ring, "h", 3)), 3).rows.empty());
}

TEST_CASE("simply connected builtins agree with the stable series")
{
    for (const char* name : {"p1", "p2", "p3", "product:p1,p1", "product:p1,p2"}) {
        auto v = builtin(name);
        for (int d : {4, 6, 9, 12}) {
            const Element alpha = *v.polarization * Rational(d);
            auto w = with_alpha(v, alpha);
            const auto range = automatic_range(w);
            REQUIRE(range);
            if (range->max_valid_degree < 0)
                continue;
            CAPTURE(name);
            CAPTURE(d);
            auto r = compare_stable(w, range->jet_bound);
            CHECK(r.all_equal);
        }
    }
}
