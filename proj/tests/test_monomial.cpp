#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mhl/monomial.hpp"

#include <set>

using mhl::Monomial;

namespace {

Monomial mono(std::uint32_t n, std::uint64_t xmask, std::vector<std::uint32_t> yexp) {
    return Monomial{n, xmask, std::move(yexp)};
}

}  // namespace

TEST_CASE("degree counts exterior factors once and y-exponents twice") {
    CHECK(mhl::degree(mono(2, 0b01, {0, 1})) == 3);       // x1 y2
    CHECK(mhl::degree(mono(3, 0b011, {1, 2, 3})) == 14);  // x1 x2 y1 y2^2 y3^3
    CHECK(mhl::degree(mhl::unit_monomial(4)) == 0);
}

TEST_CASE("weight profile expands eps_i + 2 e_i in binary") {
    // x1 y1^2 at n = 2: eps+2e = (5, 0), 5 = 101b.
    mhl::WeightProfile p = mhl::weight_profile(mono(2, 0b01, {2, 0}));
    CHECK(p.alpha == std::vector<std::uint32_t>{2, 0});
    CHECK(p.omega == std::vector<std::uint32_t>{1, 0, 1});

    // x1 x2 y1 y2^2 y3^3: values 3 = 11b, 5 = 101b, 6 = 110b.
    p = mhl::weight_profile(mono(3, 0b011, {1, 2, 3}));
    CHECK(p.alpha == std::vector<std::uint32_t>{2, 2, 2});
    CHECK(p.omega == std::vector<std::uint32_t>{2, 2, 2});

    p = mhl::weight_profile(mhl::unit_monomial(3));
    CHECK(p.alpha == std::vector<std::uint32_t>{0, 0, 0});
    CHECK(p.omega.empty());
}

TEST_CASE("weight profile recovers the degree") {
    for (std::uint32_t n = 1; n <= 4; ++n)
        for (std::uint64_t d = 0; d <= 20; ++d)
            for (const Monomial& m : mhl::enumerate_degree(n, d).items) {
                const mhl::WeightProfile p = mhl::weight_profile(m);
                std::uint64_t total = 0;
                for (std::size_t j = 0; j < p.omega.size(); ++j)
                    total += (1ull << j) * p.omega[j];
                CHECK(total == d);
            }
}

TEST_CASE("component enumeration is complete, canonical, duplicate-free") {
    const std::vector<Monomial> small = mhl::enumerate_component(2, 1, 1);
    REQUIRE(small.size() == 4);
    const std::set<std::string> names{mhl::to_string(small[0]), mhl::to_string(small[1]),
                                      mhl::to_string(small[2]), mhl::to_string(small[3])};
    CHECK(names == std::set<std::string>{"x{1} y[0,1]", "x{1} y[1,0]", "x{2} y[0,1]",
                                         "x{2} y[1,0]"});

    CHECK(mhl::enumerate_component(3, 2, 6).size() == 84);  // 3 * C(8,2)
    CHECK_THROWS_AS(mhl::enumerate_component(3, 4, 0), mhl::InvalidArgs);

    for (std::uint32_t n = 1; n <= 4; ++n)
        for (std::uint32_t a = 0; a <= n; ++a)
            for (std::uint64_t b = 0; b <= 5; ++b) {
                const std::vector<Monomial> block = mhl::enumerate_component(n, a, b);
                CHECK(block.size() == mhl::component_count_saturating(n, a, b));
                for (std::size_t i = 1; i < block.size(); ++i)
                    CHECK(mhl::canonical_less(block[i - 1], block[i]));
            }
}

TEST_CASE("degree bases concatenate the components in exterior order") {
    const mhl::DegreeBasis b23 = mhl::enumerate_degree(2, 3);
    CHECK(b23.size() == 4);  // only a = 1 contributes, a = 3 > n

    const mhl::DegreeBasis b314 = mhl::enumerate_degree(3, 14);
    CHECK(b314.size() == 120);  // 36 + 84
    REQUIRE(b314.components.size() == 2);
    CHECK(b314.components[0].a == 0);
    CHECK(b314.components[0].size == 36);
    CHECK(b314.components[1].a == 2);
    CHECK(b314.components[1].size == 84);

    const mhl::DegreeBasis unit = mhl::enumerate_degree(1, 0);
    REQUIRE(unit.size() == 1);
    CHECK(unit.items[0] == mhl::unit_monomial(1));
}

TEST_CASE("index lookup round-trips every basis position") {
    for (std::uint32_t n = 1; n <= 4; ++n)
        for (std::uint64_t d = 0; d <= 14; ++d) {
            const mhl::DegreeBasis basis = mhl::enumerate_degree(n, d);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                auto idx = basis.index_of(basis.items[i]);
                REQUIRE(idx.has_value());
                CHECK(*idx == i);
            }
        }
    CHECK_FALSE(mhl::enumerate_degree(2, 4).index_of(mono(2, 0, {0, 1})).has_value());
}

TEST_CASE("multiply kills repeated exterior factors") {
    CHECK_FALSE(mhl::multiply(mono(2, 0b01, {0, 0}), mono(2, 0b01, {0, 0})).has_value());

    auto prod = mhl::multiply(mono(2, 0b01, {1, 0}), mono(2, 0b10, {1, 0}));
    REQUIRE(prod.has_value());
    CHECK(*prod == mono(2, 0b11, {2, 0}));

    auto with_unit = mhl::multiply(mhl::unit_monomial(2), mono(2, 0b10, {3, 1}));
    REQUIRE(with_unit.has_value());
    CHECK(*with_unit == mono(2, 0b10, {3, 1}));

    CHECK_THROWS_AS(mhl::multiply(mhl::unit_monomial(2), mhl::unit_monomial(3)),
                    mhl::ArityMismatch);
}

TEST_CASE("multiply adds degrees when defined") {
    const std::vector<Monomial> pool = mhl::enumerate_degree(3, 5).items;
    for (const Monomial& a : pool)
        for (const Monomial& b : pool)
            if (auto p = mhl::multiply(a, b))
                CHECK(mhl::degree(*p) == mhl::degree(a) + mhl::degree(b));
}

TEST_CASE("text form") {
    CHECK(mhl::to_string(mhl::unit_monomial(3)) == "1");
    CHECK(mhl::to_string(mono(3, 0b011, {1, 2, 3})) == "x{1,2} y[1,2,3]");
    CHECK(mhl::to_string(mono(3, 0b110, {0, 0, 0})) == "x{2,3}");
    CHECK(mhl::to_string(mono(2, 0, {0, 2})) == "y[0,2]");
}
