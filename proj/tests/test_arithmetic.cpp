#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mhl/arithmetic.hpp"
#include "mhl/rng.hpp"

#include <vector>

using mhl::BitNat;

namespace {

// Independent oracle: least number of parts of the form 2^i - 1 summing to
// d, by dynamic programming over all such parts.
std::vector<std::uint32_t> beta_table(std::uint32_t maxd) {
    const std::uint32_t inf = UINT32_MAX;
    std::vector<std::uint32_t> dp(maxd + 1, inf);
    dp[0] = 0;
    std::vector<std::uint32_t> parts;
    for (std::uint64_t p = 1; p <= maxd; p = 2 * p + 1)
        parts.push_back(static_cast<std::uint32_t>(p));
    for (std::uint32_t d = 1; d <= maxd; ++d)
        for (std::uint32_t p : parts)
            if (p <= d && dp[d - p] != inf)
                dp[d] = std::min(dp[d], dp[d - p] + 1);
    return dp;
}

}  // namespace

TEST_CASE("BitNat construction and comparison") {
    CHECK(BitNat::from_u64(0).is_zero());
    CHECK(BitNat::from_u64(0).to_decimal() == "0");
    CHECK(BitNat::from_u64(12345).to_decimal() == "12345");
    CHECK(BitNat::pow2(5).to_u64() == 32);
    CHECK(BitNat::pow2(64).bit_length() == 65);
    CHECK(BitNat::from_u64(7) < BitNat::from_u64(8));
    CHECK(BitNat::pow2(100).popcount() == 1);
}

TEST_CASE("BitNat add, sub, shift, scalar multiply") {
    BitNat a = BitNat::from_u64(UINT64_MAX);
    a.add_u64(1);
    CHECK(a == BitNat::pow2(64));
    a.sub_u64(1);
    CHECK(a == BitNat::from_u64(UINT64_MAX));

    BitNat b = BitNat::from_u64(3);
    b.shl(70);
    CHECK(b.bit_length() == 72);
    CHECK(b.popcount() == 2);

    BitNat c = BitNat::from_u64(1);
    c.mul_u64(0);
    CHECK(c.is_zero());

    BitNat d = BitNat::pow2(90);
    d.sub_u64(1);
    d.mul_u64(6);  // 6 * (2^90 - 1) = 2^92 + 2^91 - 6
    BitNat expect = BitNat::pow2(92) + BitNat::pow2(91);
    expect.sub_u64(6);
    CHECK(d == expect);

    CHECK_THROWS_AS(BitNat::from_u64(1).sub(BitNat::from_u64(2)), mhl::InvalidArgs);
    CHECK_THROWS_AS(BitNat::pow2(64).to_u64(), mhl::InvalidArgs);
}

TEST_CASE("decimal round-trip up to 2^1000") {
    mhl::Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t bits = 1 + rng.below(1000);
        BitNat x;
        for (std::uint64_t i = 0; i < bits; ++i)
            if (rng.next() & 1) {
                BitNat bit = BitNat::pow2(i);
                x.add(bit);
            }
        CHECK(BitNat::from_decimal(x.to_decimal()) == x);
    }
    CHECK(BitNat::from_decimal("0").is_zero());
    CHECK(BitNat::from_decimal("00123").to_u64() == 123);
    CHECK_THROWS_AS(BitNat::from_decimal(""), mhl::FormatError);
    CHECK_THROWS_AS(BitNat::from_decimal("12x"), mhl::FormatError);
}

TEST_CASE("power-of-two shorthand detection") {
    BitNat d = BitNat::pow2(35);
    d.sub_u64(35);
    CHECK(d.pow2_shorthand() == "2^35 - 35");
    CHECK(BitNat::pow2(10).pow2_shorthand() == "2^10");
    // 1000000 = 2^20 - 48576: the gap is not small next to the value.
    CHECK(BitNat::from_u64(1000000).pow2_shorthand() == "");
    CHECK(BitNat::from_u64(0).pow2_shorthand() == "");
    BitNat big = BitNat::pow2(40);
    big.sub_u64(1000);
    CHECK(big.pow2_shorthand() == "2^40 - 1000");
}

TEST_CASE("alpha counts binary ones") {
    CHECK(mhl::alpha_of(std::uint64_t{4}) == 1);
    CHECK(mhl::alpha_of(std::uint64_t{0}) == 0);
    BitNat big = BitNat::pow2(35);
    big.sub_u64(2);
    CHECK(mhl::alpha_of(big) == 34);
}

TEST_CASE("beta by the search characterization") {
    CHECK(mhl::beta_of(std::uint64_t{3}) == 1);
    CHECK(mhl::beta_of(std::uint64_t{5}) == 3);
    CHECK(mhl::beta_of(std::uint64_t{2}) == 2);
    CHECK_THROWS_AS(mhl::beta_of(std::uint64_t{0}), mhl::InvalidArgs);
}

TEST_CASE("beta agrees with the composition oracle up to 512") {
    const auto dp = beta_table(512);
    for (std::uint32_t d = 1; d <= 512; ++d)
        CHECK(mhl::beta_of(std::uint64_t{d}) == dp[d]);
}

TEST_CASE("beta(d) > n iff alpha(d+n) > n") {
    for (std::uint64_t d = 1; d <= 1024; ++d)
        for (std::uint64_t n = 1; n <= 8; ++n)
            CHECK((mhl::beta_of(d) > n) ==
                  mhl::beta_exceeds(BitNat::from_u64(d), n));
}

TEST_CASE("beta_exceeds spot values") {
    CHECK(mhl::beta_exceeds(BitNat::from_u64(1014), 9));  // alpha(1023) = 10
    CHECK_FALSE(mhl::beta_exceeds(BitNat::from_u64(3), 1));
    BitNat d = BitNat::pow2(35);
    d.sub_u64(35);
    CHECK(mhl::beta_exceeds(d, 33));
}

TEST_CASE("degree formulas") {
    CHECK(mhl::zk_degree(2, 1).to_u64() == 3);
    CHECK(mhl::zk_degree(3, 2).to_u64() == 14);
    BitNat big = BitNat::pow2(35);
    big.sub_u64(35);
    CHECK(mhl::zk_degree(33, 29) == big);
    CHECK_THROWS_AS(mhl::zk_degree(3, 3), mhl::InvalidArgs);

    CHECK(mhl::d1_of(3, 2).to_u64() == 6);
    CHECK(mhl::d1_of(2, 1).to_u64() == 1);
    for (std::uint64_t n = 2; n <= 20; ++n)
        for (std::uint64_t k = 1; k < n; ++k)
            CHECK(mhl::identity_check(n, k));
}

TEST_CASE("nm4 family scan certifies the counterexample rows") {
    const auto records = mhl::scan_family_nm4(5, 8);
    REQUIRE(records.size() == 4);
    CHECK(records[0].n == 33);
    CHECK(records[0].k == 29);
    CHECK(records[0].alpha_d_plus_n == 34);
    CHECK(records[0].beta_exceeds_n);
    for (const auto& rec : records)
        CHECK(rec.beta_exceeds_n);

    const auto r4 = mhl::scan_family_nm4(4, 4);
    REQUIRE(r4.size() == 1);
    CHECK(r4[0].n == 17);
    CHECK(r4[0].alpha_d_plus_n == 17);  // r+n-4 = n exactly at r = 4
    CHECK_FALSE(r4[0].beta_exceeds_n);

    const auto r6 = mhl::scan_family_nm4(6, 6);
    CHECK(r6[0].n == 65);
    CHECK(r6[0].alpha_d_plus_n == 67);
    CHECK(r6[0].beta_exceeds_n);

    CHECK_THROWS_AS(mhl::scan_family_nm4(1, 4), mhl::InvalidArgs);
    CHECK_THROWS_AS(mhl::scan_family_nm4(5, 4), mhl::InvalidArgs);
}

TEST_CASE("closed-form identity for the nm4 degrees") {
    // zk_degree(2^r + 1, 2^r - 3) + (2^r + 1) == 2^{r + 2^r - 2} - 2.
    for (std::uint32_t r = 2; r <= 16; ++r) {
        const std::uint64_t n = (1ull << r) + 1;
        BitNat lhs = mhl::zk_degree(n, n - 4);
        lhs.add_u64(n);
        BitNat rhs = BitNat::pow2(r + n - 3);
        rhs.sub_u64(2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("nm3 family records") {
    const auto n9 = mhl::check_family_nm3(9);
    CHECK(n9.d.to_u64() == 1014);
    CHECK(n9.alpha_d_plus_n == 10);
    CHECK(*n9.kameko_condition_holds);
    CHECK(n9.beta_exceeds_n);

    const auto n8 = mhl::check_family_nm3(8);
    CHECK_FALSE(*n8.kameko_condition_holds);  // alpha(6) = 2

    const auto n13 = mhl::check_family_nm3(13);
    CHECK(n13.d.to_u64() == 24562);
    CHECK(n13.alpha_d_plus_n == 14);
    CHECK(n13.beta_exceeds_n);

    CHECK_THROWS_AS(mhl::check_family_nm3(3), mhl::InvalidArgs);
}
