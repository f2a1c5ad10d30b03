#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mhl/arithmetic.hpp"
#include "mhl/toplayer.hpp"

using mhl::Monomial;

namespace {

Monomial mono(std::uint32_t n, std::uint64_t xmask, std::vector<std::uint32_t> yexp) {
    return Monomial{n, xmask, std::move(yexp)};
}

}  // namespace

TEST_CASE("monotone injections in lexicographic order") {
    const auto all32 = mhl::mono_injections(3, 2);
    REQUIRE(all32.size() == 3);
    CHECK(all32[0].image == std::vector<std::uint32_t>{1, 2});
    CHECK(all32[1].image == std::vector<std::uint32_t>{1, 3});
    CHECK(all32[2].image == std::vector<std::uint32_t>{2, 3});

    const auto full = mhl::mono_injections(4, 4);
    REQUIRE(full.size() == 1);
    CHECK(full[0].image == std::vector<std::uint32_t>{1, 2, 3, 4});

    CHECK(mhl::mono_injections(5, 2).size() == 10);
    CHECK_THROWS_AS(mhl::mono_injections(3, 0), mhl::InvalidArgs);
    CHECK_THROWS_AS(mhl::mono_injections(3, 4), mhl::InvalidArgs);

    // (4,2) in lex order on tuples, not mask order: {1,4} before {2,3}.
    const auto all42 = mhl::mono_injections(4, 2);
    CHECK(all42[2].image == std::vector<std::uint32_t>{1, 4});
    CHECK(all42[3].image == std::vector<std::uint32_t>{2, 3});
}

TEST_CASE("the distinguished monomial and its degree") {
    CHECK(mhl::zk(2, 1) == mono(2, 0b01, {0, 1}));
    CHECK(mhl::zk(3, 2) == mono(3, 0b011, {1, 2, 3}));
    CHECK(mhl::degree(mhl::zk(3, 2)) == 14);

    const mhl::WeightProfile p = mhl::weight_profile(mhl::zk(3, 2));
    CHECK(p.alpha == std::vector<std::uint32_t>{2, 2, 2});
    CHECK(p.omega == std::vector<std::uint32_t>{2, 2, 2});

    CHECK_THROWS_AS(mhl::zk(3, 3), mhl::InvalidArgs);
    CHECK_THROWS_AS(mhl::zk(3, 0), mhl::InvalidArgs);

    // The monomial degree and the closed-form degree agree.
    for (std::uint32_t n = 2; n <= 6; ++n)
        for (std::uint32_t k = 1; k < n; ++k)
            CHECK(mhl::degree(mhl::zk(n, k)) == mhl::zk_degree(n, k).to_u64());
}

TEST_CASE("translates relabel the distinguished monomial") {
    const auto sigmas = mhl::mono_injections(3, 2);
    CHECK(mhl::translate_zk(3, 2, sigmas[0]) == mhl::zk(3, 2));
    // sigma with image {1,3}: y2 takes the outside exponent 2^k - 1 = 3.
    CHECK(mhl::translate_zk(3, 2, sigmas[1]) == mono(3, 0b101, {1, 3, 2}));

    for (const auto& sigma : sigmas) {
        const Monomial t = mhl::translate_zk(3, 2, sigma);
        CHECK(mhl::degree(t) == 14);
        const mhl::WeightProfile p = mhl::weight_profile(t);
        CHECK(p.alpha == std::vector<std::uint32_t>{2, 2, 2});
    }
}

TEST_CASE("G subspace of the pure-y part") {
    CHECK(mhl::gn_subspace(2, 1, 2).rank() == 0);

    const mhl::Subspace g214 = mhl::gn_subspace(2, 1, 4);
    CHECK(g214.rank() == 2);
    const mhl::DegreeBasis y4 = mhl::component_basis(2, 0, 2);
    CHECK(g214.contains(mhl::BitVector::unit(3, *y4.index_of(mono(2, 0, {2, 0})))));
    CHECK(g214.contains(mhl::BitVector::unit(3, *y4.index_of(mono(2, 0, {0, 2})))));

    const mhl::Subspace g314 = mhl::gn_subspace(3, 1, 4);
    CHECK(g314.rank() == 3);
    const mhl::DegreeBasis y43 = mhl::component_basis(3, 0, 2);
    for (std::uint32_t i = 0; i < 3; ++i) {
        std::vector<std::uint32_t> sq(3, 0);
        sq[i] = 2;
        CHECK(g314.contains(
            mhl::BitVector::unit(y43.size(), *y43.index_of(mono(3, 0, sq)))));
    }
    // Mixed products y_i y_j have omega_1 = 2 = n - 1 and are not in G.
    CHECK_FALSE(g314.contains(
        mhl::BitVector::unit(y43.size(), *y43.index_of(mono(3, 0, {1, 1, 0})))));

    CHECK_THROWS_AS(mhl::gn_subspace(2, 1, 3), mhl::InvalidArgs);
}

TEST_CASE("context at (2,1), worked in full") {
    const mhl::TopLayerContext ctx = mhl::build_context(2, 1);
    CHECK(ctx.d1 == 1);
    CHECK(ctx.d == 3);
    CHECK(ctx.N == 2);
    CHECK(ctx.quotient_dim == 4);
    CHECK(ctx.gn.rank() == 0);

    // Component order: x1y2, x1y1, x2y2, x2y1.
    REQUIRE(ctx.comp.size() == 4);
    CHECK(ctx.comp.items[0] == mono(2, 0b01, {0, 1}));
    CHECK(ctx.comp.items[1] == mono(2, 0b01, {1, 0}));
    CHECK(ctx.comp.items[2] == mono(2, 0b10, {0, 1}));
    CHECK(ctx.comp.items[3] == mono(2, 0b10, {1, 0}));

    CHECK(ctx.m1 == std::vector<std::size_t>{0, 3});
    CHECK(ctx.m0 == std::vector<std::size_t>{1, 2});

    // theta: translates to unit vectors, M0 monomials to zero.
    CHECK(ctx.theta_cols[0] == mhl::BitVector::unit(2, 0));
    CHECK(ctx.theta_cols[3] == mhl::BitVector::unit(2, 1));
    CHECK(ctx.theta_cols[1].is_zero());
    CHECK(ctx.theta_cols[2].is_zero());

    const mhl::ElementVector x1y1 = mhl::monomial_element(ctx.full, mono(2, 0b01, {1, 0}));
    CHECK(mhl::theta(ctx, x1y1).is_zero());

    CHECK_THROWS_AS(mhl::build_context(3, 3), mhl::InvalidArgs);
}

TEST_CASE("context at (3,1)") {
    const mhl::TopLayerContext ctx = mhl::build_context(3, 1);
    CHECK(ctx.d == 5);
    CHECK(ctx.d1 == 2);
    CHECK(ctx.N == 3);
    CHECK(ctx.quotient_dim == 9);
    CHECK(ctx.m0.size() == 6);

    // theta sends each translate to its unit vector and has parity one there.
    for (std::size_t slot = 0; slot < ctx.N; ++slot) {
        const Monomial t = mhl::translate_zk(3, 1, ctx.sigmas[slot]);
        const mhl::BitVector img =
            mhl::theta(ctx, mhl::monomial_element(ctx.full, t));
        CHECK(img == mhl::BitVector::unit(3, slot));
        CHECK(mhl::epsilon(ctx, img) == 1);
    }

    // An element of the wrong exterior degree dies: x1 x2 x3 y_i sits in
    // Lambda^3.
    const mhl::ElementVector top =
        mhl::monomial_element(ctx.full, mono(3, 0b111, {1, 0, 0}));
    CHECK(mhl::theta(ctx, top).is_zero());
}

TEST_CASE("theta rejects elements of another degree") {
    const mhl::TopLayerContext ctx = mhl::build_context(2, 1);
    const mhl::DegreeBasis other = mhl::enumerate_degree(2, 5);
    CHECK_THROWS_AS(mhl::theta(ctx, mhl::zero_element(other)), mhl::DegreeMismatch);
    CHECK_THROWS_AS(mhl::epsilon(ctx, mhl::BitVector(3)), mhl::LengthMismatch);
}

TEST_CASE("epsilon is the coordinate-sum parity") {
    const mhl::TopLayerContext ctx = mhl::build_context(3, 1);
    mhl::BitVector v(3);
    v.set(0);
    CHECK(mhl::epsilon(ctx, v) == 1);
    v.set(1);
    CHECK(mhl::epsilon(ctx, v) == 0);
    v.set(2);
    CHECK(mhl::epsilon(ctx, v) == 1);
}

TEST_CASE("theta image of the hit generators") {
    const mhl::TopLayerContext c21 = mhl::build_context(2, 1);
    const mhl::Subspace img21 = mhl::theta_hit_image(c21);
    CHECK(img21.rank() == 1);
    CHECK(img21.rows[0] == mhl::BitVector::from_bits("11"));
    CHECK(mhl::subspace_equal(img21, mhl::even_parity_subspace(2)));

    const mhl::TopLayerContext c31 = mhl::build_context(3, 1);
    const mhl::Subspace img31 = mhl::theta_hit_image(c31);
    CHECK(img31.rank() == 2);
    CHECK(mhl::subspace_equal(img31, mhl::even_parity_subspace(3)));
}

TEST_CASE("odd sums of translates are not hit, the full even pair is") {
    const mhl::TopLayerContext c21 = mhl::build_context(2, 1);
    CHECK_FALSE(mhl::odd_parity_nonhit_check(c21, {0}));
    CHECK_FALSE(mhl::odd_parity_nonhit_check(c21, {1}));
    CHECK(mhl::odd_parity_nonhit_check(c21, {0, 1}));  // exactly Q0(x1 x2)
    CHECK_THROWS_AS(mhl::odd_parity_nonhit_check(c21, {}), mhl::InvalidArgs);

    const mhl::TopLayerContext c31 = mhl::build_context(3, 1);
    CHECK_FALSE(mhl::odd_parity_nonhit_check(c31, {0, 1, 2}));
}

TEST_CASE("parity theorem verifier at desk scale") {
    for (auto [n, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {3, 1}, {3, 2}}) {
        const mhl::TopLayerContext ctx = mhl::build_context(n, k);
        mhl::Rng rng(0);
        const mhl::VerificationReport rep = mhl::verify_parity_theorem(ctx, rng);
        CHECK(rep.passed);
        CHECK(rep.details["theorem_holds"].get<bool>());
        CHECK(rep.details["image_rank"].get<std::size_t>() == ctx.N - 1);
    }
}

TEST_CASE("q0 edge structure and the explicit witness") {
    const mhl::TopLayerContext c21 = mhl::build_context(2, 1);
    const mhl::VerificationReport rep = mhl::verify_q0_edge_structure(c21);
    CHECK(rep.passed);
    CHECK(rep.details["witness_found"].get<bool>());
    // The unique source x1 x2 realizes the edge between the two translates.
    CHECK(rep.details["witness"].get<std::string>() == "x{1,2}");

    const mhl::TopLayerContext c31 = mhl::build_context(3, 1);
    const mhl::VerificationReport rep31 = mhl::verify_q0_edge_structure(c31);
    CHECK(rep31.passed);
    CHECK(rep31.details["witness_found"].get<bool>());
}

TEST_CASE("reduced powers die under theta") {
    for (auto [n, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {3, 2}}) {
        const mhl::TopLayerContext ctx = mhl::build_context(n, k);
        const mhl::VerificationReport rep = mhl::verify_reduced_power_vanishing(ctx);
        CHECK(rep.passed);
        CHECK(rep.details["nonzero_images"].get<std::size_t>() == 0);
    }
}

TEST_CASE("johnson orbit closure") {
    const mhl::VerificationReport r21 = mhl::johnson_orbit_check(2, 1);
    CHECK(r21.passed);
    CHECK(r21.details["edges"].get<std::size_t>() == 1);

    const mhl::VerificationReport r42 = mhl::johnson_orbit_check(4, 2);
    CHECK(r42.passed);
    CHECK(r42.details["vertices"].get<std::size_t>() == 6);
    CHECK(r42.details["edges"].get<std::size_t>() == 12);

    CHECK(mhl::johnson_orbit_check(5, 2).passed);
    CHECK_THROWS_AS(mhl::johnson_orbit_check(3, 3), mhl::InvalidArgs);
}

TEST_CASE("theta commutes with permuting the variables") {
    const mhl::TopLayerContext c21 = mhl::build_context(2, 1);
    // Explicit swap: theta(x2 y1) must be the swap of theta(x1 y2).
    const mhl::BitVector a =
        mhl::theta(c21, mhl::monomial_element(c21.full, mono(2, 0b01, {0, 1})));
    const mhl::BitVector b =
        mhl::theta(c21, mhl::monomial_element(c21.full, mono(2, 0b10, {1, 0})));
    CHECK(a == mhl::BitVector::unit(2, 0));
    CHECK(b == mhl::BitVector::unit(2, 1));

    const mhl::TopLayerContext c32 = mhl::build_context(3, 2);
    mhl::Rng rng(0);
    const mhl::VerificationReport rep = mhl::s_n_equivariance_check(c32, 100, rng);
    CHECK(rep.passed);
    CHECK(rep.details["trials"].get<std::size_t>() == 100);
}

TEST_CASE("theta agrees with an independent decomposition route") {
    // The rows {G, unit(M0), unit(M1)} are an independent spanning set of
    // the component, so the subset expressing any vector is unique and its
    // translate part must reproduce theta.
    const mhl::TopLayerContext ctx = mhl::build_context(3, 2);
    std::vector<mhl::BitVector> rows = ctx.gn.rows;
    for (std::size_t j : ctx.m0)
        rows.push_back(mhl::BitVector::unit(ctx.comp.size(), j));
    const std::size_t translate_base = rows.size();
    for (std::size_t idx : ctx.m1)
        rows.push_back(mhl::BitVector::unit(ctx.comp.size(), idx));

    mhl::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        mhl::ElementVector u = mhl::zero_element(ctx.full);
        for (std::size_t j = 0; j < ctx.comp.size(); ++j)
            if (rng.next() & 1)
                u.coeffs.set(ctx.comp_offset + j);
        const auto c = mhl::solve_preimage(
            rows, u.coeffs.slice(ctx.comp_offset, ctx.comp.size()));
        REQUIRE(c.has_value());
        mhl::BitVector expected(ctx.N);
        for (std::size_t slot = 0; slot < ctx.N; ++slot)
            if (c->get(translate_base + slot))
                expected.set(slot);
        CHECK(mhl::theta(ctx, u) == expected);
    }
}

TEST_CASE("reports serialize with stable keys") {
    const mhl::VerificationReport rep = mhl::johnson_orbit_check(3, 1);
    const nlohmann::json j = rep.to_json();
    CHECK(j.contains("check"));
    CHECK(j.contains("passed"));
    CHECK(j.contains("details"));
    CHECK(j.dump() == rep.to_json().dump());
}
