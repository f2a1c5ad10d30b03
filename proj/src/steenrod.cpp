#include "mhl/steenrod.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace mhl {

ElementVector zero_element(const DegreeBasis& basis) {
    return ElementVector{&basis, BitVector(basis.size())};
}

ElementVector monomial_element(const DegreeBasis& basis, const Monomial& m) {
    ElementVector u = zero_element(basis);
    auto idx = basis.index_of(m);
    if (!idx)
        throw DegreeMismatch("monomial " + to_string(m) + " is not in the basis");
    u.coeffs.set(*idx);
    return u;
}

std::vector<Monomial> q0_terms(const Monomial& m) {
    std::vector<Monomial> out;
    std::uint64_t mask = m.xmask;
    while (mask) {
        const int i = std::countr_zero(mask);
        mask &= mask - 1;
        Monomial t = m;
        t.xmask &= ~(1ull << i);
        ++t.yexp[static_cast<std::size_t>(i)];
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Monomial> pa_terms(std::uint64_t a, const Monomial& m) {
    std::vector<Monomial> out;
    if (a == 0) {
        out.push_back(m);
        return out;
    }
    // Remaining y-weight from each position on, for budget pruning.
    std::vector<std::uint64_t> tail(m.n + 1, 0);
    for (std::uint32_t i = m.n; i-- > 0;)
        tail[i] = tail[i + 1] + m.yexp[i];
    std::vector<std::uint32_t> inc(m.n, 0);
    std::function<void(std::uint32_t, std::uint64_t)> rec = [&](std::uint32_t i,
                                                                std::uint64_t rem) {
        if (rem > tail[i])
            return;
        if (i == m.n) {
            Monomial t = m;
            for (std::uint32_t j = 0; j < m.n; ++j)
                t.yexp[j] += inc[j];
            out.push_back(std::move(t));
            return;
        }
        const std::uint64_t e = m.yexp[i];
        for (std::uint64_t c = 0; c <= std::min<std::uint64_t>(e, rem); ++c) {
            if (!binom_mod2(e, c))
                continue;
            inc[i] = static_cast<std::uint32_t>(c);
            rec(i + 1, rem - c);
        }
        inc[i] = 0;
    };
    rec(0, a);
    return out;
}

namespace {

BitVector terms_row(const std::vector<Monomial>& terms, const DegreeBasis& target) {
    BitVector row(target.size());
    for (const Monomial& t : terms) {
        auto idx = target.index_of(t);
        if (!idx)
            throw DegreeMismatch("image term " + to_string(t) +
                                 " is missing from the target basis");
        row.flip(*idx);
    }
    return row;
}

void check_rows_limit(std::uint64_t rows, const Limits& limits) {
    if (rows > limits.max_rows)
        throw ResourceLimit("would generate " + std::to_string(rows) +
                            " rows, limit is " + std::to_string(limits.max_rows));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a + b < a ? UINT64_MAX : a + b;
}

void check_cols_limit(std::uint64_t cols, const Limits& limits) {
    if (cols > limits.max_cols)
        throw ResourceLimit("basis has " + std::to_string(cols) +
                            " columns, limit is " + std::to_string(limits.max_cols));
}

}  // namespace

BitVector q0_row(const Monomial& m, const DegreeBasis& target) {
    return terms_row(q0_terms(m), target);
}

BitVector pa_row(std::uint64_t a, const Monomial& m, const DegreeBasis& target) {
    return terms_row(pa_terms(a, m), target);
}

ElementVector q0(const Monomial& m, const DegreeBasis& target) {
    return ElementVector{&target, q0_row(m, target)};
}

ElementVector pa(std::uint64_t a, const Monomial& m, const DegreeBasis& target) {
    return ElementVector{&target, pa_row(a, m, target)};
}

std::string hit_cache_name(std::uint32_t n, std::uint64_t d) {
    return "hit_n" + std::to_string(n) + "_d" + std::to_string(d) + ".f2s";
}

std::string hit_cache_name(std::uint32_t n, std::uint64_t d, std::uint32_t a) {
    return "hit_n" + std::to_string(n) + "_d" + std::to_string(d) + "_a" +
           std::to_string(a) + ".f2s";
}

Subspace hit_subspace(std::uint32_t n, std::uint64_t d, const Limits& limits,
                      const SubspaceStore* store) {
    const std::uint64_t cols = degree_count_saturating(n, d);
    check_cols_limit(cols, limits);
    if (store) {
        if (auto cached = store->load(hit_cache_name(n, d), cols))
            return *std::move(cached);
    }

    const DegreeBasis target = enumerate_degree(n, d);
    EchelonBuilder builder(target.size());
    if (d >= 1) {
        // Every lower degree has a nonempty basis, so d/2 is already a
        // lower bound on the P-row count; bail before estimating.
        check_rows_limit(d / 2, limits);
        std::uint64_t row_estimate = degree_count_saturating(n, d - 1);
        for (std::uint64_t a = 1; 2 * a <= d; ++a)
            row_estimate = sat_add(row_estimate, degree_count_saturating(n, d - 2 * a));
        check_rows_limit(row_estimate, limits);

        for (const Monomial& m : enumerate_degree(n, d - 1).items)
            if (m.xmask)
                builder.add(q0_row(m, target));
        for (std::uint64_t a = 1; 2 * a <= d; ++a)
            for (const Monomial& m : enumerate_degree(n, d - 2 * a).items)
                builder.add(pa_row(a, m, target));
    }
    Subspace s = std::move(builder).take();
    if (store)
        store->save(hit_cache_name(n, d), s);
    return s;
}

Subspace hit_component_subspace(std::uint32_t n, std::uint64_t d, std::uint32_t a,
                                const Limits& limits, const SubspaceStore* store) {
    if (a > n)
        throw InvalidArgs("exterior degree " + std::to_string(a) + " exceeds n = " +
                          std::to_string(n));
    if ((d % 2) != (a % 2) || d < a)
        throw InvalidArgs("no Lambda^" + std::to_string(a) + " block in degree " +
                          std::to_string(d));
    const std::uint64_t b = (d - a) / 2;
    const std::uint64_t cols = component_count_saturating(n, a, b);
    check_cols_limit(cols, limits);
    if (store) {
        if (auto cached = store->load(hit_cache_name(n, d, a), cols))
            return *std::move(cached);
    }

    const DegreeBasis target = component_basis(n, a, b);
    EchelonBuilder builder(target.size());

    check_rows_limit(b, limits);  // one P-row per power at the very least
    std::uint64_t row_estimate = 0;
    if (a + 1 <= n && b >= 1)
        row_estimate = component_count_saturating(n, a + 1, b - 1);
    for (std::uint64_t p = 1; p <= b; ++p)
        row_estimate = sat_add(row_estimate, component_count_saturating(n, a, b - p));
    check_rows_limit(row_estimate, limits);

    // Q0 rows from the Lambda^{a+1} block one degree down.
    if (a + 1 <= n && b >= 1)
        for (const Monomial& m : enumerate_component(n, a + 1, b - 1))
            builder.add(q0_row(m, target));
    // P^p rows stay inside the Lambda^a block.
    for (std::uint64_t p = 1; p <= b; ++p)
        for (const Monomial& m : enumerate_component(n, a, b - p))
            builder.add(pa_row(p, m, target));

    Subspace s = std::move(builder).take();
    if (store)
        store->save(hit_cache_name(n, d, a), s);
    return s;
}

bool is_hit(std::uint32_t n, std::uint64_t d, const ElementVector& u,
            const Limits& limits, const SubspaceStore* store) {
    if (!u.basis || u.basis->n != n || u.basis->d != d ||
        u.coeffs.size() != u.basis->size())
        throw DegreeMismatch("element does not live in the degree-" +
                             std::to_string(d) + " basis");
    if (u.coeffs.is_zero())
        return true;
    // Locate the exterior blocks carrying support.
    const DegreeBasis::Block* only = nullptr;
    bool single = true;
    for (const DegreeBasis::Block& blk : u.basis->components) {
        bool used = false;
        for (std::size_t j = blk.offset; j < blk.offset + blk.size && !used; ++j)
            used = u.coeffs.get(j);
        if (!used)
            continue;
        if (only)
            single = false;
        only = &blk;
    }
    if (single && only) {
        const Subspace s = hit_component_subspace(n, d, only->a, limits, store);
        return s.contains(u.coeffs.slice(only->offset, only->size));
    }
    const Subspace s = hit_subspace(n, d, limits, store);
    return s.contains(u.coeffs);
}

Subspace y_hit_subspace(std::uint32_t n, std::uint64_t D, const Limits& limits) {
    if (D % 2 != 0)
        throw InvalidArgs("pure-y degrees are even, got " + std::to_string(D));
    const std::uint64_t b = D / 2;
    check_cols_limit(component_count_saturating(n, 0, b), limits);
    const DegreeBasis target = component_basis(n, 0, b);
    EchelonBuilder builder(target.size());
    check_rows_limit(b, limits);
    std::uint64_t row_estimate = 0;
    for (std::uint64_t a = 1; a <= b; ++a)
        row_estimate = sat_add(row_estimate, component_count_saturating(n, 0, b - a));
    check_rows_limit(row_estimate, limits);
    for (std::uint64_t a = 1; a <= b; ++a)
        for (const Monomial& m : enumerate_component(n, 0, b - a))
            builder.add(pa_row(a, m, target));
    return std::move(builder).take();
}

std::uint64_t classical_hit_quotient_dim(std::uint32_t n, std::uint64_t d,
                                         const Limits& limits) {
    if (d > UINT64_MAX / 2)
        throw ResourceLimit("degree " + std::to_string(d) + " would overflow doubling");
    const std::uint64_t ambient = component_count_saturating(n, 0, d);
    check_cols_limit(ambient, limits);
    return ambient - y_hit_subspace(n, 2 * d, limits).rank();
}

}  // namespace mhl
