#include "mhl/monomial.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace mhl {

namespace {

constexpr std::uint32_t kMaxVars = 32;

void check_n(std::uint32_t n) {
    if (n == 0 || n > kMaxVars)
        throw InvalidArgs("number of variables must be in [1, " +
                          std::to_string(kMaxVars) + "], got " + std::to_string(n));
}

void check_monomial(const Monomial& m) {
    check_n(m.n);
    if (m.yexp.size() != m.n)
        throw InvalidArgs("yexp length " + std::to_string(m.yexp.size()) +
                          " does not match n = " + std::to_string(m.n));
    if (m.n < 64 && (m.xmask >> m.n) != 0)
        throw InvalidArgs("xmask has bits above variable " + std::to_string(m.n));
}

}  // namespace

Monomial unit_monomial(std::uint32_t n) {
    check_n(n);
    return Monomial{n, 0, std::vector<std::uint32_t>(n, 0)};
}

std::uint64_t degree(const Monomial& m) {
    check_monomial(m);
    std::uint64_t d = static_cast<std::uint64_t>(std::popcount(m.xmask));
    for (std::uint32_t e : m.yexp)
        d += 2ull * e;
    return d;
}

WeightProfile weight_profile(const Monomial& m) {
    check_monomial(m);
    WeightProfile p;
    p.alpha.resize(m.n, 0);
    for (std::uint32_t i = 0; i < m.n; ++i) {
        const std::uint64_t v = ((m.xmask >> i) & 1) + 2ull * m.yexp[i];
        p.alpha[i] = static_cast<std::uint32_t>(std::popcount(v));
        for (std::uint64_t t = v; t;) {
            const int j = std::countr_zero(t);
            if (p.omega.size() <= static_cast<std::size_t>(j))
                p.omega.resize(static_cast<std::size_t>(j) + 1, 0);
            ++p.omega[static_cast<std::size_t>(j)];
            t &= t - 1;
        }
    }
    return p;
}

std::optional<Monomial> multiply(const Monomial& a, const Monomial& b) {
    check_monomial(a);
    check_monomial(b);
    if (a.n != b.n)
        throw ArityMismatch("multiplying monomials in " + std::to_string(a.n) +
                            " and " + std::to_string(b.n) + " variables");
    if (a.xmask & b.xmask)
        return std::nullopt;
    Monomial out{a.n, a.xmask | b.xmask, a.yexp};
    for (std::uint32_t i = 0; i < a.n; ++i)
        out.yexp[i] += b.yexp[i];
    return out;
}

bool canonical_less(const Monomial& a, const Monomial& b) {
    const int pa = std::popcount(a.xmask), pb = std::popcount(b.xmask);
    if (pa != pb)
        return pa < pb;
    if (a.xmask != b.xmask)
        return a.xmask < b.xmask;
    return std::lexicographical_compare(a.yexp.begin(), a.yexp.end(), b.yexp.begin(),
                                        b.yexp.end());
}

std::string to_string(const Monomial& m) {
    const bool has_x = m.xmask != 0;
    bool has_y = false;
    for (std::uint32_t e : m.yexp)
        if (e)
            has_y = true;
    if (!has_x && !has_y)
        return "1";
    std::ostringstream os;
    if (has_x) {
        os << "x{";
        bool first = true;
        for (std::uint32_t i = 0; i < m.n; ++i)
            if ((m.xmask >> i) & 1) {
                if (!first)
                    os << ",";
                os << (i + 1);
                first = false;
            }
        os << "}";
    }
    if (has_y) {
        if (has_x)
            os << " ";
        os << "y[";
        for (std::uint32_t i = 0; i < m.n; ++i) {
            if (i)
                os << ",";
            os << m.yexp[i];
        }
        os << "]";
    }
    return os.str();
}

std::vector<std::uint64_t> subset_masks(std::uint32_t n, std::uint32_t a) {
    check_n(n);
    if (a > n)
        throw InvalidArgs("subset size " + std::to_string(a) + " exceeds n = " +
                          std::to_string(n));
    if (a == 0)
        return {0};
    std::vector<std::uint64_t> out;
    const std::uint64_t limit = 1ull << n;
    std::uint64_t v = (1ull << a) - 1;
    while (v < limit) {
        out.push_back(v);
        const std::uint64_t c = v & (~v + 1), r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    return out;
}

namespace {

// Exponent vectors of length n summing to b, lexicographically ascending.
void for_each_composition(std::uint32_t n, std::uint64_t b,
                          const std::function<void(const std::vector<std::uint32_t>&)>& emit) {
    std::vector<std::uint32_t> cur(n, 0);
    // Iterative descent: position i takes values 0..remaining, last takes rest.
    std::function<void(std::uint32_t, std::uint64_t)> rec = [&](std::uint32_t i,
                                                                std::uint64_t rem) {
        if (i + 1 == n) {
            cur[i] = static_cast<std::uint32_t>(rem);
            emit(cur);
            return;
        }
        for (std::uint64_t v = 0; v <= rem; ++v) {
            cur[i] = static_cast<std::uint32_t>(v);
            rec(i + 1, rem - v);
        }
    };
    if (n == 0) {
        if (b == 0)
            emit(cur);
        return;
    }
    rec(0, b);
}

}  // namespace

std::vector<Monomial> enumerate_component(std::uint32_t n, std::uint32_t a, std::uint64_t b) {
    check_n(n);
    if (a > n)
        throw InvalidArgs("exterior degree " + std::to_string(a) + " exceeds n = " +
                          std::to_string(n));
    std::vector<Monomial> out;
    for (std::uint64_t mask : subset_masks(n, a))
        for_each_composition(n, b, [&](const std::vector<std::uint32_t>& e) {
            out.push_back(Monomial{n, mask, e});
        });
    return out;
}

std::optional<std::size_t> DegreeBasis::index_of(const Monomial& m) const {
    auto it = std::lower_bound(items.begin(), items.end(), m, canonical_less);
    if (it == items.end() || !(*it == m))
        return std::nullopt;
    return static_cast<std::size_t>(it - items.begin());
}

const DegreeBasis::Block* DegreeBasis::block_of_exterior(std::uint32_t a) const {
    for (const Block& blk : components)
        if (blk.a == a)
            return &blk;
    return nullptr;
}

DegreeBasis enumerate_degree(std::uint32_t n, std::uint64_t d) {
    check_n(n);
    DegreeBasis basis;
    basis.n = n;
    basis.d = d;
    const std::uint32_t amax = static_cast<std::uint32_t>(std::min<std::uint64_t>(n, d));
    for (std::uint32_t a = d % 2; a <= amax; a += 2) {
        std::vector<Monomial> block = enumerate_component(n, a, (d - a) / 2);
        basis.components.push_back({a, basis.items.size(), block.size()});
        basis.items.insert(basis.items.end(), std::make_move_iterator(block.begin()),
                           std::make_move_iterator(block.end()));
    }
    return basis;
}

DegreeBasis component_basis(std::uint32_t n, std::uint32_t a, std::uint64_t b) {
    DegreeBasis basis;
    basis.n = n;
    basis.d = a + 2 * b;
    basis.items = enumerate_component(n, a, b);
    basis.components.push_back({a, 0, basis.items.size()});
    return basis;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > static_cast<unsigned __int128>(UINT64_MAX))
            return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t component_count_saturating(std::uint32_t n, std::uint32_t a, std::uint64_t b) {
    const std::uint64_t xs = binomial_saturating(n, a);
    const std::uint64_t ys = binomial_saturating(b + n - 1, n - 1);
    const unsigned __int128 prod = static_cast<unsigned __int128>(xs) * ys;
    return prod > static_cast<unsigned __int128>(UINT64_MAX)
               ? UINT64_MAX
               : static_cast<std::uint64_t>(prod);
}

std::uint64_t degree_count_saturating(std::uint32_t n, std::uint64_t d) {
    unsigned __int128 total = 0;
    const std::uint32_t amax = static_cast<std::uint32_t>(std::min<std::uint64_t>(n, d));
    for (std::uint32_t a = d % 2; a <= amax; a += 2) {
        total += component_count_saturating(n, a, (d - a) / 2);
        if (total > static_cast<unsigned __int128>(UINT64_MAX))
            return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(total);
}

}  // namespace mhl
