#include "mhl/arithmetic.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace mhl {

void BitNat::normalize() {
    while (!w_.empty() && w_.back() == 0)
        w_.pop_back();
}

BitNat BitNat::from_u64(std::uint64_t v) {
    BitNat x;
    if (v)
        x.w_.push_back(v);
    return x;
}

BitNat BitNat::pow2(std::uint64_t e) {
    BitNat x;
    x.w_.assign(e / 64 + 1, 0);
    x.w_.back() = 1ull << (e % 64);
    return x;
}

std::uint64_t BitNat::bit_length() const {
    if (w_.empty())
        return 0;
    return 64 * (w_.size() - 1) +
           (64 - static_cast<std::uint64_t>(std::countl_zero(w_.back())));
}

std::uint64_t BitNat::popcount() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : w_)
        c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

bool BitNat::bit(std::uint64_t i) const {
    const std::size_t wi = i / 64;
    return wi < w_.size() && ((w_[wi] >> (i % 64)) & 1);
}

BitNat& BitNat::add(const BitNat& o) {
    if (o.w_.size() > w_.size())
        w_.resize(o.w_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        const std::uint64_t rhs = i < o.w_.size() ? o.w_[i] : 0;
        const std::uint64_t sum = w_[i] + rhs;
        const std::uint64_t c1 = sum < w_[i];
        w_[i] = sum + carry;
        carry = c1 + (w_[i] < sum);
        if (rhs == 0 && carry == 0 && i >= o.w_.size())
            break;
    }
    if (carry)
        w_.push_back(carry);
    return *this;
}

BitNat& BitNat::add_u64(std::uint64_t v) { return add(from_u64(v)); }

BitNat& BitNat::sub(const BitNat& o) {
    if (cmp(*this, o) < 0)
        throw InvalidArgs("BitNat subtraction would go negative");
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        const std::uint64_t rhs = i < o.w_.size() ? o.w_[i] : 0;
        const std::uint64_t d1 = w_[i] - rhs;
        const std::uint64_t b1 = d1 > w_[i];
        const std::uint64_t d2 = d1 - borrow;
        borrow = b1 + (d2 > d1);
        w_[i] = d2;
    }
    normalize();
    return *this;
}

BitNat& BitNat::sub_u64(std::uint64_t v) { return sub(from_u64(v)); }

BitNat& BitNat::shl(std::uint64_t bits) {
    if (w_.empty() || bits == 0)
        return *this;
    const std::size_t words = bits / 64;
    const std::uint32_t rem = bits % 64;
    if (rem) {
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            const std::uint64_t nw = (w_[i] << rem) | carry;
            carry = w_[i] >> (64 - rem);
            w_[i] = nw;
        }
        if (carry)
            w_.push_back(carry);
    }
    w_.insert(w_.begin(), words, 0);
    return *this;
}

BitNat& BitNat::mul_u64(std::uint64_t v) {
    if (v == 0) {
        w_.clear();
        return *this;
    }
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        const unsigned __int128 p =
            static_cast<unsigned __int128>(w_[i]) * v + carry;
        w_[i] = static_cast<std::uint64_t>(p);
        carry = static_cast<std::uint64_t>(p >> 64);
    }
    if (carry)
        w_.push_back(carry);
    return *this;
}

int BitNat::cmp(const BitNat& a, const BitNat& b) {
    if (a.w_.size() != b.w_.size())
        return a.w_.size() < b.w_.size() ? -1 : 1;
    for (std::size_t i = a.w_.size(); i-- > 0;)
        if (a.w_[i] != b.w_[i])
            return a.w_[i] < b.w_[i] ? -1 : 1;
    return 0;
}

std::uint64_t BitNat::to_u64() const {
    if (w_.size() > 1)
        throw InvalidArgs("BitNat does not fit in 64 bits");
    return w_.empty() ? 0 : w_[0];
}

namespace {
constexpr std::uint64_t kDecChunk = 1000000000000000000ull;  // 10^18
constexpr int kDecDigits = 18;
}  // namespace

std::string BitNat::to_decimal() const {
    if (w_.empty())
        return "0";
    std::vector<std::uint64_t> cur = w_;
    std::vector<std::uint64_t> chunks;
    while (!cur.empty()) {
        // Long division of the word vector by 10^18.
        unsigned __int128 rem = 0;
        for (std::size_t i = cur.size(); i-- > 0;) {
            rem = (rem << 64) | cur[i];
            cur[i] = static_cast<std::uint64_t>(rem / kDecChunk);
            rem %= kDecChunk;
        }
        chunks.push_back(static_cast<std::uint64_t>(rem));
        while (!cur.empty() && cur.back() == 0)
            cur.pop_back();
    }
    std::string out = std::to_string(chunks.back());
    for (std::size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        out += std::string(kDecDigits - part.size(), '0') + part;
    }
    return out;
}

BitNat BitNat::from_decimal(std::string_view text) {
    if (text.empty())
        throw FormatError("empty decimal string");
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw FormatError("bad decimal digit '" + std::string(1, c) + "'");
    BitNat x;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t take = std::min<std::size_t>(kDecDigits, text.size() - pos);
        std::uint64_t chunk = 0, scale = 1;
        for (std::size_t i = 0; i < take; ++i) {
            chunk = chunk * 10 + static_cast<std::uint64_t>(text[pos + i] - '0');
            scale *= 10;
        }
        x.mul_u64(scale).add_u64(chunk);
        pos += take;
    }
    return x;
}

std::string BitNat::pow2_shorthand() const {
    if (is_zero())
        return "";
    const std::uint64_t L = bit_length();
    if (popcount() == 1)
        return "2^" + std::to_string(L - 1);
    BitNat gap = pow2(L);
    gap.sub(*this);
    // Worth abbreviating only when the gap is tiny next to the value.
    if (2 * gap.bit_length() <= L)
        return "2^" + std::to_string(L) + " - " + gap.to_decimal();
    return "";
}

std::uint64_t alpha_of(const BitNat& t) { return t.popcount(); }

std::uint64_t alpha_of(std::uint64_t t) {
    return static_cast<std::uint64_t>(std::popcount(t));
}

std::uint64_t beta_of(const BitNat& d) {
    if (d.is_zero())
        throw InvalidArgs("beta is defined for d >= 1");
    BitNat t = d;
    for (std::uint64_t s = 1;; ++s) {
        t.add_u64(1);  // t = d + s
        if (alpha_of(t) <= s)
            return s;
    }
}

std::uint64_t beta_of(std::uint64_t d) { return beta_of(BitNat::from_u64(d)); }

bool beta_exceeds(const BitNat& d, std::uint64_t n) {
    BitNat t = d;
    t.add_u64(n);
    return alpha_of(t) > n;
}

BitNat zk_degree(std::uint64_t n, std::uint64_t k) {
    if (k < 1 || k >= n)
        throw InvalidArgs("zk_degree needs 1 <= k < n");
    BitNat d = BitNat::pow2(k + 1);
    d.sub_u64(2);
    d.mul_u64(n - 1);
    d.add_u64(k);
    return d;
}

BitNat d1_of(std::uint64_t n, std::uint64_t k) {
    if (k < 1 || k >= n)
        throw InvalidArgs("d1_of needs 1 <= k < n");
    BitNat d1 = BitNat::pow2(k);
    d1.sub_u64(1);
    d1.mul_u64(n - 1);
    return d1;
}

bool identity_check(std::uint64_t n, std::uint64_t k) {
    BitNat rhs = d1_of(n, k);
    rhs.shl(1);
    rhs.add_u64(k);
    return zk_degree(n, k) == rhs;
}

std::vector<FamilyRecord> scan_family_nm4(std::uint32_t rmin, std::uint32_t rmax) {
    if (rmin < 2)
        throw InvalidArgs("scan_family_nm4 needs rmin >= 2 so that k = n-4 >= 1");
    if (rmax < rmin)
        throw InvalidArgs("scan_family_nm4 needs rmin <= rmax");
    std::vector<FamilyRecord> out;
    for (std::uint32_t r = rmin; r <= rmax; ++r) {
        const std::uint64_t n = (1ull << r) + 1;
        const std::uint64_t k = n - 4;
        FamilyRecord rec;
        rec.family = "nm4";
        rec.r = r;
        rec.n = n;
        rec.k = k;
        rec.d = zk_degree(n, k);
        BitNat dn = rec.d;
        dn.add_u64(n);
        // Two independent routes to d + n, compared before trusting popcount.
        BitNat closed = BitNat::pow2(r + n - 3);
        closed.sub_u64(2);
        if (!(dn == closed))
            throw std::logic_error("nm4 family: d + n deviates from 2^{r+n-3} - 2 at r = " +
                                   std::to_string(r));
        rec.alpha_d_plus_n = alpha_of(dn);
        rec.beta_exceeds_n = rec.alpha_d_plus_n > n;
        out.push_back(std::move(rec));
    }
    return out;
}

FamilyRecord check_family_nm3(std::uint64_t n) {
    if (n < 4)
        throw InvalidArgs("check_family_nm3 needs n >= 4 so that k = n-3 >= 1");
    FamilyRecord rec;
    rec.family = "nm3";
    rec.n = n;
    rec.k = n - 3;
    rec.d = zk_degree(n, rec.k);
    BitNat dn = rec.d;
    dn.add_u64(n);
    rec.alpha_d_plus_n = alpha_of(dn);
    rec.beta_exceeds_n = rec.alpha_d_plus_n > n;
    rec.kameko_condition_holds = alpha_of(n - 2) >= 3;
    return rec;
}

}  // namespace mhl
