#pragma once

#include <functional>
#include <vector>

#include "vwx/arith.hpp"

namespace vwx {

// Dense table up to 2^27 (16 MiB of bytes); power-residue test beyond.
inline constexpr u64 kDenseTableCeiling = u64{1} << 27;

// The unique multiplicative subgroup of F_p^x of index n. Immutable after
// construction; membership and enumeration are read-only.
class Subgroup {
public:
    enum class Membership { kDenseTable, kPowerTest };

    Subgroup(PrimeContext ctx, u64 index) : ctx_(std::move(ctx)), n_(index) {
        const u64 p = ctx_.p;
        if (n_ < 1) throw std::domain_error("Subgroup: index must be >= 1");
        if ((p - 1) % n_ != 0)
            throw std::invalid_argument("Subgroup: index must divide p-1");
        m_ = (p - 1) / n_;
        gen_ = pow_mod(ctx_.g, n_, p);
        strategy_ = p <= kDenseTableCeiling ? Membership::kDenseTable
                                           : Membership::kPowerTest;
        if (strategy_ == Membership::kDenseTable) {
            table_.assign(p, 0);
            u64 h = 1;
            for (u64 k = 0; k < m_; ++k) {
                table_[h] = 1;
                h = mul_mod(h, gen_, p);
            }
        }
    }

    const PrimeContext& ctx() const { return ctx_; }
    u64 p() const { return ctx_.p; }
    u64 index() const { return n_; }
    u64 order() const { return m_; }
    u64 gen() const { return gen_; }
    Membership strategy() const { return strategy_; }

    bool is_member(u64 x) const {
        if (strategy_ == Membership::kDenseTable) return table_[x] != 0;
        return x != 0 && pow_mod(x, m_, ctx_.p) == 1;
    }

    // gen^0, gen^1, ..., gen^(m-1) by repeated multiplication.
    template <typename Fn>
    void for_each_element(Fn&& fn) const {
        u64 h = 1;
        for (u64 k = 0; k < m_; ++k) {
            fn(h);
            h = mul_mod(h, gen_, ctx_.p);
        }
    }

    std::vector<u64> enumerate() const {
        std::vector<u64> out;
        out.reserve(m_);
        for_each_element([&](u64 h) { out.push_back(h); });
        return out;
    }

private:
    PrimeContext ctx_;
    u64 n_ = 0;         // index
    u64 m_ = 0;         // order = (p-1)/n
    u64 gen_ = 0;       // g^n mod p, order exactly m
    Membership strategy_;
    std::vector<std::uint8_t> table_;  // dense indicator, empty for kPowerTest
};

inline Subgroup build_subgroup(const PrimeContext& ctx, u64 index) {
    return Subgroup(ctx, index);
}

}  // namespace vwx
