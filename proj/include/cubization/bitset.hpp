#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cubization {

// Fixed-size packed bitset over a point set. Wall halfspaces and interval
// sets are stored this way so separation tests are word operations.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    void set(std::size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    // Nonempty intersection, with either side optionally complemented.
    // Complements are masked to the valid n bits.
    static bool intersect_any(const Bitset& a, bool ca, const Bitset& b, bool cb) {
        const std::size_t nw = a.w_.size();
        for (std::size_t i = 0; i < nw; ++i) {
            uint64_t wa = ca ? ~a.w_[i] : a.w_[i];
            uint64_t wb = cb ? ~b.w_[i] : b.w_[i];
            uint64_t w = wa & wb;
            if (i + 1 == nw) w &= a.tail_mask();
            if (w) return true;
        }
        return false;
    }

    Bitset operator&(const Bitset& o) const {
        Bitset r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    Bitset operator|(const Bitset& o) const {
        Bitset r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
        return r;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset complement() const {
        Bitset r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        if (!r.w_.empty()) r.w_.back() &= tail_mask();
        return r;
    }
    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }

    std::size_t hash() const {
        uint64_t h = 1469598103934665603ull;
        for (uint64_t w : w_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

private:
    uint64_t tail_mask() const {
        std::size_t r = n_ & 63;
        return r ? ((uint64_t(1) << r) - 1) : ~uint64_t(0);
    }

    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace cubization
