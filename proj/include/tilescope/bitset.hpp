#pragma once
#include <cstdint>
#include <vector>

namespace tilescope {

// Fixed-width dynamic bitset; drives adjacency rows and neighborhood
// intersections. Width is set at construction and never changes.
class Bitset {
public:
    Bitset() : nbits_(0) {}
    explicit Bitset(int n) : nbits_(n), w_((n + 63) / 64, 0) {}

    int width() const { return nbits_; }

    void set(int i) { w_[i >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }

    void set_all() {
        for (auto& x : w_) x = ~0ULL;
        trim();
    }

    int count() const {
        int c = 0;
        for (auto x : w_) c += __builtin_popcountll(x);
        return c;
    }

    bool any() const {
        for (auto x : w_) if (x) return true;
        return false;
    }

    int lowest() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return (int)(i * 64 + __builtin_ctzll(w_[i]));
        return -1;
    }

    Bitset& operator&=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    friend Bitset operator&(Bitset a, const Bitset& b) { a &= b; return a; }

    bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }

    template <class F>
    void for_each(F f) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t x = w_[i];
            while (x) {
                f((int)(i * 64 + __builtin_ctzll(x)));
                x &= x - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

private:
    int nbits_;
    std::vector<std::uint64_t> w_;

    void trim() {
        int rem = nbits_ & 63;
        if (rem && !w_.empty()) w_.back() &= (1ULL << rem) - 1;
    }
};

} // namespace tilescope
