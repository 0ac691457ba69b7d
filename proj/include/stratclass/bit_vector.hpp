#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace stratclass {

// Fixed-size dense bit set with popcount-based intersection counting.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t size, bool value = false)
        : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
        trim();
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    std::size_t count() const {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    bool any() const {
        for (auto w : words_) {
            if (w) return true;
        }
        return false;
    }

    // |this ∩ other|; sizes must match.
    std::size_t count_and(const BitVector& other) const {
        std::size_t total = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            total += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
        }
        return total;
    }

    BitVector& operator&=(const BitVector& other) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
        return *this;
    }
    BitVector& operator|=(const BitVector& other) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
        return *this;
    }
    BitVector operator~() const {
        BitVector out = *this;
        for (auto& w : out.words_) w = ~w;
        out.trim();
        return out;
    }

    // Calls f(i) for every set bit in increasing order.
    template <class F>
    void for_each_set(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                const int bit = std::countr_zero(w);
                f(k * 64 + static_cast<std::size_t>(bit));
                w &= w - 1;
            }
        }
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

  private:
    void trim() {
        if (size_ % 64 != 0 && !words_.empty()) {
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
        }
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace stratclass
