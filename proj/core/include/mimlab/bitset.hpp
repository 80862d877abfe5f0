#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace mimlab {

/// Dynamic bit vector over a fixed universe {0..universe-1}.
///
/// Used for adjacency rows, vertex sets and edge-index sets. All binary
/// operations require both operands to share the same universe size.
class Bitset {
public:
    using Word = std::uint64_t;
    static constexpr int kWordBits = 64;

    Bitset() = default;
    explicit Bitset(int universe)
        : universe_(universe), words_(static_cast<std::size_t>((universe + kWordBits - 1) / kWordBits), 0) {}
    Bitset(int universe, std::initializer_list<int> members) : Bitset(universe) {
        for (int m : members) set(m);
    }

    static Bitset full(int universe) {
        Bitset b(universe);
        for (auto& w : b.words_) w = ~Word{0};
        b.trim();
        return b;
    }

    static Bitset from_mask(int universe, std::uint64_t mask) {
        Bitset b(universe);
        if (!b.words_.empty()) b.words_[0] = mask;
        b.trim();
        return b;
    }

    int universe() const { return universe_; }

    bool test(int i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(int i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(int i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    void clear() {
        for (auto& w : words_) w = 0;
    }

    int count() const {
        int c = 0;
        for (Word w : words_) c += std::popcount(w);
        return c;
    }
    bool none() const {
        for (Word w : words_)
            if (w) return false;
        return true;
    }
    bool any() const { return !none(); }

    /// Lowest member, or -1 when empty.
    int first() const { return next(0); }

    /// Lowest member >= from, or -1.
    int next(int from) const {
        if (from >= universe_) return -1;
        std::size_t wi = static_cast<std::size_t>(from / kWordBits);
        Word w = words_[wi] & (~Word{0} << (from % kWordBits));
        while (true) {
            if (w) return static_cast<int>(wi) * kWordBits + std::countr_zero(w);
            if (++wi >= words_.size()) return -1;
            w = words_[wi];
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            Word w = words_[wi];
            while (w) {
                fn(static_cast<int>(wi) * kWordBits + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

    /// Low 64 members packed into a word; meaningful when universe <= 64.
    std::uint64_t mask() const { return words_.empty() ? 0 : words_[0]; }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    /// Set difference.
    Bitset& operator-=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    Bitset complement() const {
        Bitset b(*this);
        for (auto& w : b.words_) w = ~w;
        b.trim();
        return b;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

    /// Orders sets by their sorted member lists (lexicographic).
    friend bool lex_less(const Bitset& a, const Bitset& b) {
        int x = a.first(), y = b.first();
        while (x >= 0 && y >= 0) {
            if (x != y) return x < y;
            x = a.next(x + 1);
            y = b.next(y + 1);
        }
        return x < 0 && y >= 0;
    }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        for (Word w : words_) {
            h ^= w;
            h *= 1099511628211ULL;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }

    const std::vector<Word>& words() const { return words_; }

private:
    void trim() {
        if (universe_ % kWordBits != 0 && !words_.empty())
            words_.back() &= (Word{1} << (universe_ % kWordBits)) - 1;
    }

    int universe_ = 0;
    std::vector<Word> words_;
};

/// Size-then-lexicographic order used for canonical listings.
inline bool shortlex_less(const Bitset& a, const Bitset& b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return lex_less(a, b);
}

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace mimlab
