#ifndef MCT_BITSET_HPP
#define MCT_BITSET_HPP

#include <cstdint>
#include <vector>

namespace mct {

/// Fixed-size bitmask over point indices.  Desk scale (n <= ~4096), so a
/// flat word vector is plenty.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), words_((n + 63) / 64, 0) {}

    int size() const { return n_; }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { words_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool any() const {
        for (uint64_t w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool intersects(const Bitset& o) const {
        for (size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }
    bool subset_of(const Bitset& o) const {
        for (size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    Bitset operator&(const Bitset& o) const {
        Bitset r(n_);
        for (size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & o.words_[k];
        return r;
    }
    Bitset operator|(const Bitset& o) const {
        Bitset r(n_);
        for (size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] | o.words_[k];
        return r;
    }
    /// this & ~o
    Bitset minus(const Bitset& o) const {
        Bitset r(n_);
        for (size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & ~o.words_[k];
        return r;
    }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && words_ == o.words_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    /// First set index, or -1.
    int first() const {
        for (size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return int(k * 64 + __builtin_ctzll(words_[k]));
        return -1;
    }
    /// Next set index strictly after i, or -1.
    int next(int i) const {
        ++i;
        if (i >= n_) return -1;
        size_t k = size_t(i) >> 6;
        uint64_t w = words_[k] & (~uint64_t(0) << (i & 63));
        while (true) {
            if (w) return int(k * 64 + __builtin_ctzll(w));
            if (++k >= words_.size()) return -1;
            w = words_[k];
        }
    }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (int i = first(); i >= 0; i = next(i)) out.push_back(i);
        return out;
    }

    const std::vector<uint64_t>& words() const { return words_; }

    /// Order as sorted index sequences ({0} < {0,1} < {1}); a proper prefix
    /// sorts first.  Used for deterministic tie-breaking everywhere.
    static int cmp_lex(const Bitset& a, const Bitset& b) {
        int ia = a.first(), ib = b.first();
        while (ia >= 0 && ib >= 0) {
            if (ia != ib) return ia < ib ? -1 : 1;
            ia = a.next(ia);
            ib = b.next(ib);
        }
        if (ia < 0 && ib < 0) return 0;
        return ia < 0 ? -1 : 1;
    }

    bool operator<(const Bitset& o) const { return cmp_lex(*this, o) < 0; }

private:
    int n_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace mct

#endif
