#pragma once

// Shared plumbing: error types, deadlines, a packed bit vector and the
// block/word kernels the flow engines are built on.

#include <cstdint>
#include <cstddef>
#include <chrono>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>
#include <functional>

namespace groupconn {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceLimitError : std::runtime_error {
    std::uint64_t required_bytes = 0;
    ResourceLimitError(const std::string& what, std::uint64_t required)
        : std::runtime_error(what), required_bytes(required) {}
};

struct TimeoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cooperative deadline; zero seconds means no limit. Search loops poll
// check() at block granularity.
class Deadline {
public:
    Deadline() = default;
    explicit Deadline(double seconds) {
        if (seconds > 0) {
            armed_ = true;
            end_ = clock::now() + std::chrono::duration_cast<clock::duration>(
                                      std::chrono::duration<double>(seconds));
        }
    }
    void check(const char* where) const {
        if (armed_ && clock::now() > end_)
            throw TimeoutError(std::string("timeout in ") + where);
    }
    bool expired() const { return armed_ && clock::now() > end_; }

private:
    using clock = std::chrono::steady_clock;
    bool armed_ = false;
    clock::time_point end_{};
};

inline int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Fork-join over [0, count) split into contiguous chunks. Chunks write to
// disjoint output regions, so results do not depend on the worker count.
inline void parallel_chunks(std::size_t count, int workers,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    if (workers <= 1 || count < 2) {
        fn(0, count);
        return;
    }
    std::size_t nw = std::min<std::size_t>(workers, count);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::size_t chunk = (count + nw - 1) / nw;
    for (std::size_t i = 0; i < nw; ++i) {
        std::size_t lo = i * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

// Packed bit vector. Tail bits past size() are kept zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    std::size_t words() const { return w_.size(); }
    std::uint64_t* data() { return w_.data(); }
    const std::uint64_t* data() const { return w_.data(); }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    // Grow keeping content; new bits are zero.
    void grow(std::size_t bits) {
        bits_ = bits;
        w_.resize((bits + 63) / 64, 0);
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
        return c;
    }

    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }

    bool all() const {
        if (bits_ == 0) return true;
        std::size_t full = bits_ / 64;
        for (std::size_t i = 0; i < full; ++i)
            if (w_[i] != ~std::uint64_t(0)) return false;
        std::size_t rem = bits_ & 63;
        if (rem) {
            std::uint64_t mask = (std::uint64_t(1) << rem) - 1;
            if ((w_[full] & mask) != mask) return false;
        }
        return true;
    }

    // First index with bit == 0, or size() if none.
    std::size_t first_zero() const {
        std::size_t full = bits_ / 64;
        for (std::size_t i = 0; i < full; ++i)
            if (w_[i] != ~std::uint64_t(0))
                return i * 64 + static_cast<std::size_t>(__builtin_ctzll(~w_[i]));
        std::size_t rem = bits_ & 63;
        if (rem) {
            std::uint64_t mask = (std::uint64_t(1) << rem) - 1;
            std::uint64_t inv = (~w_[full]) & mask;
            if (inv) return full * 64 + static_cast<std::size_t>(__builtin_ctzll(inv));
        }
        return bits_;
    }

    bool operator==(const BitVec& o) const { return bits_ == o.bits_ && w_ == o.w_; }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> w_;
};

namespace detail {

// dst[doff .. doff+len) |= src[soff .. soff+len), arbitrary bit alignment.
inline void or_bit_range(BitVec& dst, std::size_t doff, const BitVec& src,
                         std::size_t soff, std::size_t len) {
    // word-aligned fast case
    if ((doff & 63) == 0 && (soff & 63) == 0) {
        std::size_t fw = len / 64;
        std::uint64_t* d = dst.data() + (doff >> 6);
        const std::uint64_t* s = src.data() + (soff >> 6);
        for (std::size_t i = 0; i < fw; ++i) d[i] |= s[i];
        std::size_t rem = len & 63;
        if (rem) d[fw] |= s[fw] & ((std::uint64_t(1) << rem) - 1);
        return;
    }
    for (std::size_t i = 0; i < len; ++i)
        if (src.get(soff + i)) dst.set(doff + i);
}

// Digit-permutation kernel over a flat mixed-radix index space.
//
// Index i has a base-radix digit at position `pos` with stride = radix^pos
// (strides measured in bits/indices). The kernel computes
//     dst |= sigma(src)   (or dst = sigma(src) when overwrite)
// where sigma rewrites digit d to tab[d] and leaves everything else alone.
// tab must be a permutation of 0..radix-1.
//
// Three paths: an in-word shuffle when a whole digit superblock divides a
// 64-bit word, a word-block copy when the stride is word aligned, and a
// per-index fallback for the odd radices (only hit at tiny sizes).
inline void apply_digit_perm(const BitVec& src, BitVec& dst, std::size_t stride,
                             const std::vector<int>& tab, bool overwrite,
                             int workers) {
    const std::size_t radix = tab.size();
    const std::size_t super = stride * radix;
    const std::size_t n = src.size();

    if (super <= 64 && 64 % super == 0) {
        // per-word shuffle: precompute (mask, shift) per digit value
        struct Term { std::uint64_t mask; int shift; };
        std::vector<Term> terms(radix);
        for (std::size_t d = 0; d < radix; ++d) {
            std::uint64_t m = 0;
            for (std::size_t i = 0; i < 64; ++i)
                if ((i / stride) % radix == d) m |= std::uint64_t(1) << i;
            terms[d] = {m, static_cast<int>((tab[d] - static_cast<int>(d)) *
                                            static_cast<int>(stride))};
        }
        const std::uint64_t* s = src.data();
        std::uint64_t* dd = dst.data();
        std::size_t nw = src.words();
        parallel_chunks(nw, workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t w = lo; w < hi; ++w) {
                std::uint64_t in = s[w], out = 0;
                for (const auto& t : terms) {
                    std::uint64_t part = in & t.mask;
                    out |= t.shift >= 0 ? part << t.shift : part >> (-t.shift);
                }
                if (overwrite)
                    dd[w] = out;
                else
                    dd[w] |= out;
            }
        });
        return;
    }

    if (stride % 64 == 0) {
        const std::size_t sw = stride / 64;            // words per digit block
        const std::size_t superw = sw * radix;         // words per superblock
        const std::size_t nsuper = src.words() / superw;
        const std::uint64_t* s = src.data();
        std::uint64_t* dd = dst.data();
        parallel_chunks(nsuper, workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t sb = lo; sb < hi; ++sb) {
                const std::uint64_t* sbase = s + sb * superw;
                std::uint64_t* dbase = dd + sb * superw;
                for (std::size_t d = 0; d < radix; ++d) {
                    const std::uint64_t* from = sbase + d * sw;
                    std::uint64_t* to = dbase + static_cast<std::size_t>(tab[d]) * sw;
                    if (overwrite)
                        for (std::size_t i = 0; i < sw; ++i) to[i] = from[i];
                    else
                        for (std::size_t i = 0; i < sw; ++i) to[i] |= from[i];
                }
            }
        });
        return;
    }

    // generic fallback (small index spaces only)
    if (overwrite) dst.clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (!src.get(i)) continue;
        std::size_t d = (i / stride) % radix;
        dst.set(i - d * stride + static_cast<std::size_t>(tab[d]) * stride);
    }
}

}  // namespace detail
}  // namespace groupconn
