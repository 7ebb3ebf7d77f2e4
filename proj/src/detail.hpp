#pragma once

// Internal scan machinery: common-denominator integer views of measures,
// chunked subset-sum tables, and the deterministic parallel splitter.

#include "pacube/measure.hpp"
#include "pacube/rational.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pacube::detail {

// Atom weights as integers over one common denominator. The 64-bit view is
// the hot path; `fits64` is false when the denominator does not fit, in which
// case callers fall back to the cpp_int view.
struct Scaled64 {
    bool fits64 = false;
    std::uint64_t den = 0;
    std::vector<std::uint64_t> num;
};

struct ScaledInt {
    Int den;
    std::vector<Int> num;
};

ScaledInt scale_table(const TableMeasure& m);
Scaled64 scale_table64(const TableMeasure& m);

// Sum of atom values over the set bits of a membership word, answered from
// per-16-bit-chunk lookup tables. Valid for n <= 6 (single-word events).
template <class T>
class SubsetSums {
public:
    SubsetSums(int n, std::span<const T> atoms) {
        int bits = 1 << n;
        chunk_bits_ = bits < 16 ? bits : 16;
        int chunks = bits / chunk_bits_;
        tbl_.resize(chunks);
        for (int c = 0; c < chunks; ++c) {
            auto& t = tbl_[c];
            t.assign(std::size_t{1} << chunk_bits_, T{});
            for (std::size_t s = 1; s < t.size(); ++s) {
                std::size_t low = s & (~s + 1);
                int bit = std::countr_zero(low);
                t[s] = t[s ^ low] + atoms[static_cast<std::size_t>(c) * chunk_bits_ + bit];
            }
        }
    }

    T sum(std::uint64_t mask) const {
        T total{};
        std::uint64_t sel = (std::uint64_t{1} << chunk_bits_) - 1;
        for (std::size_t c = 0; c < tbl_.size(); ++c)
            total += tbl_[c][(mask >> (c * chunk_bits_)) & sel];
        return total;
    }

private:
    int chunk_bits_;
    std::vector<std::vector<T>> tbl_;
};

// Runs fn(chunk, begin, end) over a contiguous partition of [0, total) with
// one thread per chunk. Chunk boundaries depend only on (total, workers), so
// any per-chunk results can be merged into a worker-count-independent answer.
void parallel_chunks(std::uint64_t total, int workers,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn);

// Mask of coordinates appearing in some minimal element of the up-closed
// membership word (n <= 6).
std::uint32_t z_of_mask(int n, std::uint64_t mask);

} // namespace pacube::detail
