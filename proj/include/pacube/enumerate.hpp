#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace pacube {

// Enumeration ceiling: the count at n=6 (7,828,354) still streams, but full
// pair scans cap at n=5.
inline constexpr int kMaxEnumDim = 6;

struct EnumConfig {
    int n = 0;
    bool include_empty = false;
    bool include_full = false;
};

// Dedekind number D(n) for n <= 6, computed by the recursive decomposition on
// the last coordinate: ordered comparable pairs of (n-1)-dimensional events.
std::uint64_t count_increasing(int n);

// Count after applying the config's inclusion flags.
std::uint64_t count_events(const EnumConfig& cfg);

// All up-closed membership words on {0,1}^n, ascending by bit-vector value
// (so the empty event is first and the full event last). Materialized;
// n <= 5 only — scans index into this directly.
const std::vector<std::uint64_t>& increasing_masks(int n);

// Streaming enumeration for n <= 6 in the same ascending order, restartable
// at any index. Iteration order is a fixed function of the config, so
// partitioned parallel scans see identical streams regardless of worker count.
class EventStream {
public:
    explicit EventStream(EnumConfig cfg);

    std::uint64_t size() const { return size_; }
    int dim() const { return cfg_.n; }

    // Calls fn(stream_index, membership_word) for indices in [begin, end).
    void for_each_range(std::uint64_t begin, std::uint64_t end,
                        const std::function<void(std::uint64_t, std::uint64_t)>& fn) const;

    void for_each(const std::function<void(std::uint64_t, std::uint64_t)>& fn) const {
        for_each_range(0, size_, fn);
    }

private:
    EnumConfig cfg_;
    std::uint64_t size_ = 0;
    std::uint64_t skip_front_ = 0;
    // n == 6 only: the n=5 list plus cumulative subset counts per high half.
    std::vector<std::uint64_t> cum_;
};

} // namespace pacube
