#include "pacube/enumerate.hpp"

#include "pacube/errors.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <string>

namespace pacube {

namespace {

void check_enum_dim(int n) {
    if (n < 0 || n > kMaxEnumDim)
        throw DimensionOutOfRange("enumeration supports 0 <= n <= " +
                                  std::to_string(kMaxEnumDim) + ", got " + std::to_string(n));
}

std::vector<std::uint64_t> build_masks(int n) {
    if (n == 0)
        return {0, 1};
    std::vector<std::uint64_t> sub = build_masks(n - 1);
    std::uint32_t half = std::uint32_t{1} << (n - 1);
    std::vector<std::uint64_t> out;
    for (std::uint64_t hi : sub)
        for (std::uint64_t lo : sub)
            if ((lo & ~hi) == 0)
                out.push_back(lo | (hi << half));
    return out;
}

} // namespace

const std::vector<std::uint64_t>& increasing_masks(int n) {
    if (n < 0 || n > 5)
        throw DimensionOutOfRange("increasing_masks materializes n <= 5 only");
    static std::array<std::vector<std::uint64_t>, 6> cache;
    static std::once_flag built[6];
    std::call_once(built[n], [n] { cache[n] = build_masks(n); });
    return cache[n];
}

std::uint64_t count_increasing(int n) {
    check_enum_dim(n);
    if (n == 0)
        return 2;
    const auto& sub = increasing_masks(n - 1);
    std::uint64_t total = 0;
    for (std::uint64_t hi : sub)
        for (std::uint64_t lo : sub)
            if ((lo & ~hi) == 0)
                ++total;
    return total;
}

std::uint64_t count_events(const EnumConfig& cfg) {
    std::uint64_t total = count_increasing(cfg.n);
    if (!cfg.include_empty)
        --total;
    if (!cfg.include_full)
        --total;
    return total;
}

EventStream::EventStream(EnumConfig cfg) : cfg_(cfg) {
    check_enum_dim(cfg.n);
    std::uint64_t raw;
    if (cfg_.n == 6) {
        const auto& sub = increasing_masks(5);
        cum_.resize(sub.size() + 1);
        cum_[0] = 0;
        for (std::size_t h = 0; h < sub.size(); ++h) {
            std::uint64_t cnt = 0;
            for (std::uint64_t lo : sub)
                if ((lo & ~sub[h]) == 0)
                    ++cnt;
            cum_[h + 1] = cum_[h] + cnt;
        }
        raw = cum_.back();
    } else {
        raw = static_cast<std::uint64_t>(increasing_masks(cfg_.n).size());
    }
    skip_front_ = cfg_.include_empty ? 0 : 1;
    size_ = raw - skip_front_ - (cfg_.include_full ? 0 : 1);
}

void EventStream::for_each_range(std::uint64_t begin, std::uint64_t end,
                                 const std::function<void(std::uint64_t, std::uint64_t)>& fn) const {
    if (begin >= end)
        return;
    if (end > size_)
        throw Error("stream range beyond end");

    if (cfg_.n < 6) {
        const auto& flat = increasing_masks(cfg_.n);
        for (std::uint64_t i = begin; i < end; ++i)
            fn(i, flat[i + skip_front_]);
        return;
    }

    const auto& sub = increasing_masks(5);
    std::uint32_t half = 32;
    std::uint64_t raw = begin + skip_front_;
    // Locate the high half containing raw, then the offset within it.
    std::size_t h = static_cast<std::size_t>(
        std::upper_bound(cum_.begin(), cum_.end(), raw) - cum_.begin() - 1);
    std::uint64_t offset = raw - cum_[h];
    std::uint64_t index = begin;
    for (; h < sub.size() && index < end; ++h) {
        std::uint64_t hi = sub[h];
        for (std::uint64_t lo : sub) {
            if ((lo & ~hi) != 0)
                continue;
            if (offset > 0) {
                --offset;
                continue;
            }
            fn(index, lo | (hi << half));
            if (++index == end)
                return;
        }
    }
}

} // namespace pacube
