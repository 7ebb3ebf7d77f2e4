#include "detail.hpp"

#include <thread>

namespace pacube::detail {

ScaledInt scale_table(const TableMeasure& m) {
    ScaledInt s;
    s.den = 1;
    for (const Rat& w : m.weights())
        s.den = boost::multiprecision::lcm(s.den, rat_den(w));
    s.num.reserve(m.weights().size());
    for (const Rat& w : m.weights())
        s.num.push_back(rat_num(w) * (s.den / rat_den(w)));
    return s;
}

Scaled64 scale_table64(const TableMeasure& m) {
    ScaledInt wide = scale_table(m);
    Scaled64 s;
    // Leave headroom so products den*num stay inside unsigned __int128.
    if (wide.den >= (Int(1) << 62))
        return s;
    s.fits64 = true;
    s.den = static_cast<std::uint64_t>(wide.den);
    s.num.reserve(wide.num.size());
    for (const Int& v : wide.num)
        s.num.push_back(static_cast<std::uint64_t>(v));
    return s;
}

void parallel_chunks(std::uint64_t total, int workers,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
    if (workers < 1)
        workers = 1;
    if (static_cast<std::uint64_t>(workers) > total)
        workers = total == 0 ? 1 : static_cast<int>(total);
    if (workers == 1) {
        fn(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int c = 0; c < workers; ++c) {
        std::uint64_t begin = total * c / workers;
        std::uint64_t end = total * (c + 1) / workers;
        pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
    }
    for (auto& t : pool)
        t.join();
}

std::uint32_t z_of_mask(int n, std::uint64_t mask) {
    std::uint32_t z = 0;
    std::uint32_t size = std::uint32_t{1} << n;
    for (std::uint32_t enc = 0; enc < size; ++enc) {
        if (!((mask >> enc) & 1u))
            continue;
        bool minimal = true;
        for (std::uint32_t m = enc; m != 0 && minimal;) {
            std::uint32_t bit = m & (~m + 1);
            if ((mask >> (enc ^ bit)) & 1u)
                minimal = false;
            m ^= bit;
        }
        if (minimal)
            z |= enc;
    }
    return z;
}

} // namespace pacube::detail
