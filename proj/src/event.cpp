#include "pacube/event.hpp"

#include "pacube/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace pacube {

namespace {

std::size_t word_count(int n) {
    std::uint64_t bits = std::uint64_t{1} << n;
    return static_cast<std::size_t>((bits + 63) / 64);
}

void check_dim(int n) {
    if (n < 0 || n > kMaxDim)
        throw DimensionOutOfRange("dimension must be in [0, " + std::to_string(kMaxDim) +
                                  "], got " + std::to_string(n));
}

// Bits of word j that correspond to points with coordinate bit c clear, for
// c < 6 (within-word strides).
constexpr std::uint64_t low_stride_mask(int c) {
    switch (c) {
    case 0: return 0x5555555555555555ULL;
    case 1: return 0x3333333333333333ULL;
    case 2: return 0x0f0f0f0f0f0f0f0fULL;
    case 3: return 0x00ff00ff00ff00ffULL;
    case 4: return 0x0000ffff0000ffffULL;
    default: return 0x00000000ffffffffULL;
    }
}

} // namespace

Event::Event(int n) : n_(n) {
    check_dim(n);
    w_.assign(word_count(n), 0);
}

Event::Event(int n, std::initializer_list<std::uint32_t> encodings) : Event(n) {
    for (std::uint32_t enc : encodings) {
        if (enc >= domain_size())
            throw DimensionOutOfRange("point encoding " + std::to_string(enc) +
                                      " outside {0,1}^" + std::to_string(n));
        insert(Point{enc});
    }
}

Event Event::from_words(int n, std::vector<std::uint64_t> words) {
    check_dim(n);
    if (words.size() != word_count(n))
        throw DimensionMismatch("membership vector has wrong word count");
    if (n < 6) {
        std::uint64_t valid = (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
        if (words[0] & ~valid)
            throw DimensionOutOfRange("membership bits beyond 2^n");
    }
    Event e(n);
    e.w_ = std::move(words);
    return e;
}

bool Event::empty() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w == 0; });
}

bool Event::is_full() const { return count() == domain_size(); }

std::uint32_t Event::count() const {
    std::uint32_t c = 0;
    for (std::uint64_t w : w_)
        c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
}

std::vector<Point> Event::points() const {
    std::vector<Point> out;
    for (std::uint32_t enc = 0; enc < domain_size(); ++enc)
        if (contains(Point{enc}))
            out.push_back(Point{enc});
    return out;
}

void up_close_words(int n, std::span<std::uint64_t> words) {
    // One pass per coordinate suffices: after handling coordinate i the set is
    // closed under adding any subset of coordinates {1..i+1}.
    for (int c = 0; c < n; ++c) {
        if (c < 6) {
            std::uint64_t lo = low_stride_mask(c);
            std::uint32_t shift = std::uint32_t{1} << c;
            for (auto& w : words)
                w |= (w & lo) << shift;
        } else {
            std::size_t stride = std::size_t{1} << (c - 6);
            for (std::size_t j = 0; j < words.size(); ++j)
                if ((j & stride) == 0)
                    words[j + stride] |= words[j];
        }
    }
}

bool Event::up_closed() const {
    std::vector<std::uint64_t> closed(w_);
    up_close_words(n_, closed);
    return closed == w_;
}

Antichain::Antichain(int n, std::vector<Point> sets) : n_(n), sets_(std::move(sets)) {
    check_dim(n);
    for (Point p : sets_)
        if (p.bits >= (std::uint32_t{1} << n))
            throw DimensionOutOfRange("antichain element outside {0,1}^n");
    std::sort(sets_.begin(), sets_.end(), canonical_less);
    for (std::size_t i = 0; i < sets_.size(); ++i)
        for (std::size_t j = i + 1; j < sets_.size(); ++j)
            if (subset_of(sets_[i], sets_[j]) || subset_of(sets_[j], sets_[i]))
                throw NotAntichain("comparable pair in antichain: " +
                                   std::to_string(sets_[i].bits) + " and " +
                                   std::to_string(sets_[j].bits));
}

IncreasingEvent IncreasingEvent::up_closure(const Event& e) {
    Event closed = e;
    std::vector<std::uint64_t> words(closed.words().begin(), closed.words().end());
    up_close_words(e.dim(), words);
    return IncreasingEvent(Event::from_words(e.dim(), std::move(words)));
}

IncreasingEvent IncreasingEvent::from_antichain(const Antichain& a) {
    Event e(a.dim());
    for (Point p : a.sets())
        e.insert(p);
    return up_closure(e);
}

IncreasingEvent IncreasingEvent::checked(Event e) {
    if (!e.up_closed())
        throw NotUpClosed("membership vector is not up-closed");
    return IncreasingEvent(std::move(e));
}

IncreasingEvent IncreasingEvent::from_mask(int n, std::uint64_t mask) {
    if (n > 6)
        throw DimensionOutOfRange("from_mask requires n <= 6");
    return checked(Event::from_words(n, {mask}));
}

IncreasingEvent IncreasingEvent::full(int n) {
    Event e(n);
    for (std::uint32_t enc = 0; enc < e.domain_size(); ++enc)
        e.insert(Point{enc});
    return IncreasingEvent(std::move(e));
}

Antichain IncreasingEvent::minimal_elements() const {
    std::vector<Point> mins;
    for (std::uint32_t enc = 0; enc < ev_.domain_size(); ++enc) {
        Point p{enc};
        if (!ev_.contains(p))
            continue;
        bool minimal = true;
        for (std::uint32_t m = enc; m != 0 && minimal;) {
            std::uint32_t bit = m & (~m + 1);
            if (ev_.contains(Point{enc ^ bit}))
                minimal = false;
            m ^= bit;
        }
        if (minimal)
            mins.push_back(p);
    }
    return Antichain(ev_.dim(), std::move(mins));
}

CoordSet IncreasingEvent::z_set() const {
    CoordSet z;
    Antichain mins = minimal_elements();
    for (Point p : mins.sets())
        z.mask |= p.bits;
    return z;
}

IncreasingEvent intersect(const IncreasingEvent& a, const IncreasingEvent& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("intersect: dimensions differ");
    std::vector<std::uint64_t> words(a.ev_.words().begin(), a.ev_.words().end());
    auto bw = b.ev_.words();
    for (std::size_t i = 0; i < words.size(); ++i)
        words[i] &= bw[i];
    // Up-sets are closed under intersection; no re-closure needed.
    return IncreasingEvent(Event::from_words(a.dim(), std::move(words)));
}

IncreasingEvent unite(const IncreasingEvent& a, const IncreasingEvent& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("unite: dimensions differ");
    std::vector<std::uint64_t> words(a.ev_.words().begin(), a.ev_.words().end());
    auto bw = b.ev_.words();
    for (std::size_t i = 0; i < words.size(); ++i)
        words[i] |= bw[i];
    return IncreasingEvent(Event::from_words(a.dim(), std::move(words)));
}

} // namespace pacube
