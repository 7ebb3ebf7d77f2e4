#include "pacube/realize.hpp"

#include "pacube/errors.hpp"
#include "pacube/prng.hpp"

#include <algorithm>
#include <string>

namespace pacube {

FuiRealization make_realization(std::vector<Rat> q, std::vector<IncreasingEvent> f) {
    int m = static_cast<int>(q.size());
    if (m > kMaxUnderlying)
        throw TooManyUnderlying("realization uses " + std::to_string(m) + " > " +
                                std::to_string(kMaxUnderlying) + " Bernoullis");
    for (const Rat& v : q)
        if (!is_probability(v))
            throw DegenerateParameter("Bernoulli parameter outside [0,1]: " + rat_to_string(v));
    for (const IncreasingEvent& e : f)
        if (e.dim() != m)
            throw DimensionMismatch("structure function dimension != m");
    return FuiRealization{m, std::move(q), std::move(f)};
}

ThresholdTable::ThresholdTable(int n, std::vector<std::vector<Rat>> alpha)
    : n_(n), alpha_(std::move(alpha)) {
    if (static_cast<int>(alpha_.size()) != n)
        throw DimensionMismatch("threshold table needs one row per coordinate");
    for (int i = 0; i < n; ++i) {
        const auto& row = alpha_[static_cast<std::size_t>(i)];
        if (row.size() != (std::size_t{1} << i))
            throw DimensionMismatch("threshold row " + std::to_string(i + 1) +
                                    " needs 2^" + std::to_string(i) + " entries");
        for (const Rat& a : row)
            if (a < 0 || a > 1)
                throw Error("threshold outside [0,1]: " + rat_to_string(a));
        // Nonincreasing along the pointwise history order; covering pairs suffice.
        for (std::uint32_t h = 0; h < row.size(); ++h)
            for (int j = 0; j < i; ++j)
                if ((h >> j) & 1u)
                    if (row[h] > row[h ^ (std::uint32_t{1} << j)])
                        throw MonotoneCompletionFailed(
                            "threshold increases along history order at coordinate " +
                            std::to_string(i + 1));
    }
}

ThresholdTable build_thresholds(const TableMeasure& m) {
    if (auto v = check_fkg(m))
        throw NotFkg("measure fails the lattice condition at points " +
                     std::to_string(v->a.bits) + ", " + std::to_string(v->b.bits));
    int n = m.dim();
    std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::uint32_t histories = std::uint32_t{1} << i;
        std::uint32_t hist_mask = histories - 1;
        std::vector<Rat> row(histories);
        std::vector<bool> positive(histories, false);
        for (std::uint32_t h = 0; h < histories; ++h) {
            Rat ph = 0, ph0 = 0;
            for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
                if ((x & hist_mask) != h)
                    continue;
                const Rat& w = m.atom(Point{x});
                ph += w;
                if (!((x >> i) & 1u))
                    ph0 += w;
            }
            if (ph > 0) {
                row[h] = ph0 / ph;
                positive[h] = true;
            }
        }
        // Monotone completion for unreachable histories: the largest threshold
        // among positive histories above, or 1 when none dominates.
        for (std::uint32_t h = 0; h < histories; ++h) {
            if (positive[h])
                continue;
            Rat best = -1;
            for (std::uint32_t g = 0; g < histories; ++g)
                if (positive[g] && (h & ~g) == 0 && row[g] > best)
                    best = row[g];
            row[h] = best < 0 ? Rat(1) : best;
        }
        rows[static_cast<std::size_t>(i)] = std::move(row);
    }
    return ThresholdTable(n, std::move(rows));
}

FuiRealization discretize(const ThresholdTable& t) {
    int n = t.dim();
    std::vector<std::vector<Rat>> chains(static_cast<std::size_t>(n));
    std::vector<int> offset(static_cast<std::size_t>(n));
    int m = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> interior;
        for (const Rat& a : t.rows()[static_cast<std::size_t>(i)])
            if (a > 0 && a < 1)
                interior.push_back(a);
        std::sort(interior.begin(), interior.end(), std::greater<Rat>());
        interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
        offset[static_cast<std::size_t>(i)] = m;
        m += static_cast<int>(interior.size());
        chains[static_cast<std::size_t>(i)] = std::move(interior);
    }
    if (m > kMaxUnderlying)
        throw TooManyUnderlying("discretization needs " + std::to_string(m) + " > " +
                                std::to_string(kMaxUnderlying) + " Bernoullis");

    std::vector<Rat> q(static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
        const auto& chain = chains[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < chain.size(); ++j) {
            std::size_t slot = static_cast<std::size_t>(offset[static_cast<std::size_t>(i)]) + j;
            q[slot] = j == 0 ? Rat(1 - chain[0]) : Rat(1 - chain[j] / chain[j - 1]);
        }
    }

    // Evaluate the coordinates simultaneously over the whole Y-space; each
    // threshold indicator is the OR of its chain prefix.
    std::vector<Event> funcs(static_cast<std::size_t>(n), Event(m));
    std::uint32_t yspace = std::uint32_t{1} << m;
    for (std::uint32_t y = 0; y < yspace; ++y) {
        std::uint32_t hist = 0;
        for (int i = 0; i < n; ++i) {
            const Rat& a = t.alpha(i, hist);
            bool xi;
            if (a == 1) {
                xi = false;
            } else if (a == 0) {
                xi = true;
            } else {
                const auto& chain = chains[static_cast<std::size_t>(i)];
                std::size_t j =
                    static_cast<std::size_t>(std::find(chain.begin(), chain.end(), a) -
                                             chain.begin());
                std::uint32_t prefix = ((std::uint32_t{1} << (j + 1)) - 1)
                                       << offset[static_cast<std::size_t>(i)];
                xi = (y & prefix) != 0;
            }
            if (xi) {
                funcs[static_cast<std::size_t>(i)].insert(Point{y});
                hist |= std::uint32_t{1} << i;
            }
        }
    }

    std::vector<IncreasingEvent> f;
    f.reserve(static_cast<std::size_t>(n));
    for (Event& e : funcs)
        f.push_back(IncreasingEvent::checked(std::move(e)));
    return make_realization(std::move(q), std::move(f));
}

TableMeasure pushforward(const FuiRealization& r) {
    int m = r.m;
    if (m > kMaxUnderlying)
        throw TooManyUnderlying("pushforward over 2^" + std::to_string(m) + " atoms");
    int n = static_cast<int>(r.f.size());

    Int den = 1;
    for (const Rat& v : r.q)
        den *= rat_den(v);

    std::vector<Int> acc(std::size_t{1} << n, Int(0));
    auto image = [&](std::uint32_t y) {
        std::uint32_t x = 0;
        for (int i = 0; i < n; ++i)
            if (r.f[static_cast<std::size_t>(i)].contains(Point{y}))
                x |= std::uint32_t{1} << i;
        return x;
    };
    // Depth-first over the Y coordinates, reusing partial weight products.
    auto walk = [&](auto&& self, int j, std::uint32_t y, const Int& num) -> void {
        if (num == 0)
            return;
        if (j == m) {
            acc[image(y)] += num;
            return;
        }
        const Rat& v = r.q[static_cast<std::size_t>(j)];
        self(self, j + 1, y, num * (rat_den(v) - rat_num(v)));
        self(self, j + 1, y | (std::uint32_t{1} << j), num * rat_num(v));
    };
    walk(walk, 0, 0, Int(1));

    std::vector<Rat> w;
    w.reserve(acc.size());
    for (Int& v : acc)
        w.push_back(Rat(std::move(v), den));
    return TableMeasure(n, std::move(w));
}

FuiRealization footnote2_fixture(const Rat& q1, const Rat& q2, const Rat& q3) {
    for (const Rat* v : {&q1, &q2, &q3})
        if (!is_probability(*v))
            throw DegenerateParameter("fixture parameter outside [0,1]: " + rat_to_string(*v));
    auto pair_event = [](std::uint32_t bits) {
        return IncreasingEvent::up_closure(Event(3, {bits}));
    };
    return make_realization({q1, q2, q3},
                            {pair_event(0b011), pair_event(0b101), pair_event(0b110)});
}

FuiRealization random_fui(int n, int m, std::uint64_t seed) {
    if (m < 1 || m > 12)
        throw TooManyUnderlying("random_fui supports 1 <= m <= 12");
    if (n < 1 || n > kMaxDim)
        throw DimensionOutOfRange("random_fui dimension out of range");
    SplitMix64 rng(seed);
    std::vector<Rat> q(static_cast<std::size_t>(m));
    for (Rat& v : q) {
        std::uint64_t den = 2 + rng.below(15);              // 2..16
        std::uint64_t num = 1 + rng.below(den - 1);         // strict interior
        v = Rat(Int(num), Int(den));
    }
    std::vector<IncreasingEvent> f;
    f.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Event gen(m);
        std::uint64_t points = 1 + rng.below(3);
        for (std::uint64_t k = 0; k < points; ++k)
            gen.insert(Point{static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << m))});
        f.push_back(IncreasingEvent::up_closure(gen));
    }
    return make_realization(std::move(q), std::move(f));
}

} // namespace pacube
