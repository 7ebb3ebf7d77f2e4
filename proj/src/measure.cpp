#include "pacube/measure.hpp"

#include "pacube/errors.hpp"

#include <bit>
#include <string>

namespace pacube {

namespace {

void check_dim(int n) {
    if (n < 0 || n > kMaxDim)
        throw DimensionOutOfRange("measure dimension must be in [0, " + std::to_string(kMaxDim) +
                                  "], got " + std::to_string(n));
}

void check_same_dim(int a, int b, const char* what) {
    if (a != b)
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

} // namespace

ProductMeasure::ProductMeasure(std::vector<Rat> p) : p_(std::move(p)) {
    check_dim(static_cast<int>(p_.size()));
    for (const Rat& v : p_)
        if (!is_probability(v))
            throw DegenerateParameter("product parameter outside [0,1]: " + rat_to_string(v));
}

Rat ProductMeasure::atom(Point x) const {
    Rat w = 1;
    for (int i = 0; i < dim(); ++i)
        w *= (x.bits >> i) & 1u ? p_[i] : 1 - p_[i];
    return w;
}

bool ProductMeasure::nondegenerate() const {
    for (const Rat& v : p_)
        if (v == 0 || v == 1)
            return false;
    return true;
}

TableMeasure::TableMeasure(int n, std::vector<Rat> w) : n_(n), w_(std::move(w)) {
    check_dim(n);
    if (w_.size() != (std::size_t{1} << n))
        throw DimensionMismatch("table measure needs 2^n atom weights");
    Rat total = 0;
    for (const Rat& v : w_) {
        if (v < 0)
            throw Error("negative atom weight: " + rat_to_string(v));
        total += v;
    }
    if (total != 1)
        throw Error("atom weights sum to " + rat_to_string(total) + ", expected 1");
}

TableMeasure to_table(const ProductMeasure& m) {
    std::vector<Rat> w(std::size_t{1} << m.dim());
    for (std::uint32_t enc = 0; enc < w.size(); ++enc)
        w[enc] = m.atom(Point{enc});
    return TableMeasure(m.dim(), std::move(w));
}

Rat prob(const TableMeasure& m, const Event& e) {
    check_same_dim(m.dim(), e.dim(), "prob");
    Rat total = 0;
    for (std::uint32_t enc = 0; enc < e.domain_size(); ++enc)
        if (e.contains(Point{enc}))
            total += m.atom(Point{enc});
    return total;
}

Rat prob(const ProductMeasure& m, const Event& e) {
    check_same_dim(m.dim(), e.dim(), "prob");
    Rat total = 0;
    for (std::uint32_t enc = 0; enc < e.domain_size(); ++enc)
        if (e.contains(Point{enc}))
            total += m.atom(Point{enc});
    return total;
}

namespace {

Event intersection_of(const Event& a, const Event& b) {
    std::vector<std::uint64_t> words(a.words().begin(), a.words().end());
    auto bw = b.words();
    for (std::size_t i = 0; i < words.size(); ++i)
        words[i] &= bw[i];
    return Event::from_words(a.dim(), std::move(words));
}

template <class M>
bool independent_impl(const M& m, const Event& a, const Event& b) {
    check_same_dim(a.dim(), b.dim(), "is_independent");
    return prob(m, intersection_of(a, b)) == prob(m, a) * prob(m, b);
}

template <class M>
bool positively_correlated_impl(const M& m, const Event& a, const Event& b) {
    check_same_dim(a.dim(), b.dim(), "is_positively_correlated");
    return prob(m, intersection_of(a, b)) >= prob(m, a) * prob(m, b);
}

} // namespace

bool is_independent(const TableMeasure& m, const Event& a, const Event& b) {
    return independent_impl(m, a, b);
}
bool is_independent(const ProductMeasure& m, const Event& a, const Event& b) {
    return independent_impl(m, a, b);
}
bool is_positively_correlated(const TableMeasure& m, const Event& a, const Event& b) {
    return positively_correlated_impl(m, a, b);
}
bool is_positively_correlated(const ProductMeasure& m, const Event& a, const Event& b) {
    return positively_correlated_impl(m, a, b);
}

std::optional<FkgViolation> check_fkg(const TableMeasure& m) {
    std::uint32_t size = std::uint32_t{1} << m.dim();
    for (std::uint32_t a = 0; a < size; ++a) {
        for (std::uint32_t b = a + 1; b < size; ++b) {
            Point pa{a}, pb{b};
            if (subset_of(pa, pb) || subset_of(pb, pa))
                continue;
            Rat lhs = m.atom(pa) * m.atom(pb);
            Rat rhs = m.atom(meet(pa, pb)) * m.atom(join(pa, pb));
            if (lhs > rhs)
                return FkgViolation{pa, pb, lhs, rhs};
        }
    }
    return std::nullopt;
}

Int derangements(int k) {
    Int prev2 = 1, prev1 = 0; // d(0), d(1)
    if (k == 0)
        return prev2;
    if (k == 1)
        return prev1;
    Int cur = 0;
    for (int i = 2; i <= k; ++i) {
        cur = Int(i - 1) * (prev1 + prev2);
        prev2 = prev1;
        prev1 = cur;
    }
    return cur;
}

TableMeasure fixed_point_measure(int n) {
    if (n < 1 || n > 8)
        throw DimensionOutOfRange("fixed_point_measure supports 1 <= n <= 8");
    Int fact = 1;
    for (int i = 2; i <= n; ++i)
        fact *= i;
    std::vector<Rat> w(std::size_t{1} << n);
    for (std::uint32_t enc = 0; enc < w.size(); ++enc)
        w[enc] = Rat(derangements(n - weight(Point{enc})), fact);
    return TableMeasure(n, std::move(w));
}

TableMeasure condition(const TableMeasure& m, const Assignment& given) {
    std::uint32_t all = (std::uint32_t{1} << m.dim()) - 1;
    if (given.coords.mask & ~all)
        throw DimensionMismatch("assignment names coordinates beyond n");
    if (given.values.mask & ~given.coords.mask)
        throw Error("assignment values outside assigned coordinates");

    Rat total = 0;
    for (std::uint32_t enc = 0; enc <= all; ++enc)
        if ((enc & given.coords.mask) == given.values.mask)
            total += m.atom(Point{enc});
    if (total == 0)
        throw ZeroProbabilityCondition("conditioning event has probability zero");

    int remaining = m.dim() - std::popcount(given.coords.mask);
    std::vector<Rat> w(std::size_t{1} << remaining, Rat(0));
    for (std::uint32_t enc = 0; enc <= all; ++enc) {
        if ((enc & given.coords.mask) != given.values.mask)
            continue;
        // Compress the free coordinates, preserving their order.
        std::uint32_t compressed = 0;
        int out = 0;
        for (int i = 0; i < m.dim(); ++i) {
            if ((given.coords.mask >> i) & 1u)
                continue;
            compressed |= ((enc >> i) & 1u) << out;
            ++out;
        }
        w[compressed] += m.atom(Point{enc}) / total;
    }
    return TableMeasure(remaining, std::move(w));
}

} // namespace pacube
