#pragma once

#include "pacube/enumerate.hpp"
#include "pacube/event.hpp"
#include "pacube/measure.hpp"
#include "pacube/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace pacube {

// Both sides of the independence criterion for nondegenerate product
// measures: exact independence and disjointness of the affecting coordinate
// sets. The two booleans agree whenever the preconditions hold.
struct HarrisResult {
    bool independent;
    bool z_disjoint;
};

// Requires nonempty events and every p_i strictly inside (0,1); throws
// DegenerateParameter otherwise (the forward direction is not guaranteed at
// the boundary).
HarrisResult harris_criterion(const ProductMeasure& m, const IncreasingEvent& a,
                              const IncreasingEvent& b);

struct PaViolation {
    IncreasingEvent a, b;
    Rat p_ab, p_a, p_b; // p_ab < p_a * p_b
};

struct PaResult {
    std::optional<PaViolation> violation; // first in canonical pair order
    std::uint64_t pairs_scanned = 0;
};

// Exhaustive positive-association check over all unordered pairs of increasing
// events (empty and full included), n <= 5. Scans the whole space regardless
// of where a violation sits so the result and stats are identical for every
// worker count.
PaResult pa_check(const TableMeasure& m, int workers = 1);

// A triple certifying that the measure fails the product-measure conclusion:
// AB and C independent, AC and B independent, mu(A) != 0, yet B and C
// dependent. All seven probabilities are exact.
struct AbcWitness {
    IncreasingEvent a, b, c;
    Rat p_a, p_b, p_c, p_ab, p_ac, p_bc, p_abc;
};

struct AbcResult {
    std::vector<AbcWitness> witnesses; // canonical (a,b,c) index order
    std::uint64_t triples_scanned = 0;
};

inline constexpr std::uint64_t kNoLimit = ~std::uint64_t{0};

// Full scan over ordered triples of nonempty increasing events, n <= 4.
// Every emitted witness is re-verified in rational arithmetic before it is
// reported. The product overload prunes hypotheses through the affecting-set
// criterion (sound for nondegenerate product measures only) and re-verifies
// candidates exactly; degenerate products fall back to the table path.
AbcResult abc_scan(const TableMeasure& m, int workers = 1, std::uint64_t limit = kNoLimit);
AbcResult abc_scan(const ProductMeasure& m, int workers = 1, std::uint64_t limit = kNoLimit);

// 2mu(ABC) - [mu(AB)mu(C) + mu(AC)mu(B) + mu(BC)mu(A)] + mu(A)mu(B)mu(C),
// exact. The inequality this expression tests is conjectured only for product
// measures; the table overload exists for exploring other laws.
Rat sahi_value(const ProductMeasure& m, const IncreasingEvent& a, const IncreasingEvent& b,
               const IncreasingEvent& c);
Rat sahi_value(const TableMeasure& m, const IncreasingEvent& a, const IncreasingEvent& b,
               const IncreasingEvent& c);

// Exact polynomial in p_1..p_n with integer coefficients, degree <= 3 per
// variable. Monomials are kept in canonical order (total degree, then packed
// exponents).
class Polynomial {
public:
    explicit Polynomial(int n) : n_(n) {}
    static Polynomial constant(int n, Int c);
    // The probability of an event under the product measure, as a polynomial.
    static Polynomial event_probability(const Event& e);

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Exponents listed per variable, e.g. {0,2,1} for p2^2 p3.
    Int coeff(const std::vector<int>& exps) const;
    Rat eval(const std::vector<Rat>& p) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& scale(const Int& c);

    std::vector<std::pair<std::vector<int>, Int>> terms() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    using Key = std::uint64_t; // 4 bits of exponent per variable

    struct KeyOrder {
        bool operator()(Key a, Key b) const;
    };

    int n_;
    std::map<Key, Int, KeyOrder> terms_;
};

Polynomial sahi_polynomial(const IncreasingEvent& a, const IncreasingEvent& b,
                           const IncreasingEvent& c);

struct SahiNegative {
    IncreasingEvent a, b, c;
    std::vector<Rat> p;
    Rat value; // strictly negative, re-verified through the polynomial route
};

struct SahiScanResult {
    IncreasingEvent min_a, min_b, min_c;
    std::vector<Rat> min_p;
    Rat min_value;
    std::vector<SahiNegative> negatives;
    std::uint64_t evaluations = 0;
};

// Evaluates the expression for every unordered triple (with repetition) of
// nonempty increasing events and every point of grid^n, n <= 3. Grid values
// must lie strictly inside (0,1). The reported minimum is the first achiever
// in canonical (triple, grid-point) order; any strictly negative value is
// re-verified against the polynomial route before being reported.
SahiScanResult sahi_scan(int n, const std::vector<Rat>& grid, int workers = 1);

} // namespace pacube
