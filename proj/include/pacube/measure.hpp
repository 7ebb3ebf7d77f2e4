#pragma once

#include "pacube/event.hpp"
#include "pacube/point.hpp"
#include "pacube/rational.hpp"

#include <optional>
#include <vector>

namespace pacube {

// Law of n independent Bernoullis with exact-rational parameters p_i = P(X_i = 1).
class ProductMeasure {
public:
    explicit ProductMeasure(std::vector<Rat> p);

    int dim() const { return static_cast<int>(p_.size()); }
    const std::vector<Rat>& params() const { return p_; }
    Rat atom(Point x) const;
    // True when every p_i lies strictly inside (0,1).
    bool nondegenerate() const;

private:
    std::vector<Rat> p_;
};

// Dense exact-rational law on {0,1}^n, indexed by point encoding.
// Construction enforces nonnegativity and exact normalization.
class TableMeasure {
public:
    TableMeasure(int n, std::vector<Rat> w);

    int dim() const { return n_; }
    const Rat& atom(Point x) const { return w_[x.bits]; }
    const std::vector<Rat>& weights() const { return w_; }

    friend bool operator==(const TableMeasure&, const TableMeasure&) = default;

private:
    int n_;
    std::vector<Rat> w_;
};

TableMeasure to_table(const ProductMeasure& m);

Rat prob(const TableMeasure& m, const Event& e);
Rat prob(const ProductMeasure& m, const Event& e);
inline Rat prob(const TableMeasure& m, const IncreasingEvent& e) { return prob(m, e.as_event()); }
inline Rat prob(const ProductMeasure& m, const IncreasingEvent& e) { return prob(m, e.as_event()); }

bool is_independent(const TableMeasure& m, const Event& a, const Event& b);
bool is_independent(const ProductMeasure& m, const Event& a, const Event& b);
bool is_positively_correlated(const TableMeasure& m, const Event& a, const Event& b);
bool is_positively_correlated(const ProductMeasure& m, const Event& a, const Event& b);

// A failed instance of the lattice condition w(A)w(B) <= w(A∧B)w(A∨B).
struct FkgViolation {
    Point a, b;
    Rat lhs, rhs; // lhs = w(A)w(B), rhs = w(A∧B)w(A∨B); lhs > rhs
};

// Scans unordered incomparable point pairs in ascending (a,b) encoding order;
// comparable pairs hold with equality and are skipped. Returns the first
// violation, or nullopt when the measure satisfies the lattice condition.
std::optional<FkgViolation> check_fkg(const TableMeasure& m);

// Law of the fixed-point set of a uniformly random permutation of [n]:
// each S gets weight d(n-|S|)/n! with d(k) the number of derangements of k.
TableMeasure fixed_point_measure(int n);

// Number of derangements of k elements.
Int derangements(int k);

// Partial assignment of coordinates: values ⊆ coords, both as coordinate masks.
struct Assignment {
    CoordSet coords;
    CoordSet values;
};

// Exact conditional law on the remaining coordinates, reindexed in increasing
// order. Throws ZeroProbabilityCondition when the assignment has measure zero.
TableMeasure condition(const TableMeasure& m, const Assignment& given);

} // namespace pacube
