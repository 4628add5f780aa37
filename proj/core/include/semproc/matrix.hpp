#pragma once

#include <cstddef>
#include <vector>

#include "semproc/semiring.hpp"

namespace semproc {

/// Dense square matrix of weights over one semiring.
class WeightMatrix {
public:
    WeightMatrix(SemiringPtr ring, std::size_t n);

    std::size_t size() const { return n_; }
    const SemiringPtr& ring() const { return ring_; }

    Weight& at(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }
    const Weight& at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

    static WeightMatrix identity(SemiringPtr ring, std::size_t n);

    bool operator==(const WeightMatrix& other) const;

private:
    SemiringPtr ring_;
    std::size_t n_;
    std::vector<Weight> cells_;
};

WeightMatrix matrix_add(const WeightMatrix& a, const WeightMatrix& b);
WeightMatrix matrix_multiply(const WeightMatrix& a, const WeightMatrix& b);

/// Kleene closure M*: entry (i,j) sums the x-products of every path from i
/// to j, the empty path included, so the diagonal is top-dominated. Verifies
/// M* = I + M M* afterwards and throws NonConvergentError if the check fails
/// (it cannot for the built-in instances, which are absorptive).
WeightMatrix matrix_closure(const WeightMatrix& m);

} // namespace semproc
