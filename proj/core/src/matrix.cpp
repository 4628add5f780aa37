#include "semproc/matrix.hpp"

namespace semproc {

WeightMatrix::WeightMatrix(SemiringPtr ring, std::size_t n)
    : ring_(std::move(ring)), n_(n), cells_(n * n, ring_->bottom()) {}

WeightMatrix WeightMatrix::identity(SemiringPtr ring, std::size_t n) {
    WeightMatrix m(ring, n);
    const Weight t = ring->top();
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = t;
    return m;
}

bool WeightMatrix::operator==(const WeightMatrix& other) const {
    if (n_ != other.n_) return false;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i] != other.cells_[i]) return false;
    return true;
}

WeightMatrix matrix_add(const WeightMatrix& a, const WeightMatrix& b) {
    WeightMatrix out(a.ring(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            out.at(i, j) = combine_plus(a.at(i, j), b.at(i, j));
    return out;
}

WeightMatrix matrix_multiply(const WeightMatrix& a, const WeightMatrix& b) {
    const std::size_t n = a.size();
    WeightMatrix out(a.ring(), n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Weight& aik = a.at(i, k);
            if (aik.is_bottom()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const Weight& bkj = b.at(k, j);
                if (bkj.is_bottom()) continue;
                out.at(i, j) = combine_plus(out.at(i, j), combine_times(aik, bkj));
            }
        }
    }
    return out;
}

WeightMatrix matrix_closure(const WeightMatrix& m) {
    const std::size_t n = m.size();
    // Floyd-Warshall over the semiring. Absorptiveness makes every scalar
    // star equal to top, so no per-pivot star factor is needed.
    WeightMatrix d = m;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const Weight& dik = d.at(i, k);
            if (dik.is_bottom()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const Weight& dkj = d.at(k, j);
                if (dkj.is_bottom()) continue;
                d.at(i, j) = combine_plus(d.at(i, j), combine_times(dik, dkj));
            }
        }
    WeightMatrix star = matrix_add(WeightMatrix::identity(m.ring(), n), d);
    // Fixpoint guard: M* must satisfy M* = I + M M*.
    WeightMatrix check = matrix_add(WeightMatrix::identity(m.ring(), n), matrix_multiply(m, star));
    if (!(check == star))
        throw NonConvergentError("matrix closure did not reach a fixpoint");
    return star;
}

} // namespace semproc
