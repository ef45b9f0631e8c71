#include "partsample/matrix_tree.hpp"

#include <utility>

#include "partsample/errors.hpp"

namespace partsample {

BigInt determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;

    // Bareiss: after step k every entry of the trailing block is a (k+1)x(k+1)
    // minor of the input, so the division by the previous pivot is exact.
    BigInt prev_pivot = 1;
    int sign = 1;
    BigInt t;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t c = k; c < n; ++c) swap(m(k, c), m(swap_row, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                t = m(i, j) * m(k, k);
                t -= m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev_pivot.get_mpz_t());
            }
        }
        prev_pivot = m(k, k);
    }
    BigInt det = m(n - 1, n - 1);
    if (sign < 0) det = -det;
    return det;
}

BigInt minor_determinant(const IntMatrix& m, std::size_t removed) {
    const std::size_t n = m.size();
    if (removed >= n)
        throw PreconditionError("minor index " + std::to_string(removed) + " out of range for a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    IntMatrix minor(n - 1);
    for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == removed) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
            if (c == removed) continue;
            minor(rr, cc++) = m(r, c);
        }
        ++rr;
    }
    return determinant(std::move(minor));
}

const BigInt& memoized_tree_count(const Graph& g) {
    auto& memo = *g.memo_;
    std::call_once(memo.once, [&] {
        memo.value = minor_determinant(laplacian(g), g.node_count() - 1);
    });
    return memo.value;
}

BigInt count_spanning_trees(const Graph& g) { return memoized_tree_count(g); }

BigInt count_spanning_trees(const Multigraph& m) {
    return minor_determinant(laplacian(m), m.node_count() - 1);
}

}  // namespace partsample
