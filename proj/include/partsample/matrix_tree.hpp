#pragma once

#include <cstddef>

#include "partsample/graph.hpp"
#include "partsample/number.hpp"

namespace partsample {

/// Exact determinant by fraction-free (Bareiss) elimination. The empty
/// matrix has determinant 1.
BigInt determinant(IntMatrix m);

/// Determinant of `m` with row and column `removed` (0-based) deleted.
/// Throws PreconditionError when `removed` is out of range.
BigInt minor_determinant(const IntMatrix& m, std::size_t removed);

/// Number of spanning trees via the Matrix Tree Theorem, deleting the last
/// Laplacian row/column. Zero for disconnected input, one for a single node.
/// Memoized per graph instance (copies share the memo).
BigInt count_spanning_trees(const Graph& g);

/// Same for a loopless multigraph; parallel edges count separately.
BigInt count_spanning_trees(const Multigraph& m);

}  // namespace partsample
