#pragma once

// Brute-force reference implementations. Everything here works straight from
// the definitions (exhaustive enumeration of matrices, subsets and subset
// pairs) and shares no search logic with the library algorithms it checks.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "defset/matrix.hpp"
#include "defset/margins.hpp"

namespace defset::oracle {

/// Row-major cell mask of a matrix with at most 64 cells.
std::uint64_t to_mask(const BinaryMatrix& m);
BinaryMatrix from_mask(std::size_t rows, std::size_t cols, std::uint64_t mask);

/// Calls `visit` on every m x n binary matrix (mn <= 24).
void for_each_matrix(std::size_t rows, std::size_t cols, const std::function<void(const BinaryMatrix&)>& visit);

/// Class sizes of every margin pair, by filtering all 2^{mn} matrices.
std::map<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>, std::uint64_t>
class_sizes(std::size_t rows, std::size_t cols);

/// Members of A(margins) by filtering all 2^{mn} matrices (mn <= 24).
std::vector<BinaryMatrix> class_members(const MarginSpec& margins);

/// D (cell mask of revealed cells, values taken from M) is defining iff every
/// other class member differs from M somewhere inside D.
bool reveals_unique(std::uint64_t revealed, std::uint64_t target, const std::vector<std::uint64_t>& others);

/// Minimum defining-set size by trying all subsets of cells in order of size.
std::size_t sds_bruteforce(const BinaryMatrix& m);

/// max over all 2^m * 2^n subset pairs of |mn * ones(R,C) - E |R||C||.
std::int64_t max_discrepancy_bruteforce(const BinaryMatrix& m);

struct SuiteOutcome {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
};

/// Runs every cross-check up to `max_dim` rows and columns and logs one line
/// per suite. Randomized parts are seeded by `seed`.
std::vector<SuiteOutcome> run_verification_suites(std::size_t max_dim, std::uint64_t seed, std::ostream& log);

} // namespace defset::oracle
