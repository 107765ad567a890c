#pragma once

#include <vector>

#include "rostlab/error.hpp"

namespace rostlab {

/***
 * Finitely generated subgroups of (Z/M)^r for a prime power M = l^n,
 * held in canonical echelon form: pivots are powers of l in strictly
 * increasing columns, entries above a pivot are reduced modulo it, and
 * the generating set is closed under the annihilator rows l^(n-a) * row.
 * Two subgroups are equal if and only if their row lists are identical,
 * and membership testing is a single greedy reduction pass.
 */
class Subgroup {
public:
    Subgroup(int modulus, int rank);  // the trivial subgroup
    static Subgroup span(int modulus, int rank,
                         const std::vector<std::vector<int>>& gens);
    static Subgroup full(int modulus, int rank);
    // All x in (Z/M)^k with x*A = 0, where A has k rows of length ncols.
    static Subgroup left_kernel(int modulus, int ncols,
                                const std::vector<std::vector<int>>& A);

    int modulus() const noexcept { return M_; }
    int rank() const noexcept { return r_; }
    const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }

    bool contains(const std::vector<int>& v) const;
    bool contains(const Subgroup& other) const;
    bool operator==(const Subgroup& o) const;
    bool operator!=(const Subgroup& o) const { return !(*this == o); }

    unsigned long long order() const;
    std::vector<std::vector<int>> elements() const;  // order() many, unique

    Subgroup meet(const Subgroup& other) const;
    Subgroup join(const Subgroup& other) const;
    Subgroup scaled(int c) const;
    // Image under v -> v*T, where T has r rows of length new_rank.
    Subgroup image(int new_rank, const std::vector<std::vector<int>>& T) const;

private:
    void canonicalize(std::vector<std::vector<int>> pool);

    int M_, r_;
    int l_ = 0, n_ = 0;  // M = l^n
    std::vector<std::vector<int>> rows_;
    std::vector<int> pivcol_, pivval_;
};

} // namespace rostlab
