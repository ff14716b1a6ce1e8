#pragma once

#include "tubal/tensor3.hpp"

#include <string>
#include <vector>

namespace tubal {

/// Per-frequency ranks (r_1, ..., r_n3) of a tensor or of a factorization.
struct MultiRank {
    std::vector<Index> ranks;

    MultiRank() = default;
    explicit MultiRank(std::vector<Index> r) : ranks(std::move(r)) {}

    static MultiRank uniform(Index n3, Index r);
    /// First entry `first`, every other entry `rest`.
    static MultiRank leading(Index n3, Index first, Index rest);
    /// Mirrors a half-spectrum list (length half_count(n3)) to length n3.
    static MultiRank from_half(Index n3, const std::vector<Index>& half);

    Index size() const { return static_cast<Index>(ranks.size()); }
    Index operator[](Index k) const { return ranks[static_cast<std::size_t>(k)]; }
    Index& operator[](Index k) { return ranks[static_cast<std::size_t>(k)]; }

    /// max_k r_k.
    Index tubal() const;
    /// sum_k r_k.
    Index sum() const;
    /// r_k == r_{n3-k} for every k >= 1 (0-based).
    bool is_symmetric() const;

    /// Sets r_f and its mirror.
    void set_pair(Index f, Index r);

    friend bool operator==(const MultiRank&, const MultiRank&) = default;
};

std::string to_string(const MultiRank& r, char sep = ';');

/// Numerical rank: singular values above tol_rel * sigma_max.
Index matrix_rank(const Matrix& m, double tol_rel = 1e-10);
Index matrix_rank(const CMatrix& m, double tol_rel = 1e-10);

/// Ranks of the Fourier-domain frontal slices.
MultiRank multi_rank(const Tensor3& a, double tol_rel = 1e-10);
Index tubal_rank(const Tensor3& a, double tol_rel = 1e-10);

}  // namespace tubal
