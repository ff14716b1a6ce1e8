#include "tubal/rank.hpp"

#include "tubal/errors.hpp"
#include "tubal/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tubal {

MultiRank MultiRank::uniform(Index n3, Index r) {
    return MultiRank(std::vector<Index>(static_cast<std::size_t>(n3), r));
}

MultiRank MultiRank::leading(Index n3, Index first, Index rest) {
    MultiRank out = uniform(n3, rest);
    if (n3 > 0) {
        out[0] = first;
    }
    return out;
}

MultiRank MultiRank::from_half(Index n3, const std::vector<Index>& half) {
    if (static_cast<Index>(half.size()) != half_count(n3)) {
        throw ConfigError("half-spectrum rank list needs " + std::to_string(half_count(n3)) +
                          " entries, got " + std::to_string(half.size()));
    }
    MultiRank out = uniform(n3, 0);
    for (Index f = 0; f < half_count(n3); ++f) {
        out.set_pair(f, half[static_cast<std::size_t>(f)]);
    }
    return out;
}

Index MultiRank::tubal() const {
    return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end());
}

Index MultiRank::sum() const { return std::accumulate(ranks.begin(), ranks.end(), Index{0}); }

bool MultiRank::is_symmetric() const {
    const Index n3 = size();
    for (Index k = 1; k < n3; ++k) {
        if ((*this)[k] != (*this)[n3 - k]) {
            return false;
        }
    }
    return true;
}

void MultiRank::set_pair(Index f, Index r) {
    const Index n3 = size();
    (*this)[f] = r;
    if (f > 0) {
        (*this)[n3 - f] = r;
    }
}

std::string to_string(const MultiRank& r, char sep) {
    std::ostringstream out;
    for (std::size_t k = 0; k < r.ranks.size(); ++k) {
        if (k > 0) {
            out << sep;
        }
        out << r.ranks[k];
    }
    return out.str();
}

namespace {

template <typename Mat>
Index rank_from_singular_values(const Mat& m, double tol_rel) {
    if (m.size() == 0) {
        return 0;
    }
    const Eigen::VectorXd sv = Eigen::BDCSVD<Mat>(m).singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    if (smax <= 0.0) {
        return 0;
    }
    return static_cast<Index>((sv.array() > tol_rel * smax).count());
}

}  // namespace

Index matrix_rank(const Matrix& m, double tol_rel) { return rank_from_singular_values(m, tol_rel); }

Index matrix_rank(const CMatrix& m, double tol_rel) { return rank_from_singular_values(m, tol_rel); }

MultiRank multi_rank(const Tensor3& a, double tol_rel) {
    const SpectralTensor s = dft_mode3(a);
    MultiRank out = MultiRank::uniform(a.n3(), 0);
    for (Index f = 0; f < s.stored(); ++f) {
        out.set_pair(f, matrix_rank(s.slice(f), tol_rel));
    }
    return out;
}

Index tubal_rank(const Tensor3& a, double tol_rel) { return multi_rank(a, tol_rel).tubal(); }

}  // namespace tubal
