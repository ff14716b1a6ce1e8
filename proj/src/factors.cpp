#include "tubal/factors.hpp"

#include "tubal/errors.hpp"
#include "tubal/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tubal {

void BlockFactors::validate() const {
    const Index h = half_count(dims.n3);
    if (ranks.size() != dims.n3 || stored() != h || static_cast<Index>(right.size()) != h) {
        throw DimensionError("block factors: slice counts do not match n3 = " +
                             std::to_string(dims.n3));
    }
    for (Index f = 0; f < h; ++f) {
        const CMatrix& l = left[static_cast<std::size_t>(f)];
        const CMatrix& r = right[static_cast<std::size_t>(f)];
        if (l.rows() != dims.n1 || r.cols() != dims.n2 || l.cols() != ranks[f] ||
            r.rows() != ranks[f]) {
            throw DimensionError("block factors: slice " + std::to_string(f) +
                                 " disagrees with its rank " + std::to_string(ranks[f]));
        }
    }
}

void RankDecreaseConfig::validate() const {
    if (!(gap_threshold > 1.0)) {
        throw ConfigError("rank-decrease gap threshold must exceed 1");
    }
    if (floor < 1) {
        throw ConfigError("rank-decrease floor must be at least 1");
    }
}

CMatrix pinv(const CMatrix& m, double rtol) {
    if (m.size() == 0) {
        return CMatrix::Zero(m.cols(), m.rows());
    }
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (rtol <= 0.0) {
        rtol = static_cast<double>(std::max(m.rows(), m.cols())) *
               std::numeric_limits<double>::epsilon();
    }
    const double cutoff = rtol * (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            inv(i) = 1.0 / sv(i);
        }
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

BlockFactors factors_from_spatial(const Tensor3& p, const Tensor3& q) {
    if (p.n2() != q.n1() || p.n3() != q.n3()) {
        throw DimensionError("spatial factors " + to_string(p.dims()) + " and " +
                             to_string(q.dims()) + " do not compose");
    }
    const SpectralTensor sp = dft_mode3(p);
    const SpectralTensor sq = dft_mode3(q);
    BlockFactors out;
    out.dims = Dims3{p.n1(), q.n2(), p.n3()};
    out.ranks = MultiRank::uniform(p.n3(), p.n2());
    out.left = sp.slices();
    out.right = sq.slices();
    return out;
}

BlockFactors init_factors(Index n_rows, Index n_cols, Index n3, const MultiRank& init_ranks,
                          std::uint64_t seed) {
    if (init_ranks.size() != n3) {
        throw ConfigError("initial multi-rank has " + std::to_string(init_ranks.size()) +
                          " entries, expected n3 = " + std::to_string(n3));
    }
    if (!init_ranks.is_symmetric()) {
        throw ConfigError("initial multi-rank must satisfy r_k = r_{n3-k+2}");
    }
    const Index limit = std::min(n_rows, n_cols);
    for (Index r : init_ranks.ranks) {
        if (r < 0 || r > limit) {
            throw ConfigError("initial rank " + std::to_string(r) + " outside [0, " +
                              std::to_string(limit) + "]");
        }
    }

    const Index r_max = init_ranks.tubal();
    Tensor3 p(n_rows, r_max, n3);
    Tensor3 q(r_max, n_cols, n3);
    if (r_max > 0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(r_max)));
        for (double& v : p.data()) {
            v = normal(rng);
        }
        for (double& v : q.data()) {
            v = normal(rng);
        }
    }

    BlockFactors full = factors_from_spatial(p, q);
    BlockFactors out;
    out.dims = Dims3{n_rows, n_cols, n3};
    out.ranks = init_ranks;
    for (Index f = 0; f < full.stored(); ++f) {
        const Index r = init_ranks[f];
        out.left.push_back(full.left[static_cast<std::size_t>(f)].leftCols(r));
        out.right.push_back(full.right[static_cast<std::size_t>(f)].topRows(r));
    }
    return out;
}

namespace {

void require_match(const BlockFactors& f, const SpectralTensor& x) {
    if (!(f.dims == x.dims())) {
        throw DimensionError("factors over " + to_string(f.dims) + " vs data " +
                             to_string(x.dims()));
    }
}

}  // namespace

BlockFactors update_left(const BlockFactors& f, const SpectralTensor& x, SliceSolveCounter* counter) {
    require_match(f, x);
    BlockFactors out = f;
    parallel_for(static_cast<std::size_t>(f.stored()), [&](std::size_t s) {
        const CMatrix& q = f.right[s];
        const CMatrix qh = q.adjoint();
        out.left[s] = x.slice(static_cast<Index>(s)) * qh * pinv(q * qh);
        if (counter) {
            ++counter->solves;
        }
    });
    return out;
}

BlockFactors update_right(const BlockFactors& f, const SpectralTensor& x, SliceSolveCounter* counter) {
    require_match(f, x);
    BlockFactors out = f;
    parallel_for(static_cast<std::size_t>(f.stored()), [&](std::size_t s) {
        const CMatrix& p = f.left[s];
        const CMatrix ph = p.adjoint();
        out.right[s] = pinv(ph * p) * ph * x.slice(static_cast<Index>(s));
        if (counter) {
            ++counter->solves;
        }
    });
    return out;
}

SpectralTensor spectral_product(const BlockFactors& f) {
    SpectralTensor out(f.dims);
    parallel_for(static_cast<std::size_t>(f.stored()), [&](std::size_t s) {
        out.slice(static_cast<Index>(s)).noalias() = f.left[s] * f.right[s];
    });
    return out;
}

Tensor3 compose(const BlockFactors& f) { return idft_mode3(spectral_product(f)); }

double spectral_residual_sq(const BlockFactors& f, const SpectralTensor& x) {
    require_match(f, x);
    double sum = 0.0;
    for (Index s = 0; s < f.stored(); ++s) {
        const auto us = static_cast<std::size_t>(s);
        sum += spectral_weight(s, f.dims.n3) * (f.left[us] * f.right[us] - x.slice(s)).squaredNorm();
    }
    return sum;
}

Stationarity stationarity(const BlockFactors& f, const SpectralTensor& x) {
    double left_sq = 0.0, right_sq = 0.0, left_norm_sq = 0.0, right_norm_sq = 0.0;
    for (Index s = 0; s < f.stored(); ++s) {
        const auto us = static_cast<std::size_t>(s);
        const CMatrix residual = x.slice(s) - f.left[us] * f.right[us];
        const double w = spectral_weight(s, f.dims.n3);
        left_sq += w * (residual * f.right[us].adjoint()).squaredNorm();
        right_sq += w * (f.left[us].adjoint() * residual).squaredNorm();
        left_norm_sq += w * f.left[us].squaredNorm();
        right_norm_sq += w * f.right[us].squaredNorm();
    }
    auto ratio = [](double num_sq, double den_sq) { return den_sq > 0.0 ? std::sqrt(num_sq / den_sq) : 0.0; };
    return {ratio(left_sq, right_norm_sq), ratio(right_sq, left_norm_sq)};
}

namespace {

// Number of leading directions to keep, or `r` when no gap exceeds the threshold.
Index gap_position(const CMatrix& left, const CMatrix& right, double threshold, bool orthonormal_left) {
    const Index r = right.rows();
    if (r < 2) {
        return r;
    }
    CMatrix gram;
    if (orthonormal_left && left.rows() >= r) {
        Eigen::HouseholderQR<CMatrix> qr(left);
        const CMatrix rotated =
            qr.matrixQR().topRows(r).triangularView<Eigen::Upper>() * right;
        gram = rotated * rotated.adjoint();
    } else {
        gram = right * right.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    // Ascending order from Eigen; walk from the largest down.
    const Eigen::VectorXd& ascending = eig.eigenvalues();
    if (!(ascending(r - 1) > 0.0)) {
        return r;
    }
    // Round-off eigenvalues (possibly negative) are clamped so that gaps
    // between two of them never look significant.
    const double noise = static_cast<double>(r) * std::numeric_limits<double>::epsilon() * ascending(r - 1);
    double best_ratio = 0.0;
    Index best = r;
    for (Index i = 0; i + 1 < r; ++i) {
        const double upper = std::max(ascending(r - 1 - i), noise);
        const double lower = std::max(ascending(r - 2 - i), noise);
        const double ratio = upper / lower;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = i + 1;
        }
    }
    return best_ratio > threshold ? best : r;
}

// Best rank-k approximation of left * right, split as (U Sigma, V^*).
void truncate_product(CMatrix& left, CMatrix& right, Index k) {
    const Index r = left.cols();
    Eigen::HouseholderQR<CMatrix> qr_left(left);
    Eigen::HouseholderQR<CMatrix> qr_right(right.adjoint());
    const CMatrix q_left = qr_left.householderQ() * CMatrix::Identity(left.rows(), r);
    const CMatrix q_right = qr_right.householderQ() * CMatrix::Identity(right.cols(), r);
    const CMatrix r_left = qr_left.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    const CMatrix r_right = qr_right.matrixQR().topRows(r).triangularView<Eigen::Upper>();

    Eigen::JacobiSVD<CMatrix> svd(r_left * r_right.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sigma = svd.singularValues().head(k);
    left = q_left * svd.matrixU().leftCols(k) * sigma.asDiagonal();
    right = (q_right * svd.matrixV().leftCols(k)).adjoint();
}

}  // namespace

RankDecreaseResult rank_decrease(const BlockFactors& f, const RankDecreaseConfig& cfg) {
    cfg.validate();
    RankDecreaseResult out{f, f.ranks, false};
    if (!cfg.enabled) {
        return out;
    }
    const auto h = static_cast<std::size_t>(f.stored());
    std::vector<Index> keep(h);
    parallel_for(h, [&](std::size_t s) {
        const Index r = f.ranks[static_cast<Index>(s)];
        const Index k = std::min(r, std::max(gap_position(f.left[s], f.right[s], cfg.gap_threshold, cfg.orthonormal_left), cfg.floor));
        keep[s] = k;
        if (k < r) {
            truncate_product(out.factors.left[s], out.factors.right[s], k);
        }
    });
    for (std::size_t s = 0; s < h; ++s) {
        if (keep[s] != out.ranks[static_cast<Index>(s)]) {
            out.ranks.set_pair(static_cast<Index>(s), keep[s]);
            out.changed = true;
        }
    }
    out.factors.ranks = out.ranks;
    return out;
}

}  // namespace tubal
