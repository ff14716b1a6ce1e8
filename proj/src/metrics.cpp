#include "tubal/metrics.hpp"

#include "tubal/errors.hpp"

#include <cmath>
#include <limits>

namespace tubal {

double psnr(const Tensor3& reference, const Tensor3& test, double peak) {
    require_same_dims(reference.dims(), test.dims(), "psnr");
    if (!(peak > 0.0)) {
        throw ConfigError("psnr peak must be positive");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < reference.data().size(); ++i) {
        const double e = reference.data()[i] - test.data()[i];
        sum += e * e;
    }
    const double mse = sum / static_cast<double>(reference.size());
    if (mse == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const Matrix& reference, const Matrix& test, double peak) {
    return psnr(Tensor3::from_matrix(reference), Tensor3::from_matrix(test), peak);
}

namespace {

// Summed-area table with a zero first row/column.
Matrix integral(const Matrix& m) {
    Matrix s = Matrix::Zero(m.rows() + 1, m.cols() + 1);
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            s(i + 1, j + 1) = m(i, j) + s(i, j + 1) + s(i + 1, j) - s(i, j);
        }
    }
    return s;
}

double box(const Matrix& s, Index i, Index j, Index w) {
    return s(i + w, j + w) - s(i, j + w) - s(i + w, j) + s(i, j);
}

double ssim_slice(const Matrix& x, const Matrix& y, const SsimConfig& cfg) {
    const Index w = cfg.window;
    const double c1 = (cfg.k1 * cfg.peak) * (cfg.k1 * cfg.peak);
    const double c2 = (cfg.k2 * cfg.peak) * (cfg.k2 * cfg.peak);
    const double n = static_cast<double>(w * w);

    const Matrix sx = integral(x);
    const Matrix sy = integral(y);
    const Matrix sxx = integral(x.cwiseProduct(x));
    const Matrix syy = integral(y.cwiseProduct(y));
    const Matrix sxy = integral(x.cwiseProduct(y));

    double total = 0.0;
    const Index rows = x.rows() - w + 1;
    const Index cols = x.cols() - w + 1;
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double mx = box(sx, i, j, w) / n;
            const double my = box(sy, i, j, w) / n;
            const double vx = box(sxx, i, j, w) / n - mx * mx;
            const double vy = box(syy, i, j, w) / n - my * my;
            const double cxy = box(sxy, i, j, w) / n - mx * my;
            total += ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) /
                     ((mx * mx + my * my + c1) * (vx + vy + c2));
        }
    }
    return total / static_cast<double>(rows * cols);
}

}  // namespace

double ssim(const Tensor3& reference, const Tensor3& test, const SsimConfig& cfg) {
    require_same_dims(reference.dims(), test.dims(), "ssim");
    if (cfg.window < 1 || !(cfg.peak > 0.0)) {
        throw ConfigError("ssim window and peak must be positive");
    }
    if (reference.n1() < cfg.window || reference.n2() < cfg.window) {
        throw DimensionError("image " + to_string(reference.dims()) + " is smaller than the " +
                             std::to_string(cfg.window) + "x" + std::to_string(cfg.window) + " window");
    }
    double sum = 0.0;
    for (Index k = 0; k < reference.n3(); ++k) {
        sum += ssim_slice(reference.slice(k), test.slice(k), cfg);
    }
    return sum / static_cast<double>(reference.n3());
}

double ssim(const Matrix& reference, const Matrix& test, const SsimConfig& cfg) {
    return ssim(Tensor3::from_matrix(reference), Tensor3::from_matrix(test), cfg);
}

double rel_error(const Tensor3& x, const Tensor3& reference) {
    require_same_dims(x.dims(), reference.dims(), "rel_error");
    const double base = fro_norm(reference);
    if (base == 0.0) {
        throw ConfigError("relative error against a zero reference");
    }
    return fro_norm(x - reference) / base;
}

}  // namespace tubal
