#pragma once

#include "tubal/tensor3.hpp"

namespace tubal {

/// 10 log10(peak^2 / MSE) in decibels; +inf for identical inputs.
double psnr(const Tensor3& reference, const Tensor3& test, double peak = 1.0);
double psnr(const Matrix& reference, const Matrix& test, double peak = 1.0);

struct SsimConfig {
    Index window = 8;  // square, uniform weights, stride 1
    double peak = 1.0;
    double k1 = 0.01;
    double k2 = 0.03;
};

/// Mean structural similarity over all window positions of each frontal
/// slice, averaged over slices. Throws DimensionError when a slice is
/// smaller than the window.
double ssim(const Tensor3& reference, const Tensor3& test, const SsimConfig& cfg = {});
double ssim(const Matrix& reference, const Matrix& test, const SsimConfig& cfg = {});

/// ||x - ref||_F / ||ref||_F; throws ConfigError for a zero reference.
double rel_error(const Tensor3& x, const Tensor3& reference);

}  // namespace tubal
