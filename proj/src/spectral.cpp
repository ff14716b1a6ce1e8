#include "tubal/spectral.hpp"

#include "tubal/errors.hpp"

#include <cmath>
#include <numbers>

namespace tubal {

namespace {

// cos/sin of 2*pi*(k*f mod n)/n, reduced so large products keep full precision.
double twiddle_angle(Index k, Index f, Index n) {
    return 2.0 * std::numbers::pi * static_cast<double>((k * f) % n) / static_cast<double>(n);
}

}  // namespace

SpectralTensor::SpectralTensor(Dims3 dims) : dims_(dims) {
    slices_.assign(static_cast<std::size_t>(half_count(dims.n3)), CMatrix::Zero(dims.n1, dims.n2));
}

SpectralTensor::SpectralTensor(Dims3 dims, std::vector<CMatrix> slices)
    : dims_(dims), slices_(std::move(slices)) {
    if (static_cast<Index>(slices_.size()) != half_count(dims.n3)) {
        throw DimensionError("spectral tensor for n3 = " + std::to_string(dims.n3) + " needs " +
                             std::to_string(half_count(dims.n3)) + " slices, got " +
                             std::to_string(slices_.size()));
    }
    for (const CMatrix& s : slices_) {
        if (s.rows() != dims.n1 || s.cols() != dims.n2) {
            throw DimensionError("spectral slice shape does not match " + to_string(dims));
        }
    }
}

CMatrix SpectralTensor::materialize(Index f) const {
    if (f < 0 || f >= dims_.n3) {
        throw DimensionError("frequency index " + std::to_string(f) + " out of range");
    }
    if (f < stored()) {
        return slice(f);
    }
    return slice(dims_.n3 - f).conjugate();
}

double SpectralTensor::full_norm() const {
    double sum = 0.0;
    for (Index f = 0; f < stored(); ++f) {
        sum += spectral_weight(f, dims_.n3) * slice(f).squaredNorm();
    }
    return std::sqrt(sum);
}

SpectralTensor dft_mode3(const Tensor3& a) {
    const Dims3 d = a.dims();
    const Index h = half_count(d.n3);

    Matrix cos_t(d.n3, h);
    Matrix sin_t(d.n3, h);
    for (Index k = 0; k < d.n3; ++k) {
        for (Index f = 0; f < h; ++f) {
            const double theta = twiddle_angle(k, f, d.n3);
            cos_t(k, f) = std::cos(theta);
            sin_t(k, f) = -std::sin(theta);
        }
    }

    const auto tubes = a.tubes();
    const Matrix re = tubes * cos_t;
    const Matrix im = tubes * sin_t;

    std::vector<CMatrix> slices(static_cast<std::size_t>(h));
    for (Index f = 0; f < h; ++f) {
        CMatrix s(d.n1, d.n2);
        Eigen::Map<Eigen::VectorXcd> flat(s.data(), d.slice_size());
        flat.real() = re.col(f);
        flat.imag() = im.col(f);
        if (f == 0 || 2 * f == d.n3) {
            flat.imag().setZero();
        }
        slices[static_cast<std::size_t>(f)] = std::move(s);
    }
    return SpectralTensor(d, std::move(slices));
}

Tensor3 idft_mode3(const SpectralTensor& s) {
    const Dims3 d = s.dims();
    const Index h = s.stored();

    double imag_sq = 0.0;
    for (Index f = 0; f < h; ++f) {
        if (spectral_weight(f, d.n3) == 1.0) {
            imag_sq += s.slice(f).imag().squaredNorm();
        }
    }
    const double total = s.full_norm();
    if (total > 0.0 && std::sqrt(imag_sq) > 1e-6 * total) {
        throw SymmetryError("self-conjugate spectral slices carry imaginary mass " +
                            std::to_string(std::sqrt(imag_sq)) + " of " + std::to_string(total));
    }

    Matrix re(d.slice_size(), h);
    Matrix im(d.slice_size(), h);
    for (Index f = 0; f < h; ++f) {
        Eigen::Map<const Eigen::VectorXcd> flat(s.slice(f).data(), d.slice_size());
        re.col(f) = flat.real();
        im.col(f) = flat.imag();
    }

    // x_k = (1/n3) sum_f w_f Re(S_f e^{+i theta}) over the stored half.
    Matrix cos_t(h, d.n3);
    Matrix sin_t(h, d.n3);
    const double scale = 1.0 / static_cast<double>(d.n3);
    for (Index f = 0; f < h; ++f) {
        const double w = spectral_weight(f, d.n3) * scale;
        for (Index k = 0; k < d.n3; ++k) {
            const double theta = twiddle_angle(k, f, d.n3);
            cos_t(f, k) = w * std::cos(theta);
            sin_t(f, k) = -w * std::sin(theta);
        }
    }

    Tensor3 out(d);
    out.tubes() = re * cos_t + im * sin_t;
    return out;
}

double spectral_distance_sq(const SpectralTensor& a, const SpectralTensor& b) {
    require_same_dims(a.dims(), b.dims(), "spectral_distance_sq");
    double sum = 0.0;
    for (Index f = 0; f < a.stored(); ++f) {
        sum += spectral_weight(f, a.dims().n3) * (a.slice(f) - b.slice(f)).squaredNorm();
    }
    return sum;
}

}  // namespace tubal
