#include "tubal/tensor3.hpp"

#include "tubal/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tubal {

std::string to_string(const Dims3& d) {
    return std::to_string(d.n1) + "x" + std::to_string(d.n2) + "x" + std::to_string(d.n3);
}

Tensor3::Tensor3(Dims3 dims) : dims_(dims) {
    if (dims.n1 < 0 || dims.n2 < 0 || dims.n3 < 0) {
        throw DimensionError("negative tensor dimension " + to_string(dims));
    }
    data_.assign(static_cast<std::size_t>(dims.count()), 0.0);
}

Tensor3::Tensor3(Dims3 dims, std::vector<double> data) : dims_(dims), data_(std::move(data)) {
    if (static_cast<Index>(data_.size()) != dims.count()) {
        throw DimensionError("data length " + std::to_string(data_.size()) +
                             " does not match dims " + to_string(dims));
    }
}

Tensor3 Tensor3::constant(Dims3 dims, double value) {
    Tensor3 t(dims);
    std::fill(t.data_.begin(), t.data_.end(), value);
    return t;
}

Tensor3 Tensor3::identity(Index n, Index n3) {
    Tensor3 t(n, n, n3);
    for (Index i = 0; i < n; ++i) {
        t(i, i, 0) = 1.0;
    }
    return t;
}

Tensor3 Tensor3::from_matrix(const Matrix& m) {
    Tensor3 t(m.rows(), m.cols(), 1);
    t.slice(0) = m;
    return t;
}

Tensor3::SliceMap Tensor3::slice(Index k) {
    return SliceMap(data_.data() + k * dims_.slice_size(), dims_.n1, dims_.n2);
}

Tensor3::ConstSliceMap Tensor3::slice(Index k) const {
    return ConstSliceMap(data_.data() + k * dims_.slice_size(), dims_.n1, dims_.n2);
}

Tensor3::SliceMap Tensor3::tubes() { return SliceMap(data_.data(), dims_.slice_size(), dims_.n3); }

Tensor3::ConstSliceMap Tensor3::tubes() const {
    return ConstSliceMap(data_.data(), dims_.slice_size(), dims_.n3);
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
    require_same_dims(dims_, other.dims_, "tensor addition");
    std::transform(data_.begin(), data_.end(), other.data_.begin(), data_.begin(), std::plus<>());
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
    require_same_dims(dims_, other.dims_, "tensor subtraction");
    std::transform(data_.begin(), data_.end(), other.data_.begin(), data_.begin(), std::minus<>());
    return *this;
}

Tensor3& Tensor3::operator*=(double s) {
    for (double& v : data_) {
        v *= s;
    }
    return *this;
}

double fro_norm(const Tensor3& a) {
    double sum = 0.0;
    for (double v : a.data()) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

double max_abs_diff(const Tensor3& a, const Tensor3& b) {
    require_same_dims(a.dims(), b.dims(), "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

void require_same_dims(const Dims3& a, const Dims3& b, const char* what) {
    if (!(a == b)) {
        throw DimensionError(std::string(what) + ": shape " + to_string(a) + " vs " + to_string(b));
    }
}

}  // namespace tubal
