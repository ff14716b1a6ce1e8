#include "tubal/mask.hpp"

#include "tubal/errors.hpp"

#include <algorithm>

namespace tubal {

Index ObservationMask::count() const {
    return static_cast<Index>(std::count(observed.begin(), observed.end(), std::uint8_t{1}));
}

Tensor3 project(const Tensor3& x, const ObservationMask& mask, const Tensor3& m) {
    require_same_dims(x.dims(), mask.dims, "project (mask)");
    require_same_dims(x.dims(), m.dims(), "project (data)");
    Tensor3 out = x;
    for (std::size_t i = 0; i < mask.observed.size(); ++i) {
        if (mask.observed[i]) {
            out.data()[i] = m.data()[i];
        }
    }
    return out;
}

Tensor3 restrict_to(const Tensor3& m, const ObservationMask& mask) {
    require_same_dims(m.dims(), mask.dims, "restrict_to");
    Tensor3 out(m.dims());
    for (std::size_t i = 0; i < mask.observed.size(); ++i) {
        if (mask.observed[i]) {
            out.data()[i] = m.data()[i];
        }
    }
    return out;
}

Tensor3 restrict_to_complement(const Tensor3& x, const ObservationMask& mask) {
    require_same_dims(x.dims(), mask.dims, "restrict_to_complement");
    Tensor3 out = x;
    for (std::size_t i = 0; i < mask.observed.size(); ++i) {
        if (mask.observed[i]) {
            out.data()[i] = 0.0;
        }
    }
    return out;
}

ObservationMask reshape_matrix_mask(const ObservationMask& matrix_mask, Index n2) {
    if (matrix_mask.dims.n3 != 1) {
        throw DimensionError("matrix mask must have a single slice, got " +
                             to_string(matrix_mask.dims));
    }
    if (n2 < 1) {
        throw ConfigError("reshape width n2 must be positive");
    }
    const Index n1 = matrix_mask.dims.n1;
    const Index h = matrix_mask.dims.n2;
    const Index pad = (n2 - h % n2) % n2;
    ObservationMask out(Dims3{n1, n2, (h + pad) / n2}, true);
    std::copy(matrix_mask.observed.begin(), matrix_mask.observed.end(), out.observed.begin());
    out.pad_observed_zero = true;
    return out;
}

}  // namespace tubal
