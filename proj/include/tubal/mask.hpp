#pragma once

#include "tubal/tensor3.hpp"

#include <cstdint>
#include <vector>

namespace tubal {

/// Observed index set Omega over a tensor, stored one flag per entry in
/// Tensor3 order.
struct ObservationMask {
    Dims3 dims{};
    std::vector<std::uint8_t> observed;
    /// Padded entries introduced by a matrix reshape are marked observed.
    bool pad_observed_zero = false;

    ObservationMask() = default;
    explicit ObservationMask(Dims3 d, bool value = false)
        : dims(d), observed(static_cast<std::size_t>(d.count()), value ? 1 : 0) {}

    static ObservationMask all(Dims3 d) { return ObservationMask(d, true); }
    static ObservationMask none(Dims3 d) { return ObservationMask(d, false); }

    bool operator[](std::size_t idx) const { return observed[idx] != 0; }
    bool at(Index i, Index j, Index k) const {
        return observed[static_cast<std::size_t>(i + dims.n1 * (j + dims.n2 * k))] != 0;
    }
    Index count() const;

    friend bool operator==(const ObservationMask&, const ObservationMask&) = default;
};

/// P_{Omega^c}(x) + P_Omega(m).
Tensor3 project(const Tensor3& x, const ObservationMask& mask, const Tensor3& m);

/// P_Omega(m): zero outside the mask.
Tensor3 restrict_to(const Tensor3& m, const ObservationMask& mask);

/// P_{Omega^c}(x): zero on the mask.
Tensor3 restrict_to_complement(const Tensor3& x, const ObservationMask& mask);

/// Lifts an n1 x h (x 1) matrix mask to the n1 x n2 x n3 reshaped tensor;
/// padding columns become observed and pad_observed_zero is set.
ObservationMask reshape_matrix_mask(const ObservationMask& matrix_mask, Index n2);

}  // namespace tubal
