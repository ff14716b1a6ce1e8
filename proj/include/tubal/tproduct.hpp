#pragma once

#include "tubal/tensor3.hpp"

namespace tubal {

/// t-product A * B evaluated slice-wise in the Fourier domain.
Tensor3 tprod(const Tensor3& a, const Tensor3& b);

/// t-product from the block-circulant definition: fold(bcirc(A) * unfold(B)).
/// Quadratic in n3; meant for small cross-checks.
Tensor3 tprod_reference(const Tensor3& a, const Tensor3& b);

/// Block-circulant matrix (n1*n3 x n2*n3); block (i, j) is frontal slice (i - j) mod n3.
Matrix bcirc(const Tensor3& a);

}  // namespace tubal
