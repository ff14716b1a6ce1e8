#pragma once

#include "tubal/tensor3.hpp"

#include <utility>

namespace tubal {

// Mode-s unfoldings use the column index j = sum_{k != s} i_k * prod_{l < k, l != s} n_l
// (0-based), i.e. the ordering of tens2mat.

Matrix mode_unfold(const Tensor3& a, int mode);
Tensor3 mode_fold(const Matrix& m, int mode, Dims3 dims);

/// A x_mode B, where B has n_mode columns.
Tensor3 mode_product(const Tensor3& a, const Matrix& b, int mode);

struct ReshapedMatrix {
    Tensor3 tensor;
    Index pad = 0;  // zero columns appended so that n2 divides the width
};

/// Splits the columns of an n1 x h matrix into n1 x n2 frontal slices, padding
/// with the fewest zero columns that make n2 divide the width.
ReshapedMatrix reshape_matrix_to_tensor(const Matrix& m, Index n2);

/// Concatenates frontal slices along columns and keeps the first h columns.
Matrix tensor_to_matrix(const Tensor3& x, Index h);

/// n3 x p x q tensor whose mode-1 unfolding equals the mode-3 unfolding of x.
Tensor3 reshape_mode3(const Tensor3& x, Index p, Index q);

/// Inverse of reshape_mode3: mode_fold(mode_unfold(y, 1), 3, dims).
Tensor3 fold3_from_reshaped(const Tensor3& y, Dims3 dims);

/// X13 with X(i,j,k) = X13(i,k,j).
Tensor3 permute_13(const Tensor3& x);
/// X23 with X(i,j,k) = X23(j,k,i).
Tensor3 permute_23(const Tensor3& x);

}  // namespace tubal
