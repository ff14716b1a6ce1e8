#include "tubal/reshape.hpp"

#include "tubal/errors.hpp"

#include <algorithm>

namespace tubal {

namespace {

void require_mode(int mode) {
    if (mode < 1 || mode > 3) {
        throw DimensionError("invalid mode " + std::to_string(mode) + " (expected 1, 2 or 3)");
    }
}

// Column of element (i, j, k) in the mode-s unfolding.
Index unfold_column(const Dims3& d, int mode, Index i, Index j, Index k) {
    switch (mode) {
        case 1: return j + k * d.n2;
        case 2: return i + k * d.n1;
        default: return i + j * d.n1;
    }
}

Index unfold_row(int mode, Index i, Index j, Index k) {
    return mode == 1 ? i : mode == 2 ? j : k;
}

}  // namespace

Matrix mode_unfold(const Tensor3& a, int mode) {
    require_mode(mode);
    const Dims3& d = a.dims();
    if (mode == 3) {
        return a.tubes().transpose();
    }
    Matrix out(d[mode], d.count() / std::max<Index>(d[mode], 1));
    for (Index k = 0; k < d.n3; ++k) {
        for (Index j = 0; j < d.n2; ++j) {
            for (Index i = 0; i < d.n1; ++i) {
                out(unfold_row(mode, i, j, k), unfold_column(d, mode, i, j, k)) = a(i, j, k);
            }
        }
    }
    return out;
}

Tensor3 mode_fold(const Matrix& m, int mode, Dims3 dims) {
    require_mode(mode);
    const Index rows = dims[mode];
    const Index cols = rows == 0 ? 0 : dims.count() / rows;
    if (m.rows() != rows || m.cols() != cols) {
        throw DimensionError("mode-" + std::to_string(mode) + " fold of a " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             " matrix into " + to_string(dims));
    }
    Tensor3 out(dims);
    if (mode == 3) {
        out.tubes() = m.transpose();
        return out;
    }
    for (Index k = 0; k < dims.n3; ++k) {
        for (Index j = 0; j < dims.n2; ++j) {
            for (Index i = 0; i < dims.n1; ++i) {
                out(i, j, k) = m(unfold_row(mode, i, j, k), unfold_column(dims, mode, i, j, k));
            }
        }
    }
    return out;
}

Tensor3 mode_product(const Tensor3& a, const Matrix& b, int mode) {
    require_mode(mode);
    if (b.cols() != a.dims()[mode]) {
        throw DimensionError("mode-" + std::to_string(mode) + " product: matrix has " +
                             std::to_string(b.cols()) + " columns, tensor mode has " +
                             std::to_string(a.dims()[mode]));
    }
    Dims3 out_dims = a.dims();
    (mode == 1 ? out_dims.n1 : mode == 2 ? out_dims.n2 : out_dims.n3) = b.rows();
    return mode_fold(b * mode_unfold(a, mode), mode, out_dims);
}

ReshapedMatrix reshape_matrix_to_tensor(const Matrix& m, Index n2) {
    if (n2 < 1) {
        throw ConfigError("reshape width n2 must be positive");
    }
    const Index h = m.cols();
    const Index pad = (n2 - h % n2) % n2;
    const Index n3 = (h + pad) / n2;
    ReshapedMatrix out{Tensor3(m.rows(), n2, n3), pad};
    // Column-major storage makes the reshape a copy plus zero tail.
    std::copy(m.data(), m.data() + m.size(), out.tensor.data().begin());
    return out;
}

Matrix tensor_to_matrix(const Tensor3& x, Index h) {
    if (h < 0 || h > x.n2() * x.n3()) {
        throw DimensionError("matrix width " + std::to_string(h) + " exceeds n2*n3 = " +
                             std::to_string(x.n2() * x.n3()));
    }
    return Eigen::Map<const Matrix>(x.data().data(), x.n1(), h);
}

Tensor3 reshape_mode3(const Tensor3& x, Index p, Index q) {
    if (p < 0 || q < 0 || p * q != x.n1() * x.n2()) {
        throw DimensionError("reshape " + std::to_string(p) + "x" + std::to_string(q) +
                             " does not cover n1*n2 = " + std::to_string(x.n1() * x.n2()));
    }
    Tensor3 out(x.n3(), p, q);
    Eigen::Map<Matrix>(out.data().data(), x.n3(), p * q) = x.tubes().transpose();
    return out;
}

Tensor3 fold3_from_reshaped(const Tensor3& y, Dims3 dims) {
    if (y.n1() != dims.n3 || y.n2() * y.n3() != dims.n1 * dims.n2) {
        throw DimensionError("cannot fold " + to_string(y.dims()) + " back into " + to_string(dims));
    }
    Tensor3 out(dims);
    out.tubes() = Eigen::Map<const Matrix>(y.data().data(), dims.n3, dims.n1 * dims.n2).transpose();
    return out;
}

Tensor3 permute_13(const Tensor3& x) {
    Tensor3 out(x.n1(), x.n3(), x.n2());
    for (Index k = 0; k < x.n3(); ++k) {
        for (Index j = 0; j < x.n2(); ++j) {
            for (Index i = 0; i < x.n1(); ++i) {
                out(i, k, j) = x(i, j, k);
            }
        }
    }
    return out;
}

Tensor3 permute_23(const Tensor3& x) {
    Tensor3 out(x.n2(), x.n3(), x.n1());
    for (Index k = 0; k < x.n3(); ++k) {
        for (Index j = 0; j < x.n2(); ++j) {
            for (Index i = 0; i < x.n1(); ++i) {
                out(j, k, i) = x(i, j, k);
            }
        }
    }
    return out;
}

}  // namespace tubal
