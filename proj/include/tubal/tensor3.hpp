#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace tubal {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

struct Dims3 {
    Index n1 = 0;
    Index n2 = 0;
    Index n3 = 0;

    Index count() const { return n1 * n2 * n3; }
    Index slice_size() const { return n1 * n2; }
    Index operator[](int mode) const { return mode == 1 ? n1 : mode == 2 ? n2 : n3; }

    friend bool operator==(const Dims3&, const Dims3&) = default;
};

std::string to_string(const Dims3& d);

/// Dense real third-order tensor.
///
/// Storage is frontal-slice-major and column-major inside each slice, so
/// element (i, j, k) lives at `i + j*n1 + k*n1*n2`. Frontal slices are
/// contiguous, and the whole buffer read as an `(n1*n2) x n3` column-major
/// matrix has one tube per row.
class Tensor3 {
public:
    using SliceMap = Eigen::Map<Matrix>;
    using ConstSliceMap = Eigen::Map<const Matrix>;

    Tensor3() = default;
    explicit Tensor3(Dims3 dims);
    Tensor3(Index n1, Index n2, Index n3) : Tensor3(Dims3{n1, n2, n3}) {}
    Tensor3(Dims3 dims, std::vector<double> data);

    static Tensor3 zeros(Dims3 dims) { return Tensor3(dims); }
    static Tensor3 constant(Dims3 dims, double value);
    /// First frontal slice is the n x n identity, the rest are zero.
    static Tensor3 identity(Index n, Index n3);
    /// Single frontal slice holding `m`.
    static Tensor3 from_matrix(const Matrix& m);

    const Dims3& dims() const { return dims_; }
    Index n1() const { return dims_.n1; }
    Index n2() const { return dims_.n2; }
    Index n3() const { return dims_.n3; }
    Index size() const { return static_cast<Index>(data_.size()); }

    double& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
    double operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }
    std::size_t offset(Index i, Index j, Index k) const {
        return static_cast<std::size_t>(i + dims_.n1 * (j + dims_.n2 * k));
    }

    SliceMap slice(Index k);
    ConstSliceMap slice(Index k) const;
    /// `(n1*n2) x n3` view; row `i + j*n1` is tube (i, j, :).
    SliceMap tubes();
    ConstSliceMap tubes() const;

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    Tensor3& operator+=(const Tensor3& other);
    Tensor3& operator-=(const Tensor3& other);
    Tensor3& operator*=(double s);
    friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
    friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
    friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
    friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    Dims3 dims_{};
    std::vector<double> data_;
};

double fro_norm(const Tensor3& a);
double max_abs_diff(const Tensor3& a, const Tensor3& b);

/// Throws DimensionError naming `what` when the shapes differ.
void require_same_dims(const Dims3& a, const Dims3& b, const char* what);

}  // namespace tubal
