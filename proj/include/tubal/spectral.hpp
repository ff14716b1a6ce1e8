#pragma once

#include "tubal/tensor3.hpp"

#include <complex>
#include <vector>

namespace tubal {

/// Number of frontal slices kept after a real DFT of length n3: ceil((n3+1)/2).
constexpr Index half_count(Index n3) { return n3 / 2 + 1; }

/// Multiplicity of stored frequency f in the full spectrum: 1 for the DC
/// slice and (n3 even) the Nyquist slice, 2 for every conjugate pair.
constexpr double spectral_weight(Index f, Index n3) {
    return (f == 0 || (n3 % 2 == 0 && f == n3 / 2)) ? 1.0 : 2.0;
}

/// Frontal slices of the mode-3 DFT of a real tensor, first half only.
///
/// Slice f (0-based) holds sum_k A(:,:,k) * exp(-2*pi*i*f*k/n3). Slices
/// f >= half_count(n3) are the conjugates of slice n3 - f and are produced on
/// demand by materialize().
class SpectralTensor {
public:
    SpectralTensor() = default;
    /// Zero spectrum for an n1 x n2 x n3 tensor.
    explicit SpectralTensor(Dims3 dims);
    SpectralTensor(Dims3 dims, std::vector<CMatrix> slices);

    const Dims3& dims() const { return dims_; }
    Index stored() const { return static_cast<Index>(slices_.size()); }

    const CMatrix& slice(Index f) const { return slices_[static_cast<std::size_t>(f)]; }
    CMatrix& slice(Index f) { return slices_[static_cast<std::size_t>(f)]; }
    const std::vector<CMatrix>& slices() const { return slices_; }

    /// Any of the n3 frequency slices, mirroring the stored half.
    CMatrix materialize(Index f) const;

    /// Frobenius norm of the full n3-slice spectrum.
    double full_norm() const;

private:
    Dims3 dims_{};
    std::vector<CMatrix> slices_;
};

SpectralTensor dft_mode3(const Tensor3& a);

/// Inverse of dft_mode3 (carries the 1/n3 factor).
///
/// Throws SymmetryError when the self-conjugate slices (DC and, for even n3,
/// Nyquist) carry more than 1e-6 of the spectrum's mass in their imaginary part.
Tensor3 idft_mode3(const SpectralTensor& s);

/// Full-spectrum squared distance sum_f ||A_f - B_f||_F^2 over all n3 slices.
double spectral_distance_sq(const SpectralTensor& a, const SpectralTensor& b);

}  // namespace tubal
