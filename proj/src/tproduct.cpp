#include "tubal/tproduct.hpp"

#include "tubal/errors.hpp"
#include "tubal/spectral.hpp"

namespace tubal {

namespace {

void require_conformable(const Tensor3& a, const Tensor3& b) {
    if (a.n2() != b.n1() || a.n3() != b.n3()) {
        throw DimensionError("t-product of " + to_string(a.dims()) + " and " + to_string(b.dims()));
    }
}

}  // namespace

Tensor3 tprod(const Tensor3& a, const Tensor3& b) {
    require_conformable(a, b);
    const SpectralTensor sa = dft_mode3(a);
    const SpectralTensor sb = dft_mode3(b);
    const Dims3 out_dims{a.n1(), b.n2(), a.n3()};
    SpectralTensor prod(out_dims);
    for (Index f = 0; f < prod.stored(); ++f) {
        prod.slice(f).noalias() = sa.slice(f) * sb.slice(f);
    }
    return idft_mode3(prod);
}

Matrix bcirc(const Tensor3& a) {
    const Index n1 = a.n1();
    const Index n2 = a.n2();
    const Index n3 = a.n3();
    Matrix out(n1 * n3, n2 * n3);
    for (Index bi = 0; bi < n3; ++bi) {
        for (Index bj = 0; bj < n3; ++bj) {
            out.block(bi * n1, bj * n2, n1, n2) = a.slice(((bi - bj) % n3 + n3) % n3);
        }
    }
    return out;
}

Tensor3 tprod_reference(const Tensor3& a, const Tensor3& b) {
    require_conformable(a, b);
    const Index n3 = a.n3();
    Matrix unfolded(b.n1() * n3, b.n2());
    for (Index k = 0; k < n3; ++k) {
        unfolded.block(k * b.n1(), 0, b.n1(), b.n2()) = b.slice(k);
    }
    const Matrix product = bcirc(a) * unfolded;
    Tensor3 out(a.n1(), b.n2(), n3);
    for (Index k = 0; k < n3; ++k) {
        out.slice(k) = product.block(k * a.n1(), 0, a.n1(), b.n2());
    }
    return out;
}

}  // namespace tubal
