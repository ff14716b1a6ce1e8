#include "oracles.hpp"
#include "suites.hpp"

#include "tubal/errors.hpp"
#include "tubal/mask.hpp"
#include "tubal/rank.hpp"
#include "tubal/reshape.hpp"
#include "tubal/sampling.hpp"
#include "tubal/spectral.hpp"
#include "tubal/tproduct.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tubal;
using oracle::cplx;

namespace {

Tensor3 tensor_of(Dims3 d, std::initializer_list<double> values) {
    return Tensor3(d, std::vector<double>(values));
}

double rel_diff(const Tensor3& a, const Tensor3& b) {
    const double scale = std::max(fro_norm(b), 1e-300);
    return fro_norm(a - b) / scale;
}

}  // namespace

// ---- Tensor3 ----

TEST(Tensor3, LayoutIsSliceMajorColumnMajor) {
    Tensor3 t(2, 3, 2);
    t(1, 2, 1) = 7.0;
    EXPECT_EQ(t.data()[1 + 2 * 2 + 1 * 6], 7.0);
    EXPECT_EQ(t.slice(1)(1, 2), 7.0);
    EXPECT_EQ(t.tubes()(1 + 2 * 2, 1), 7.0);
}

TEST(Tensor3, RejectsWrongDataLength) {
    EXPECT_THROW(Tensor3(Dims3{2, 2, 2}, std::vector<double>(7)), DimensionError);
}

TEST(Tensor3, FroNormOfOnes) {
    EXPECT_DOUBLE_EQ(fro_norm(Tensor3::constant({2, 2, 2}, 1.0)), std::sqrt(8.0));
}

// ---- DFT ----

TEST(Dft, SingleSliceIsIdentity) {
    std::mt19937_64 rng(1);
    const Tensor3 a = oracle::random_tensor({3, 4, 1}, rng);
    const SpectralTensor s = dft_mode3(a);
    ASSERT_EQ(s.stored(), 1);
    EXPECT_EQ(s.slice(0).real(), a.slice(0));
    EXPECT_EQ(s.slice(0).imag().norm(), 0.0);
}

TEST(Dft, ConstantTubeConcentratesAtZeroFrequency) {
    const Index n3 = 6;
    const SpectralTensor s = dft_mode3(Tensor3::constant({1, 1, n3}, 2.5));
    for (Index f = 0; f < n3; ++f) {
        const cplx v = s.materialize(f)(0, 0);
        if (f == 0) {
            EXPECT_NEAR(v.real(), n3 * 2.5, 1e-12);
        } else {
            EXPECT_NEAR(std::abs(v), 0.0, 1e-12);
        }
    }
}

TEST(Dft, MatchesDenseDftMatrix) {
    std::mt19937_64 rng(2);
    for (Index n3 : {1, 2, 3, 4, 5, 8}) {
        const Tensor3 a = oracle::random_tensor({2, 2, n3}, rng);
        const auto expected = oracle::dft_slices(a);
        const SpectralTensor s = dft_mode3(a);
        ASSERT_EQ(s.stored(), half_count(n3));
        for (Index f = 0; f < n3; ++f) {
            EXPECT_LT((s.materialize(f) - expected[static_cast<std::size_t>(f)]).norm(), 1e-12)
                << "n3=" << n3 << " f=" << f;
        }
    }
}

TEST(Dft, StoresCeilingOfHalfPlusOne) {
    for (Index n3 = 1; n3 <= 12; ++n3) {
        EXPECT_EQ(half_count(n3), (n3 + 2) / 2);  // ceil((n3 + 1) / 2)
    }
}

TEST(Dft, RoundTripWithinTolerance) {
    std::mt19937_64 rng(3);
    for (Index n3 : {1, 2, 5, 6, 9}) {
        const Tensor3 a = oracle::random_tensor({3, 3, n3}, rng);
        EXPECT_LE(fro_norm(idft_mode3(dft_mode3(a)) - a), 1e-12 * fro_norm(a));
    }
}

TEST(Dft, ZeroSpectrumInvertsToZero) {
    const Tensor3 z = idft_mode3(SpectralTensor(Dims3{2, 3, 4}));
    EXPECT_EQ(z, Tensor3::zeros({2, 3, 4}));
}

TEST(Dft, TwoPointInverseMatchesOracle) {
    std::vector<CMatrix> slices = {CMatrix::Constant(1, 2, cplx(3.0, 0.0)), CMatrix::Constant(1, 2, cplx(1.0, 0.0))};
    slices[0](0, 1) = 5.0;
    slices[1](0, 1) = -1.0;
    const Tensor3 got = idft_mode3(SpectralTensor({1, 2, 2}, slices));
    const Tensor3 want = oracle::idft_slices(slices);
    EXPECT_LT(max_abs_diff(got, want), 1e-14);
    EXPECT_DOUBLE_EQ(got(0, 0, 0), 2.0);
    EXPECT_DOUBLE_EQ(got(0, 0, 1), 1.0);
}

TEST(Dft, InverseRejectsBrokenSymmetry) {
    std::vector<CMatrix> slices = {CMatrix::Constant(2, 2, cplx(1.0, 1.0)), CMatrix::Zero(2, 2),
                                   CMatrix::Zero(2, 2)};
    EXPECT_THROW(idft_mode3(SpectralTensor({2, 2, 4}, slices)), SymmetryError);
}

TEST(Dft, ConjugateSymmetryIsExactOnMaterialization) {
    std::mt19937_64 rng(4);
    for (Index n3 : {2, 3, 4, 7, 10}) {
        const SpectralTensor s = dft_mode3(oracle::random_tensor({3, 2, n3}, rng));
        EXPECT_EQ(s.slice(0).imag().norm(), 0.0);
        for (Index f = 1; f < n3; ++f) {
            EXPECT_EQ(s.materialize(n3 - f), s.materialize(f).conjugate()) << "n3=" << n3 << " f=" << f;
        }
    }
}

TEST(Dft, ParsevalHolds) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n3 = 1 + trial % 7;
        const Tensor3 a = oracle::random_tensor({1 + trial % 4, 2 + trial % 3, n3}, rng);
        const double lhs = fro_norm(a) * fro_norm(a);
        const double full = dft_mode3(a).full_norm();
        EXPECT_NEAR(lhs, full * full / static_cast<double>(n3), 1e-10 * lhs);
    }
}

// ---- t-product ----

TEST(TProduct, IdentityIsNeutral) {
    std::mt19937_64 rng(6);
    const Tensor3 a = oracle::random_tensor({3, 4, 5}, rng);
    EXPECT_LT(max_abs_diff(tprod(a, Tensor3::identity(4, 5)), a), 1e-12);
}

TEST(TProduct, SingleSliceIsMatrixProduct) {
    std::mt19937_64 rng(7);
    const Tensor3 a = oracle::random_tensor({3, 2, 1}, rng);
    const Tensor3 b = oracle::random_tensor({2, 4, 1}, rng);
    const Matrix want = a.slice(0) * b.slice(0);
    EXPECT_LT((tprod(a, b).slice(0) - want).norm(), 1e-12);
    EXPECT_LT((tprod_reference(a, b).slice(0) - want).norm(), 1e-12);
}

TEST(TProduct, MatchesBlockCirculantAndLoops) {
    std::mt19937_64 rng(8);
    const Tensor3 a = oracle::random_tensor({3, 2, 4}, rng);
    const Tensor3 b = oracle::random_tensor({2, 5, 4}, rng);
    const Tensor3 loops = oracle::tprod_loops(a, b);
    EXPECT_LT(rel_diff(tprod(a, b), loops), 1e-12);
    EXPECT_LT(rel_diff(tprod_reference(a, b), loops), 1e-12);
}

TEST(TProduct, ReferenceIdentityTube) {
    const Tensor3 a = tensor_of({1, 1, 3}, {1, 2, 3});
    const Tensor3 b = tensor_of({1, 1, 3}, {1, 0, 0});
    EXPECT_EQ(tprod_reference(a, b), a);
}

TEST(TProduct, ReferenceTwoPointConvolution) {
    const double a1 = 2, a2 = 3, b1 = 5, b2 = 7;
    const Tensor3 c = tprod_reference(tensor_of({1, 1, 2}, {a1, a2}), tensor_of({1, 1, 2}, {b1, b2}));
    EXPECT_DOUBLE_EQ(c(0, 0, 0), a1 * b1 + a2 * b2);
    EXPECT_DOUBLE_EQ(c(0, 0, 1), a2 * b1 + a1 * b2);
}

TEST(TProduct, SpectralAgreesWithReferenceOnRandomSmallDims) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<Index> dim(1, 6);
    std::uniform_int_distribution<Index> depth(1, 5);
    for (int trial = 0; trial < 50; ++trial) {
        const Index n1 = dim(rng), r = dim(rng), n2 = dim(rng), n3 = depth(rng);
        const Tensor3 a = oracle::random_tensor({n1, r, n3}, rng);
        const Tensor3 b = oracle::random_tensor({r, n2, n3}, rng);
        EXPECT_LT(rel_diff(tprod(a, b), tprod_reference(a, b)), 1e-10);
    }
}

TEST(TProduct, RejectsMismatchedShapes) {
    EXPECT_THROW(tprod(Tensor3(2, 3, 4), Tensor3(2, 3, 4)), DimensionError);
    EXPECT_THROW(tprod(Tensor3(2, 3, 4), Tensor3(3, 3, 5)), DimensionError);
    EXPECT_THROW(tprod_reference(Tensor3(2, 3, 4), Tensor3(2, 3, 4)), DimensionError);
}

TEST(Bcirc, ThreeTubeLayout) {
    const Matrix m = bcirc(tensor_of({1, 1, 3}, {1, 2, 3}));
    Matrix want(3, 3);
    want << 1, 3, 2,
            2, 1, 3,
            3, 2, 1;
    EXPECT_EQ(m, want);
}

TEST(Bcirc, SingleSliceIsItself) {
    std::mt19937_64 rng(10);
    const Tensor3 a = oracle::random_tensor({3, 2, 1}, rng);
    EXPECT_EQ(bcirc(a), Matrix(a.slice(0)));
}

TEST(Bcirc, TwoSliceBlocks) {
    const Tensor3 a = tensor_of({2, 1, 2}, {1, 2, 3, 4});
    Matrix want(4, 2);
    want << 1, 3,
            2, 4,
            3, 1,
            4, 2;
    EXPECT_EQ(bcirc(a), want);
}

// ---- unfoldings ----

TEST(Unfold, ModeOneOfSingleSliceIsTheSlice) {
    const Tensor3 a = tensor_of({2, 2, 1}, {1, 2, 3, 4});
    EXPECT_EQ(mode_unfold(a, 1), Matrix(a.slice(0)));
}

TEST(Unfold, ModeThreeOfTubeIsColumn) {
    const Tensor3 a = tensor_of({1, 1, 4}, {1, 2, 3, 4});
    const Matrix m = mode_unfold(a, 3);
    ASSERT_EQ(m.rows(), 4);
    ASSERT_EQ(m.cols(), 1);
    EXPECT_EQ(m(2, 0), 3.0);
}

TEST(Unfold, AllModesMatchIndexFormula) {
    std::mt19937_64 rng(11);
    const Tensor3 a = oracle::random_tensor({2, 3, 4}, rng);
    for (int mode = 1; mode <= 3; ++mode) {
        EXPECT_EQ(mode_unfold(a, mode), oracle::unfold_by_index(a, mode)) << "mode " << mode;
        EXPECT_EQ(mode_fold(mode_unfold(a, mode), mode, a.dims()), a) << "mode " << mode;
    }
}

TEST(Unfold, RejectsBadModeAndShape) {
    EXPECT_THROW(mode_unfold(Tensor3(2, 2, 2), 0), DimensionError);
    EXPECT_THROW(mode_unfold(Tensor3(2, 2, 2), 4), DimensionError);
    EXPECT_THROW(mode_fold(Matrix::Zero(2, 3), 1, {2, 2, 2}), DimensionError);
}

TEST(ModeProduct, IdentityLeavesTensorUnchanged) {
    std::mt19937_64 rng(12);
    const Tensor3 a = oracle::random_tensor({2, 3, 4}, rng);
    for (int mode = 1; mode <= 3; ++mode) {
        EXPECT_LT(max_abs_diff(mode_product(a, Matrix::Identity(a.dims()[mode], a.dims()[mode]), mode), a), 1e-15);
    }
}

TEST(ModeProduct, ScalarDoubles) {
    const Tensor3 a = tensor_of({1, 1, 1}, {1.5});
    EXPECT_EQ(mode_product(a, Matrix::Constant(1, 1, 2.0), 1)(0, 0, 0), 3.0);
}

TEST(ModeProduct, MatchesTripleLoop) {
    std::mt19937_64 rng(13);
    const Tensor3 a = oracle::random_tensor({2, 3, 4}, rng);
    const Matrix b = oracle::random_matrix(5, 4, rng);
    EXPECT_LT(max_abs_diff(mode_product(a, b, 3), oracle::mode_product_loops(a, b, 3)), 1e-12);
    const Matrix c = oracle::random_matrix(2, 3, rng);
    EXPECT_LT(max_abs_diff(mode_product(a, c, 2), oracle::mode_product_loops(a, c, 2)), 1e-12);
}

TEST(ModeProduct, ComposesAsMatrixProduct) {
    std::mt19937_64 rng(14);
    const Tensor3 a = oracle::random_tensor({3, 2, 4}, rng);
    const Matrix b1 = oracle::random_matrix(5, 3, rng);
    const Matrix b2 = oracle::random_matrix(2, 5, rng);
    const Tensor3 lhs = mode_product(mode_product(a, b1, 1), b2, 1);
    EXPECT_LT(max_abs_diff(lhs, mode_product(a, b2 * b1, 1)), 1e-12 * std::max(1.0, fro_norm(lhs)));
}

TEST(ModeProduct, RejectsWrongWidth) {
    EXPECT_THROW(mode_product(Tensor3(2, 3, 4), Matrix::Zero(2, 5), 3), DimensionError);
}

// ---- matrix <-> tensor reshape ----

TEST(MatrixReshape, ExactMultipleHasNoPadding) {
    Matrix m(2, 6);
    m << 1, 2, 3, 4, 5, 6,
         7, 8, 9, 10, 11, 12;
    const ReshapedMatrix r = reshape_matrix_to_tensor(m, 3);
    EXPECT_EQ(r.pad, 0);
    EXPECT_EQ(r.tensor.dims(), (Dims3{2, 3, 2}));
    EXPECT_EQ(Matrix(r.tensor.slice(0)), Matrix(m.leftCols(3)));
    EXPECT_EQ(Matrix(r.tensor.slice(1)), Matrix(m.rightCols(3)));
}

TEST(MatrixReshape, PadsWithZeroColumns) {
    std::mt19937_64 rng(15);
    const Matrix m = oracle::random_matrix(2, 5, rng);
    const ReshapedMatrix r = reshape_matrix_to_tensor(m, 3);
    EXPECT_EQ(r.pad, 1);
    EXPECT_EQ(r.tensor.n3(), 2);
    EXPECT_EQ(r.tensor.slice(1).col(2).norm(), 0.0);
    EXPECT_EQ(r.tensor.slice(1).col(1), m.col(4));
}

TEST(MatrixReshape, RoundTrips) {
    std::mt19937_64 rng(16);
    for (auto [h, n2] : {std::pair<Index, Index>{12, 4}, {13, 4}, {7, 1}, {5, 9}}) {
        const Matrix m = oracle::random_matrix(4, h, rng);
        const ReshapedMatrix r = reshape_matrix_to_tensor(m, n2);
        EXPECT_EQ((h + r.pad) % n2, 0);
        EXPECT_LT(r.pad, n2);
        EXPECT_EQ(tensor_to_matrix(r.tensor, h), m);
    }
}

TEST(MatrixReshape, RejectsWidthBeyondTensor) {
    EXPECT_THROW(tensor_to_matrix(Tensor3(2, 3, 2), 7), DimensionError);
}

// ---- mode-3 reshape ----

TEST(Mode3Reshape, SingleColumnGeometryIsUnfolding) {
    std::mt19937_64 rng(17);
    const Tensor3 x = oracle::random_tensor({2, 3, 4}, rng);
    const Tensor3 y = reshape_mode3(x, 6, 1);
    EXPECT_EQ(y.dims(), (Dims3{4, 6, 1}));
    EXPECT_EQ(Matrix(y.slice(0)), mode_unfold(x, 3));
}

TEST(Mode3Reshape, FirstUnfoldingEqualsThirdUnfolding) {
    std::mt19937_64 rng(18);
    const Tensor3 x = oracle::random_tensor({2, 3, 4}, rng);
    const Tensor3 y = reshape_mode3(x, 3, 2);
    EXPECT_EQ(oracle::unfold_by_index(y, 1), oracle::unfold_by_index(x, 3));
    const Matrix x3 = oracle::unfold_by_index(x, 3);
    for (Index k = 0; k < 2; ++k) {
        EXPECT_EQ(Matrix(y.slice(k)), Matrix(x3.middleCols(k * 3, 3)));
    }
}

TEST(Mode3Reshape, RoundTrips) {
    std::mt19937_64 rng(19);
    const Tensor3 x = oracle::random_tensor({4, 3, 5}, rng);
    for (auto [p, q] : {std::pair<Index, Index>{12, 1}, {6, 2}, {1, 12}}) {
        EXPECT_EQ(fold3_from_reshaped(reshape_mode3(x, p, q), x.dims()), x);
    }
    EXPECT_THROW(reshape_mode3(x, 5, 2), DimensionError);
    EXPECT_THROW(fold3_from_reshaped(Tensor3(4, 6, 2), x.dims()), DimensionError);
    EXPECT_THROW(fold3_from_reshaped(Tensor3(5, 5, 2), x.dims()), DimensionError);
}

TEST(Permute, MatchesDefiningIndexMaps) {
    std::mt19937_64 rng(20);
    const Tensor3 x = oracle::random_tensor({2, 3, 4}, rng);
    const Tensor3 x13 = permute_13(x);
    const Tensor3 x23 = permute_23(x);
    EXPECT_EQ(x13.dims(), (Dims3{2, 4, 3}));
    EXPECT_EQ(x23.dims(), (Dims3{3, 4, 2}));
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 3; ++j) {
            for (Index k = 0; k < 4; ++k) {
                EXPECT_EQ(x(i, j, k), x13(i, k, j));
                EXPECT_EQ(x(i, j, k), x23(j, k, i));
            }
        }
    }
}

// ---- ranks ----

TEST(Rank, ZeroTensorHasRankZero) {
    const MultiRank r = multi_rank(Tensor3(3, 3, 4));
    EXPECT_EQ(r, MultiRank::uniform(4, 0));
    EXPECT_EQ(tubal_rank(Tensor3(3, 3, 4)), 0);
}

TEST(Rank, IdentityIsFullOnEverySlice) {
    EXPECT_EQ(multi_rank(Tensor3::identity(3, 5)), MultiRank::uniform(5, 3));
}

TEST(Rank, ProductOfThinFactorsMatchesSvdOracle) {
    std::mt19937_64 rng(21);
    const Tensor3 p = oracle::random_tensor({6, 2, 4}, rng);
    const Tensor3 q = oracle::random_tensor({2, 5, 4}, rng);
    const Tensor3 x = tprod(p, q);
    EXPECT_EQ(tubal_rank(x), 2);
    EXPECT_EQ(oracle::tubal_rank(x, 1e-10), 2);
    const auto slices = oracle::dft_slices(x);
    const MultiRank r = multi_rank(x);
    for (Index k = 0; k < 4; ++k) {
        EXPECT_EQ(r[k], oracle::svd_rank(slices[static_cast<std::size_t>(k)], 1e-10));
    }
}

TEST(Rank, MultiRankIsSymmetric) {
    std::mt19937_64 rng(22);
    for (Index n3 : {2, 5, 6}) {
        EXPECT_TRUE(multi_rank(oracle::random_tensor({3, 4, n3}, rng)).is_symmetric());
    }
}

TEST(Rank, SetPairKeepsMirror) {
    MultiRank r = MultiRank::uniform(6, 4);
    r.set_pair(2, 1);
    EXPECT_EQ(r[2], 1);
    EXPECT_EQ(r[4], 1);
    EXPECT_TRUE(r.is_symmetric());
    EXPECT_EQ(r.tubal(), 4);
}

// ---- masks and projection ----

TEST(Project, AllObservedReturnsData) {
    std::mt19937_64 rng(23);
    const Tensor3 x = oracle::random_tensor({2, 3, 2}, rng);
    const Tensor3 m = oracle::random_tensor({2, 3, 2}, rng);
    EXPECT_EQ(project(x, ObservationMask::all(x.dims()), m), m);
    EXPECT_EQ(project(x, ObservationMask::none(x.dims()), m), x);
}

TEST(Project, SplitsEntriesByMask) {
    std::mt19937_64 rng(24);
    const Dims3 d{3, 3, 3};
    const Tensor3 x = oracle::random_tensor(d, rng);
    const Tensor3 m = oracle::random_tensor(d, rng);
    const ObservationMask mask = generate_mask(d, 0.5, 9);
    const Tensor3 got = project(x, mask, m);
    for (Index i = 0; i < 3; ++i) {
        for (Index j = 0; j < 3; ++j) {
            for (Index k = 0; k < 3; ++k) {
                EXPECT_EQ(got(i, j, k), mask.at(i, j, k) ? m(i, j, k) : x(i, j, k));
            }
        }
    }
    EXPECT_EQ(restrict_to(m, mask) + restrict_to_complement(x, mask), got);
}

TEST(Project, MatrixMaskPaddingIsObserved) {
    ObservationMask mm({2, 5, 1}, false);
    mm.observed[0] = 1;
    const ObservationMask t = reshape_matrix_mask(mm, 3);
    EXPECT_EQ(t.dims, (Dims3{2, 3, 2}));
    EXPECT_TRUE(t.pad_observed_zero);
    EXPECT_TRUE(t.at(0, 0, 0));
    EXPECT_TRUE(t.at(0, 2, 1));
    EXPECT_TRUE(t.at(1, 2, 1));
    EXPECT_EQ(t.count(), 3);
}

// ---- property suites at reduced size ----

TEST(Suites, Algebra) {
    const suites::Tally t = suites::algebra(40, 31);
    EXPECT_TRUE(t.ok()) << t.summary();
}

TEST(Suites, RankLaws) {
    const suites::Tally t = suites::rank_laws(10, 32);
    EXPECT_TRUE(t.ok()) << t.summary();
}
