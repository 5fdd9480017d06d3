/**
 * @file test_reference_element.cpp
 * @brief Exact unisolvence, float duality, and the serialized reference basis.
 */
#include "quadcurl/errors.hpp"
#include "quadcurl/reference_element.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

namespace quadcurl {
namespace {

const ExactReferenceBasis& exact()
{
    static const ExactReferenceBasis b = build_exact_reference_basis(7);
    return b;
}

TEST(ExactReference, VandermondeIsNonsingular)
{
    const auto& b = exact();
    EXPECT_EQ(b.vandermonde.rows(), 315u);
    EXPECT_EQ(b.vandermonde.cols(), 315u);
    EXPECT_TRUE(b.certificate.determinant_nonzero);
    EXPECT_NE(b.certificate.determinant_sign, 0);
}

TEST(ExactReference, DualityIsExact)
{
    EXPECT_TRUE(exact().certificate.exact_duality);
}

TEST(ExactReference, FunctionalsReproduceDeltaOnDuals)
{
    // Spot check through the public functional interface in rational arithmetic
    const auto& b = exact();
    const ExactReferenceFunctionals f(7);
    for (std::size_t j : {0u, 50u, 130u, 200u, 314u}) {
        std::vector<Rational> row(b.coefficients.cols());
        for (std::size_t c = 0; c < row.size(); ++c) {
            row[c] = b.coefficients(j, c);
        }
        const auto p = VectorPolynomial<Rational>::unflatten(row, 7);
        for (std::size_t i : {0u, 50u, 130u, 200u, 314u}) {
            EXPECT_EQ(f.apply(b.dofs[i], p), Rational(i == j ? 1 : 0)) << i << "," << j;
        }
    }
}

TEST(ExactReference, UnsupportedOrderRejected)
{
    EXPECT_THROW((void)build_exact_reference_basis(6), BadOrder);
}

TEST(FloatReference, DualityResidualSmall)
{
    const ReferenceBasis& b = reference_basis();
    EXPECT_EQ(b.size(), 315u);
    EXPECT_LE(float_duality_residual(b), 1e-8);
}

TEST(FloatReference, ConversionMatchesArtifact)
{
    const ReferenceBasis fresh = to_float_basis(exact());
    const ReferenceBasis& loaded = reference_basis();
    EXPECT_EQ((fresh.coefficients - loaded.coefficients).cwiseAbs().maxCoeff(), 0.0);
}

TEST(FloatReference, SaveLoadRoundTrip)
{
    const ReferenceBasis& b = reference_basis();
    const std::string path = ::testing::TempDir() + "quadcurl_ref_roundtrip.txt";
    save_reference_basis(b, path);
    const ReferenceBasis r = load_reference_basis(path);
    EXPECT_EQ(r.coefficients, b.coefficients);
    EXPECT_EQ(r.coefficients_ld, b.coefficients_ld);
    EXPECT_EQ(r.dofs.size(), b.dofs.size());
    std::remove(path.c_str());
}

TEST(FloatReference, CorruptArtifactRejected)
{
    const std::string path = ::testing::TempDir() + "quadcurl_ref_corrupt.txt";
    {
        std::ofstream out(path);
        out << "quadcurl-reference-basis 2\nnot a basis\n";
    }
    EXPECT_THROW((void)load_reference_basis(path), ArtifactError);
    EXPECT_THROW((void)load_reference_basis(path + ".missing"), ArtifactError);
    std::remove(path.c_str());
}

}  // namespace
}  // namespace quadcurl
