/**
 * @file reference_element.hpp
 * @brief Exact functionals on the reference tetrahedron, the generalized Vandermonde,
 *        and the reference dual basis with its serialized floating-point form.
 */
#pragma once

#include "quadcurl/dofs.hpp"
#include "quadcurl/exact_linalg.hpp"
#include "quadcurl/geometry.hpp"
#include "quadcurl/polyspace.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace quadcurl {

/// Reference-element functionals in exact arithmetic with unnormalized frames.
/// Each functional is stored as a row over the component-major monomial
/// coefficients of (P_k)^3, so applying it is a dot product.
class ExactReferenceFunctionals {
public:
    explicit ExactReferenceFunctionals(int k);

    [[nodiscard]] int order() const { return k_; }
    [[nodiscard]] int coefficient_count() const { return 3 * monomial_count<3>(k_); }

    /// Row of the functional over the monomial coefficients.
    [[nodiscard]] std::vector<Rational> row(const DofDescriptor& d) const;
    /// L(p) for p of degree <= k.
    [[nodiscard]] Rational apply(const DofDescriptor& d, const VectorPolynomial<Rational>& p) const;
    /// Positive factor s with L_raw = s * L_unit (product of the raw frame vector norms involved).
    [[nodiscard]] double raw_scale(const DofDescriptor& d) const;

private:
    [[nodiscard]] Rational apply_to_column(const DofDescriptor& d, int column) const;
    [[nodiscard]] Rational curl_derivative_at(int column, int comp, const std::array<int, 3>& deriv,
                                              const Triple<Rational>& x) const;
    [[nodiscard]] Poly2<Rational> restrict_to_face(int face, const Poly3<Rational>& p) const;

    int k_;
    int nmono_;
    std::vector<Triple<Rational>> vertices_;
    std::vector<EdgeFrameT<Rational>> edge_frames_;
    std::vector<FaceFrameT<Rational>> face_frames_;
    std::vector<std::vector<Poly1<Rational>>> edge_restrictions_;  // [edge][scalar monomial]
    std::vector<std::vector<Poly2<Rational>>> face_restrictions_;  // [face][scalar monomial]
    std::vector<VectorPolynomial<Rational>> column_curls_;          // curl of each unit column field
    std::vector<VectorPolynomial<Rational>> interior_curl_tests_;
};

struct UnisolvenceCertificate {
    bool determinant_nonzero = false;
    int determinant_sign = 0;
    double determinant_log10 = 0.0;
    bool exact_duality = false;  // L̂_i(N̂_j) = δ_ij exactly
    double seconds = 0.0;
};

/// Exact reference dual basis (raw frames), the Vandermonde and its certificate.
struct ExactReferenceBasis {
    int k = 7;
    std::vector<DofDescriptor> dofs;
    RationalMatrix vandermonde;   // V(i, j) = L̂_i(m_j) over the R_k basis
    RationalMatrix coefficients;  // row j: monomial coefficients of N̂_j (raw-frame duals)
    UnisolvenceCertificate certificate;
};

[[nodiscard]] ExactReferenceBasis build_exact_reference_basis(int k = 7);

/// Floating-point reference basis for the unit-frame functionals.
struct ReferenceBasis {
    int k = 7;
    std::vector<DofDescriptor> dofs;
    /// Row j holds the component-major monomial coefficients of N̂_j over (P_k)^3.
    Eigen::MatrixXd coefficients;
    /// The same in extended precision; the monomial coefficients reach ~1e10, so evaluation
    /// in double loses about seven digits to cancellation.
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> coefficients_ld;
    UnisolvenceCertificate certificate;

    [[nodiscard]] std::size_t size() const { return dofs.size(); }
    [[nodiscard]] VectorPolynomial<double> basis_function(std::size_t j) const;
};

/// Converts the raw-frame exact duals into unit-frame floating-point duals.
[[nodiscard]] ReferenceBasis to_float_basis(const ExactReferenceBasis& exact);

/// max_{i,j} |L̂_i(N̂_j) - δ_ij| with the floating-point functionals.
[[nodiscard]] double float_duality_residual(const ReferenceBasis& basis, int quad_degree = 14);

void save_reference_basis(const ReferenceBasis& basis, const std::string& path);
[[nodiscard]] ReferenceBasis load_reference_basis(const std::string& path);

[[nodiscard]] std::string default_reference_path();

/// The shared k = 7 basis: loaded from the artifact, or rebuilt exactly (and saved) when
/// the artifact is missing, invalid, or a rebuild is requested.
[[nodiscard]] const ReferenceBasis& reference_basis(bool rebuild = false);

}  // namespace quadcurl
