/**
 * @file interpolation.hpp
 * @brief The discretization context (mesh, DOF map, per-element transforms, tabulated
 *        reference basis), the global interpolant, discrete fields, and error norms.
 */
#pragma once

#include "quadcurl/element_transform.hpp"
#include "quadcurl/mesh.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <vector>

namespace quadcurl {

/// Reference basis values at reference points. Row blocks per point: value rows 3q..3q+2,
/// curl rows 3q..3q+2, curl Jacobian rows 9q + 3i + j = d_j (curl N̂)_i.
struct PointTabulation {
    Eigen::MatrixXd value;      // 3 nq x 315
    Eigen::MatrixXd curl;       // 3 nq x 315
    Eigen::MatrixXd curl_jac;   // 9 nq x 315
};

/// Evaluated in extended precision; curl_jac is left empty unless requested.
[[nodiscard]] PointTabulation tabulate_points(const ReferenceBasis& basis, const std::vector<std::array<double, 3>>& points,
                                              bool with_jacobian = true);

/// The same at the points of a tetrahedral rule.
struct ReferenceTabulation {
    QuadratureRule rule;
    Eigen::MatrixXd value;      // 3 nq x 315
    Eigen::MatrixXd curl;       // 3 nq x 315
    Eigen::MatrixXd curl_jac;   // 9 nq x 315

    [[nodiscard]] std::size_t num_points() const { return rule.weights.size(); }
};

[[nodiscard]] ReferenceTabulation tabulate_reference(const ReferenceBasis& basis, int quad_degree);

/// Linear map from the reference curl Jacobian (9 entries, row-major) to the physical curl curl.
[[nodiscard]] Eigen::Matrix<double, 3, 9> curl_curl_map(const AffineMap& map);

/// Mesh, DOF map, and per-element basis transforms. Elements related by a translation share
/// one transform.
class Discretization {
public:
    Discretization(MeshComplex mesh, BoundaryMode mode = BoundaryMode::Trace, int quad_degree = kDefaultQuadratureDegree,
                   bool check_transforms = true);

    [[nodiscard]] const MeshComplex& mesh() const { return mesh_; }
    [[nodiscard]] const DofMap& dofs() const { return dofs_; }
    [[nodiscard]] const ReferenceBasis& basis() const { return *basis_; }
    [[nodiscard]] const ReferenceTabulation& tabulation() const { return tab_; }
    [[nodiscard]] int quad_degree() const { return quad_degree_; }
    [[nodiscard]] const ElementGeometry& geometry(std::size_t t) const { return geoms_[t]; }
    [[nodiscard]] const Eigen::MatrixXd& transform(std::size_t t) const { return shapes_[shape_of_[t]].C; }
    [[nodiscard]] std::size_t shape_of(std::size_t t) const { return shape_of_[t]; }
    [[nodiscard]] std::size_t num_shapes() const { return shapes_.size(); }
    [[nodiscard]] double max_transform_residual() const;
    [[nodiscard]] bool any_fallback() const;

    /// Local coefficients of element t gathered from a global vector.
    [[nodiscard]] Eigen::VectorXd gather(std::size_t t, const Eigen::VectorXd& global) const;

private:
    MeshComplex mesh_;
    DofMap dofs_;
    const ReferenceBasis* basis_;
    int quad_degree_;
    ReferenceTabulation tab_;
    std::vector<ElementGeometry> geoms_;
    std::vector<ElementBasis> shapes_;
    std::vector<std::size_t> shape_of_;
};

/// Key identifying an element up to translation.
[[nodiscard]] std::array<long long, 9> shape_key(const AffineMap& map, double scale);

/// A global coefficient vector on a discretization.
struct DiscreteField {
    const Discretization* disc = nullptr;
    Eigen::VectorXd coeffs;

    /// The restriction to element t as a Cartesian vector field.
    [[nodiscard]] PushedPolynomialField element_field(std::size_t t) const;
};

/// Sets every global DOF to the corresponding functional of the field.
[[nodiscard]] DiscreteField interpolate(const VectorField& field, const Discretization& disc);

/// Local functional values of the field on element t.
[[nodiscard]] Eigen::VectorXd local_dofs(const VectorField& field, const Discretization& disc, std::size_t t);

struct NormTriple {
    double l2 = 0.0;
    double curl = 0.0;
    double curl2 = 0.0;
};

/// ||u - u_h||, ||curl(u - u_h)||, ||curl curl(u - u_h)||.
[[nodiscard]] NormTriple error_norms(const DiscreteField& fh, const VectorField& exact);

/// ||u_h||, ||curl u_h||, ||curl curl u_h||.
[[nodiscard]] NormTriple field_norms(const DiscreteField& fh);

/// |||v|||^2 = ||curl curl v||^2 + ||v||^2.
[[nodiscard]] inline double energy_squared(const NormTriple& n) { return n.curl2 * n.curl2 + n.l2 * n.l2; }

/// sqrt(|||u_fine|||^2 - |||u_coarse|||^2). Throws NegativeDifference below -1e-12.
[[nodiscard]] double energy_norm_difference(const NormTriple& coarse, const NormTriple& fine);
[[nodiscard]] double energy_norm_difference(const DiscreteField& coarse, const DiscreteField& fine);

}  // namespace quadcurl
