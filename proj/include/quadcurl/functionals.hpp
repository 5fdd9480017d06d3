/**
 * @file functionals.hpp
 * @brief Floating-point application of the element functionals on a physical
 *        tetrahedron whose local vertex order is ascending in global id.
 */
#pragma once

#include "quadcurl/dofs.hpp"
#include "quadcurl/field.hpp"
#include "quadcurl/geometry.hpp"
#include "quadcurl/quadrature.hpp"

#include <array>
#include <vector>

namespace quadcurl {

struct ElementGeometry {
    std::array<Vec3, 4> x;
    AffineMap map;
    std::array<EdgeFrame, 6> edge;
    std::array<FaceFrame, 4> face;
    std::array<double, 6> edge_length{};
    std::array<double, 4> face_area{};

    [[nodiscard]] Vec3 edge_point(int e, double t) const;
    /// Face chart G(s, t) = P0 + s (P1 - P0) + t (P2 - P0).
    [[nodiscard]] Vec3 face_point(int f, double s, double t) const;
};

/// Geometry and the canonical entity frames of the element with vertices x (in ascending global-id order).
[[nodiscard]] ElementGeometry make_element_geometry(const std::array<Vec3, 4>& x);

/// The reference tetrahedron as an element.
[[nodiscard]] const ElementGeometry& reference_geometry();

/// Interior curl-moment test fields (x̂ × P_{k-7} basis) in double precision.
[[nodiscard]] const std::vector<VectorPolynomial<double>>& interior_curl_tests(int k);

/// Value of one functional (unit frames) on the element for the given field.
[[nodiscard]] double apply_dof(const DofDescriptor& d, const ElementGeometry& geom, const VectorField& field,
                               int quad_degree = kDefaultQuadratureDegree);

/// All functionals of a list, sharing field evaluations at quadrature points.
[[nodiscard]] std::vector<double> apply_dofs(const std::vector<DofDescriptor>& dofs, const ElementGeometry& geom,
                                             const VectorField& field, int quad_degree = kDefaultQuadratureDegree);

}  // namespace quadcurl
