/**
 * @file dofs.hpp
 * @brief Descriptors for the element degrees of freedom and the enlarged functional
 *        set used by the basis transformation, with their local ordering.
 */
#pragma once

#include "quadcurl/polynomial.hpp"

#include <array>
#include <string>
#include <vector>

namespace quadcurl {

enum class DofKind {
    VertexCurl,
    VertexCurlGrad,
    VertexCurlHess,
    EdgeTangMoment,
    EdgeCurlValue,
    EdgeCurlDirDeriv_n,
    EdgeCurlDirDeriv_m,
    EdgeCurlDirDeriv_tau,  // only in the enlarged set
    FaceUMoment,
    FaceCurlTangMoment,
    FaceCurlNormMoment,
    InteriorUMoment,
    InteriorCurlMoment,
};

enum class EntityType { Vertex = 0, Edge = 1, Face = 2, Interior = 3 };

[[nodiscard]] std::string to_string(DofKind kind);

/// Directions of the edge frame, used for edge directional derivatives.
enum FrameDir { Tau = 0, Normal = 1, Binormal = 2 };

struct DofDescriptor {
    DofKind kind = DofKind::VertexCurl;
    EntityType entity_type = EntityType::Vertex;
    int entity = 0;       // local vertex / edge / face index, 0 for the interior
    int component = -1;   // Cartesian component of curl u, where applicable
    /// Derivative multi-index on curl u (vertex DOFs); e.g. {1,0,1} is d_xz.
    std::array<int, 3> deriv{0, 0, 0};
    int node = -1;        // node index along the edge
    Rational node_param;  // node parameter t on the edge (from the lower-id endpoint)
    int test = -1;        // index of the test function
    int dir_a = -1;       // edge derivative: differentiated component along frame direction a
    int dir_b = -1;       // edge derivative: derivative direction b
    int order = 7;        // polynomial order k of the element
    int local_index = 0;
    int entity_offset = 0;  // position within the entity's block
};

/// Entity-class counts from the closed-form tallies.
struct DofCounts {
    int vertex = 0;
    int edge = 0;
    int face = 0;
    int interior = 0;
    [[nodiscard]] int total() const { return vertex + edge + face + interior; }
};

[[nodiscard]] DofCounts dof_counts_formula(int k);

/// Per-entity DOF counts for order k: {per vertex, per edge, per face, interior}.
[[nodiscard]] std::array<int, 4> per_entity_counts(int k);

/// The element DOFs in local order. Throws BadOrder for k < 7.
[[nodiscard]] std::vector<DofDescriptor> enumerate_dofs(int k);

/// Counts of the enumerated list by entity class.
[[nodiscard]] DofCounts count_by_entity(const std::vector<DofDescriptor>& dofs);

/// The enlarged 383-functional set for k = 7 (all derivative components, tangential
/// edge derivatives, face normal curl means).
[[nodiscard]] std::vector<DofDescriptor> enumerate_star_functionals();

/// Shifted Legendre polynomial of degree r on [0, 1].
template <typename T>
[[nodiscard]] Poly1<T> shifted_legendre(int r)
{
    Poly1<T> p(r);
    for (int j = 0; j <= r; ++j) {
        T c = T(static_cast<long>(binomial(r, j) * binomial(r + j, j)));
        if ((r + j) % 2 == 1) {
            c = -c;
        }
        p[static_cast<std::size_t>(j)] = c;
    }
    return p;
}

/// Second-derivative multi-indices in the order xx, yy, zz, xz, xy, yz.
[[nodiscard]] const std::array<std::array<int, 3>, 6>& second_derivative_order();

/// Node parameters of curl values (first set) and directional derivatives (second set).
[[nodiscard]] std::vector<Rational> edge_value_nodes(int k);
[[nodiscard]] std::vector<Rational> edge_derivative_nodes(int k);

}  // namespace quadcurl
