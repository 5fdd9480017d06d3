/**
 * @file mesh.hpp
 * @brief Structured tetrahedral meshes (unit cube, L-shaped prism), global entity
 *        enumeration, and the entity-blocked global DOF numbering with boundary classification.
 */
#pragma once

#include "quadcurl/dofs.hpp"
#include "quadcurl/functionals.hpp"
#include "quadcurl/geometry.hpp"

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace quadcurl {

struct MeshComplex {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 4>> tets;        // ascending vertex ids
    std::vector<std::array<int, 2>> edges;       // (p, q) with p < q
    std::vector<std::array<int, 3>> faces;       // ascending vertex ids
    std::vector<std::array<int, 6>> tet_edges;   // local edge -> global edge
    std::vector<std::array<int, 4>> tet_faces;   // local face -> global face
    std::vector<std::array<int, 2>> face_tets;   // incident tets, -1 when absent
    std::vector<char> boundary_vertex;
    std::vector<char> boundary_edge;
    std::vector<char> boundary_face;
    double h = 1.0;  // cube edge length of the structured grid

    [[nodiscard]] std::size_t num_vertices() const { return vertices.size(); }
    [[nodiscard]] std::size_t num_tets() const { return tets.size(); }
    [[nodiscard]] std::array<Vec3, 4> tet_vertices(std::size_t t) const;
    [[nodiscard]] ElementGeometry geometry(std::size_t t) const;
    [[nodiscard]] std::size_t num_boundary_faces() const;
    /// V - E + F - T
    [[nodiscard]] long euler_characteristic() const;
    /// Unit normal of a boundary face pointing out of its single incident tet.
    [[nodiscard]] Vec3 boundary_normal(std::size_t face) const;
};

/// Builds entities, incidences and boundary flags. Tet vertex tuples are sorted ascending.
[[nodiscard]] MeshComplex mesh_from_tets(std::vector<Vec3> vertices, std::vector<std::array<int, 4>> tets, double h = 1.0);

/// N^3 cubes, each split into the 6 Kuhn tetrahedra around its main diagonal.
[[nodiscard]] MeshComplex cube_mesh(int N);

/// cube_mesh(N) without the cubes in [1/2, 1) x (0, 1/2] x [0, 1]. Throws OddSubdivision for odd N.
[[nodiscard]] MeshComplex lshape_mesh(int N);

/// Two tetrahedra sharing one face.
[[nodiscard]] MeshComplex two_element_mesh();

/// Plain-text dump: `tetmesh v1 <nv> <nt>`, vertex lines, tet lines (0-based).
void write_tetmesh(const MeshComplex& mesh, std::ostream& out);

enum class BoundaryMode {
    /// Only DOFs that vanish for every field with u × n = 0 and curl u = 0 on the boundary.
    Trace,
    /// Every DOF attached to a boundary vertex, edge, or face.
    Strict,
};

[[nodiscard]] BoundaryMode parse_boundary_mode(const std::string& s);

struct DofMap {
    int k = 7;
    long ndofs = 0;
    std::array<int, 4> per_entity{};    // DOFs per vertex, edge, face, interior
    std::array<long, 4> block_offset{}; // start of the vertex, edge, face, interior blocks
    std::vector<std::array<long, 315>> gather;
    std::vector<char> constrained;      // per global DOF
    std::vector<long> boundary_dofs;    // sorted

    [[nodiscard]] long entity_dof(EntityType type, long entity, int offset) const
    {
        const auto t = static_cast<std::size_t>(type);
        return block_offset[t] + entity * per_entity[t] + offset;
    }
};

[[nodiscard]] DofMap build_dof_map(const MeshComplex& mesh, BoundaryMode mode = BoundaryMode::Trace);

}  // namespace quadcurl
