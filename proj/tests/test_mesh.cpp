/**
 * @file test_mesh.cpp
 * @brief Structured meshes, entity enumeration, boundary flags, and the global DOF map.
 */
#include "quadcurl/errors.hpp"
#include "quadcurl/mesh.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

namespace quadcurl {
namespace {

TEST(CubeMesh, SingleCubeCounts)
{
    const MeshComplex m = cube_mesh(1);
    EXPECT_EQ(m.num_vertices(), 8u);
    EXPECT_EQ(m.num_tets(), 6u);
    EXPECT_EQ(m.edges.size(), 19u);
    EXPECT_EQ(m.faces.size(), 18u);
    EXPECT_EQ(m.num_boundary_faces(), 12u);
    EXPECT_EQ(m.euler_characteristic(), 1);
}

TEST(CubeMesh, RefinedCountsAndVolume)
{
    for (int n = 2; n <= 3; ++n) {
        const MeshComplex m = cube_mesh(n);
        EXPECT_EQ(m.num_vertices(), static_cast<std::size_t>((n + 1) * (n + 1) * (n + 1)));
        EXPECT_EQ(m.num_tets(), static_cast<std::size_t>(6 * n * n * n));
        EXPECT_EQ(m.num_boundary_faces(), static_cast<std::size_t>(12 * n * n));
        EXPECT_EQ(m.euler_characteristic(), 1);
        EXPECT_DOUBLE_EQ(m.h, 1.0 / n);
        double vol = 0.0;
        for (std::size_t t = 0; t < m.num_tets(); ++t) {
            vol += std::abs(m.geometry(t).map.detB) / 6.0;
        }
        EXPECT_NEAR(vol, 1.0, 1e-14);
    }
}

TEST(CubeMesh, TetsSortedAndFacesShared)
{
    const MeshComplex m = cube_mesh(2);
    for (const auto& t : m.tets) {
        EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
    }
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
        const bool interior = m.face_tets[f][1] >= 0;
        EXPECT_EQ(interior, !m.boundary_face[f]);
    }
}

TEST(CubeMesh, InvalidSizeRejected)
{
    EXPECT_THROW((void)cube_mesh(0), UsageError);
}

TEST(CubeMesh, BoundaryNormalsPointOutward)
{
    const MeshComplex m = cube_mesh(2);
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
        if (!m.boundary_face[f]) {
            continue;
        }
        const auto& fv = m.faces[f];
        const Vec3 c = (m.vertices[fv[0]] + m.vertices[fv[1]] + m.vertices[fv[2]]) / 3.0;
        const Vec3 n = m.boundary_normal(f);
        EXPECT_NEAR(n.norm(), 1.0, 1e-14);
        EXPECT_GT(n.dot(c - Vec3(0.5, 0.5, 0.5)), 0.0);
    }
}

TEST(LShape, CountsAndTopology)
{
    const MeshComplex m = lshape_mesh(2);
    EXPECT_EQ(m.num_tets(), 36u);
    EXPECT_EQ(m.euler_characteristic(), 1);
    for (std::size_t t = 0; t < m.num_tets(); ++t) {
        Vec3 c = Vec3::Zero();
        for (const Vec3& v : m.tet_vertices(t)) {
            c += v / 4.0;
        }
        EXPECT_FALSE(c.x() > 0.5 && c.y() < 0.5);
    }
    EXPECT_EQ(lshape_mesh(4).num_tets(), 288u);
}

TEST(LShape, OddSizeRejected)
{
    EXPECT_THROW((void)lshape_mesh(3), OddSubdivision);
    EXPECT_THROW((void)lshape_mesh(1), OddSubdivision);
}

TEST(TwoElement, SharedFace)
{
    const MeshComplex m = two_element_mesh();
    EXPECT_EQ(m.num_vertices(), 5u);
    EXPECT_EQ(m.num_tets(), 2u);
    EXPECT_EQ(m.faces.size(), 7u);
    EXPECT_EQ(m.num_boundary_faces(), 6u);
}

TEST(TetMesh, WriterHeader)
{
    std::ostringstream out;
    write_tetmesh(cube_mesh(1), out);
    std::istringstream in(out.str());
    std::string tag;
    std::string version;
    std::size_t nv = 0;
    std::size_t nt = 0;
    in >> tag >> version >> nv >> nt;
    EXPECT_EQ(tag, "tetmesh");
    EXPECT_EQ(version, "v1");
    EXPECT_EQ(nv, 8u);
    EXPECT_EQ(nt, 6u);
}

TEST(BoundaryMode, Parse)
{
    EXPECT_EQ(parse_boundary_mode("trace"), BoundaryMode::Trace);
    EXPECT_EQ(parse_boundary_mode("strict"), BoundaryMode::Strict);
    EXPECT_THROW((void)parse_boundary_mode("penalty"), UsageError);
}

TEST(DofMap, GlobalCountFromEntities)
{
    const MeshComplex m = cube_mesh(1);
    const DofMap d = build_dof_map(m);
    EXPECT_EQ(d.ndofs, 26 * 8 + 20 * 19 + 17 * 18 + 23 * 6);
    EXPECT_EQ(d.ndofs, 1032);
    EXPECT_EQ(d.gather.size(), 6u);
}

TEST(DofMap, SharedEntitiesShareDofs)
{
    const MeshComplex m = cube_mesh(2);
    const DofMap d = build_dof_map(m);
    std::vector<int> seen(static_cast<std::size_t>(d.ndofs), 0);
    for (std::size_t t = 0; t < m.num_tets(); ++t) {
        const auto& g = d.gather[t];
        const std::set<long> unique(g.begin(), g.end());
        EXPECT_EQ(unique.size(), 315u);
        for (int v = 0; v < 4; ++v) {
            EXPECT_EQ(g[static_cast<std::size_t>(3 * v)], d.entity_dof(EntityType::Vertex, m.tets[t][static_cast<std::size_t>(v)], 0));
        }
        for (long x : g) {
            ++seen[static_cast<std::size_t>(x)];
        }
    }
    for (int c : seen) {
        EXPECT_GT(c, 0);
    }
}

TEST(DofMap, TraceModeConstraints)
{
    const MeshComplex m = cube_mesh(2);
    const DofMap trace = build_dof_map(m, BoundaryMode::Trace);
    const DofMap strict = build_dof_map(m, BoundaryMode::Strict);
    EXPECT_TRUE(std::is_sorted(trace.boundary_dofs.begin(), trace.boundary_dofs.end()));
    EXPECT_LT(trace.boundary_dofs.size(), strict.boundary_dofs.size());
    for (long i : trace.boundary_dofs) {
        EXPECT_TRUE(strict.constrained[static_cast<std::size_t>(i)]);
    }
    // Interior DOFs are never constrained; boundary face moments always are
    for (std::size_t t = 0; t < m.num_tets(); ++t) {
        EXPECT_FALSE(trace.constrained[static_cast<std::size_t>(trace.entity_dof(EntityType::Interior, static_cast<long>(t), 0))]);
    }
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
        for (int o = 0; o < trace.per_entity[2]; ++o) {
            EXPECT_EQ(static_cast<bool>(trace.constrained[static_cast<std::size_t>(trace.entity_dof(EntityType::Face, static_cast<long>(f), o))]),
                      static_cast<bool>(m.boundary_face[f]));
        }
    }
}

TEST(DofMap, CornerVertexFullyDetermined)
{
    // At a cube corner every curl value and first derivative lies in a boundary plane's constraint set
    const MeshComplex m = cube_mesh(1);
    const DofMap d = build_dof_map(m);
    for (int o = 0; o < 3; ++o) {
        EXPECT_TRUE(d.constrained[static_cast<std::size_t>(d.entity_dof(EntityType::Vertex, 0, o))]);
    }
}

}  // namespace
}  // namespace quadcurl
