/**
 * @file mesh.cpp
 * @brief Structured meshes, entity enumeration, and global DOF numbering.
 */
#include "quadcurl/mesh.hpp"

#include "quadcurl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace quadcurl {

namespace {

std::uint64_t edge_key(int p, int q) { return (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint32_t>(q); }

struct FaceKey {
    std::array<int, 3> v;
    bool operator<(const FaceKey& o) const { return v < o.v; }
};

}  // namespace

std::array<Vec3, 4> MeshComplex::tet_vertices(std::size_t t) const
{
    std::array<Vec3, 4> x;
    for (std::size_t i = 0; i < 4; ++i) {
        x[i] = vertices[static_cast<std::size_t>(tets[t][i])];
    }
    return x;
}

ElementGeometry MeshComplex::geometry(std::size_t t) const { return make_element_geometry(tet_vertices(t)); }

std::size_t MeshComplex::num_boundary_faces() const
{
    return static_cast<std::size_t>(std::count(boundary_face.begin(), boundary_face.end(), char{1}));
}

long MeshComplex::euler_characteristic() const
{
    return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) + static_cast<long>(faces.size()) -
           static_cast<long>(tets.size());
}

Vec3 MeshComplex::boundary_normal(std::size_t f) const
{
    const auto& fv = faces[f];
    const Vec3& a = vertices[static_cast<std::size_t>(fv[0])];
    const Vec3& b = vertices[static_cast<std::size_t>(fv[1])];
    const Vec3& c = vertices[static_cast<std::size_t>(fv[2])];
    Vec3 n = (b - a).cross(c - a).normalized();
    const int t = face_tets[f][0] >= 0 ? face_tets[f][0] : face_tets[f][1];
    Vec3 centroid = Vec3::Zero();
    for (int v : tets[static_cast<std::size_t>(t)]) {
        centroid += vertices[static_cast<std::size_t>(v)];
    }
    centroid /= 4.0;
    if (n.dot(centroid - a) > 0.0) {
        n = -n;
    }
    return n;
}

MeshComplex mesh_from_tets(std::vector<Vec3> vertices, std::vector<std::array<int, 4>> tets, double h)
{
    MeshComplex m;
    m.vertices = std::move(vertices);
    m.h = h;
    for (auto& t : tets) {
        std::sort(t.begin(), t.end());
    }
    m.tets = std::move(tets);

    std::unordered_map<std::uint64_t, int> edge_index;
    std::map<FaceKey, int> face_index;
    m.tet_edges.resize(m.tets.size());
    m.tet_faces.resize(m.tets.size());
    for (std::size_t t = 0; t < m.tets.size(); ++t) {
        const auto& tv = m.tets[t];
        for (std::size_t e = 0; e < 6; ++e) {
            const int p = tv[static_cast<std::size_t>(ReferenceTet::edges[e][0])];
            const int q = tv[static_cast<std::size_t>(ReferenceTet::edges[e][1])];
            auto [it, inserted] = edge_index.try_emplace(edge_key(p, q), static_cast<int>(m.edges.size()));
            if (inserted) {
                m.edges.push_back({p, q});
            }
            m.tet_edges[t][e] = it->second;
        }
        for (std::size_t f = 0; f < 4; ++f) {
            FaceKey key{};
            for (std::size_t i = 0; i < 3; ++i) {
                key.v[i] = tv[static_cast<std::size_t>(ReferenceTet::faces[f][i])];
            }
            auto [it, inserted] = face_index.try_emplace(key, static_cast<int>(m.faces.size()));
            if (inserted) {
                m.faces.push_back(key.v);
                m.face_tets.push_back({-1, -1});
            }
            auto& slots = m.face_tets[static_cast<std::size_t>(it->second)];
            if (slots[0] < 0) {
                slots[0] = static_cast<int>(t);
            } else if (slots[1] < 0) {
                slots[1] = static_cast<int>(t);
            } else {
                throw std::logic_error("mesh_from_tets: face shared by more than two tets");
            }
            m.tet_faces[t][f] = it->second;
        }
    }

    m.boundary_vertex.assign(m.vertices.size(), 0);
    m.boundary_edge.assign(m.edges.size(), 0);
    m.boundary_face.assign(m.faces.size(), 0);
    for (std::size_t t = 0; t < m.tets.size(); ++t) {
        for (std::size_t f = 0; f < 4; ++f) {
            const auto gf = static_cast<std::size_t>(m.tet_faces[t][f]);
            if (m.face_tets[gf][1] >= 0) {
                continue;
            }
            m.boundary_face[gf] = 1;
            for (int lv : ReferenceTet::faces[f]) {
                m.boundary_vertex[static_cast<std::size_t>(m.tets[t][static_cast<std::size_t>(lv)])] = 1;
            }
            for (std::size_t e = 0; e < 6; ++e) {
                const auto& pq = ReferenceTet::edges[e];
                const auto& fv = ReferenceTet::faces[f];
                const bool in_face = std::find(fv.begin(), fv.end(), pq[0]) != fv.end() &&
                                     std::find(fv.begin(), fv.end(), pq[1]) != fv.end();
                if (in_face) {
                    m.boundary_edge[static_cast<std::size_t>(m.tet_edges[t][e])] = 1;
                }
            }
        }
    }
    return m;
}

namespace {

/// Kuhn tets of the grid cube with lower corner (i, j, k), as global vertex ids.
void kuhn_tets(int N, int i, int j, int k, std::vector<std::array<int, 4>>& out)
{
    const int n1 = N + 1;
    auto id = [n1](int a, int b, int c) { return a + n1 * (b + n1 * c); };
    static const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (const auto& p : perms) {
        std::array<int, 3> c{i, j, k};
        std::array<int, 4> t{};
        t[0] = id(c[0], c[1], c[2]);
        for (std::size_t s = 0; s < 3; ++s) {
            c[static_cast<std::size_t>(p[s])] += 1;
            t[s + 1] = id(c[0], c[1], c[2]);
        }
        out.push_back(t);
    }
}

MeshComplex structured_mesh(int N, bool lshape)
{
    const int n1 = N + 1;
    const double h = 1.0 / N;
    std::vector<Vec3> verts;
    verts.reserve(static_cast<std::size_t>(n1 * n1 * n1));
    for (int c = 0; c < n1; ++c) {
        for (int b = 0; b < n1; ++b) {
            for (int a = 0; a < n1; ++a) {
                verts.emplace_back(a * h, b * h, c * h);
            }
        }
    }
    std::vector<std::array<int, 4>> tets;
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            for (int i = 0; i < N; ++i) {
                if (lshape && (i + 0.5) * h > 0.5 && (j + 0.5) * h < 0.5) {
                    continue;
                }
                kuhn_tets(N, i, j, k, tets);
            }
        }
    }
    if (lshape) {
        // Drop unused vertices; renumbering by increasing old id keeps tets sorted.
        std::vector<int> remap(verts.size(), -1);
        for (const auto& t : tets) {
            for (int v : t) {
                remap[static_cast<std::size_t>(v)] = 0;
            }
        }
        std::vector<Vec3> kept;
        for (std::size_t v = 0; v < verts.size(); ++v) {
            if (remap[v] == 0) {
                remap[v] = static_cast<int>(kept.size());
                kept.push_back(verts[v]);
            }
        }
        for (auto& t : tets) {
            for (int& v : t) {
                v = remap[static_cast<std::size_t>(v)];
            }
        }
        verts = std::move(kept);
    }
    return mesh_from_tets(std::move(verts), std::move(tets), h);
}

}  // namespace

MeshComplex cube_mesh(int N)
{
    if (N < 1) {
        throw UsageError("cube_mesh: N must be at least 1");
    }
    return structured_mesh(N, false);
}

MeshComplex lshape_mesh(int N)
{
    if (N < 2 || N % 2 != 0) {
        throw OddSubdivision("lshape_mesh: N must be even, got " + std::to_string(N));
    }
    return structured_mesh(N, true);
}

MeshComplex two_element_mesh()
{
    std::vector<Vec3> v{Vec3(0.0, 0.0, 0.0), Vec3(1.0, 0.1, 0.0), Vec3(0.2, 1.0, 0.1), Vec3(0.1, 0.2, 1.0),
                        Vec3(0.9, 0.8, 0.9)};
    return mesh_from_tets(std::move(v), {{0, 1, 2, 3}, {1, 2, 3, 4}}, 1.0);
}

void write_tetmesh(const MeshComplex& mesh, std::ostream& out)
{
    out << "tetmesh v1 " << mesh.vertices.size() << ' ' << mesh.tets.size() << '\n';
    out.precision(17);
    for (const auto& v : mesh.vertices) {
        out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
    }
    for (const auto& t : mesh.tets) {
        out << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
    }
}

BoundaryMode parse_boundary_mode(const std::string& s)
{
    if (s == "trace") {
        return BoundaryMode::Trace;
    }
    if (s == "strict") {
        return BoundaryMode::Strict;
    }
    throw UsageError("unknown boundary mode '" + s + "' (expected trace or strict)");
}

namespace {

enum class Relation { Parallel, Perpendicular, Oblique };

Relation relate(const Vec3& d, const Vec3& nu)
{
    const double c = std::abs(d.dot(nu));
    if (c < 1e-10) {
        return Relation::Perpendicular;
    }
    if (c > 1.0 - 1e-10) {
        return Relation::Parallel;
    }
    return Relation::Oblique;
}

/// Whether d_{b_1} ... d_{b_m} (a . curl u) vanishes on a plane with unit normal nu whenever
/// u x nu = 0 and curl u = 0 there. Tangential derivatives of curl u vanish; so does any
/// tangential derivative of d_nu (curl u . nu), which equals minus the surface divergence
/// of the tangential part of curl u.
bool vanishes_on_plane(const Vec3& a, const std::vector<Vec3>& b, const Vec3& nu)
{
    int normal = 0;
    for (const auto& d : b) {
        const Relation r = relate(d, nu);
        if (r == Relation::Oblique) {
            return false;
        }
        normal += r == Relation::Parallel ? 1 : 0;
    }
    if (normal == 0) {
        return true;
    }
    return normal == 1 && relate(a, nu) == Relation::Parallel;
}

Vec3 axis(int c) { return Vec3::Unit(c); }

}  // namespace

DofMap build_dof_map(const MeshComplex& mesh, BoundaryMode mode)
{
    DofMap map;
    map.k = 7;
    map.per_entity = per_entity_counts(7);
    const std::array<long, 4> entity_count{static_cast<long>(mesh.vertices.size()), static_cast<long>(mesh.edges.size()),
                                           static_cast<long>(mesh.faces.size()), static_cast<long>(mesh.tets.size())};
    long offset = 0;
    for (std::size_t t = 0; t < 4; ++t) {
        map.block_offset[t] = offset;
        offset += entity_count[t] * map.per_entity[t];
    }
    map.ndofs = offset;

    const auto dofs = enumerate_dofs(7);
    map.gather.resize(mesh.tets.size());
    for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
        for (const auto& d : dofs) {
            long entity = 0;
            switch (d.entity_type) {
            case EntityType::Vertex: entity = mesh.tets[t][static_cast<std::size_t>(d.entity)]; break;
            case EntityType::Edge: entity = mesh.tet_edges[t][static_cast<std::size_t>(d.entity)]; break;
            case EntityType::Face: entity = mesh.tet_faces[t][static_cast<std::size_t>(d.entity)]; break;
            case EntityType::Interior: entity = static_cast<long>(t); break;
            }
            map.gather[t][static_cast<std::size_t>(d.local_index)] = map.entity_dof(d.entity_type, entity, d.entity_offset);
        }
    }

    map.constrained.assign(static_cast<std::size_t>(map.ndofs), 0);
    if (mode == BoundaryMode::Strict) {
        for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
            for (const auto& d : dofs) {
                const auto e = static_cast<std::size_t>(d.entity);
                bool on_boundary = false;
                switch (d.entity_type) {
                case EntityType::Vertex: on_boundary = mesh.boundary_vertex[static_cast<std::size_t>(mesh.tets[t][e])]; break;
                case EntityType::Edge: on_boundary = mesh.boundary_edge[static_cast<std::size_t>(mesh.tet_edges[t][e])]; break;
                case EntityType::Face: on_boundary = mesh.boundary_face[static_cast<std::size_t>(mesh.tet_faces[t][e])]; break;
                case EntityType::Interior: break;
                }
                if (on_boundary) {
                    map.constrained[static_cast<std::size_t>(map.gather[t][static_cast<std::size_t>(d.local_index)])] = 1;
                }
            }
        }
    } else {
        // Boundary planes through each vertex and edge.
        std::vector<std::vector<Vec3>> vertex_planes(mesh.vertices.size());
        std::vector<std::vector<Vec3>> edge_planes(mesh.edges.size());
        auto add_plane = [](std::vector<Vec3>& planes, const Vec3& n) {
            for (const auto& p : planes) {
                if (std::abs(p.dot(n)) > 1.0 - 1e-10) {
                    return;
                }
            }
            planes.push_back(n);
        };
        for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
            if (!mesh.boundary_face[f]) {
                continue;
            }
            const Vec3 n = mesh.boundary_normal(f);
            for (int v : mesh.faces[f]) {
                add_plane(vertex_planes[static_cast<std::size_t>(v)], n);
            }
            const int t = mesh.face_tets[f][0];
            for (std::size_t e = 0; e < 6; ++e) {
                const auto ge = static_cast<std::size_t>(mesh.tet_edges[static_cast<std::size_t>(t)][e]);
                const auto& pq = mesh.edges[ge];
                const auto& fv = mesh.faces[f];
                if (std::find(fv.begin(), fv.end(), pq[0]) != fv.end() && std::find(fv.begin(), fv.end(), pq[1]) != fv.end()) {
                    add_plane(edge_planes[ge], n);
                }
            }
        }
        auto any_plane = [](const std::vector<Vec3>& planes, const Vec3& a, const std::vector<Vec3>& b) {
            return std::any_of(planes.begin(), planes.end(), [&](const Vec3& nu) { return vanishes_on_plane(a, b, nu); });
        };
        for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
            const ElementGeometry geom = mesh.geometry(t);
            for (const auto& d : dofs) {
                const auto e = static_cast<std::size_t>(d.entity);
                bool zero = false;
                switch (d.kind) {
                case DofKind::VertexCurl:
                case DofKind::VertexCurlGrad:
                case DofKind::VertexCurlHess: {
                    std::vector<Vec3> b;
                    for (int o = 0; o < 3; ++o) {
                        for (int r = 0; r < d.deriv[static_cast<std::size_t>(o)]; ++r) {
                            b.push_back(axis(o));
                        }
                    }
                    zero = any_plane(vertex_planes[static_cast<std::size_t>(mesh.tets[t][e])], axis(d.component), b);
                    break;
                }
                case DofKind::EdgeCurlValue:
                    zero = any_plane(edge_planes[static_cast<std::size_t>(mesh.tet_edges[t][e])], axis(d.component), {});
                    break;
                case DofKind::EdgeCurlDirDeriv_n:
                case DofKind::EdgeCurlDirDeriv_m:
                case DofKind::EdgeCurlDirDeriv_tau: {
                    const auto& fr = geom.edge[e];
                    auto dir = [&fr](int k) { return to_vec(k == Tau ? fr.tau : (k == Normal ? fr.n : fr.m)); };
                    zero = any_plane(edge_planes[static_cast<std::size_t>(mesh.tet_edges[t][e])], dir(d.dir_a), {dir(d.dir_b)});
                    break;
                }
                case DofKind::EdgeTangMoment:
                    zero = mesh.boundary_edge[static_cast<std::size_t>(mesh.tet_edges[t][e])];
                    break;
                case DofKind::FaceUMoment:
                case DofKind::FaceCurlTangMoment:
                case DofKind::FaceCurlNormMoment:
                    zero = mesh.boundary_face[static_cast<std::size_t>(mesh.tet_faces[t][e])];
                    break;
                case DofKind::InteriorUMoment:
                case DofKind::InteriorCurlMoment: break;
                }
                if (zero) {
                    map.constrained[static_cast<std::size_t>(map.gather[t][static_cast<std::size_t>(d.local_index)])] = 1;
                }
            }
        }
    }
    for (long i = 0; i < map.ndofs; ++i) {
        if (map.constrained[static_cast<std::size_t>(i)]) {
            map.boundary_dofs.push_back(i);
        }
    }
    return map;
}

}  // namespace quadcurl
