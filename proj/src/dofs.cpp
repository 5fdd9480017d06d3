#include "quadcurl/dofs.hpp"

#include "quadcurl/errors.hpp"

#include <map>

namespace quadcurl {

std::string to_string(DofKind kind)
{
    switch (kind) {
        case DofKind::VertexCurl: return "VertexCurl";
        case DofKind::VertexCurlGrad: return "VertexCurlGrad";
        case DofKind::VertexCurlHess: return "VertexCurlHess";
        case DofKind::EdgeTangMoment: return "EdgeTangMoment";
        case DofKind::EdgeCurlValue: return "EdgeCurlValue";
        case DofKind::EdgeCurlDirDeriv_n: return "EdgeCurlDirDeriv_n";
        case DofKind::EdgeCurlDirDeriv_m: return "EdgeCurlDirDeriv_m";
        case DofKind::EdgeCurlDirDeriv_tau: return "EdgeCurlDirDeriv_tau";
        case DofKind::FaceUMoment: return "FaceUMoment";
        case DofKind::FaceCurlTangMoment: return "FaceCurlTangMoment";
        case DofKind::FaceCurlNormMoment: return "FaceCurlNormMoment";
        case DofKind::InteriorUMoment: return "InteriorUMoment";
        case DofKind::InteriorCurlMoment: return "InteriorCurlMoment";
    }
    return "?";
}

DofCounts dof_counts_formula(int k)
{
    DofCounts c;
    c.vertex = 26 * 4;
    c.edge = 6 * k + 18 * (k - 6) + 30 * (k - 5);
    c.face = 2 * (k - 2) * (k - 1) + 6 * (k - 6) * (k - 5) - 4;
    c.interior = (k - 3) * (k - 2) * (k - 1) / 6 + (k - 5) * (k - 4) * (k - 3) / 2 - (k - 4) * (k - 3) * (k - 2) / 6 + 1;
    return c;
}

std::array<int, 4> per_entity_counts(int k)
{
    const auto c = dof_counts_formula(k);
    return {c.vertex / 4, c.edge / 6, c.face / 4, c.interior};
}

const std::array<std::array<int, 3>, 6>& second_derivative_order()
{
    static const std::array<std::array<int, 3>, 6> order{{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 0, 1}, {1, 1, 0}, {0, 1, 1}}};
    return order;
}

std::vector<Rational> edge_value_nodes(int k)
{
    std::vector<Rational> t;
    for (int j = 1; j <= k - 6; ++j) {
        t.push_back(make_fraction<Rational>(j, k - 5));
    }
    return t;
}

std::vector<Rational> edge_derivative_nodes(int k)
{
    std::vector<Rational> t;
    for (int j = 1; j <= k - 5; ++j) {
        t.push_back(make_fraction<Rational>(j, k - 4));
    }
    return t;
}

namespace {

class Builder {
public:
    explicit Builder(int k) : order(k) {}

    DofDescriptor& add(DofKind kind, EntityType type, int entity)
    {
        DofDescriptor d;
        d.kind = kind;
        d.entity_type = type;
        d.entity = entity;
        d.order = order;
        d.local_index = static_cast<int>(list.size());
        d.entity_offset = offsets[{static_cast<int>(type), entity}]++;
        list.push_back(d);
        return list.back();
    }

    std::vector<DofDescriptor> list;
    int order;

private:
    std::map<std::pair<int, int>, int> offsets;
};

void add_vertex_values(Builder& b)
{
    for (int v = 0; v < 4; ++v) {
        for (int c = 0; c < 3; ++c) {
            b.add(DofKind::VertexCurl, EntityType::Vertex, v).component = c;
        }
    }
}

void add_vertex_first(Builder& b, bool full)
{
    for (int v = 0; v < 4; ++v) {
        for (int c = 0; c < 3; ++c) {
            for (int o = 0; o < 3; ++o) {
                if (!full && c == 2 && o == 2) {
                    continue;  // d_z (curl u)_3 follows from the divergence
                }
                auto& d = b.add(DofKind::VertexCurlGrad, EntityType::Vertex, v);
                d.component = c;
                d.deriv[static_cast<std::size_t>(o)] = 1;
            }
        }
    }
}

void add_vertex_second(Builder& b, bool full)
{
    for (int v = 0; v < 4; ++v) {
        for (int c = 0; c < 3; ++c) {
            for (int s = 0; s < 6; ++s) {
                if (!full && s == c) {
                    continue;  // the pure second derivative d_cc of component c
                }
                auto& d = b.add(DofKind::VertexCurlHess, EntityType::Vertex, v);
                d.component = c;
                d.deriv = second_derivative_order()[static_cast<std::size_t>(s)];
            }
        }
    }
}

void add_edge_values(Builder& b, int k)
{
    const auto nodes = edge_value_nodes(k);
    for (int e = 0; e < 6; ++e) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            for (int c = 0; c < 3; ++c) {
                auto& d = b.add(DofKind::EdgeCurlValue, EntityType::Edge, e);
                d.component = c;
                d.node = static_cast<int>(j);
                d.node_param = nodes[j];
            }
        }
    }
}

DofKind derivative_kind(int dir_b)
{
    switch (dir_b) {
        case Tau: return DofKind::EdgeCurlDirDeriv_tau;
        case Normal: return DofKind::EdgeCurlDirDeriv_n;
        default: return DofKind::EdgeCurlDirDeriv_m;
    }
}

void add_edge_derivatives(Builder& b, int k, bool full)
{
    static const std::array<std::pair<int, int>, 5> pairs{{{Tau, Normal}, {Normal, Normal}, {Binormal, Normal}, {Tau, Binormal}, {Normal, Binormal}}};
    const auto nodes = edge_derivative_nodes(k);
    for (int e = 0; e < 6; ++e) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            auto add_pair = [&](int a, int bdir) {
                auto& d = b.add(derivative_kind(bdir), EntityType::Edge, e);
                d.dir_a = a;
                d.dir_b = bdir;
                d.node = static_cast<int>(j);
                d.node_param = nodes[j];
            };
            if (full) {
                for (int bdir = 0; bdir < 3; ++bdir) {
                    for (int a = 0; a < 3; ++a) {
                        add_pair(a, bdir);
                    }
                }
            } else {
                for (const auto& [a, bdir] : pairs) {
                    add_pair(a, bdir);
                }
            }
        }
    }
}

void add_edge_moments(Builder& b, int k)
{
    for (int e = 0; e < 6; ++e) {
        for (int r = 0; r < k; ++r) {
            b.add(DofKind::EdgeTangMoment, EntityType::Edge, e).test = r;
        }
    }
}

void add_face_moments(Builder& b, int k)
{
    const int n = monomial_count<2>(k - 3);
    for (int f = 0; f < 4; ++f) {
        for (int r = 0; r < n; ++r) {
            b.add(DofKind::FaceUMoment, EntityType::Face, f).test = r;
        }
    }
}

void add_interior(Builder& b, int k)
{
    const int nu = monomial_count<3>(k - 4);
    for (int r = 0; r < nu; ++r) {
        b.add(DofKind::InteriorUMoment, EntityType::Interior, 0).test = r;
    }
    const int nc = 3 * monomial_count<3>(k - 6) - monomial_count<3>(k - 5) + 1;  // dim x × (P_{k-7})^3
    for (int r = 0; r < nc; ++r) {
        b.add(DofKind::InteriorCurlMoment, EntityType::Interior, 0).test = r;
    }
}

}  // namespace

std::vector<DofDescriptor> enumerate_dofs(int k)
{
    if (k < 7) {
        throw BadOrder("enumerate_dofs: k must be >= 7, got " + std::to_string(k));
    }
    Builder b(k);
    add_vertex_values(b);
    add_vertex_first(b, false);
    add_vertex_second(b, false);
    add_edge_values(b, k);
    add_edge_derivatives(b, k, false);
    const int nt = monomial_count<2>(k - 7);
    for (int f = 0; f < 4; ++f) {
        for (int r = 0; r < nt; ++r) {
            for (int i = 0; i < 2; ++i) {
                auto& d = b.add(DofKind::FaceCurlTangMoment, EntityType::Face, f);
                d.test = r;
                d.component = i;
            }
        }
        for (int r = 1; r < nt; ++r) {
            b.add(DofKind::FaceCurlNormMoment, EntityType::Face, f).test = r;
        }
    }
    add_edge_moments(b, k);
    add_face_moments(b, k);
    add_interior(b, k);
    return b.list;
}

DofCounts count_by_entity(const std::vector<DofDescriptor>& dofs)
{
    DofCounts c;
    for (const auto& d : dofs) {
        switch (d.entity_type) {
            case EntityType::Vertex: ++c.vertex; break;
            case EntityType::Edge: ++c.edge; break;
            case EntityType::Face: ++c.face; break;
            case EntityType::Interior: ++c.interior; break;
        }
    }
    return c;
}

std::vector<DofDescriptor> enumerate_star_functionals()
{
    constexpr int k = 7;
    Builder b(k);
    add_vertex_values(b);
    add_vertex_first(b, true);
    add_vertex_second(b, true);
    add_edge_values(b, k);
    add_edge_derivatives(b, k, true);
    for (int f = 0; f < 4; ++f) {
        for (int i = 0; i < 2; ++i) {
            auto& d = b.add(DofKind::FaceCurlTangMoment, EntityType::Face, f);
            d.test = 0;
            d.component = i;
        }
        b.add(DofKind::FaceCurlNormMoment, EntityType::Face, f).test = 0;
    }
    add_edge_moments(b, k);
    add_face_moments(b, k);
    add_interior(b, k);
    return b.list;
}

}  // namespace quadcurl
