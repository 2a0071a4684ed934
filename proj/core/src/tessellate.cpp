//---------------------------------------------------------------------------//
//! \file tessellate.cpp
//! \brief Polygon meshes for solids.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "multivis/solids.hpp"

namespace multivis
{
namespace
{
//---------------------------------------------------------------------------//
/*!
 * Accumulates faces tagged with a surface id; edges shared by two faces of
 * the same surface are discretisation artefacts (auxiliary).
 */
class MeshBuilder
{
  public:
    int add_vertex(Vec3 const& v)
    {
        mesh_.vertices.push_back(v);
        return static_cast<int>(mesh_.vertices.size() - 1);
    }

    //! Vertex deduplicated by exact coordinates.
    int shared_vertex(Vec3 const& v)
    {
        auto [it, inserted] = lookup_.try_emplace(
            std::array<double, 3>{v.x, v.y, v.z}, 0);
        if (inserted)
            it->second = add_vertex(v);
        return it->second;
    }

    void add_face(std::vector<int> idx, int surface)
    {
        // Drop repeated vertices from collapsed (on-axis) corners
        std::vector<int> clean;
        for (int i : idx)
        {
            if (clean.empty() || clean.back() != i)
                clean.push_back(i);
        }
        while (clean.size() > 1 && clean.front() == clean.back())
            clean.pop_back();
        if (clean.size() < 3)
            return;
        mesh_.faces.push_back(std::move(clean));
        surfaces_.push_back(surface);
    }

    Mesh finish()
    {
        std::map<std::pair<int, int>, std::vector<int>> edge_faces;
        for (std::size_t f = 0; f < mesh_.faces.size(); ++f)
        {
            auto const& face = mesh_.faces[f];
            for (std::size_t i = 0; i < face.size(); ++i)
            {
                int a = face[i];
                int b = face[(i + 1) % face.size()];
                edge_faces[{std::min(a, b), std::max(a, b)}].push_back(
                    static_cast<int>(f));
            }
        }
        mesh_.edges.clear();
        for (auto const& [key, faces] : edge_faces)
        {
            bool aux = faces.size() == 2
                       && surfaces_[faces[0]] == surfaces_[faces[1]];
            mesh_.edges.push_back(
                {key.first, key.second, aux ? EdgeKind::auxiliary : EdgeKind::real});
        }
        return std::move(mesh_);
    }

  private:
    Mesh mesh_;
    std::vector<int> surfaces_;
    std::map<std::array<double, 3>, int> lookup_;
};

//---------------------------------------------------------------------------//
//! Box or trd: eight corners, bottom face first, counter-clockwise from -x-y.
Mesh hexahedron(std::array<Vec3, 8> const& v)
{
    MeshBuilder b;
    for (auto const& p : v)
        b.add_vertex(p);
    b.add_face({0, 3, 2, 1}, 0);
    b.add_face({4, 5, 6, 7}, 1);
    b.add_face({0, 1, 5, 4}, 2);
    b.add_face({3, 7, 6, 2}, 3);
    b.add_face({0, 4, 7, 3}, 4);
    b.add_face({1, 2, 6, 5}, 5);
    return b.finish();
}

std::array<Vec3, 8> corners(double hx1, double hy1, double hx2, double hy2, double hz)
{
    return {{{-hx1, -hy1, -hz},
             {hx1, -hy1, -hz},
             {hx1, hy1, -hz},
             {-hx1, hy1, -hz},
             {-hx2, -hy2, hz},
             {hx2, -hy2, hz},
             {hx2, hy2, hz},
             {-hx2, hy2, hz}}};
}

//---------------------------------------------------------------------------//
struct ProfilePoint
{
    double rho;
    double z;
};

/*!
 * Solid of revolution from a counter-clockwise (rho, z) profile loop.
 *
 * Edge i runs from point i to point i+1 and lies on surface surfaces[i].
 * Points on the axis collapse to a single vertex. For partial phi, the
 * cut faces are the given convex pieces (profile indices, counter-clockwise).
 */
Mesh lathe(std::vector<ProfilePoint> const& profile,
           std::vector<int> const& surfaces,
           std::vector<std::vector<int>> const& cut_pieces,
           double phi_start,
           double delta_phi,
           int segments_per_circle)
{
    bool full = delta_phi >= two_pi * (1 - 1e-12);
    int nseg = full ? segments_per_circle
                    : std::max(1,
                               static_cast<int>(std::ceil(
                                   segments_per_circle * delta_phi / two_pi - 1e-9)));
    int nstations = full ? nseg : nseg + 1;

    MeshBuilder b;
    std::size_t np = profile.size();
    // vertex index [point][station]
    std::vector<std::vector<int>> vid(np, std::vector<int>(nstations));
    for (std::size_t i = 0; i < np; ++i)
    {
        auto const& p = profile[i];
        if (p.rho == 0)
        {
            int v = b.add_vertex({0, 0, p.z});
            std::fill(vid[i].begin(), vid[i].end(), v);
            continue;
        }
        for (int k = 0; k < nstations; ++k)
        {
            double phi = phi_start + delta_phi * k / nseg;
            vid[i][k] = b.add_vertex(
                {p.rho * std::cos(phi), p.rho * std::sin(phi), p.z});
        }
    }

    for (std::size_t i = 0; i < np; ++i)
    {
        std::size_t j = (i + 1) % np;
        for (int k = 0; k < nseg; ++k)
        {
            int k1 = (k + 1) % nstations;
            b.add_face({vid[i][k], vid[i][k1], vid[j][k1], vid[j][k]},
                       surfaces[i]);
        }
    }

    if (!full)
    {
        int cut_start = 1000;
        int cut_end = 1001;
        for (auto const& piece : cut_pieces)
        {
            std::vector<int> f0, f1;
            for (int i : piece)
                f0.push_back(vid[i][0]);
            for (auto it = piece.rbegin(); it != piece.rend(); ++it)
                f1.push_back(vid[*it][nstations - 1]);
            b.add_face(std::move(f0), cut_start);
            b.add_face(std::move(f1), cut_end);
        }
    }
    return b.finish();
}

//! Remove consecutive duplicate profile points, keeping edge surfaces.
void dedupe_profile(std::vector<ProfilePoint>& pts, std::vector<int>& surfaces)
{
    std::vector<ProfilePoint> p2;
    std::vector<int> s2;
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        auto const& next = pts[(i + 1) % pts.size()];
        if (pts[i].rho == next.rho && pts[i].z == next.z)
            continue;
        p2.push_back(pts[i]);
        s2.push_back(surfaces[i]);
    }
    pts = std::move(p2);
    surfaces = std::move(s2);
}

Mesh mesh_of(BoxShape const& s, int)
{
    return hexahedron(corners(s.half_x, s.half_y, s.half_x, s.half_y, s.half_z));
}

Mesh mesh_of(TrdShape const& s, int)
{
    return hexahedron(
        corners(s.half_x1, s.half_y1, s.half_x2, s.half_y2, s.half_z));
}

Mesh cone_like(double rmin1,
               double rmax1,
               double rmin2,
               double rmax2,
               double hz,
               double phi_start,
               double delta_phi,
               int n)
{
    std::vector<ProfilePoint> pts{{rmin1, -hz}, {rmax1, -hz}, {rmax2, hz}, {rmin2, hz}};
    std::vector<int> surfs{0, 1, 2, 3};
    dedupe_profile(pts, surfs);
    std::vector<int> all(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        all[i] = static_cast<int>(i);
    return lathe(pts, surfs, {all}, phi_start, delta_phi, n);
}

Mesh mesh_of(TubeShape const& s, int n)
{
    return cone_like(
        s.r_min, s.r_max, s.r_min, s.r_max, s.half_z, s.phi_start, s.delta_phi, n);
}

Mesh mesh_of(ConeShape const& s, int n)
{
    return cone_like(s.r_min1,
                     s.r_max1,
                     s.r_min2,
                     s.r_max2,
                     s.half_z,
                     s.phi_start,
                     s.delta_phi,
                     n);
}

Mesh mesh_of(SphereShape const& s, int n)
{
    double t1 = s.theta_start;
    double t2 = std::min(pi, s.theta_start + s.delta_theta);
    int nt = std::max(
        1, static_cast<int>(std::ceil((t2 - t1) / (two_pi / n) - 1e-9)));
    auto theta = [&](int j) { return j == nt ? t2 : t1 + (t2 - t1) * j / nt; };
    auto at = [](double r, double t) {
        // Snap the poles onto the axis exactly.
        double rho = (t == 0 || t == pi) ? 0.0 : r * std::sin(t);
        return ProfilePoint{rho, r * std::cos(t)};
    };

    constexpr int outer = 0, inner = 1, cone1 = 2, cone2 = 3;
    std::vector<ProfilePoint> pts;
    std::vector<int> surfs;
    // Outer arc upward (theta decreasing): positions 0..nt
    for (int j = nt; j >= 0; --j)
    {
        pts.push_back(at(s.r_max, theta(j)));
        surfs.push_back(j > 0 ? outer : cone1);
    }
    std::vector<std::vector<int>> pieces;
    if (s.r_min > 0)
    {
        // Inner arc downward: positions nt+1 .. 2nt+1
        for (int j = 0; j <= nt; ++j)
        {
            pts.push_back(at(s.r_min, theta(j)));
            surfs.push_back(j < nt ? inner : cone2);
        }
        auto o = [nt](int j) { return nt - j; };
        auto i = [nt](int j) { return nt + 1 + j; };
        for (int j = 0; j < nt; ++j)
            pieces.push_back({o(j + 1), o(j), i(j), i(j + 1)});
    }
    else
    {
        pts.push_back({0, 0});
        surfs.push_back(cone2);
        int origin = nt + 1;
        for (int j = 0; j < nt; ++j)
            pieces.push_back({nt - (j + 1), nt - j, origin});
    }
    return lathe(pts, surfs, pieces, s.phi_start, s.delta_phi, n);
}

//---------------------------------------------------------------------------//
// Subtraction
//---------------------------------------------------------------------------//
using Triangle = std::array<Vec3, 3>;

void subdivide(Triangle const& t, double max_edge, std::vector<Triangle>& out, int depth = 0)
{
    double longest = std::max({norm(t[1] - t[0]), norm(t[2] - t[1]), norm(t[0] - t[2])});
    if (longest <= max_edge || depth >= 10)
    {
        out.push_back(t);
        return;
    }
    Vec3 m01 = (t[0] + t[1]) * 0.5;
    Vec3 m12 = (t[1] + t[2]) * 0.5;
    Vec3 m20 = (t[2] + t[0]) * 0.5;
    subdivide({t[0], m01, m20}, max_edge, out, depth + 1);
    subdivide({m01, t[1], m12}, max_edge, out, depth + 1);
    subdivide({m20, m12, t[2]}, max_edge, out, depth + 1);
    subdivide({m01, m12, m20}, max_edge, out, depth + 1);
}

//! Split every face into triangles no longer than max_edge.
std::vector<std::pair<Triangle, int>> refined(Mesh const& m, double max_edge)
{
    std::vector<std::pair<Triangle, int>> out;
    std::vector<Triangle> tris;
    for (std::size_t f = 0; f < m.faces.size(); ++f)
    {
        auto const& face = m.faces[f];
        for (std::size_t i = 1; i + 1 < face.size(); ++i)
        {
            tris.clear();
            subdivide({m.vertices[face[0]], m.vertices[face[i]], m.vertices[face[i + 1]]},
                      max_edge,
                      tris);
            for (auto const& t : tris)
                out.emplace_back(t, static_cast<int>(f));
        }
    }
    return out;
}

Mesh mesh_of(SubtractionShape const& s, int n)
{
    Mesh left = tessellate(*s.left, n);
    Mesh right = tessellate(*s.right, n).transformed(s.right_transform);
    BBox lb = bounding_box(*s.left);
    double max_edge = norm(lb.upper - lb.lower) / std::max(1, n / 4);
    Transform to_right = s.right_transform.inverse();

    MeshBuilder b;
    auto centroid = [](Triangle const& t) { return (t[0] + t[1] + t[2]) / 3.0; };
    for (auto const& [tri, face] : refined(left, max_edge))
    {
        if (contains(*s.right, to_right.apply_point(centroid(tri))) == Location::inside)
            continue;
        b.add_face({b.shared_vertex(tri[0]), b.shared_vertex(tri[1]), b.shared_vertex(tri[2])},
                   face);
    }
    int offset = static_cast<int>(left.faces.size());
    for (auto const& [tri, face] : refined(right, max_edge))
    {
        if (contains(*s.left, centroid(tri)) != Location::inside)
            continue;
        // Carved surface faces into the removed region
        b.add_face({b.shared_vertex(tri[2]), b.shared_vertex(tri[1]), b.shared_vertex(tri[0])},
                   offset + face);
    }
    return b.finish();
}

}  // namespace

//---------------------------------------------------------------------------//
double Mesh::signed_volume() const
{
    double v = 0;
    for (auto const& f : faces)
    {
        for (std::size_t i = 1; i + 1 < f.size(); ++i)
        {
            v += dot(vertices[f[0]], cross(vertices[f[i]], vertices[f[i + 1]]));
        }
    }
    return v / 6;
}

Vec3 Mesh::face_normal(std::size_t face) const
{
    // Newell's method
    auto const& f = faces[face];
    Vec3 n;
    for (std::size_t i = 0; i < f.size(); ++i)
    {
        Vec3 const& a = vertices[f[i]];
        Vec3 const& b = vertices[f[(i + 1) % f.size()]];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    return normalized(n);
}

Vec3 Mesh::face_centroid(std::size_t face) const
{
    Vec3 c;
    for (int i : faces[face])
        c += vertices[i];
    return c / static_cast<double>(faces[face].size());
}

Mesh Mesh::transformed(Transform const& t) const
{
    Mesh out = *this;
    for (auto& v : out.vertices)
        v = t.apply_point(v);
    return out;
}

std::size_t Mesh::count_edges(EdgeKind kind) const
{
    return static_cast<std::size_t>(std::count_if(
        edges.begin(), edges.end(), [kind](MeshEdge const& e) { return e.kind == kind; }));
}

Mesh tessellate(Solid const& solid, int segments_per_circle)
{
    if (segments_per_circle < min_segments_per_circle)
    {
        throw std::out_of_range("tessellate: segments_per_circle must be >= "
                                + std::to_string(min_segments_per_circle)
                                + ", got "
                                + std::to_string(segments_per_circle));
    }
    return std::visit(
        [segments_per_circle](auto const& s) { return mesh_of(s, segments_per_circle); },
        solid.shape());
}

}  // namespace multivis
