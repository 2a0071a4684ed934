//---------------------------------------------------------------------------//
//! \file drivers/painter.cpp
//---------------------------------------------------------------------------//
#include "multivis/drivers/painter.hpp"

#include <algorithm>
#include <cmath>

namespace multivis
{
double lambert(Vec3 const& normal, Vec3 const& lights)
{
    return std::max(0.2, dot(normalized(normal), -normalized(lights)));
}

void PainterSink::begin_session(ViewParameters const& view, SceneInfo const& info)
{
    view_ = view;
    camera_.emplace(view, info.centre, info.radius);
    sorted_.clear();
    overlay_.clear();
    final_.clear();
    two_d_ = false;
}

void PainterSink::pre_add_solid(Transform const& t,
                                VisAttributes const& vis,
                                SolidContext const*)
{
    transform_ = t;
    vis_ = vis;
}

void PainterSink::add_solid(Solid const& s)
{
    Mesh mesh = tessellate(s, view_.segments_per_circle).transformed(transform_);
    add_mesh(mesh, vis_, "geometry");
}

void PainterSink::begin_primitives(Transform const& t)
{
    transform_ = t;
    two_d_ = false;
}

void PainterSink::begin_primitives_2d()
{
    transform_ = {};
    two_d_ = true;
}

//---------------------------------------------------------------------------//
void PainterSink::push_sorted(PaintItem item)
{
    sorted_.push_back(std::move(item));
}

void PainterSink::push_overlay(PaintItem item)
{
    overlay_.push_back(std::move(item));
}

void PainterSink::add_mesh(Mesh const& mesh, VisAttributes const& vis, std::string const& group)
{
    bool surface = view_.style == DrawingStyle::surface;
    if (vis.forced_style == ForcedStyle::wireframe)
        surface = false;
    else if (vis.forced_style == ForcedStyle::surface)
        surface = true;

    std::vector<Vec3> proj;
    proj.reserve(mesh.vertices.size());
    for (auto const& v : mesh.vertices)
        proj.push_back(camera_->project(v));

    if (!surface)
    {
        for (auto const& e : mesh.edges)
        {
            if (e.kind == EdgeKind::auxiliary && !view_.auxiliary_edges)
                continue;
            PaintItem item;
            item.kind = PaintKind::line;
            item.points = {proj[e.a], proj[e.b]};
            item.colour = vis.colour;
            item.width = vis.line_width;
            item.line_style = vis.line_style;
            item.group = group;
            item.depth = 0.5 * (proj[e.a].z + proj[e.b].z);
            push_sorted(std::move(item));
        }
        return;
    }

    bool perspective = view_.projection == Projection::perspective
                       && view_.field_half_angle > 0;
    Vec3 eye = camera_->target()
               + camera_->z_axis() * (camera_->radius() / std::sin(view_.field_half_angle));
    for (std::size_t f = 0; f < mesh.faces.size(); ++f)
    {
        Vec3 n = mesh.face_normal(f);
        Vec3 to_viewer = perspective ? eye - mesh.face_centroid(f) : camera_->z_axis();
        if (!vis.colour.transparent() && dot(n, to_viewer) <= 0)
            continue;
        PaintItem item;
        item.kind = PaintKind::polygon;
        double depth = 0;
        for (int idx : mesh.faces[f])
        {
            item.points.push_back(proj[idx]);
            depth += proj[idx].z;
        }
        item.depth = depth / mesh.faces[f].size();
        item.colour = vis.colour.scaled(lambert(n, view_.lights));
        item.group = group;
        push_sorted(std::move(item));
    }
}

void PainterSink::add_line(std::vector<Vec3> const& world_pts,
                           VisAttributes const& vis,
                           std::string const& group)
{
    if (world_pts.size() < 2)
        return;
    std::vector<Vec3> proj;
    proj.reserve(world_pts.size());
    for (auto const& p : world_pts)
        proj.push_back(camera_->project(transform_.apply_point(p)));

    if (view_.style == DrawingStyle::surface)
    {
        // Segments interleave with faces in the depth sort.
        for (std::size_t i = 0; i + 1 < proj.size(); ++i)
        {
            PaintItem item;
            item.points = {proj[i], proj[i + 1]};
            item.colour = vis.colour;
            item.width = vis.line_width;
            item.line_style = vis.line_style;
            item.group = group;
            item.depth = 0.5 * (proj[i].z + proj[i + 1].z);
            push_sorted(std::move(item));
        }
        return;
    }
    PaintItem item;
    item.points = std::move(proj);
    item.colour = vis.colour;
    item.width = vis.line_width;
    item.line_style = vis.line_style;
    item.group = group;
    double depth = 0;
    for (auto const& p : item.points)
        depth += p.z;
    item.depth = depth / item.points.size();
    push_sorted(std::move(item));
}

void PainterSink::add_marker(
    PaintKind kind, Vec3 const& world, double size, Colour c, std::string const& group)
{
    PaintItem item;
    item.kind = kind;
    item.points = {camera_->project(world)};
    item.width = size;
    item.colour = c;
    item.group = group;
    item.depth = item.points.front().z;
    if (view_.hidden_marker)
        push_sorted(std::move(item));
    else
        push_overlay(std::move(item));
}

//---------------------------------------------------------------------------//
namespace
{
PaintItem text_item(Vec3 const& px, Text const& t)
{
    PaintItem item;
    item.kind = PaintKind::text;
    item.points = {{px.x + t.x_offset, px.y - t.y_offset, px.z}};
    item.text = t.content;
    item.text_size = t.size;
    item.layout = t.layout;
    item.colour = t.vis.colour;
    item.group = "decoration";
    item.depth = px.z;
    return item;
}
}  // namespace

void PainterSink::add_primitive(Primitive const& p)
{
    if (two_d_)
    {
        auto to_px = [this](Vec3 const& v) { return camera_->project_2d(v.x, v.y); };
        auto push = [this](PaintItem item) {
            item.two_d = true;
            item.group = "decoration";
            overlay_.push_back(std::move(item));
        };
        std::visit(
            [&](auto const& prim) {
                using T = std::decay_t<decltype(prim)>;
                if constexpr (std::is_same_v<T, Polyline>)
                {
                    if (!prim.vis.visible)
                        return;
                    PaintItem item;
                    for (auto const& v : prim.points)
                        item.points.push_back(to_px(v));
                    item.colour = prim.vis.colour;
                    item.width = prim.vis.line_width;
                    item.line_style = prim.vis.line_style;
                    push(std::move(item));
                }
                else if constexpr (std::is_same_v<T, Polymarker>)
                {
                    for (auto const& v : prim.points)
                    {
                        PaintItem item;
                        item.kind = prim.kind == MarkerKind::square ? PaintKind::square
                                                                     : PaintKind::circle;
                        item.points = {to_px(v)};
                        item.width = prim.size;
                        item.colour = prim.vis.colour;
                        push(std::move(item));
                    }
                }
                else if constexpr (std::is_same_v<T, Circle> || std::is_same_v<T, Square>)
                {
                    PaintItem item;
                    item.kind = std::is_same_v<T, Circle> ? PaintKind::circle
                                                          : PaintKind::square;
                    item.points = {to_px(prim.position)};
                    item.width = prim.size;
                    item.colour = prim.vis.colour;
                    push(std::move(item));
                }
                else if constexpr (std::is_same_v<T, Text>)
                {
                    push(text_item(to_px(prim.position), prim));
                }
                // Meshes and scale bars have no 2D form.
            },
            p);
        return;
    }

    std::visit(
        [&](auto const& prim) {
            using T = std::decay_t<decltype(prim)>;
            if constexpr (std::is_same_v<T, Polyline>)
            {
                if (prim.vis.visible)
                    add_line(prim.points, prim.vis, "decoration");
            }
            else if constexpr (std::is_same_v<T, Polymarker>)
            {
                PaintKind k = prim.kind == MarkerKind::square ? PaintKind::square
                                                              : PaintKind::circle;
                for (auto const& v : prim.points)
                    add_marker(k, transform_.apply_point(v), prim.size, prim.vis.colour,
                               "decoration");
            }
            else if constexpr (std::is_same_v<T, Circle>)
            {
                add_marker(PaintKind::circle, transform_.apply_point(prim.position),
                           prim.size, prim.vis.colour, "decoration");
            }
            else if constexpr (std::is_same_v<T, Square>)
            {
                add_marker(PaintKind::square, transform_.apply_point(prim.position),
                           prim.size, prim.vis.colour, "decoration");
            }
            else if constexpr (std::is_same_v<T, Text>)
            {
                push_overlay(
                    text_item(camera_->project(transform_.apply_point(prim.position)), prim));
            }
            else if constexpr (std::is_same_v<T, MeshPrimitive>)
            {
                if (prim.vis.visible)
                    add_mesh(prim.mesh.transformed(transform_), prim.vis, "geometry");
            }
            else if constexpr (std::is_same_v<T, ScaleBar>)
            {
                Vec3 a = camera_->project(transform_.apply_point(prim.start));
                Vec3 b = camera_->project(
                    transform_.apply_point(prim.start + prim.direction * prim.length));
                auto line = [&](Vec3 p, Vec3 q) {
                    PaintItem item;
                    item.points = {p, q};
                    item.colour = prim.vis.colour;
                    item.width = prim.vis.line_width;
                    item.group = "decoration";
                    push_overlay(std::move(item));
                };
                line(a, b);
                // End ticks perpendicular to the bar on screen.
                Vec3 d{b.x - a.x, b.y - a.y, 0};
                Vec3 n = normalized(Vec3{-d.y, d.x, 0}) * 4.0;
                line(a - n, a + n);
                line(b - n, b + n);
                PaintItem label;
                label.kind = PaintKind::text;
                label.points = {{0.5 * (a.x + b.x), 0.5 * (a.y + b.y) - 8, 0}};
                label.text = prim.annotation;
                label.layout = TextLayout::centre;
                label.colour = prim.vis.colour;
                label.group = "decoration";
                push_overlay(std::move(label));
            }
        },
        p);
}

void PainterSink::add_trajectory(Trajectory const& t, DrawStyle const& style, AttValues const&)
{
    transform_ = {};
    if (style.draw_line && t.points.size() >= 2)
    {
        std::vector<Vec3> pts;
        pts.reserve(t.points.size());
        for (auto const& sp : t.points)
            pts.push_back(sp.position);
        VisAttributes vis;
        vis.colour = style.colour;
        vis.line_width = style.line_width;
        add_line(pts, vis, "trajectory");
    }
    if (style.draw_points)
    {
        for (auto const& sp : t.points)
            add_marker(PaintKind::circle, sp.position, style.point_size, style.colour,
                       "step-point");
    }
}

void PainterSink::add_hit(Hit const& h, DrawStyle const& style, AttValues const&)
{
    add_marker(PaintKind::square, h.position, style.point_size, style.colour, "hit");
}

void PainterSink::end_session()
{
    std::stable_sort(sorted_.begin(), sorted_.end(), [](auto const& a, auto const& b) {
        return a.depth < b.depth;
    });
    final_ = std::move(sorted_);
    // 3D overlays before 2D ones, each in arrival order.
    std::stable_partition(overlay_.begin(), overlay_.end(), [](auto const& i) {
        return !i.two_d;
    });
    for (auto& item : overlay_)
        final_.push_back(std::move(item));
    sorted_.clear();
    overlay_.clear();
}

}  // namespace multivis
