//---------------------------------------------------------------------------//
//! \file scene.cpp
//---------------------------------------------------------------------------//
#include "multivis/scene.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "multivis/units.hpp"

namespace multivis
{
char const* to_cstring(MarkerKind k)
{
    switch (k)
    {
        case MarkerKind::dot:
            return "dot";
        case MarkerKind::circle:
            return "circle";
        case MarkerKind::square:
            return "square";
    }
    return "?";
}

char const* to_cstring(TextLayout l)
{
    switch (l)
    {
        case TextLayout::left:
            return "left";
        case TextLayout::centre:
            return "centre";
        case TextLayout::right:
            return "right";
    }
    return "?";
}

std::optional<TextLayout> text_layout_from_string(std::string_view s)
{
    for (auto l : {TextLayout::left, TextLayout::centre, TextLayout::right})
    {
        if (s == to_cstring(l))
            return l;
    }
    return std::nullopt;
}

namespace
{
template<class... Ts>
struct Overload : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
Overload(Ts...) -> Overload<Ts...>;
}  // namespace

char const* primitive_kind(Primitive const& p)
{
    return std::visit(Overload{
                          [](Polyline const&) { return "polyline"; },
                          [](Polymarker const&) { return "polymarker"; },
                          [](Circle const&) { return "circle"; },
                          [](Square const&) { return "square"; },
                          [](Text const&) { return "text"; },
                          [](MeshPrimitive const&) { return "mesh"; },
                          [](ScaleBar const&) { return "scale"; },
                      },
                      p);
}

void validate(Primitive const& p)
{
    auto positive = [](double s, char const* what) {
        if (!(s > 0))
            throw std::invalid_argument(std::string(what) + " size must be positive");
    };
    std::visit(Overload{
                   [](Polyline const& l) {
                       if (l.points.size() < 2)
                           throw std::invalid_argument("polyline needs at least two points");
                   },
                   [&](Polymarker const& m) { positive(m.size, "marker"); },
                   [&](Circle const& c) { positive(c.size, "circle"); },
                   [&](Square const& s) { positive(s.size, "square"); },
                   [&](Text const& t) { positive(t.size, "text"); },
                   [](MeshPrimitive const&) {},
                   [](ScaleBar const& s) {
                       if (!(s.length > 0))
                           throw std::invalid_argument("scale length must be positive");
                   },
               },
               p);
}

//---------------------------------------------------------------------------//
void VisActionCanvas::draw(Solid const& s, VisAttributes const& vis, Transform const& t)
{
    items_.push_back(SolidDraw{std::make_shared<Solid const>(s), vis, t});
}

void VisActionCanvas::draw(SolidPtr s, VisAttributes const& vis, Transform const& t)
{
    items_.push_back(SolidDraw{std::move(s), vis, t});
}

void VisActionCanvas::draw(Primitive p, Transform const& t)
{
    validate(p);
    items_.push_back(PrimitiveDraw{std::move(p), t, false});
}

void VisActionCanvas::draw_2d(Primitive p)
{
    validate(p);
    items_.push_back(PrimitiveDraw{std::move(p), {}, true});
}

//---------------------------------------------------------------------------//
std::string describe(Model const& m)
{
    auto depth = [](int d) {
        return d < 0 ? std::string("unlimited") : "depth " + std::to_string(d);
    };
    return std::visit(
        Overload{
            [&](PhysicalVolumeModel const& v) {
                return "PhysicalVolume \"" + v.top_name + "\" (" + depth(v.depth_limit) + ")";
            },
            [](TrajectoriesModel const& v) {
                return "Trajectories" + (v.option.empty() ? std::string{} : " " + v.option);
            },
            [](HitsModel const&) { return std::string("Hits"); },
            [](AxesModel const& v) {
                return "Axes at " + best_unit(v.origin, UnitCategory::length);
            },
            [](ScaleModel const&) { return std::string("Scale"); },
            [](Text2DModel const& v) { return "Text2D \"" + v.text + "\""; },
            [](Text3DModel const& v) { return "Text \"" + v.text + "\""; },
            [](FrameModel const&) { return std::string("Frame"); },
            [](DateStampModel const&) { return std::string("Date"); },
            [](EventIDModel const&) { return std::string("EventID"); },
            [](Logo2DModel const&) { return std::string("Logo2D"); },
            [](UserActionModel const& v) { return "UserVisAction \"" + v.name + "\""; },
        },
        m);
}

bool is_transient(Model const& m)
{
    return std::holds_alternative<TrajectoriesModel>(m)
           || std::holds_alternative<HitsModel>(m);
}

void Scene::add_model(Model m)
{
    if (is_transient(m))
    {
        transients_.push_back(std::move(m));
        return;
    }
    permanents_.push_back(std::move(m));
    recompute_extent();
}

bool Scene::remove_user_action(std::string_view name)
{
    auto it = std::find_if(permanents_.begin(), permanents_.end(), [name](Model const& m) {
        auto* u = std::get_if<UserActionModel>(&m);
        return u && u->name == name;
    });
    if (it == permanents_.end())
        return false;
    permanents_.erase(it);
    recompute_extent();
    return true;
}

bool Scene::has_trajectories_model() const
{
    return trajectories_model() != nullptr;
}

TrajectoriesModel const* Scene::trajectories_model() const
{
    for (auto const& m : transients_)
    {
        if (auto* t = std::get_if<TrajectoriesModel>(&m))
            return t;
    }
    return nullptr;
}

bool Scene::has_hits_model() const
{
    return std::any_of(transients_.begin(), transients_.end(), [](Model const& m) {
        return std::holds_alternative<HitsModel>(m);
    });
}

std::optional<BBox> model_extent(Model const& m)
{
    return std::visit(
        Overload{
            [](PhysicalVolumeModel const& v) -> std::optional<BBox> {
                if (!v.detector)
                    return std::nullopt;
                auto tops = v.detector->find_touchables(v.top_name);
                if (tops.empty())
                    return std::nullopt;
                auto const& t = tops.front();
                return transform_bbox(bounding_box(*t.solid), t.world_transform);
            },
            [](AxesModel const& v) -> std::optional<BBox> {
                if (v.length <= 0)
                    return std::nullopt;
                return BBox{v.origin, v.origin + Vec3{v.length, v.length, v.length}};
            },
            [](Text3DModel const& v) -> std::optional<BBox> {
                return BBox{v.position, v.position};
            },
            [](UserActionModel const& v) -> std::optional<BBox> {
                if (v.extent)
                    return v.extent;
                if (!v.callback)
                    return std::nullopt;
                VisActionCanvas canvas;
                v.callback(canvas);
                std::optional<BBox> box;
                for (auto const& item : canvas.items())
                {
                    if (auto* s = std::get_if<SolidDraw>(&item))
                    {
                        BBox b = transform_bbox(bounding_box(*s->solid), s->transform);
                        box = box ? merge(*box, b) : b;
                    }
                }
                return box;
            },
            [](auto const&) -> std::optional<BBox> { return std::nullopt; },
        },
        m);
}

void Scene::recompute_extent()
{
    std::optional<BBox> box;
    for (auto const& m : permanents_)
    {
        if (auto b = model_extent(m))
            box = box ? merge(*box, *b) : *b;
    }
    if (!box)
    {
        extent_ = {};
        return;
    }
    extent_ = {box->centre(), norm(box->half_widths())};
}

double round_125(double x)
{
    if (!(x > 0))
        return 0;
    double p = std::pow(10.0, std::floor(std::log10(x)));
    // Guard against log10 rounding just below an exact power.
    if (p * 10 <= x)
        p *= 10;
    for (double m : {5.0, 2.0, 1.0})
    {
        if (m * p <= x)
            return m * p;
    }
    return p / 2;
}

Colour hit_colour(double e, double lo, double hi)
{
    double f = hi > lo ? (e - lo) / (hi - lo) : 1.0;
    f = std::clamp(f, 0.0, 1.0);
    return {1, 1 - f, 1 - f};
}

//---------------------------------------------------------------------------//
namespace
{
VisAttributes plain(Colour c, double width = 1)
{
    VisAttributes v;
    v.colour = c;
    v.line_width = width;
    return v;
}

void emit_2d(SceneSink& sink, Primitive const& p)
{
    sink.begin_primitives_2d();
    sink.add_primitive(p);
    sink.end_primitives_2d();
}

void emit_3d(SceneSink& sink, Transform const& t, std::vector<Primitive> const& ps)
{
    sink.begin_primitives(t);
    for (auto const& p : ps)
        sink.add_primitive(p);
    sink.end_primitives();
}

void emit_drawable(SceneSink& sink, Drawable const& d)
{
    std::visit(Overload{
                   [&](SolidDraw const& s) {
                       sink.pre_add_solid(s.transform, s.vis, nullptr);
                       sink.add_solid(*s.solid);
                       sink.post_add_solid();
                   },
                   [&](PrimitiveDraw const& p) {
                       if (p.two_d)
                           emit_2d(sink, p.primitive);
                       else
                           emit_3d(sink, p.transform, {p.primitive});
                   },
               },
               d);
}

struct ModelEmitter
{
    SceneSink& sink;
    Scene const& scene;
    TraversalContext const& ctx;

    void operator()(PhysicalVolumeModel const& m) const
    {
        if (!m.detector)
            return;
        auto tops = m.detector->find_touchables(m.top_name);
        if (tops.empty())
            return;
        auto touchables
            = m.detector->descend(tops.front(), m.depth_limit, ctx.view.culling_invisible);
        for (auto const& t : touchables)
        {
            AttValues atts = touchable_attributes(t);
            SolidContext sc{&t, &atts, tops.front().physical, m.depth_limit};
            sink.pre_add_solid(t.world_transform, t.vis, &sc);
            sink.add_solid(*t.solid);
            sink.post_add_solid();
        }
    }

    void operator()(TrajectoriesModel const&) const {}
    void operator()(HitsModel const&) const {}

    void operator()(AxesModel const& m) const
    {
        double len = m.length > 0 ? m.length : scene.extent().radius / 10;
        if (!(len > 0))
            len = 1;
        Vec3 o = m.origin;
        std::vector<Primitive> ps;
        ps.push_back(Polyline{{o, o + Vec3{len, 0, 0}}, plain({1, 0, 0})});
        ps.push_back(Polyline{{o, o + Vec3{0, len, 0}}, plain({0, 1, 0})});
        ps.push_back(Polyline{{o, o + Vec3{0, 0, len}}, plain({0, 0, 1})});
        Text label;
        label.size = 12;
        for (auto [axis, name, colour] : {std::tuple{Vec3{len, 0, 0}, "x", Colour{1, 0, 0}},
                                          std::tuple{Vec3{0, len, 0}, "y", Colour{0, 1, 0}},
                                          std::tuple{Vec3{0, 0, len}, "z", Colour{0, 0, 1}}})
        {
            label.position = o + axis * 1.1;
            label.content = name;
            label.vis = plain(colour);
            ps.push_back(label);
        }
        emit_3d(sink, {}, ps);
    }

    void operator()(ScaleModel const& m) const
    {
        double r = scene.extent().radius > 0 ? scene.extent().radius : 1;
        double len = m.length > 0 ? m.length : round_125(r / 2);
        Camera cam(ctx.view, scene.extent().centre, r);
        Vec3 start = cam.target() - cam.x_axis() * (0.8 * r / ctx.view.zoom)
                     - cam.y_axis() * (0.8 * r / ctx.view.zoom);
        ScaleBar bar{len, start, cam.x_axis(), best_unit(len, UnitCategory::length),
                     plain(m.colour)};
        emit_3d(sink, {}, {bar});
    }

    void operator()(Text2DModel const& m) const
    {
        emit_2d(sink,
                Text{{m.x, m.y, 0}, m.text, m.size, m.layout, m.x_offset, m.y_offset,
                     plain(m.colour)});
    }

    void operator()(Text3DModel const& m) const
    {
        emit_3d(sink,
                {},
                {Text{m.position, m.text, m.size, m.layout, m.x_offset, m.y_offset,
                      plain(m.colour)}});
    }

    void operator()(FrameModel const& m) const
    {
        constexpr double f = 0.99;
        emit_2d(sink,
                Polyline{{{-f, -f, 0}, {f, -f, 0}, {f, f, 0}, {-f, f, 0}, {-f, -f, 0}},
                         plain(m.colour, m.line_width)});
    }

    void operator()(DateStampModel const& m) const
    {
        emit_2d(sink,
                Text{{0.95, 0.9, 0}, m.text, m.size, TextLayout::right, 0, 0,
                     plain(m.colour)});
    }

    void operator()(EventIDModel const& m) const
    {
        if (ctx.events.empty())
            return;
        std::string text = "Event " + std::to_string(ctx.events.back()->event_id);
        emit_2d(sink,
                Text{{-0.95, -0.95, 0}, text, m.size, TextLayout::left, 0, 0,
                     plain(m.colour)});
    }

    void operator()(Logo2DModel const& m) const
    {
        emit_2d(sink,
                Text{{0.95, -0.95, 0}, "multivis", m.size, TextLayout::right, 0, 0,
                     plain(m.colour)});
    }

    void operator()(UserActionModel const& m) const
    {
        if (!m.callback)
            return;
        VisActionCanvas canvas;
        m.callback(canvas);
        for (auto const& item : canvas.items())
            emit_drawable(sink, item);
    }
};
}  // namespace

void traverse(Scene const& scene, SceneSink& sink, TraversalContext const& ctx)
{
    SceneInfo info{scene.name(), scene.extent().centre, scene.extent().radius};
    sink.begin_session(ctx.view, info);

    ModelEmitter emit{sink, scene, ctx};
    for (auto const& m : scene.permanent_models())
        std::visit(emit, m);

    TrajectoriesModel const* traj_model = scene.trajectories_model();
    bool draw_hits = scene.has_hits_model();
    DrawByCharge fallback;
    for (Event const* ev : ctx.events)
    {
        if (traj_model)
        {
            for (auto const& t : ev->trajectories)
            {
                if (ctx.filters && !ctx.filters->accept(t))
                    continue;
                DrawStyle style = ctx.trajectory_model
                                      ? style_trajectory(*ctx.trajectory_model, t)
                                      : style_trajectory(TrajectoryModel{fallback}, t);
                if (traj_model->draw_mode)
                {
                    auto mode = *traj_model->draw_mode;
                    style.draw_line = mode != TrajectoryDrawMode::step_points;
                    style.draw_points = mode != TrajectoryDrawMode::line;
                    style.point_size = traj_model->point_size;
                }
                sink.add_trajectory(t, style, trajectory_attributes(t, ev->event_id));
            }
        }
        if (draw_hits && !ev->hits.empty())
        {
            auto [lo, hi] = std::minmax_element(
                ev->hits.begin(), ev->hits.end(), [](Hit const& a, Hit const& b) {
                    return a.energy_deposit < b.energy_deposit;
                });
            for (auto const& h : ev->hits)
            {
                DrawStyle style;
                style.colour = hit_colour(h.energy_deposit, lo->energy_deposit, hi->energy_deposit);
                style.draw_line = false;
                style.draw_points = true;
                style.point_size = 5;
                sink.add_hit(h, style, hit_attributes(h, ev->event_id));
            }
        }
    }

    if (ctx.user_transients)
    {
        for (auto const& d : *ctx.user_transients)
            emit_drawable(sink, d);
    }
    sink.end_session();
}

}  // namespace multivis
