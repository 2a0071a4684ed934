//---------------------------------------------------------------------------//
//! \file commands.cpp
//! \brief The /vis, /control and /run command set.
//---------------------------------------------------------------------------//
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>

#include "multivis/kernel.hpp"
#include "multivis/shell.hpp"

namespace multivis
{
namespace
{
//---------------------------------------------------------------------------//
// Parameter builders
//---------------------------------------------------------------------------//
ParamSpec p_str(std::string name, std::string def = {}, bool omit = false)
{
    return {std::move(name), ParamKind::string, std::move(def), omit, {}, {}};
}

ParamSpec p_int(std::string name, std::string def = {}, bool omit = false)
{
    return {std::move(name), ParamKind::integer, std::move(def), omit, {}, {}};
}

ParamSpec p_real(std::string name, std::string def = {}, bool omit = false)
{
    return {std::move(name), ParamKind::real, std::move(def), omit, {}, {}};
}

ParamSpec p_bool(std::string name, std::string def = {}, bool omit = false)
{
    return {std::move(name), ParamKind::boolean, std::move(def), omit, {}, {}};
}

ParamSpec p_choice(std::string name,
                   std::vector<std::string> choices,
                   std::string def = {},
                   bool omit = false)
{
    return {std::move(name), ParamKind::choice, std::move(def), omit, {}, std::move(choices)};
}

ParamSpec p_unit(std::string name, UnitCategory cat, std::string def, bool omit = true)
{
    return {std::move(name), ParamKind::unit, std::move(def), omit, cat, {}};
}

ParamSpec p_text(std::string name, std::string def = {}, bool omit = true)
{
    return {std::move(name), ParamKind::text, std::move(def), omit, {}, {}};
}

//! red (name or number), green, blue, opacity; all omittable.
std::vector<ParamSpec> colour_params()
{
    return {p_str("red", "", true),
            p_real("green", "1", true),
            p_real("blue", "1", true),
            p_real("opacity", "1", true)};
}

Colour read_colour(Args const& a, Colour fallback)
{
    if (!a.given("red"))
        return fallback;
    std::string const& r = a.str("red");
    if (auto c = colour_from_name(r))
        return a.given("opacity") ? Colour{c->red(), c->green(), c->blue(), a.real("opacity")} : *c;
    char* end = nullptr;
    double red = std::strtod(r.c_str(), &end);
    if (end != r.c_str() + r.size())
        throw CommandError("unknown colour \"" + r + "\"");
    return {red, a.real("green"), a.real("blue"), a.real("opacity")};
}

template<class... Ps>
std::vector<ParamSpec> params(Ps... ps)
{
    return {std::move(ps)...};
}

std::vector<ParamSpec> concat(std::vector<ParamSpec> a, std::vector<ParamSpec> const& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

//---------------------------------------------------------------------------//
class Installer
{
  public:
    explicit Installer(Shell& shell) : shell_{shell}, vis_{shell.vis()} {}

    void install();

  private:
    void add(std::string path, std::string guidance, std::vector<ParamSpec> ps, CommandHandler h)
    {
        shell_.tree().add({std::move(path), std::move(guidance), std::move(ps), std::move(h)});
    }

    void control_and_run();
    void top_level();
    void viewer();
    void scene();
    void modeling();
    void filtering();
    void geometry();
    void touchable();
    void set();

    void add_model_commands(std::string const& name, bool by_charge);
    void add_filter_commands(std::string const& name, int kind);

    void modify_view(std::function<void(ViewParameters&)> f)
    {
        ViewParameters v = vis_.current_viewer().view;
        f(v);
        vis_.set_view(v);
    }

    void refresh_all_scenes()
    {
        for (auto const& s : vis_.scenes())
            vis_.scene_changed(s.name());
    }

    Detector& detector()
    {
        if (!vis_.detector())
            throw CommandError("no geometry loaded");
        return *vis_.detector();
    }

    Shell& shell_;
    VisManager& vis_;
    std::shared_ptr<int> export_counter_ = std::make_shared<int>(0);
};

//---------------------------------------------------------------------------//
void Installer::control_and_run()
{
    add("/control/execute", "Execute a macro file.", params(p_str("file")),
        [this](Args const& a) {
            CommandResult r = shell_.execute_macro(a.str("file"));
            if (r.status == Status::error)
                throw CommandError(r.message);
            return std::string{};
        });

    add("/run/beamOn", "Run toy events through end of event.", params(p_int("events", "1", true)),
        [this](Args const& a) {
            vis_.beam_on(static_cast<int>(a.integer("events")));
            return std::string{};
        });
    add("/run/toy/tracksPerEvent", "Tracks per toy event.", params(p_int("n", "8", true)),
        [this](Args const& a) {
            if (a.integer("n") < 0)
                throw CommandError("track count must not be negative");
            vis_.toy_config().tracks_per_event = static_cast<int>(a.integer("n"));
            return std::string{};
        });
    add("/run/toy/field", "Uniform field along z for toy events.",
        params(p_real("value", "1", true), p_unit("unit", UnitCategory::field, "T")),
        [this](Args const& a) {
            vis_.toy_config().field_tesla = a.quantity("value", "unit");
            return std::string{};
        });
    add("/run/toy/seed", "Base seed for toy events.", params(p_int("seed", "12345", true)),
        [this](Args const& a) {
            vis_.toy_config().seed = static_cast<std::uint64_t>(a.integer("seed"));
            return std::string{};
        });
}

void Installer::top_level()
{
    add("/vis/open", "Create a scene handler and viewer for a graphics system.",
        params(p_str("system"), p_str("window", "", true)),
        [this](Args const& a) {
            vis_.open_viewer(a.str("system"), a.str("window"));
            return std::string{};
        });
    add("/vis/list", "List graphics systems, scenes, handlers, viewers, models and filters.", {},
        [this](Args const&) {
            shell_.out() << vis_.list();
            return std::string{};
        });
    add("/vis/verbose", "Message level: quiet, startup, errors, warnings, confirmations, parameters, all.",
        params(p_str("level", "warnings", true)), [this](Args const& a) {
            auto v = verbosity_from_string(a.str("level"));
            if (!v)
                throw CommandError("unknown verbosity \"" + a.str("level") + "\"");
            vis_.set_verbosity(*v);
            return std::string{};
        });
    add("/vis/drawVolume", "Create a scene with a physical volume and attach it to the current viewer.",
        params(p_str("volume", "world", true), p_int("copy", "-1", true), p_int("depth", "-1", true)),
        [this](Args const& a) {
            std::string name = a.str("volume") == "world" ? std::string{} : a.str("volume");
            if (a.integer("copy") >= 0 && vis_.detector())
            {
                bool found = false;
                for (auto const& t : vis_.detector()->find_touchables(
                         name.empty() ? vis_.detector()->world()->name() : name))
                    found = found || t.path.back().copy == a.integer("copy");
                if (!found)
                    throw CommandError("no copy " + a.str("copy") + " of \"" + a.str("volume") + "\"");
            }
            vis_.draw_volume(name, static_cast<int>(a.integer("depth")));
            return std::string{};
        });
    add("/vis/ASCIITree/verbose", "ASCII tree detail level (add 10 to expand repeated volumes).",
        params(p_int("verbosity", "1", true)), [this](Args const& a) {
            vis_.set_ascii_verbosity(static_cast<int>(a.integer("verbosity")));
            return std::string{};
        });
    add("/vis/export", "Render the current view to a file; the extension (.eps, .svg, .ppm, .json, .txt) picks the format.",
        params(p_str("file", "", true)), [this](Args const& a) {
            std::string file = a.str("file");
            if (file.empty())
            {
                char num[16];
                std::snprintf(num, sizeof(num), "%04d", (*export_counter_)++);
                file = vis_.current_viewer().short_name() + "-export-" + num + ".eps";
            }
            vis_.export_view(file);
            return std::string{};
        });
    add("/vis/sceneHandler/attach", "Attach a scene (default: current) to the current scene handler.",
        params(p_str("scene", "", true)), [this](Args const& a) {
            vis_.attach_scene(a.str("scene"));
            return std::string{};
        });
}

//---------------------------------------------------------------------------//
void Installer::viewer()
{
    add("/vis/viewer/flush", "Redraw the current viewer and write its output.", {},
        [this](Args const&) {
            vis_.flush();
            return std::string{};
        });
    add("/vis/viewer/refresh", "Same as flush.", {}, [this](Args const&) {
        vis_.flush();
        return std::string{};
    });
    add("/vis/viewer/rebuild", "Redraw from scratch; user-drawn transients are lost.", {},
        [this](Args const&) {
            vis_.rebuild();
            return std::string{};
        });
    add("/vis/viewer/select", "Make a viewer current.", params(p_str("viewer")),
        [this](Args const& a) {
            vis_.select_viewer(a.str("viewer"));
            return std::string{};
        });
    add("/vis/viewer/list", "List viewers.", {}, [this](Args const&) {
        for (auto const& v : vis_.viewers())
            shell_.out() << v.name << '\n';
        return std::string{};
    });
    add("/vis/viewer/zoom", "Multiply the zoom factor.", params(p_real("factor", "1", true)),
        [this](Args const& a) {
            modify_view([&](ViewParameters& v) { v.zoom *= a.real("factor"); });
            return std::string{};
        });
    add("/vis/viewer/zoomTo", "Set the zoom factor.", params(p_real("factor", "1", true)),
        [this](Args const& a) {
            modify_view([&](ViewParameters& v) { v.zoom = a.real("factor"); });
            return std::string{};
        });

    std::string const set = "/vis/viewer/set/";
    add(set + "autoRefresh", "Redraw after every change.", params(p_bool("flag", "true", true)),
        [this](Args const& a) {
            vis_.set_auto_refresh(a.boolean("flag"));
            return std::string{};
        });
    auto vec_params = [](char const* dx, char const* dy, char const* dz) {
        return params(p_real("x", dx, true), p_real("y", dy, true), p_real("z", dz, true));
    };
    add(set + "viewpointVector", "Direction from target to camera.", vec_params("1", "1", "1"),
        [this](Args const& a) {
            Vec3 d{a.real("x"), a.real("y"), a.real("z")};
            if (norm(d) == 0)
                throw CommandError("viewpoint vector must be non-zero");
            modify_view([&](ViewParameters& v) { v.viewpoint = normalized(d); });
            return std::string{};
        });
    add(set + "viewpointThetaPhi", "Viewpoint as polar and azimuthal angles.",
        params(p_real("theta", "60", true), p_real("phi", "45", true),
               p_unit("unit", UnitCategory::angle, "deg")),
        [this](Args const& a) {
            double theta = a.quantity("theta", "unit");
            double phi = a.quantity("phi", "unit");
            modify_view([&](ViewParameters& v) { v.set_viewpoint_theta_phi(theta, phi); });
            return std::string{};
        });
    add(set + "upVector", "Camera up direction.", vec_params("0", "1", "0"),
        [this](Args const& a) {
            Vec3 d{a.real("x"), a.real("y"), a.real("z")};
            if (norm(d) == 0)
                throw CommandError("up vector must be non-zero");
            modify_view([&](ViewParameters& v) { v.up = normalized(d); });
            return std::string{};
        });
    add(set + "lightsVector", "Direction in which the light travels.", vec_params("1", "1", "1"),
        [this](Args const& a) {
            Vec3 d{a.real("x"), a.real("y"), a.real("z")};
            if (norm(d) == 0)
                throw CommandError("lights vector must be non-zero");
            modify_view([&](ViewParameters& v) { v.lights = normalized(d); });
            return std::string{};
        });
    add(set + "style", "Drawing style.", params(p_choice("style", {"wireframe", "surface"}, "wireframe", true)),
        [this](Args const& a) {
            auto s = a.str("style") == "surface" ? DrawingStyle::surface : DrawingStyle::wireframe;
            modify_view([&](ViewParameters& v) { v.style = s; });
            return std::string{};
        });
    add(set + "auxiliaryEdge", "Draw edges that only approximate curved surfaces.",
        params(p_bool("flag", "true", true)), [this](Args const& a) {
            modify_view([&](ViewParameters& v) { v.auxiliary_edges = a.boolean("flag"); });
            return std::string{};
        });
    add(set + "hiddenMarker", "Markers are hidden by nearer surfaces.",
        params(p_bool("flag", "true", true)), [this](Args const& a) {
            modify_view([&](ViewParameters& v) { v.hidden_marker = a.boolean("flag"); });
            return std::string{};
        });
    add(set + "lineSegmentsPerCircle", "Number of sides approximating a full circle.",
        params(p_int("segments", "24", true)), [this](Args const& a) {
            long n = a.integer("segments");
            std::string warning;
            if (n < min_segments_per_circle)
            {
                warning = "lineSegmentsPerCircle raised to the minimum of "
                          + std::to_string(min_segments_per_circle);
                n = min_segments_per_circle;
            }
            modify_view([&](ViewParameters& v) { v.segments_per_circle = static_cast<int>(n); });
            return warning;
        });
    add(set + "culling", "Culling of invisible volumes.",
        params(p_choice("type", {"global", "invisible"}, "global", true), p_bool("flag", "true", true)),
        [this](Args const& a) {
            modify_view([&](ViewParameters& v) { v.culling_invisible = a.boolean("flag"); });
            return std::string{};
        });
    add(set + "projection", "Orthogonal or perspective projection.",
        params(p_choice("type", {"orthogonal", "perspective"}, "orthogonal", true),
               p_real("field_half_angle", "30", true), p_unit("unit", UnitCategory::angle, "deg")),
        [this](Args const& a) {
            bool persp = a.str("type") == "perspective";
            double angle = a.quantity("field_half_angle", "unit");
            if (persp && (angle <= 0 || angle >= pi / 2))
                throw CommandError("field half angle must lie in (0, 90) deg");
            modify_view([&](ViewParameters& v) {
                v.projection = persp ? Projection::perspective : Projection::orthographic;
                v.field_half_angle = persp ? angle : 0;
            });
            return std::string{};
        });
    add(set + "targetPoint", "Point the camera looks at.",
        params(p_real("x", "0", true), p_real("y", "0", true), p_real("z", "0", true),
               p_unit("unit", UnitCategory::length, "m")),
        [this](Args const& a) {
            Vec3 p{a.quantity("x", "unit"), a.quantity("y", "unit"), a.quantity("z", "unit")};
            auto const& scene = vis_.find_scene(vis_.handler_of(vis_.current_viewer()).scene);
            Vec3 centre = scene ? scene->extent().centre : Vec3{};
            modify_view([&](ViewParameters& v) { v.target_offset = p - centre; });
            return std::string{};
        });
    add(set + "background", "Background colour.", colour_params(), [this](Args const& a) {
        Colour c = read_colour(a, Colour::black());
        modify_view([&](ViewParameters& v) { v.background = c; });
        return std::string{};
    });
}

//---------------------------------------------------------------------------//
void Installer::scene()
{
    add("/vis/scene/create", "Create an empty scene and make it current.",
        params(p_str("name", "", true)), [this](Args const& a) {
            vis_.create_scene(a.str("name"));
            return std::string{};
        });
    add("/vis/scene/list", "List scenes and their models.", {}, [this](Args const&) {
        for (auto const& s : vis_.scenes())
        {
            shell_.out() << s.name() << '\n';
            for (auto const& m : s.permanent_models())
                shell_.out() << "  " << describe(m) << '\n';
            for (auto const& m : s.transient_models())
                shell_.out() << "  " << describe(m) << " (transient)\n";
        }
        return std::string{};
    });
    add("/vis/scene/endOfEventAction", "Refresh or accumulate events; maxNumber sets the kept-event capacity.",
        params(p_choice("action", {"refresh", "accumulate"}, "refresh", true),
               p_int("maxNumber", "100", true)),
        [this](Args const& a) {
            if (a.integer("maxNumber") < 0)
                throw CommandError("maxNumber must not be negative");
            vis_.set_end_of_event_action(a.str("action") == "accumulate"
                                             ? EndOfEventAction::accumulate
                                             : EndOfEventAction::refresh);
            vis_.event_store().set_capacity(static_cast<std::size_t>(a.integer("maxNumber")));
            return std::string{};
        });

    std::string const add_dir = "/vis/scene/add/";
    add(add_dir + "volume", "Add a physical volume (default: world) to the current scene.",
        params(p_str("volume", "world", true), p_int("copy", "-1", true), p_int("depth", "-1", true)),
        [this](Args const& a) {
            Detector& d = detector();
            std::string name = a.str("volume") == "world" ? d.world()->name() : a.str("volume");
            if (!d.find_physical(name))
                throw CommandError("no physical volume \"" + name + "\"");
            vis_.add_model(PhysicalVolumeModel{vis_.detector(), name, static_cast<int>(a.integer("depth"))});
            return std::string{};
        });
    add(add_dir + "trajectories", "Draw trajectories at end of event.",
        params(p_text("option", "", true)), [this](Args const& a) {
            TrajectoriesModel m;
            m.option = a.str("option");
            vis_.add_model(m);
            return std::string{};
        });
    add(add_dir + "hits", "Draw hits at end of event.", {}, [this](Args const&) {
        vis_.add_model(HitsModel{});
        return std::string{};
    });
    add(add_dir + "axes", "Axes: x red, y green, z blue.",
        params(p_real("x0", "0", true), p_real("y0", "0", true), p_real("z0", "0", true),
               p_real("length", "-1", true), p_unit("unit", UnitCategory::length, "m")),
        [this](Args const& a) {
            AxesModel m;
            m.origin = {a.quantity("x0", "unit"), a.quantity("y0", "unit"), a.quantity("z0", "unit")};
            double len = a.quantity("length", "unit");
            m.length = len > 0 ? len : 0;
            vis_.add_model(m);
            return std::string{};
        });
    add(add_dir + "scale", "Scale bar; a non-positive length is chosen automatically.",
        params(p_real("length", "-1", true), p_unit("unit", UnitCategory::length, "m")),
        [this](Args const& a) {
            ScaleModel m;
            double len = a.quantity("length", "unit");
            m.length = len > 0 ? len : 0;
            m.colour = vis_.draw_defaults().colour;
            vis_.add_model(m);
            return std::string{};
        });
    add(add_dir + "text", "Text at a 3D position with pixel offsets.",
        params(p_real("x", "0", true), p_real("y", "0", true), p_real("z", "0", true),
               p_unit("unit", UnitCategory::length, "m"), p_real("font_size", "12", true),
               p_real("x_offset", "0", true), p_real("y_offset", "0", true), p_text("text", "", true)),
        [this](Args const& a) {
            Text3DModel m;
            m.position = {a.quantity("x", "unit"), a.quantity("y", "unit"), a.quantity("z", "unit")};
            m.size = a.real("font_size");
            m.x_offset = a.real("x_offset");
            m.y_offset = a.real("y_offset");
            m.text = a.str("text");
            m.colour = vis_.draw_defaults().text_colour;
            m.layout = vis_.draw_defaults().text_layout;
            vis_.add_model(m);
            return std::string{};
        });
    add(add_dir + "text2D", "Text at viewport coordinates in [-1, 1].",
        params(p_real("x", "0", true), p_real("y", "0", true), p_real("font_size", "12", true),
               p_real("x_offset", "0", true), p_real("y_offset", "0", true), p_text("text", "", true)),
        [this](Args const& a) {
            Text2DModel m;
            m.x = a.real("x");
            m.y = a.real("y");
            if (std::fabs(m.x) > 1 || std::fabs(m.y) > 1)
                throw CommandError("2D coordinates must lie in [-1, 1]");
            m.size = a.real("font_size");
            m.x_offset = a.real("x_offset");
            m.y_offset = a.real("y_offset");
            m.text = a.str("text");
            m.colour = vis_.draw_defaults().text_colour;
            m.layout = vis_.draw_defaults().text_layout;
            vis_.add_model(m);
            return std::string{};
        });
    add(add_dir + "date", "Date stamp, top right.", params(p_real("size", "14", true)),
        [this](Args const& a) {
            DateStampModel m;
            m.text = vis_.now();
            m.size = a.real("size");
            m.colour = vis_.draw_defaults().text_colour;
            vis_.add_model(m);
            return std::string{};
        });
    add(add_dir + "eventID", "Event number, bottom left, when events are drawn.",
        params(p_real("size", "14", true)), [this](Args const& a) {
            EventIDModel m;
            m.size = a.real("size");
            m.colour = vis_.draw_defaults().text_colour;
            vis_.add_model(m);
            return std::string{};
        });
    add(add_dir + "logo2D", "Text logo, bottom right.", params(p_real("size", "24", true)),
        [this](Args const& a) {
            Logo2DModel m;
            m.size = a.real("size");
            m.colour = vis_.draw_defaults().text_colour;
            vis_.add_model(m);
            return std::string{};
        });
    add(add_dir + "logo", "3D logo (not supported).", params(p_text("args", "", true)),
        [](Args const&) { return std::string{"/vis/scene/add/logo: 3D logo is not supported; ignored"}; });
    add(add_dir + "frame", "Frame around the view, in the current colour and line width.", {},
        [this](Args const&) {
            FrameModel m;
            m.colour = vis_.draw_defaults().colour;
            m.line_width = vis_.draw_defaults().line_width;
            vis_.add_model(m);
            return std::string{};
        });
}

//---------------------------------------------------------------------------//
void Installer::add_model_commands(std::string const& name, bool by_charge)
{
    std::string const dir = "/vis/modeling/trajectories/" + name + "/";
    auto defaults = [this, name]() -> StyleDefaults& {
        TrajectoryModel* m = vis_.find_trajectory_model(name);
        if (!m)
            throw CommandError("no trajectory model \"" + name + "\"");
        return model_defaults(*m);
    };
    add(dir + "default/setDrawStepPts", "Draw step points.", params(p_bool("flag", "true", true)),
        [defaults](Args const& a) {
            defaults().draw_step_points = a.boolean("flag");
            return std::string{};
        });
    add(dir + "default/setStepPtsSize", "Step point size in pixels.", params(p_real("size", "2", true)),
        [defaults](Args const& a) {
            if (a.real("size") <= 0)
                throw CommandError("step point size must be positive");
            defaults().step_points_size = a.real("size");
            return std::string{};
        });
    add(dir + "default/setDrawLine", "Draw trajectory lines.", params(p_bool("flag", "true", true)),
        [defaults](Args const& a) {
            defaults().draw_line = a.boolean("flag");
            return std::string{};
        });
    add(dir + "default/setLineWidth", "Trajectory line width in pixels.", params(p_real("width", "1", true)),
        [defaults](Args const& a) {
            if (a.real("width") <= 0)
                throw CommandError("line width must be positive");
            defaults().line_width = a.real("width");
            return std::string{};
        });
    add(dir + "default/setDefaultColour", "Colour for unlisted particles.", colour_params(),
        [defaults](Args const& a) {
            defaults().default_colour = read_colour(a, Colour::white());
            return std::string{};
        });
    if (by_charge)
    {
        add(dir + "set", "Colour for a charge: -1, 0 or 1.",
            concat(params(p_int("charge")), colour_params()), [this, name](Args const& a) {
                auto* m = std::get_if<DrawByCharge>(vis_.find_trajectory_model(name));
                long q = a.integer("charge");
                if (q < -1 || q > 1)
                    throw CommandError("charge must be -1, 0 or 1");
                m->set(static_cast<int>(q), read_colour(a, Colour::white()));
                return std::string{};
            });
    }
    else
    {
        add(dir + "set", "Colour for a particle name.",
            concat(params(p_str("particle")), colour_params()), [this, name](Args const& a) {
                auto* m = std::get_if<DrawByParticleID>(vis_.find_trajectory_model(name));
                m->colours[a.str("particle")] = read_colour(a, Colour::white());
                return std::string{};
            });
    }
}

void Installer::modeling()
{
    std::string const dir = "/vis/modeling/trajectories/";
    add(dir + "create/drawByCharge", "Colour trajectories by charge; the new model is selected.",
        params(p_str("name", "", true)), [this](Args const& a) {
            DrawByCharge m;
            m.name = a.str("name").empty() ? vis_.next_name("drawByCharge") : a.str("name");
            std::string name = vis_.create_trajectory_model(m);
            add_model_commands(name, true);
            return std::string{};
        });
    add(dir + "create/drawByParticleID", "Colour trajectories by particle name; the new model is selected.",
        params(p_str("name", "", true)), [this](Args const& a) {
            DrawByParticleID m;
            m.name = a.str("name").empty() ? vis_.next_name("drawByParticleID") : a.str("name");
            std::string name = vis_.create_trajectory_model(m);
            add_model_commands(name, false);
            return std::string{};
        });
    add(dir + "select", "Select a trajectory model.", params(p_str("model")), [this](Args const& a) {
        vis_.select_trajectory_model(a.str("model"));
        return std::string{};
    });
    add(dir + "list", "List trajectory models.", {}, [this](Args const&) {
        auto const* current = vis_.current_trajectory_model();
        for (auto const& m : vis_.trajectory_models())
            shell_.out() << model_name(m) << (&m == current ? " (current)" : "") << '\n';
        return std::string{};
    });
}

//---------------------------------------------------------------------------//
namespace
{
enum FilterKind
{
    particle_filter,
    charge_filter,
    attribute_filter,
};

//! "2.5 MeV 1000 MeV" or "2.5 1000": two values with optional units.
std::pair<double, double> parse_interval(std::string const& text)
{
    std::istringstream is(text);
    std::vector<std::string> tokens;
    for (std::string t; is >> t;)
        tokens.push_back(t);
    std::vector<double> values;
    for (std::size_t i = 0; i < tokens.size(); ++i)
    {
        char* end = nullptr;
        double v = std::strtod(tokens[i].c_str(), &end);
        if (end != tokens[i].c_str() + tokens[i].size())
            throw CommandError("interval: \"" + tokens[i] + "\" is not a number");
        if (i + 1 < tokens.size())
        {
            if (auto u = find_unit(tokens[i + 1]))
            {
                v *= u->value;
                ++i;
            }
        }
        values.push_back(v);
    }
    if (values.size() != 2)
        throw CommandError("interval needs a minimum and a maximum");
    if (values[0] > values[1])
        throw CommandError("interval minimum exceeds maximum");
    return {values[0], values[1]};
}
}  // namespace

void Installer::add_filter_commands(std::string const& name, int kind)
{
    std::string const dir = "/vis/filtering/trajectories/" + name + "/";
    auto filter = [this, name]() -> TrajectoryFilter& {
        TrajectoryFilter* f = vis_.filters().find(name);
        if (!f)
            throw CommandError("no trajectory filter \"" + name + "\"");
        return *f;
    };
    add(dir + "invert", "Invert the filter.", params(p_bool("flag", "true", true)),
        [filter](Args const& a) {
            std::visit([&](auto& f) { f.invert = a.boolean("flag"); }, filter());
            return std::string{};
        });
    add(dir + "active", "Activate the filter.", params(p_bool("flag", "true", true)),
        [filter](Args const& a) {
            std::visit([&](auto& f) { f.active = a.boolean("flag"); }, filter());
            return std::string{};
        });
    if (kind == particle_filter)
    {
        add(dir + "add", "Accept a particle name.", params(p_str("particle")),
            [filter](Args const& a) {
                std::get<ParticleFilter>(filter()).particles.insert(a.str("particle"));
                return std::string{};
            });
    }
    else if (kind == charge_filter)
    {
        add(dir + "add", "Accept a charge.", params(p_int("charge")), [filter](Args const& a) {
            std::get<ChargeFilter>(filter()).charges.insert(static_cast<int>(a.integer("charge")));
            return std::string{};
        });
    }
    else
    {
        add(dir + "setAttribute", "Trajectory attribute to test.", params(p_str("key")),
            [filter](Args const& a) {
                std::get<AttributeIntervalFilter>(filter()).key = a.str("key");
                return std::string{};
            });
        add(dir + "addInterval", "Accepted interval, e.g. \"2.5 MeV 1000 MeV\".",
            params(p_text("interval", "", false)), [filter](Args const& a) {
                auto [lo, hi] = parse_interval(a.str("interval"));
                auto& f = std::get<AttributeIntervalFilter>(filter());
                f.min = lo;
                f.max = hi;
                return std::string{};
            });
    }
}

void Installer::filtering()
{
    std::string const dir = "/vis/filtering/trajectories/";
    auto creator = [this](char const* type, int kind) {
        return [this, type, kind](Args const& a) {
            std::string name = a.str("name").empty() ? vis_.next_name(type) : a.str("name");
            TrajectoryFilter f;
            if (kind == particle_filter)
                f = ParticleFilter{name, {}, false, true};
            else if (kind == charge_filter)
                f = ChargeFilter{name, {}, false, true};
            else
                f = AttributeIntervalFilter{name, {}, 0, 0, false, true};
            vis_.create_filter(std::move(f));
            add_filter_commands(name, kind);
            return std::string{};
        };
    };
    add(dir + "create/particleFilter", "Filter on particle name.", params(p_str("name", "", true)),
        creator("particleFilter", particle_filter));
    add(dir + "create/chargeFilter", "Filter on charge.", params(p_str("name", "", true)),
        creator("chargeFilter", charge_filter));
    add(dir + "create/attributeFilter", "Filter on a numeric trajectory attribute interval.",
        params(p_str("name", "", true)), creator("attributeFilter", attribute_filter));
    add(dir + "list", "List trajectory filters.", {}, [this](Args const&) {
        for (auto const& f : vis_.filters().filters())
            shell_.out() << filter_name(f) << '\n';
        return std::string{};
    });
}

//---------------------------------------------------------------------------//
void Installer::geometry()
{
    std::string const dir = "/vis/geometry/set/";
    auto edit = [this](std::string const& lv, long depth, VisPatch const& patch) {
        Detector& d = detector();
        std::string name = lv == "all" ? d.world()->logical()->name() : lv;
        int depth_arg = lv == "all" ? -1 : static_cast<int>(depth);
        EditResult r = d.set_logical_vis(name, depth_arg, patch);
        if (r.changed > 0)
            refresh_all_scenes();
        return r.warning;
    };
    auto lv_params = [](std::vector<ParamSpec> rest) {
        return concat(params(p_str("logical_volume", "all", true), p_int("depth", "0", true)), rest);
    };
    add(dir + "visibility", "Visibility of a logical volume and its descendants to a depth.",
        lv_params(params(p_bool("visible", "true", true))), [edit](Args const& a) {
            VisPatch p;
            p.visible = a.boolean("visible");
            return edit(a.str("logical_volume"), a.integer("depth"), p);
        });
    add(dir + "colour", "Colour of a logical volume.", lv_params(colour_params()), [edit](Args const& a) {
        VisPatch p;
        p.colour = read_colour(a, Colour::white());
        return edit(a.str("logical_volume"), a.integer("depth"), p);
    });
    add(dir + "lineWidth", "Line width of a logical volume.",
        lv_params(params(p_real("width", "1", true))), [edit](Args const& a) {
            if (a.real("width") <= 0)
                throw CommandError("line width must be positive");
            VisPatch p;
            p.line_width = a.real("width");
            return edit(a.str("logical_volume"), a.integer("depth"), p);
        });
    add(dir + "lineStyle", "Line style of a logical volume.",
        lv_params(params(p_choice("style", {"solid", "dashed", "dotted"}, "solid", true))),
        [edit](Args const& a) {
            VisPatch p;
            p.line_style = line_style_from_string(a.str("style"));
            return edit(a.str("logical_volume"), a.integer("depth"), p);
        });
    add(dir + "forceWireframe", "Always draw as wireframe.", lv_params(params(p_bool("flag", "true", true))),
        [edit](Args const& a) {
            VisPatch p;
            p.forced_style = a.boolean("flag") ? ForcedStyle::wireframe : ForcedStyle::none;
            return edit(a.str("logical_volume"), a.integer("depth"), p);
        });
    add(dir + "forceSolid", "Always draw as surfaces.", lv_params(params(p_bool("flag", "true", true))),
        [edit](Args const& a) {
            VisPatch p;
            p.forced_style = a.boolean("flag") ? ForcedStyle::surface : ForcedStyle::none;
            return edit(a.str("logical_volume"), a.integer("depth"), p);
        });
    add(dir + "daughtersInvisible", "Hide daughters when culling.",
        lv_params(params(p_bool("flag", "true", true))), [edit](Args const& a) {
            VisPatch p;
            p.daughters_invisible = a.boolean("flag");
            return edit(a.str("logical_volume"), a.integer("depth"), p);
        });
}

void Installer::touchable()
{
    add("/vis/set/touchable", "Select a touchable by name and copy number pairs from the world.",
        params(p_text("path", "", true)), [this](Args const& a) {
            std::istringstream is(a.str("path"));
            TouchablePath path;
            std::string name;
            while (is >> name)
            {
                int copy = 0;
                if (!(is >> copy))
                    throw CommandError("touchable path needs name and copy number pairs");
                path.push_back({name, copy});
            }
            if (path.empty())
            {
                vis_.touchable_selection().reset();
                return std::string{};
            }
            bool found = false;
            for (auto const& t : detector().descend(unlimited_depth, false))
                found = found || t.path == path;
            vis_.touchable_selection() = path;
            return found ? std::string{} : "touchable " + to_string(path) + " not found";
        });

    std::string const dir = "/vis/touchable/set/";
    auto edit = [this](VisPatch const& patch) {
        auto& sel = vis_.touchable_selection();
        if (!sel)
            throw CommandError("no touchable selected; use /vis/set/touchable");
        EditResult r = detector().set_touchable_vis(*sel, patch);
        if (r.changed > 0)
            refresh_all_scenes();
        return r.warning;
    };
    add(dir + "visibility", "Visibility of the selected touchable.", params(p_bool("visible", "true", true)),
        [edit](Args const& a) {
            VisPatch p;
            p.visible = a.boolean("visible");
            return edit(p);
        });
    add(dir + "colour", "Colour of the selected touchable.", colour_params(), [edit](Args const& a) {
        VisPatch p;
        p.colour = read_colour(a, Colour::white());
        return edit(p);
    });
    add(dir + "lineWidth", "Line width of the selected touchable.", params(p_real("width", "1", true)),
        [edit](Args const& a) {
            if (a.real("width") <= 0)
                throw CommandError("line width must be positive");
            VisPatch p;
            p.line_width = a.real("width");
            return edit(p);
        });
    add(dir + "lineStyle", "Line style of the selected touchable.",
        params(p_choice("style", {"solid", "dashed", "dotted"}, "solid", true)), [edit](Args const& a) {
            VisPatch p;
            p.line_style = line_style_from_string(a.str("style"));
            return edit(p);
        });
    add(dir + "forceWireframe", "Always draw the selected touchable as wireframe.",
        params(p_bool("flag", "true", true)), [edit](Args const& a) {
            VisPatch p;
            p.forced_style = a.boolean("flag") ? ForcedStyle::wireframe : ForcedStyle::none;
            return edit(p);
        });
    add(dir + "forceSolid", "Always draw the selected touchable as surfaces.",
        params(p_bool("flag", "true", true)), [edit](Args const& a) {
            VisPatch p;
            p.forced_style = a.boolean("flag") ? ForcedStyle::surface : ForcedStyle::none;
            return edit(p);
        });
    add(dir + "daughtersInvisible", "Hide the selected touchable's daughters when culling.",
        params(p_bool("flag", "true", true)), [edit](Args const& a) {
            VisPatch p;
            p.daughters_invisible = a.boolean("flag");
            return edit(p);
        });
    add("/vis/touchable/dump", "Print the attributes of the selected touchable.", {},
        [this](Args const&) {
            auto& sel = vis_.touchable_selection();
            if (!sel)
                throw CommandError("no touchable selected; use /vis/set/touchable");
            for (auto const& t : detector().descend(unlimited_depth, false))
            {
                if (t.path != *sel)
                    continue;
                for (auto const& v : touchable_attributes(t))
                {
                    AttDef const* d = find_def(touchable_att_defs(), v.key);
                    shell_.out() << (d ? d->description : v.key) << " (" << v.key
                                 << "): " << v.value << '\n';
                }
                return std::string{};
            }
            throw CommandError("touchable " + to_string(*sel) + " not found");
        });
}

void Installer::set()
{
    add("/vis/set/colour", "Default colour for later decorations; no argument reverts to white.",
        colour_params(), [this](Args const& a) {
            vis_.draw_defaults().colour = read_colour(a, Colour::white());
            return std::string{};
        });
    add("/vis/set/lineWidth", "Default line width; no argument reverts to 1.",
        params(p_real("width", "1", true)), [this](Args const& a) {
            if (a.real("width") <= 0)
                throw CommandError("line width must be positive");
            vis_.draw_defaults().line_width = a.real("width");
            return std::string{};
        });
    add("/vis/set/textColour", "Default text colour; no argument reverts to blue.", colour_params(),
        [this](Args const& a) {
            vis_.draw_defaults().text_colour = read_colour(a, Colour{0, 0, 1});
            return std::string{};
        });
    add("/vis/set/textLayout", "Default text layout; no argument reverts to left.",
        params(p_choice("layout", {"left", "centre", "center", "right"}, "left", true)),
        [this](Args const& a) {
            auto l = text_layout_from_string(a.str("layout") == "center" ? "centre" : a.str("layout"));
            vis_.draw_defaults().text_layout = l.value_or(TextLayout::left);
            return std::string{};
        });
}

void Installer::install()
{
    control_and_run();
    top_level();
    viewer();
    scene();
    modeling();
    filtering();
    geometry();
    touchable();
    set();
}
}  // namespace

void install_commands(Shell& shell)
{
    auto installer = std::make_shared<Installer>(shell);
    installer->install();
    shell.retain(installer);
}

}  // namespace multivis
