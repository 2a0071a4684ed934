//---------------------------------------------------------------------------//
//! \file kernel.cpp
//---------------------------------------------------------------------------//
#include "multivis/kernel.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "multivis/drivers/ascii_tree.hpp"
#include "multivis/drivers/painter.hpp"
#include "multivis/drivers/protocol.hpp"
#include "multivis/drivers/ray_tracer.hpp"
#include "multivis/drivers/scene_export.hpp"
#include "multivis/units.hpp"

namespace multivis
{
//---------------------------------------------------------------------------//
// Verbosity
//---------------------------------------------------------------------------//
namespace
{
constexpr Verbosity all_verbosities[] = {Verbosity::quiet,
                                         Verbosity::startup,
                                         Verbosity::errors,
                                         Verbosity::warnings,
                                         Verbosity::confirmations,
                                         Verbosity::parameters,
                                         Verbosity::all};
}

char const* to_cstring(Verbosity v)
{
    switch (v)
    {
        case Verbosity::quiet:
            return "quiet";
        case Verbosity::startup:
            return "startup";
        case Verbosity::errors:
            return "errors";
        case Verbosity::warnings:
            return "warnings";
        case Verbosity::confirmations:
            return "confirmations";
        case Verbosity::parameters:
            return "parameters";
        case Verbosity::all:
            return "all";
    }
    return "?";
}

std::optional<Verbosity> verbosity_from_string(std::string_view s)
{
    for (auto v : all_verbosities)
    {
        if (s == to_cstring(v) || s == std::to_string(static_cast<int>(v)))
            return v;
    }
    return std::nullopt;
}

//---------------------------------------------------------------------------//
// Renderers
//---------------------------------------------------------------------------//
namespace
{
class AsciiRenderer final : public Renderer
{
  public:
    explicit AsciiRenderer(RenderOptions const& opts) : opts_{opts} {}
    SceneSink& sink() override
    {
        buffer_.str({});
        sink_.emplace(buffer_, opts_.ascii_verbosity);
        return *sink_;
    }
    void write(std::ostream& os) const override { os << buffer_.str(); }

  private:
    RenderOptions const& opts_;
    std::ostringstream buffer_;
    std::optional<AsciiTreeSink> sink_;
};

class VectorRenderer final : public Renderer
{
  public:
    explicit VectorRenderer(bool eps) : eps_{eps} {}
    SceneSink& sink() override
    {
        sink_.emplace();
        return *sink_;
    }
    void write(std::ostream& os) const override
    {
        if (eps_)
            write_eps(os, *sink_);
        else
            write_svg(os, *sink_);
    }

  private:
    bool eps_;
    std::optional<PainterSink> sink_;
};

class RayRenderer final : public Renderer
{
  public:
    explicit RayRenderer(RenderOptions const& opts) : opts_{opts} {}
    SceneSink& sink() override
    {
        sink_.emplace(opts_.threads);
        return *sink_;
    }
    void write(std::ostream& os) const override { write_ppm(os, sink_->image()); }

  private:
    RenderOptions const& opts_;
    std::optional<RayTracerSink> sink_;
};

class ExportRenderer final : public Renderer
{
  public:
    explicit ExportRenderer(RenderOptions const& opts) : opts_{opts} {}
    SceneSink& sink() override
    {
        sink_.emplace(opts_.timestamp);
        return *sink_;
    }
    void write(std::ostream& os) const override { os << to_json(sink_->document()); }

  private:
    RenderOptions const& opts_;
    std::optional<SceneExportSink> sink_;
};

std::string default_clock()
{
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    localtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%d %H:%M:%S");
    return os.str();
}
}  // namespace

std::vector<GraphicsSystem> builtin_systems()
{
    std::vector<GraphicsSystem> result;
    {
        GraphicsSystem s;
        s.nickname = "ATree";
        s.capabilities.geometry_only = true;
        s.extension = "txt";
        s.echo_output = true;
        s.make_renderer = [](RenderOptions const& o) {
            return std::make_unique<AsciiRenderer>(o);
        };
        // By default culling is off so all volumes are listed.
        s.default_view = [](ViewParameters& v) { v.culling_invisible = false; };
        result.push_back(std::move(s));
    }
    {
        GraphicsSystem s;
        s.nickname = "SVG";
        s.capabilities.renders_2d = true;
        s.extension = "svg";
        s.make_renderer = [](RenderOptions const&) {
            return std::make_unique<VectorRenderer>(false);
        };
        result.push_back(std::move(s));
    }
    {
        GraphicsSystem s;
        s.nickname = "RayTracer";
        s.capabilities.geometry_only = true;
        s.extension = "ppm";
        s.binary_output = true;
        s.make_renderer = [](RenderOptions const& o) {
            return std::make_unique<RayRenderer>(o);
        };
        s.default_view = [](ViewParameters& v) { v.style = DrawingStyle::surface; };
        result.push_back(std::move(s));
    }
    {
        GraphicsSystem s;
        s.nickname = "SceneExport";
        s.capabilities.retained_store = true;
        s.capabilities.renders_2d = true;
        s.capabilities.picking_attvalues = true;
        s.extension = "scene.json";
        s.make_renderer = [](RenderOptions const& o) {
            return std::make_unique<ExportRenderer>(o);
        };
        result.push_back(std::move(s));
    }
    return result;
}

std::unique_ptr<Renderer>
renderer_for_extension(std::string_view ext, RenderOptions const& opts)
{
    if (ext == "svg")
        return std::make_unique<VectorRenderer>(false);
    if (ext == "eps")
        return std::make_unique<VectorRenderer>(true);
    if (ext == "ppm")
        return std::make_unique<RayRenderer>(opts);
    if (ext == "json")
        return std::make_unique<ExportRenderer>(opts);
    if (ext == "txt")
        return std::make_unique<AsciiRenderer>(opts);
    return nullptr;
}

std::string Viewer::short_name() const
{
    return name.substr(0, name.find(' '));
}

//---------------------------------------------------------------------------//
// VisManager
//---------------------------------------------------------------------------//
VisManager::VisManager(std::ostream& out) : out_{out}, clock_{default_clock}
{
    filters_.set_warning_hook([this](std::string const& w) { warning(w); });
}

void VisManager::register_system(GraphicsSystem sys)
{
    for (auto const& s : systems_)
    {
        if (s.nickname == sys.nickname)
            throw VisError("graphics system \"" + sys.nickname + "\" is already registered");
    }
    systems_.push_back(std::move(sys));
}

void VisManager::register_builtin_systems()
{
    for (auto& s : builtin_systems())
        register_system(std::move(s));
}

void VisManager::set_output_directory(std::filesystem::path dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw VisError("cannot create output directory \"" + dir.string() + "\": " + ec.message());
    out_dir_ = std::move(dir);
}

void VisManager::message(Verbosity level, std::string const& text) const
{
    if (verbosity_ >= level)
        out_ << text << '\n';
}

//---------------------------------------------------------------------------//
// Scenes
//---------------------------------------------------------------------------//
std::string VisManager::create_scene(std::string name)
{
    if (name.empty())
    {
        do
        {
            name = "scene-" + std::to_string(scene_counter_++);
        } while (find_scene(name));
    }
    else if (find_scene(name))
    {
        throw VisError("scene \"" + name + "\" already exists");
    }
    scenes_.emplace_back(name);
    current_scene_ = scenes_.size() - 1;
    message(Verbosity::confirmations, "Scene \"" + name + "\" created");
    return name;
}

Scene& VisManager::current_scene()
{
    if (!current_scene_)
        throw VisError("no current scene");
    return scenes_[*current_scene_];
}

Scene const* VisManager::find_scene(std::string_view name) const
{
    for (auto const& s : scenes_)
    {
        if (s.name() == name)
            return &s;
    }
    return nullptr;
}

Scene* VisManager::find_scene(std::string_view name)
{
    return const_cast<Scene*>(std::as_const(*this).find_scene(name));
}

void VisManager::add_model(Model m)
{
    Scene& scene = current_scene();
    if (auto const* ua = std::get_if<UserActionModel>(&m))
    {
        for (auto const& other : scene.permanent_models())
        {
            auto const* o = std::get_if<UserActionModel>(&other);
            if (o && o->name == ua->name)
                throw VisError("user vis action \"" + ua->name + "\" already registered");
        }
    }
    message(Verbosity::confirmations,
            "Model " + describe(m) + " added to scene \"" + scene.name() + "\"");
    scene.add_model(std::move(m));
    scene_changed(scene.name());
}

void VisManager::scene_changed(std::string const& scene)
{
    refresh_scene_viewers(scene);
}

void VisManager::refresh_scene_viewers(std::string const& scene)
{
    for (auto& v : viewers_)
    {
        if (v.auto_refresh && handler_of(v).scene == scene)
            issue_view(v);
    }
}

void VisManager::set_end_of_event_action(EndOfEventAction a)
{
    current_scene().set_end_of_event_action(a);
}

//---------------------------------------------------------------------------//
// Viewers
//---------------------------------------------------------------------------//
std::string VisManager::open_viewer(std::string_view nickname, std::string_view geometry)
{
    GraphicsSystem const* sys = nullptr;
    for (auto const& s : systems_)
    {
        if (s.nickname == nickname)
            sys = &s;
    }
    if (!sys)
    {
        std::string names;
        for (auto const& s : systems_)
            names += (names.empty() ? "" : ", ") + s.nickname;
        throw VisError("unknown graphics system \"" + std::string(nickname)
                       + "\"; registered: " + names);
    }
    ViewParameters view;
    if (!geometry.empty())
    {
        auto w = parse_window_geometry(geometry);
        if (!w)
            throw VisError("bad window geometry \"" + std::string(geometry) + "\"");
        view.window = *w;
    }
    if (sys->default_view)
        sys->default_view(view);

    if (!current_scene_)
        create_scene();

    int index = viewer_counter_++;
    SceneHandler h;
    h.name = "scene-handler-" + std::to_string(index) + " (" + sys->nickname + ")";
    h.system = sys->nickname;
    h.scene = scenes_[*current_scene_].name();
    handlers_.push_back(h);

    Viewer v;
    v.name = "viewer-" + std::to_string(index) + " (" + sys->nickname + ")";
    v.handler = h.name;
    v.view = view;
    v.auto_refresh = sys->capabilities.retained_store;
    v.renderer = sys->make_renderer(render_opts_);
    viewers_.push_back(std::move(v));
    current_viewer_ = viewers_.size() - 1;
    message(Verbosity::confirmations, "Viewer \"" + viewers_.back().name + "\" created");
    return viewers_.back().name;
}

Viewer& VisManager::current_viewer()
{
    if (!current_viewer_)
        throw VisError("no current viewer");
    return viewers_[*current_viewer_];
}

Viewer const& VisManager::current_viewer() const
{
    if (!current_viewer_)
        throw VisError("no current viewer");
    return viewers_[*current_viewer_];
}

Viewer* VisManager::find_viewer(std::string_view name)
{
    for (auto& v : viewers_)
    {
        if (v.name == name || v.short_name() == name)
            return &v;
    }
    return nullptr;
}

void VisManager::select_viewer(std::string_view name)
{
    Viewer* v = find_viewer(name);
    if (!v)
        throw VisError("no viewer \"" + std::string(name) + "\"");
    current_viewer_ = static_cast<std::size_t>(v - viewers_.data());
    // The selected viewer's scene becomes current.
    auto const& scene = handler_of(*v).scene;
    for (std::size_t i = 0; i < scenes_.size(); ++i)
    {
        if (scenes_[i].name() == scene)
            current_scene_ = i;
    }
}

SceneHandler& VisManager::handler_of(Viewer const& v)
{
    return const_cast<SceneHandler&>(std::as_const(*this).handler_of(v));
}

SceneHandler const& VisManager::handler_of(Viewer const& v) const
{
    for (auto const& h : handlers_)
    {
        if (h.name == v.handler)
            return h;
    }
    throw std::logic_error("viewer without scene handler");
}

void VisManager::attach_scene(std::string_view scene)
{
    Viewer& v = current_viewer();
    std::string name = scene.empty() ? current_scene().name() : std::string(scene);
    if (!find_scene(name))
        throw VisError("no scene \"" + name + "\"");
    handler_of(v).scene = name;
    message(Verbosity::confirmations,
            "Scene \"" + name + "\" attached to \"" + handler_of(v).name + "\"");
    if (v.auto_refresh)
        issue_view(v);
}

void VisManager::set_view(ViewParameters const& view)
{
    Viewer& v = current_viewer();
    try
    {
        validate(view);
    }
    catch (std::invalid_argument const& e)
    {
        throw VisError(e.what());
    }
    v.view = view;
    if (v.auto_refresh)
        issue_view(v);
}

void VisManager::set_auto_refresh(bool on)
{
    Viewer& v = current_viewer();
    v.auto_refresh = on;
    if (on)
        issue_view(v);
}

TraversalContext VisManager::context_for(Viewer const& v) const
{
    TraversalContext ctx;
    ctx.view = v.view;
    ctx.events = drawn_events();
    ctx.trajectory_model = current_trajectory_model();
    ctx.filters = &filters_;
    ctx.user_transients = &v.user_transients;
    return ctx;
}

std::filesystem::path VisManager::output_path(Viewer const& v, std::string const& ext) const
{
    char num[16];
    std::snprintf(num, sizeof(num), "%04d", v.sequence);
    return out_dir_ / (v.short_name() + "-" + num + "." + ext);
}

void VisManager::issue_view(Viewer& v)
{
    SceneHandler const& h = handler_of(v);
    Scene const* scene = find_scene(h.scene);
    if (!scene)
        throw VisError("viewer \"" + v.name + "\" has no scene");
    GraphicsSystem const* sys = nullptr;
    for (auto const& s : systems_)
    {
        if (s.nickname == h.system)
            sys = &s;
    }

    render_opts_.timestamp = now();
    SceneSink& target = v.renderer->sink();
    TeeSink tee{{&target, tap_}};
    ProtocolChecker checker{tap_ ? static_cast<SceneSink*>(&tee) : &target};
    try
    {
        traverse(*scene, checker, context_for(v));
    }
    catch (VisError const&)
    {
        throw;
    }
    catch (std::exception const& e)
    {
        throw VisError("rendering \"" + v.name + "\" failed: " + e.what());
    }

    auto path = output_path(v, sys->extension);
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw VisError("cannot write \"" + path.string() + "\"");
    v.renderer->write(file);
    if (!file)
        throw VisError("error writing \"" + path.string() + "\"");
    ++v.sequence;
    v.last_output = path;
    if (sys->echo_output)
        v.renderer->write(out_);
    message(Verbosity::confirmations, "Wrote \"" + path.string() + "\"");
}

void VisManager::flush()
{
    issue_view(current_viewer());
}

void VisManager::rebuild()
{
    Viewer& v = current_viewer();
    v.user_transients.clear();
    issue_view(v);
}

std::filesystem::path VisManager::export_view(std::filesystem::path const& path)
{
    Viewer& v = current_viewer();
    std::string ext = path.extension().string();
    if (!ext.empty())
        ext.erase(0, 1);
    render_opts_.timestamp = now();
    auto renderer = renderer_for_extension(ext, render_opts_);
    if (!renderer)
        throw VisError("cannot export to \"" + path.string()
                       + "\": use .svg, .eps, .ppm, .json or .txt");
    Scene const* scene = find_scene(handler_of(v).scene);
    if (!scene)
        throw VisError("viewer \"" + v.name + "\" has no scene");
    ProtocolChecker checker{&renderer->sink()};
    try
    {
        traverse(*scene, checker, context_for(v));
    }
    catch (std::exception const& e)
    {
        throw VisError("export failed: " + std::string(e.what()));
    }
    auto out_path = path.is_absolute() ? path : out_dir_ / path;
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        throw VisError("cannot write \"" + out_path.string() + "\"");
    renderer->write(file);
    message(Verbosity::confirmations, "Exported \"" + out_path.string() + "\"");
    return out_path;
}

//---------------------------------------------------------------------------//
void VisManager::draw_volume(std::string_view pv_name, int depth_limit)
{
    current_viewer();
    if (!detector_)
        throw VisError("no geometry loaded");
    std::string name = pv_name.empty() ? detector_->world()->name() : std::string(pv_name);
    if (!detector_->find_physical(name))
        throw VisError("no physical volume \"" + name + "\"");
    std::string scene = create_scene();
    current_scene().add_model(PhysicalVolumeModel{detector_, name, depth_limit});
    attach_scene(scene);
}

//---------------------------------------------------------------------------//
// Events
//---------------------------------------------------------------------------//
std::vector<Event const*> VisManager::drawn_events() const
{
    std::vector<Event const*> result;
    result.reserve(drawn_.size());
    for (auto const& e : drawn_)
        result.push_back(&e);
    return result;
}

void VisManager::begin_run()
{
    drawn_.clear();
    ++run_counter_;
}

void VisManager::end_of_event(Event event)
{
    store_.store(event);
    bool accumulate = current_scene_
                      && scenes_[*current_scene_].end_of_event_action()
                             == EndOfEventAction::accumulate;
    if (accumulate)
    {
        drawn_.push_back(std::move(event));
        std::size_t cap = std::max<std::size_t>(store_.capacity(), 1);
        if (drawn_.size() > cap)
            drawn_.erase(drawn_.begin(), drawn_.end() - static_cast<std::ptrdiff_t>(cap));
    }
    else
    {
        drawn_.assign(1, std::move(event));
    }

    if (!current_viewer_)
        return;
    Viewer& v = current_viewer();
    Scene const* scene = find_scene(handler_of(v).scene);
    if (scene && !scene->transient_models().empty())
    {
        if (!accumulate)
            v.user_transients.clear();
        issue_view(v);
    }
}

void VisManager::beam_on(int n_events)
{
    if (n_events < 0)
        throw VisError("number of events must not be negative");
    ToyConfig cfg;
    if (detector_)
    {
        auto const& world = detector_->world();
        cfg.world = transform_bbox(bounding_box(*world->logical()->solid()), world->transform());
    }
    begin_run();
    for (int i = 0; i < n_events; ++i)
    {
        std::uint64_t seed = toy_.seed + 1000003ULL * static_cast<std::uint64_t>(run_counter_)
                             + static_cast<std::uint64_t>(i);
        end_of_event(
            generate_toy_event(seed, toy_.tracks_per_event, toy_.field_tesla, i, cfg));
    }
    message(Verbosity::confirmations,
            "Run " + std::to_string(run_counter_ - 1) + ": " + std::to_string(n_events)
                + " events");
}

void VisManager::load_events(std::vector<Event> events)
{
    for (auto& e : events)
    {
        store_.store(e);
        drawn_.push_back(std::move(e));
    }
    std::size_t cap = std::max<std::size_t>(store_.capacity(), 1);
    if (drawn_.size() > cap)
        drawn_.erase(drawn_.begin(), drawn_.end() - static_cast<std::ptrdiff_t>(cap));
}

//---------------------------------------------------------------------------//
// Models and filters
//---------------------------------------------------------------------------//
std::string VisManager::next_name(std::string const& type) const
{
    int n = 0;
    auto prefix = type + "-";
    for (auto const& m : models_)
        n += model_name(m).rfind(prefix, 0) == 0;
    for (auto const& f : filters_.filters())
        n += filter_name(f).rfind(prefix, 0) == 0;
    return prefix + std::to_string(n);
}

std::string VisManager::create_trajectory_model(TrajectoryModel m)
{
    std::visit(
        [this](auto& model) {
            using T = std::decay_t<decltype(model)>;
            if (model.name.empty())
                model.name = next_name(std::is_same_v<T, DrawByCharge> ? "drawByCharge"
                                                                       : "drawByParticleID");
        },
        m);
    std::string name = model_name(m);
    if (find_trajectory_model(name))
        throw VisError("trajectory model \"" + name + "\" already exists");
    models_.push_back(std::move(m));
    current_model_ = models_.size() - 1;
    message(Verbosity::confirmations, "Trajectory model \"" + name + "\" created and selected");
    return name;
}

TrajectoryModel* VisManager::find_trajectory_model(std::string_view name)
{
    for (auto& m : models_)
    {
        if (model_name(m) == name)
            return &m;
    }
    return nullptr;
}

void VisManager::select_trajectory_model(std::string_view name)
{
    TrajectoryModel* m = find_trajectory_model(name);
    if (!m)
        throw VisError("no trajectory model \"" + std::string(name) + "\"");
    current_model_ = static_cast<std::size_t>(m - models_.data());
}

TrajectoryModel const* VisManager::current_trajectory_model() const
{
    return current_model_ ? &models_[*current_model_] : nullptr;
}

std::string VisManager::create_filter(TrajectoryFilter f)
{
    std::visit(
        [this](auto& filter) {
            using T = std::decay_t<decltype(filter)>;
            if (!filter.name.empty())
                return;
            if constexpr (std::is_same_v<T, ParticleFilter>)
                filter.name = next_name("particleFilter");
            else if constexpr (std::is_same_v<T, ChargeFilter>)
                filter.name = next_name("chargeFilter");
            else
                filter.name = next_name("attributeFilter");
        },
        f);
    std::string name = filter_name(f);
    if (filters_.find(name))
        throw VisError("trajectory filter \"" + name + "\" already exists");
    filters_.add(std::move(f));
    message(Verbosity::confirmations, "Trajectory filter \"" + name + "\" created");
    return name;
}

//---------------------------------------------------------------------------//
// Draw facade
//---------------------------------------------------------------------------//
void VisManager::add_user_transient(Drawable d)
{
    if (!current_viewer_)
    {
        message(Verbosity::confirmations, "No current viewer; user drawing ignored");
        return;
    }
    Viewer& v = current_viewer();
    v.user_transients.push_back(std::move(d));
    if (v.auto_refresh)
        issue_view(v);
}

void VisManager::draw(Primitive p, Transform const& t)
{
    try
    {
        validate(p);
    }
    catch (std::invalid_argument const& e)
    {
        throw VisError(e.what());
    }
    add_user_transient(PrimitiveDraw{std::move(p), t, false});
}

void VisManager::draw_2d(Primitive p)
{
    try
    {
        validate(p);
    }
    catch (std::invalid_argument const& e)
    {
        throw VisError(e.what());
    }
    add_user_transient(PrimitiveDraw{std::move(p), {}, true});
}

void VisManager::draw(SolidPtr s, VisAttributes const& vis, Transform const& t)
{
    add_user_transient(SolidDraw{std::move(s), vis, t});
}

void VisManager::register_user_vis_action(std::string name,
                                          std::function<void(VisActionCanvas&)> callback,
                                          std::optional<BBox> extent)
{
    if (!current_scene_)
        create_scene();
    add_model(UserActionModel{std::move(name), std::move(callback), extent});
}

void VisManager::remove_user_vis_action(std::string_view name)
{
    Scene& scene = current_scene();
    if (!scene.remove_user_action(name))
        throw VisError("no user vis action \"" + std::string(name) + "\"");
    scene_changed(scene.name());
}

//---------------------------------------------------------------------------//
// Introspection
//---------------------------------------------------------------------------//
namespace
{
std::string fmt(Vec3 const& v)
{
    char buf[96];
    std::snprintf(buf, sizeof(buf), "(%.9g, %.9g, %.9g)", v.x, v.y, v.z);
    return buf;
}

std::string fmt(double d)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", d);
    return buf;
}

std::string describe_view(ViewParameters const& v)
{
    std::ostringstream os;
    os << "viewpoint " << fmt(v.viewpoint) << " up " << fmt(v.up) << " lights "
       << fmt(v.lights) << " target " << fmt(v.target_offset) << " zoom " << fmt(v.zoom)
       << " style " << to_cstring(v.style) << " aux " << v.auxiliary_edges << " hidden-marker "
       << v.hidden_marker << " culling " << v.culling_invisible << " segments "
       << v.segments_per_circle << " window " << to_string(v.window) << " projection "
       << to_cstring(v.projection) << ' ' << fmt(v.field_half_angle) << " background "
       << to_string(v.background);
    return os.str();
}

std::string describe_defaults(StyleDefaults const& d)
{
    return "line " + std::to_string(d.draw_line) + " points "
           + std::to_string(d.draw_step_points) + " size " + fmt(d.step_points_size)
           + " width " + fmt(d.line_width) + " colour " + to_string(d.default_colour);
}
}  // namespace

std::string VisManager::state_dump() const
{
    std::ostringstream os;
    os << "verbosity " << to_cstring(verbosity_) << "\nascii-verbosity "
       << render_opts_.ascii_verbosity << '\n';
    for (auto const& s : scenes_)
    {
        os << "scene " << s.name() << " eoe "
           << (s.end_of_event_action() == EndOfEventAction::accumulate ? "accumulate"
                                                                       : "refresh")
           << " extent " << fmt(s.extent().centre) << ' ' << fmt(s.extent().radius) << '\n';
        for (auto const& m : s.permanent_models())
            os << "  permanent " << describe(m) << '\n';
        for (auto const& m : s.transient_models())
            os << "  transient " << describe(m) << '\n';
    }
    if (current_scene_)
        os << "current-scene " << scenes_[*current_scene_].name() << '\n';
    for (auto const& h : handlers_)
        os << "handler " << h.name << " scene " << h.scene << '\n';
    for (auto const& v : viewers_)
    {
        os << "viewer " << v.name << " handler " << v.handler << " auto-refresh "
           << v.auto_refresh << " outputs " << v.sequence << " user-transients "
           << v.user_transients.size() << "\n  " << describe_view(v.view) << '\n';
    }
    if (current_viewer_)
        os << "current-viewer " << viewers_[*current_viewer_].name << '\n';
    for (auto const& m : models_)
    {
        os << "model " << model_name(m) << ' '
           << describe_defaults(std::visit([](auto const& x) { return x.defaults; }, m))
           << '\n';
        if (auto const* c = std::get_if<DrawByCharge>(&m))
        {
            os << "  charge " << to_string(c->positive) << " | " << to_string(c->negative)
               << " | " << to_string(c->neutral) << '\n';
        }
        else if (auto const* p = std::get_if<DrawByParticleID>(&m))
        {
            for (auto const& [name, c] : p->colours)
                os << "  " << name << ' ' << to_string(c) << '\n';
        }
    }
    if (current_model_)
        os << "current-model " << model_name(models_[*current_model_]) << '\n';
    for (auto const& f : filters_.filters())
    {
        os << "filter " << filter_name(f);
        std::visit(
            [&os](auto const& x) {
                using T = std::decay_t<decltype(x)>;
                os << " invert " << x.invert << " active " << x.active;
                if constexpr (std::is_same_v<T, ParticleFilter>)
                {
                    for (auto const& p : x.particles)
                        os << ' ' << p;
                }
                else if constexpr (std::is_same_v<T, ChargeFilter>)
                {
                    for (int c : x.charges)
                        os << ' ' << c;
                }
                else
                {
                    os << ' ' << x.key << " [" << fmt(x.min) << ", " << fmt(x.max) << ']';
                }
            },
            f);
        os << '\n';
    }
    os << "defaults colour " << to_string(defaults_.colour) << " width "
       << fmt(defaults_.line_width) << " text " << to_string(defaults_.text_colour) << ' '
       << to_cstring(defaults_.text_layout) << '\n';
    os << "store " << store_.size() << '/' << store_.capacity() << " drawn " << drawn_.size()
       << " runs " << run_counter_ << '\n';
    if (touchable_)
        os << "touchable " << to_string(*touchable_) << '\n';
    if (detector_)
    {
        for (auto const& t : detector_->descend(unlimited_depth, false))
        {
            os << "vol " << to_string(t.path) << " visible " << t.vis.visible << " colour "
               << to_string(t.vis.colour) << " width " << fmt(t.vis.line_width) << " style "
               << to_cstring(t.vis.line_style) << " forced " << to_cstring(t.vis.forced_style)
               << " daughters-invisible " << t.vis.daughters_invisible << '\n';
        }
    }
    return os.str();
}

std::string VisManager::state_digest() const
{
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016zx", std::hash<std::string>{}(state_dump()));
    return buf;
}

std::string VisManager::list() const
{
    std::ostringstream os;
    os << "Registered graphics systems:\n";
    for (auto const& s : systems_)
        os << "  " << s.nickname << " (." << s.extension << ")\n";
    os << "Scenes:\n";
    for (auto const& s : scenes_)
    {
        bool current = current_scene_ && &scenes_[*current_scene_] == &s;
        os << "  " << s.name() << (current ? " (current)" : "") << '\n';
        for (auto const& m : s.permanent_models())
            os << "    " << describe(m) << '\n';
        for (auto const& m : s.transient_models())
            os << "    " << describe(m) << " (transient)\n";
    }
    os << "Scene handlers:\n";
    for (auto const& h : handlers_)
        os << "  " << h.name << " scene \"" << h.scene << "\"\n";
    os << "Viewers:\n";
    for (auto const& v : viewers_)
    {
        bool current = current_viewer_ && &viewers_[*current_viewer_] == &v;
        os << "  " << v.name << (current ? " (current)" : "") << '\n';
    }
    os << "Trajectory models:\n";
    for (auto const& m : models_)
        os << "  " << model_name(m) << '\n';
    os << "Trajectory filters:\n";
    for (auto const& f : filters_.filters())
        os << "  " << filter_name(f) << '\n';
    return os.str();
}

}  // namespace multivis
