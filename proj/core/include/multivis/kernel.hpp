//---------------------------------------------------------------------------//
//! \file multivis/kernel.hpp
//! \brief Visualisation manager: systems, scenes, handlers, viewers.
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "events.hpp"
#include "scene.hpp"
#include "trajectory_style.hpp"

namespace multivis
{
//! Failure of a kernel operation; kernel state is left unchanged.
class VisError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Verbosity
{
    quiet,
    startup,
    errors,
    warnings,
    confirmations,
    parameters,
    all,
};

char const* to_cstring(Verbosity);
//! Accepts names or their index ("warnings" or "3").
std::optional<Verbosity> verbosity_from_string(std::string_view);

//---------------------------------------------------------------------------//
/*!
 * Output side of a viewer: a sink to traverse into, then a writer.
 */
class Renderer
{
  public:
    virtual ~Renderer() = default;
    virtual SceneSink& sink() = 0;
    //! Write the output of the last traversal.
    virtual void write(std::ostream& os) const = 0;
};

struct Capabilities
{
    bool retained_store{false};
    bool renders_2d{false};
    bool picking_attvalues{false};
    bool geometry_only{false};
};

struct RenderOptions
{
    int ascii_verbosity{1};
    int threads{0};
    std::string timestamp;
};

struct GraphicsSystem
{
    std::string nickname;
    Capabilities capabilities;
    std::string extension;  //!< output file extension without dot
    bool binary_output{false};
    bool echo_output{false};  //!< also print the output to the session stream
    std::function<std::unique_ptr<Renderer>(RenderOptions const&)> make_renderer;
    //! Adjusts the default view of a new viewer.
    std::function<void(ViewParameters&)> default_view;
};

//! ATree, SVG, RayTracer and SceneExport.
std::vector<GraphicsSystem> builtin_systems();

//! Renderer for an export file name: .svg, .eps, .ppm, .json or .txt.
std::unique_ptr<Renderer>
renderer_for_extension(std::string_view ext, RenderOptions const& opts);

//---------------------------------------------------------------------------//
struct SceneHandler
{
    std::string name;
    std::string system;  //!< nickname
    std::string scene;  //!< attached scene name
};

struct Viewer
{
    std::string name;  //!< "viewer-0 (SVG)"
    std::string handler;
    ViewParameters view;
    bool auto_refresh{false};
    int sequence{0};  //!< next output file number
    std::vector<Drawable> user_transients;
    std::unique_ptr<Renderer> renderer;
    std::filesystem::path last_output;

    //! "viewer-0" from "viewer-0 (SVG)".
    std::string short_name() const;
};

//! Settings applied by the /vis/set/ commands.
struct DrawDefaults
{
    Colour colour{Colour::white()};
    double line_width{1};
    Colour text_colour{0, 0, 1};
    TextLayout text_layout{TextLayout::left};
};

struct ToyRunConfig
{
    int tracks_per_event{8};
    double field_tesla{1.0};
    std::uint64_t seed{12345};
};

//---------------------------------------------------------------------------//
/*!
 * The visualisation manager.
 *
 * Operations that fail throw VisError before mutating state. Every issued
 * view writes one file "<viewer>-NNNN.<ext>" into the output directory.
 */
class VisManager
{
  public:
    using Clock = std::function<std::string()>;

    explicit VisManager(std::ostream& out);

    //// Configuration ////

    void register_system(GraphicsSystem sys);
    void register_builtin_systems();
    std::vector<GraphicsSystem> const& systems() const { return systems_; }

    void set_detector(std::shared_ptr<Detector> d) { detector_ = std::move(d); }
    std::shared_ptr<Detector> const& detector() const { return detector_; }

    void set_output_directory(std::filesystem::path dir);
    std::filesystem::path const& output_directory() const { return out_dir_; }

    void set_clock(Clock c) { clock_ = std::move(c); }
    std::string now() const { return clock_(); }

    //! Extra sink fed by every traversal (e.g. a RecordingSink).
    void set_tap(SceneSink* tap) { tap_ = tap; }

    Verbosity verbosity() const { return verbosity_; }
    void set_verbosity(Verbosity v) { verbosity_ = v; }
    //! Print when the verbosity is at least `level`.
    void message(Verbosity level, std::string const& text) const;
    void warning(std::string const& text) const { message(Verbosity::warnings, "WARNING: " + text); }

    int ascii_verbosity() const { return render_opts_.ascii_verbosity; }
    void set_ascii_verbosity(int v) { render_opts_.ascii_verbosity = v; }
    void set_render_threads(int n) { render_opts_.threads = n; }

    //// Scenes ////

    //! Creates and makes current; an empty name selects "scene-N".
    std::string create_scene(std::string name = {});
    Scene& current_scene();
    Scene const* find_scene(std::string_view name) const;
    Scene* find_scene(std::string_view name);
    std::vector<Scene> const& scenes() const { return scenes_; }
    bool has_current_scene() const { return current_scene_.has_value(); }
    //! Add to the current scene and refresh views of it.
    void add_model(Model m);
    //! Rebuild viewers of the named scene that auto-refresh.
    void scene_changed(std::string const& scene);
    void set_end_of_event_action(EndOfEventAction a);

    //// Handlers and viewers ////

    //! Returns the new viewer's name; it becomes current.
    std::string open_viewer(std::string_view nickname, std::string_view window_geometry);
    bool has_current_viewer() const { return current_viewer_.has_value(); }
    Viewer& current_viewer();
    Viewer const& current_viewer() const;
    Viewer* find_viewer(std::string_view name);
    void select_viewer(std::string_view name);
    std::vector<Viewer> const& viewers() const { return viewers_; }
    std::vector<SceneHandler> const& handlers() const { return handlers_; }
    SceneHandler& handler_of(Viewer const& v);
    SceneHandler const& handler_of(Viewer const& v) const;
    //! Attach a scene (default: current) to the current viewer's handler.
    void attach_scene(std::string_view scene = {});

    //! Validate, store and refresh if the viewer auto-refreshes.
    void set_view(ViewParameters const& v);
    void set_auto_refresh(bool on);

    //! Traverse the viewer's scene and write its output.
    void issue_view(Viewer& v);
    //! Redraw keeping user transients.
    void flush();
    //! Redraw dropping unrecoverable user transients.
    void rebuild();
    //! Re-render the current viewer into a file whose extension picks the format.
    std::filesystem::path export_view(std::filesystem::path const& path);

    //// Geometry convenience ////

    //! /vis/drawVolume: new scene with a volume model, attached and current.
    void draw_volume(std::string_view pv_name, int depth_limit);

    //// Events ////

    EventStore& event_store() { return store_; }
    EventStore const& event_store() const { return store_; }
    //! Events drawn as transients by the next view.
    std::vector<Event const*> drawn_events() const;
    void begin_run();
    void end_of_event(Event event);
    //! Simulate a run of toy events.
    void beam_on(int n_events);
    ToyRunConfig& toy_config() { return toy_; }
    //! Store events read from a file and draw them as accumulated.
    void load_events(std::vector<Event> events);

    //// Trajectory models and filters ////

    //! An empty name selects next_name() of the model type.
    std::string create_trajectory_model(TrajectoryModel m);
    TrajectoryModel* find_trajectory_model(std::string_view name);
    void select_trajectory_model(std::string_view name);
    TrajectoryModel const* current_trajectory_model() const;
    std::vector<TrajectoryModel> const& trajectory_models() const { return models_; }
    std::string create_filter(TrajectoryFilter f);
    FilterChain& filters() { return filters_; }
    FilterChain const& filters() const { return filters_; }
    //! Next default name for a model or filter type, e.g. "drawByCharge-0".
    std::string next_name(std::string const& type) const;

    //// Draw facade ////

    //! Unrecoverable transient for the current viewer; no-op without one.
    void draw(Primitive p, Transform const& t = {});
    void draw_2d(Primitive p);
    void draw(SolidPtr s, VisAttributes const& vis, Transform const& t = {});
    void register_user_vis_action(std::string name,
                                  std::function<void(VisActionCanvas&)> callback,
                                  std::optional<BBox> extent = std::nullopt);
    void remove_user_vis_action(std::string_view name);

    DrawDefaults& draw_defaults() { return defaults_; }
    DrawDefaults const& draw_defaults() const { return defaults_; }

    //! Selected touchable for /vis/touchable/ commands.
    std::optional<TouchablePath>& touchable_selection() { return touchable_; }

    //// Introspection ////

    //! Canonical description of the kernel state.
    std::string state_dump() const;
    //! Hex hash of state_dump().
    std::string state_digest() const;
    //! /vis/list output.
    std::string list() const;

  private:
    void add_user_transient(Drawable d);
    std::filesystem::path output_path(Viewer const& v, std::string const& ext) const;
    TraversalContext context_for(Viewer const& v) const;
    void refresh_scene_viewers(std::string const& scene);

    std::ostream& out_;
    std::vector<GraphicsSystem> systems_;
    std::shared_ptr<Detector> detector_;
    std::filesystem::path out_dir_{"."};
    Clock clock_;
    SceneSink* tap_{nullptr};
    Verbosity verbosity_{Verbosity::warnings};
    RenderOptions render_opts_;

    std::vector<Scene> scenes_;
    std::optional<std::size_t> current_scene_;
    int scene_counter_{0};
    std::vector<SceneHandler> handlers_;
    std::vector<Viewer> viewers_;
    std::optional<std::size_t> current_viewer_;
    int viewer_counter_{0};

    EventStore store_;
    std::vector<Event> drawn_;  //!< transients retained for redraws
    ToyRunConfig toy_;
    int next_event_id_{0};
    int run_counter_{0};

    std::vector<TrajectoryModel> models_;
    std::optional<std::size_t> current_model_;
    FilterChain filters_;

    DrawDefaults defaults_;
    std::optional<TouchablePath> touchable_;
};

}  // namespace multivis
