//---------------------------------------------------------------------------//
//! \file multivis/scene.hpp
//! \brief Primitives, models, scenes and the low-level sink interface.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "attributes.hpp"
#include "events.hpp"
#include "geometry.hpp"
#include "solids.hpp"
#include "trajectory_style.hpp"
#include "view.hpp"

namespace multivis
{
//---------------------------------------------------------------------------//
// Primitives
//---------------------------------------------------------------------------//
enum class MarkerKind
{
    dot,
    circle,
    square,
};

enum class TextLayout
{
    left,
    centre,
    right,
};

char const* to_cstring(MarkerKind);
char const* to_cstring(TextLayout);
std::optional<TextLayout> text_layout_from_string(std::string_view);

struct Polyline
{
    std::vector<Vec3> points;
    VisAttributes vis;
};

struct Polymarker
{
    std::vector<Vec3> points;
    MarkerKind kind{MarkerKind::dot};
    double size{1};  //!< pixels
    VisAttributes vis;
};

struct Circle
{
    Vec3 position;
    double size{1};  //!< diameter, pixels
    VisAttributes vis;
};

struct Square
{
    Vec3 position;
    double size{1};  //!< side, pixels
    VisAttributes vis;
};

struct Text
{
    Vec3 position;
    std::string content;
    double size{12};  //!< points, drawn as pixels
    TextLayout layout{TextLayout::left};
    double x_offset{0};  //!< pixels
    double y_offset{0};
    VisAttributes vis;
};

struct MeshPrimitive
{
    Mesh mesh;
    VisAttributes vis;
};

struct ScaleBar
{
    double length{0};  //!< mm
    Vec3 start;
    Vec3 direction{1, 0, 0};
    std::string annotation;
    VisAttributes vis;
};

using Primitive
    = std::variant<Polyline, Polymarker, Circle, Square, Text, MeshPrimitive, ScaleBar>;

char const* primitive_kind(Primitive const&);
//! Throws std::invalid_argument for a polyline under two points or a non-positive size.
void validate(Primitive const&);

//---------------------------------------------------------------------------//
// Sink interface
//---------------------------------------------------------------------------//
struct SceneInfo
{
    std::string scene_name;
    Vec3 centre;
    double radius{1};
};

//! Geometry context of a solid that comes from a volume model.
struct SolidContext
{
    Touchable const* touchable{nullptr};
    AttValues const* attributes{nullptr};
    PhysicalVolume const* model_top{nullptr};
    int model_depth_limit{unlimited_depth};
};

/*!
 * Low-level interface that turns a scene into a rendering.
 *
 * Solids arrive in pre/add/post brackets; primitives inside begin/end
 * brackets, with 2D primitives in viewport coordinates [-1, 1].
 */
class SceneSink
{
  public:
    virtual ~SceneSink() = default;

    virtual void begin_session(ViewParameters const& view, SceneInfo const& info) = 0;
    virtual void pre_add_solid(Transform const& transform,
                               VisAttributes const& vis,
                               SolidContext const* context)
        = 0;
    virtual void add_solid(Solid const& solid) = 0;
    virtual void post_add_solid() = 0;
    virtual void begin_primitives(Transform const& transform) = 0;
    virtual void begin_primitives_2d() = 0;
    virtual void add_primitive(Primitive const& p) = 0;
    virtual void end_primitives() = 0;
    virtual void end_primitives_2d() = 0;
    virtual void add_trajectory(Trajectory const& t,
                                DrawStyle const& style,
                                AttValues const& attributes)
        = 0;
    virtual void
    add_hit(Hit const& h, DrawStyle const& style, AttValues const& attributes)
        = 0;
    virtual void end_session() = 0;
};

//---------------------------------------------------------------------------//
// Models
//---------------------------------------------------------------------------//
//! A solid drawn directly (user vis actions and draw facade).
struct SolidDraw
{
    SolidPtr solid;
    VisAttributes vis;
    Transform transform;
};

struct PrimitiveDraw
{
    Primitive primitive;
    Transform transform;
    bool two_d{false};
};

using Drawable = std::variant<SolidDraw, PrimitiveDraw>;

//! Collects what a user vis action draws.
class VisActionCanvas
{
  public:
    void draw(Solid const& s, VisAttributes const& vis, Transform const& t = {});
    void draw(SolidPtr s, VisAttributes const& vis, Transform const& t = {});
    void draw(Primitive p, Transform const& t = {});
    void draw_2d(Primitive p);

    std::vector<Drawable> const& items() const { return items_; }

  private:
    std::vector<Drawable> items_;
};

struct PhysicalVolumeModel
{
    std::shared_ptr<Detector> detector;
    std::string top_name;  //!< physical volume name
    int depth_limit{unlimited_depth};
};

enum class TrajectoryDrawMode
{
    line,
    step_points,
    both,
};

struct TrajectoriesModel
{
    //! Overrides the trajectory model's line/point choice when set.
    std::optional<TrajectoryDrawMode> draw_mode;
    double point_size{2};
    std::string option;  //!< e.g. "smooth", kept for listings
};

struct HitsModel
{
};

struct AxesModel
{
    Vec3 origin;
    double length{0};  //!< 0 selects a tenth of the extent radius
};

struct ScaleModel
{
    double length{0};  //!< 0 selects an automatic 1-2-5 length
    Colour colour{Colour::white()};
};

struct Text2DModel
{
    double x{0};
    double y{0};
    double size{12};
    double x_offset{0};
    double y_offset{0};
    std::string text;
    Colour colour{0, 0, 1};
    TextLayout layout{TextLayout::left};
};

struct Text3DModel
{
    Vec3 position;
    double size{12};
    double x_offset{0};
    double y_offset{0};
    std::string text;
    Colour colour{0, 0, 1};
    TextLayout layout{TextLayout::left};
};

struct FrameModel
{
    Colour colour{Colour::white()};
    double line_width{1};
};

struct DateStampModel
{
    std::string text;  //!< fixed when the model is added
    double size{14};
    Colour colour{0, 0, 1};
};

struct EventIDModel
{
    double size{14};
    Colour colour{0, 0, 1};
};

struct Logo2DModel
{
    double size{24};
    Colour colour{0, 0, 1};
};

struct UserActionModel
{
    std::string name;
    std::function<void(VisActionCanvas&)> callback;
    std::optional<BBox> extent;
};

using Model = std::variant<PhysicalVolumeModel,
                           TrajectoriesModel,
                           HitsModel,
                           AxesModel,
                           ScaleModel,
                           Text2DModel,
                           Text3DModel,
                           FrameModel,
                           DateStampModel,
                           EventIDModel,
                           Logo2DModel,
                           UserActionModel>;

//! Short description, e.g. "PhysicalVolume World (unlimited)".
std::string describe(Model const& m);
bool is_transient(Model const& m);

//---------------------------------------------------------------------------//
enum class EndOfEventAction
{
    refresh,
    accumulate,
};

struct Extent
{
    Vec3 centre;
    double radius{0};
};

class Scene
{
  public:
    explicit Scene(std::string name) : name_{std::move(name)} {}

    std::string const& name() const { return name_; }
    std::vector<Model> const& permanent_models() const { return permanents_; }
    std::vector<Model> const& transient_models() const { return transients_; }
    Extent const& extent() const { return extent_; }
    EndOfEventAction end_of_event_action() const { return eoe_; }
    void set_end_of_event_action(EndOfEventAction a) { eoe_ = a; }

    //! Routes to permanent or transient list and recomputes the extent.
    void add_model(Model m);
    //! Removes a user action model by name; true if found.
    bool remove_user_action(std::string_view name);
    void recompute_extent();

    bool has_trajectories_model() const;
    bool has_hits_model() const;
    TrajectoriesModel const* trajectories_model() const;

  private:
    std::string name_;
    std::vector<Model> permanents_;
    std::vector<Model> transients_;
    Extent extent_;
    EndOfEventAction eoe_{EndOfEventAction::refresh};
};

//! World-frame bounds of a model, if it has any.
std::optional<BBox> model_extent(Model const& m);

//! 1, 2 or 5 times a power of ten, not above x.
double round_125(double x);

//---------------------------------------------------------------------------//
// Traversal
//---------------------------------------------------------------------------//
struct TraversalContext
{
    ViewParameters view;
    std::vector<Event const*> events;
    TrajectoryModel const* trajectory_model{nullptr};  //!< null: drawByCharge
    FilterChain const* filters{nullptr};
    std::vector<Drawable> const* user_transients{nullptr};
};

/*!
 * Deliver a scene to a sink.
 *
 * Order: permanent models in insertion order, then events (trajectories
 * filtered and styled, then hits), then user transients.
 */
void traverse(Scene const& scene, SceneSink& sink, TraversalContext const& ctx);

//! Colour of a hit with deposit e in an event whose deposits span [lo, hi].
Colour hit_colour(double e, double lo, double hi);

}  // namespace multivis
