//---------------------------------------------------------------------------//
//! \file multivis/drivers/scene_export.hpp
//! \brief Retained scene document ("multivis-scene/1" JSON) and its sink.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "../scene.hpp"

namespace multivis
{
inline constexpr char const scene_schema[] = "multivis-scene/1";

struct SceneHeader
{
    std::string schema{scene_schema};
    std::string generator{"multivis"};
    std::string timestamp;
    std::string scene_name;
    ViewParameters view;
    Vec3 target;
    double radius{1};
};

//! Instance type with its attribute definitions.
struct SceneType
{
    std::string name;
    std::string parent;  //!< empty for roots
    AttDefs attdefs;
};

enum class PayloadKind
{
    mesh,
    polyline,
    markers,
    text,
    none,
};

char const* to_cstring(PayloadKind);

struct SceneInstance
{
    std::string id;
    std::string type;
    std::string parent;  //!< id of the parent instance, may be empty
    PayloadKind kind{PayloadKind::none};
    Colour colour;
    double line_width{1};
    double marker_size{0};
    bool draw_line{true};
    bool draw_points{false};
    ForcedStyle forced_style{ForcedStyle::none};
    std::vector<Vec3> vertices;  //!< mesh vertices or polyline/marker points, world mm
    std::vector<std::vector<int>> faces;
    std::vector<std::array<int, 3>> edges;  //!< a, b, 1 if auxiliary
    std::string text;
    AttValues attributes;
};

struct SceneDocument
{
    SceneHeader header;
    std::vector<SceneType> types;
    std::vector<SceneInstance> instances;

    SceneType const* find_type(std::string_view name) const;
    std::size_t count(std::string_view type) const;
};

class SceneFormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Canonical text: fixed key order, compact, trailing newline.
std::string to_json(SceneDocument const& doc);
//! Parse and check schema, types, parents and attvalue keys.
SceneDocument scene_from_json(std::string const& text);
//! Throws SceneFormatError when an invariant fails.
void validate(SceneDocument const& doc);

/*!
 * Sink that retains everything it receives as a scene document.
 *
 * Geometry comes from touchables; solids and primitives without a
 * touchable become "Primitive" instances. Trajectories and hits hang off
 * an "Event" instance per event id.
 */
class SceneExportSink : public SceneSink
{
  public:
    explicit SceneExportSink(std::string timestamp = {}) : timestamp_{std::move(timestamp)} {}

    void begin_session(ViewParameters const& view, SceneInfo const& info) override;
    void pre_add_solid(Transform const& t,
                       VisAttributes const& vis,
                       SolidContext const* ctx) override;
    void add_solid(Solid const& s) override;
    void post_add_solid() override {}
    void begin_primitives(Transform const& t) override;
    void begin_primitives_2d() override;
    void add_primitive(Primitive const& p) override;
    void end_primitives() override {}
    void end_primitives_2d() override { two_d_ = false; }
    void add_trajectory(Trajectory const& t,
                        DrawStyle const& style,
                        AttValues const& atts) override;
    void add_hit(Hit const& h, DrawStyle const& style, AttValues const& atts) override;
    void end_session() override;

    SceneDocument const& document() const { return doc_; }

  private:
    std::string event_parent(AttValues const& atts);
    std::string next_id(char const* prefix);

    std::string timestamp_;
    SceneDocument doc_;
    Transform transform_;
    VisAttributes vis_;
    SolidContext const* ctx_{nullptr};
    AttValues ctx_atts_;
    std::string ctx_path_;
    bool two_d_{false};
    int serial_{0};
};

}  // namespace multivis
