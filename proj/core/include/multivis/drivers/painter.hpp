//---------------------------------------------------------------------------//
//! \file multivis/drivers/painter.hpp
//! \brief Projected, depth-sorted draw list shared by the vector writers.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "../scene.hpp"

namespace multivis
{
enum class PaintKind
{
    line,  //!< open polyline, two or more points
    polygon,  //!< filled face
    circle,
    square,
    text,
};

//! One element in pixel coordinates (y down); z of each point is depth.
struct PaintItem
{
    PaintKind kind{PaintKind::line};
    std::vector<Vec3> points;
    Colour colour;
    double width{1};  //!< line width or marker size, pixels
    LineStyle line_style{LineStyle::solid};
    std::string text;
    double text_size{12};
    TextLayout layout{TextLayout::left};
    std::string group;  //!< geometry, trajectory, step-point, hit, decoration
    double depth{0};  //!< larger is nearer
    bool two_d{false};
};

/*!
 * Sink that projects everything into a painter's-algorithm draw list.
 *
 * Faces and line segments are sorted far to near with insertion order
 * breaking ties; markers join the sort only with hidden_marker. Text,
 * unhidden markers and 2D primitives are drawn last in arrival order.
 */
class PainterSink : public SceneSink
{
  public:
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

    //! Final draw order, valid after end_session.
    std::vector<PaintItem> const& items() const { return final_; }
    ViewParameters const& view() const { return view_; }
    Camera const& camera() const { return *camera_; }

  private:
    void add_mesh(Mesh const& world_mesh, VisAttributes const& vis, std::string const& group);
    void add_line(std::vector<Vec3> const& world_pts,
                  VisAttributes const& vis,
                  std::string const& group);
    void push_sorted(PaintItem item);
    void push_overlay(PaintItem item);
    void add_marker(PaintKind kind,
                    Vec3 const& world,
                    double size,
                    Colour c,
                    std::string const& group);

    ViewParameters view_;
    std::optional<Camera> camera_;
    Transform transform_;
    VisAttributes vis_;
    bool two_d_{false};
    std::vector<PaintItem> sorted_;
    std::vector<PaintItem> overlay_;
    std::vector<PaintItem> final_;
};

//! Shade factor for a face with world normal n.
double lambert(Vec3 const& normal, Vec3 const& lights);

void write_svg(std::ostream& os, PainterSink const& painter);
void write_eps(std::ostream& os, PainterSink const& painter);

}  // namespace multivis
