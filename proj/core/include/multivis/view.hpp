//---------------------------------------------------------------------------//
//! \file multivis/view.hpp
//! \brief View parameters shared by all viewers, and the camera built from them.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "colour.hpp"
#include "math.hpp"

namespace multivis
{
enum class DrawingStyle
{
    wireframe,
    surface,
};

enum class Projection
{
    orthographic,
    perspective,
};

char const* to_cstring(DrawingStyle);
char const* to_cstring(Projection);

//! Window size and optional anchored position, "WxH[(+|-)X(+|-)Y]".
struct WindowGeometry
{
    int width{600};
    int height{600};
    bool has_position{false};
    int x{0};
    int y{0};
    bool from_right{false};  //!< "-X": offset of the right edge
    bool from_bottom{false};  //!< "-Y": offset of the bottom edge

    friend bool operator==(WindowGeometry const&, WindowGeometry const&) = default;
};

std::optional<WindowGeometry> parse_window_geometry(std::string_view text);
std::string to_string(WindowGeometry const& w);

//---------------------------------------------------------------------------//
struct ViewParameters
{
    Vec3 viewpoint{0, 0, 1};  //!< unit vector from target towards camera
    Vec3 up{0, 1, 0};
    //! Direction in which the light travels (unit).
    Vec3 lights{-1 / 1.7320508075688772, -1 / 1.7320508075688772, -1 / 1.7320508075688772};
    Vec3 target_offset{};  //!< mm, added to the scene centre
    double zoom{1};
    DrawingStyle style{DrawingStyle::wireframe};
    bool auxiliary_edges{false};
    bool hidden_marker{false};
    bool culling_invisible{true};
    int segments_per_circle{24};
    WindowGeometry window;
    Projection projection{Projection::orthographic};
    double field_half_angle{0};  //!< rad, perspective only
    Colour background{Colour::black()};

    //! (sin t cos p, sin t sin p, cos t)
    void set_viewpoint_theta_phi(double theta, double phi);

    friend bool operator==(ViewParameters const&, ViewParameters const&) = default;
};

//! Throws std::invalid_argument on zoom <= 0 or viewpoint parallel to up.
void validate(ViewParameters const& v);

//---------------------------------------------------------------------------//
/*!
 * Maps world points to pixel coordinates for one view of a scene extent.
 *
 * Orthographic frames span the extent diameter divided by zoom across the
 * shorter window side. Pixel y grows downward.
 */
class Camera
{
  public:
    Camera(ViewParameters const& view, Vec3 const& centre, double radius);

    //! Camera-frame basis: x right, y up, z towards the viewer.
    Vec3 const& x_axis() const { return x_; }
    Vec3 const& y_axis() const { return y_; }
    Vec3 const& z_axis() const { return z_; }

    //! Pixel x, pixel y, and depth (larger = nearer the viewer).
    Vec3 project(Vec3 const& world) const;
    //! Viewport coordinates in [-1, 1] to pixels.
    Vec3 project_2d(double x, double y) const;

    //! World-space ray through the centre of a pixel.
    void pixel_ray(double px, double py, Vec3& origin, Vec3& direction) const;

    //! Millimetres per pixel at the target.
    double scale() const { return mm_per_pixel_; }
    Vec3 const& target() const { return target_; }
    double radius() const { return radius_; }
    int width() const { return width_; }
    int height() const { return height_; }

  private:
    Vec3 x_, y_, z_;
    Vec3 target_;
    double radius_;
    double mm_per_pixel_;
    int width_;
    int height_;
    bool perspective_;
    double eye_distance_{0};
};

}  // namespace multivis
