//---------------------------------------------------------------------------//
//! \file view.cpp
//---------------------------------------------------------------------------//
#include "multivis/view.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

namespace multivis
{
char const* to_cstring(DrawingStyle s)
{
    return s == DrawingStyle::wireframe ? "wireframe" : "surface";
}

char const* to_cstring(Projection p)
{
    return p == Projection::orthographic ? "orthographic" : "perspective";
}

std::optional<WindowGeometry> parse_window_geometry(std::string_view text)
{
    static std::regex const re(R"(^(\d+)x(\d+)(([+-])(\d+)([+-])(\d+))?$)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(text.begin(), text.end(), m, re))
        return std::nullopt;
    WindowGeometry w;
    w.width = std::stoi(m[1].str());
    w.height = std::stoi(m[2].str());
    if (w.width <= 0 || w.height <= 0)
        return std::nullopt;
    if (m[3].matched)
    {
        w.has_position = true;
        w.from_right = m[4].str() == "-";
        w.x = std::stoi(m[5].str());
        w.from_bottom = m[6].str() == "-";
        w.y = std::stoi(m[7].str());
    }
    return w;
}

std::string to_string(WindowGeometry const& w)
{
    std::string s = std::to_string(w.width) + "x" + std::to_string(w.height);
    if (w.has_position)
    {
        s += (w.from_right ? "-" : "+") + std::to_string(w.x);
        s += (w.from_bottom ? "-" : "+") + std::to_string(w.y);
    }
    return s;
}

void ViewParameters::set_viewpoint_theta_phi(double theta, double phi)
{
    viewpoint = {std::sin(theta) * std::cos(phi),
                 std::sin(theta) * std::sin(phi),
                 std::cos(theta)};
}

void validate(ViewParameters const& v)
{
    if (!(v.zoom > 0))
        throw std::invalid_argument("zoom must be positive");
    if (norm(cross(normalized(v.viewpoint), normalized(v.up))) < 1e-9)
        throw std::invalid_argument("viewpoint and up vector are parallel");
}

//---------------------------------------------------------------------------//
Camera::Camera(ViewParameters const& view, Vec3 const& centre, double radius)
    : radius_{radius > 0 ? radius : 1.0},
      width_{view.window.width},
      height_{view.window.height},
      perspective_{view.projection == Projection::perspective
                   && view.field_half_angle > 0}
{
    z_ = normalized(view.viewpoint);
    Vec3 up = normalized(view.up);
    if (norm(cross(up, z_)) < 1e-9)
    {
        // Degenerate up: pick any perpendicular.
        up = std::fabs(z_.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    }
    x_ = normalized(cross(up, z_));
    y_ = cross(z_, x_);
    target_ = centre + view.target_offset;
    double frame = 2 * radius_ / view.zoom;
    mm_per_pixel_ = frame / std::min(width_, height_);
    if (perspective_)
        eye_distance_ = radius_ / std::sin(view.field_half_angle);
}

Vec3 Camera::project(Vec3 const& p) const
{
    Vec3 d = p - target_;
    double cx = dot(d, x_);
    double cy = dot(d, y_);
    double cz = dot(d, z_);
    if (perspective_)
    {
        double f = eye_distance_ / std::max(eye_distance_ - cz, 1e-9 * eye_distance_);
        cx *= f;
        cy *= f;
    }
    return {0.5 * width_ + cx / mm_per_pixel_, 0.5 * height_ - cy / mm_per_pixel_, cz};
}

Vec3 Camera::project_2d(double x, double y) const
{
    return {0.5 * width_ * (1 + x), 0.5 * height_ * (1 - y), 0};
}

void Camera::pixel_ray(double px, double py, Vec3& origin, Vec3& direction) const
{
    double cx = (px - 0.5 * width_) * mm_per_pixel_;
    double cy = (0.5 * height_ - py) * mm_per_pixel_;
    if (perspective_)
    {
        origin = target_ + z_ * eye_distance_;
        direction = normalized(x_ * cx + y_ * cy - z_ * eye_distance_);
    }
    else
    {
        // Start outside the extent sphere.
        origin = target_ + x_ * cx + y_ * cy + z_ * (2 * radius_);
        direction = -z_;
    }
}

}  // namespace multivis
