//---------------------------------------------------------------------------//
//! \file solids.cpp
//---------------------------------------------------------------------------//
#include "multivis/solids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "multivis/units.hpp"

namespace multivis
{
namespace
{
//---------------------------------------------------------------------------//
// Validation
//---------------------------------------------------------------------------//
[[noreturn]] void invalid(std::string const& name, std::string const& what)
{
    throw std::invalid_argument("solid \"" + name + "\": " + what);
}

void require_positive(std::string const& name, char const* what, double v)
{
    if (!(v > 0) || !std::isfinite(v))
        invalid(name, std::string(what) + " must be > 0");
}

void require_phi(std::string const& name, double phi_start, double delta_phi)
{
    if (!std::isfinite(phi_start))
        invalid(name, "phi_start must be finite");
    if (!(delta_phi > 0) || delta_phi > two_pi * (1 + 1e-12))
        invalid(name, "delta_phi must be in (0, 2pi]");
}

void require_radii(std::string const& name, double r_min, double r_max)
{
    if (!(r_min >= 0))
        invalid(name, "r_min must be >= 0");
    if (!(r_max > r_min) || !std::isfinite(r_max))
        invalid(name, "r_max must be > r_min");
}

bool full_phi(double delta_phi)
{
    return delta_phi >= two_pi * (1 - 1e-12);
}

//---------------------------------------------------------------------------//
// Signed "outside measure": > 0 outside, < 0 inside, |value| approximates
// the distance to the nearest bounding surface.
//---------------------------------------------------------------------------//
double phi_measure(double x, double y, double phi_start, double delta_phi)
{
    if (full_phi(delta_phi))
        return -std::numeric_limits<double>::infinity();
    double phi_end = phi_start + delta_phi;
    // Inward-pointing normals of the two bounding half planes
    double d1 = -std::sin(phi_start) * x + std::cos(phi_start) * y;
    double d2 = std::sin(phi_end) * x - std::cos(phi_end) * y;
    double in = delta_phi <= pi ? std::min(d1, d2) : std::max(d1, d2);
    return -in;
}

double measure(BoxShape const& s, Vec3 const& p)
{
    return std::max({std::fabs(p.x) - s.half_x,
                     std::fabs(p.y) - s.half_y,
                     std::fabs(p.z) - s.half_z});
}

double measure(TubeShape const& s, Vec3 const& p)
{
    double rho = std::hypot(p.x, p.y);
    double m = std::max(std::fabs(p.z) - s.half_z, rho - s.r_max);
    if (s.r_min > 0)
        m = std::max(m, s.r_min - rho);
    return std::max(m, phi_measure(p.x, p.y, s.phi_start, s.delta_phi));
}

double measure(ConeShape const& s, Vec3 const& p)
{
    double rho = std::hypot(p.x, p.y);
    double f = (p.z + s.half_z) / (2 * s.half_z);
    double m = std::fabs(p.z) - s.half_z;

    double slope_out = (s.r_max2 - s.r_max1) / (2 * s.half_z);
    double r_out = s.r_max1 + (s.r_max2 - s.r_max1) * f;
    m = std::max(m, (rho - r_out) / std::sqrt(1 + slope_out * slope_out));
    if (s.r_min1 > 0 || s.r_min2 > 0)
    {
        double slope_in = (s.r_min2 - s.r_min1) / (2 * s.half_z);
        double r_in = s.r_min1 + (s.r_min2 - s.r_min1) * f;
        m = std::max(m, (r_in - rho) / std::sqrt(1 + slope_in * slope_in));
    }
    return std::max(m, phi_measure(p.x, p.y, s.phi_start, s.delta_phi));
}

double measure(TrdShape const& s, Vec3 const& p)
{
    double f = (p.z + s.half_z) / (2 * s.half_z);
    double sx = (s.half_x2 - s.half_x1) / (2 * s.half_z);
    double sy = (s.half_y2 - s.half_y1) / (2 * s.half_z);
    double hx = s.half_x1 + (s.half_x2 - s.half_x1) * f;
    double hy = s.half_y1 + (s.half_y2 - s.half_y1) * f;
    return std::max({std::fabs(p.z) - s.half_z,
                     (std::fabs(p.x) - hx) / std::sqrt(1 + sx * sx),
                     (std::fabs(p.y) - hy) / std::sqrt(1 + sy * sy)});
}

double measure(SphereShape const& s, Vec3 const& p)
{
    double r = norm(p);
    double m = r - s.r_max;
    if (s.r_min > 0)
        m = std::max(m, s.r_min - r);
    double rho = std::hypot(p.x, p.y);
    double theta_end = s.theta_start + s.delta_theta;
    if (s.theta_start > 0)
    {
        // r sin(theta - theta_start) inside
        m = std::max(m,
                     p.z * std::sin(s.theta_start)
                         - rho * std::cos(s.theta_start));
    }
    if (theta_end < pi * (1 - 1e-12))
    {
        // r sin(theta_end - theta) inside
        m = std::max(m, rho * std::cos(theta_end) - p.z * std::sin(theta_end));
    }
    return std::max(m, phi_measure(p.x, p.y, s.phi_start, s.delta_phi));
}

double measure(Solid const& solid, Vec3 const& p);

double measure(SubtractionShape const& s, Vec3 const& p)
{
    double a = measure(*s.left, p);
    double b = measure(*s.right, s.right_transform.inverse().apply_point(p));
    return std::max(a, -b);
}

double measure(Solid const& solid, Vec3 const& p)
{
    return std::visit([&p](auto const& s) { return measure(s, p); },
                      solid.shape());
}

Location classify(double m)
{
    if (m > surface_tolerance)
        return Location::outside;
    if (m >= -surface_tolerance)
        return Location::surface;
    return Location::inside;
}

//---------------------------------------------------------------------------//
// Bounding boxes
//---------------------------------------------------------------------------//
//! XY extents of an annular wedge.
void wedge_extents(double rho_min,
                   double rho_max,
                   double phi_start,
                   double delta_phi,
                   Vec3& lower,
                   Vec3& upper)
{
    if (full_phi(delta_phi))
    {
        lower.x = lower.y = -rho_max;
        upper.x = upper.y = rho_max;
        return;
    }
    double phi_end = phi_start + delta_phi;
    std::vector<std::pair<double, double>> pts;
    for (double phi : {phi_start, phi_end})
    {
        pts.emplace_back(rho_max * std::cos(phi), rho_max * std::sin(phi));
        pts.emplace_back(rho_min * std::cos(phi), rho_min * std::sin(phi));
    }
    double k0 = std::ceil(phi_start / (pi / 2));
    for (double k = k0; k * (pi / 2) <= phi_end; k += 1)
    {
        double phi = k * (pi / 2);
        pts.emplace_back(rho_max * std::cos(phi), rho_max * std::sin(phi));
    }
    lower.x = lower.y = std::numeric_limits<double>::infinity();
    upper.x = upper.y = -std::numeric_limits<double>::infinity();
    for (auto [x, y] : pts)
    {
        lower.x = std::min(lower.x, x);
        lower.y = std::min(lower.y, y);
        upper.x = std::max(upper.x, x);
        upper.y = std::max(upper.y, y);
    }
}

BBox bbox_of(BoxShape const& s)
{
    return {{-s.half_x, -s.half_y, -s.half_z}, {s.half_x, s.half_y, s.half_z}};
}

BBox bbox_of(TubeShape const& s)
{
    BBox b;
    wedge_extents(s.r_min, s.r_max, s.phi_start, s.delta_phi, b.lower, b.upper);
    b.lower.z = -s.half_z;
    b.upper.z = s.half_z;
    return b;
}

BBox bbox_of(ConeShape const& s)
{
    BBox b;
    wedge_extents(std::min(s.r_min1, s.r_min2),
                  std::max(s.r_max1, s.r_max2),
                  s.phi_start,
                  s.delta_phi,
                  b.lower,
                  b.upper);
    b.lower.z = -s.half_z;
    b.upper.z = s.half_z;
    return b;
}

BBox bbox_of(TrdShape const& s)
{
    double hx = std::max(s.half_x1, s.half_x2);
    double hy = std::max(s.half_y1, s.half_y2);
    return {{-hx, -hy, -s.half_z}, {hx, hy, s.half_z}};
}

BBox bbox_of(SphereShape const& s)
{
    double t1 = s.theta_start;
    double t2 = std::min(pi, s.theta_start + s.delta_theta);
    double zmax = -std::numeric_limits<double>::infinity();
    double zmin = std::numeric_limits<double>::infinity();
    for (double r : {s.r_min, s.r_max})
    {
        for (double t : {t1, t2})
        {
            zmax = std::max(zmax, r * std::cos(t));
            zmin = std::min(zmin, r * std::cos(t));
        }
    }
    double sin_max = (t1 <= pi / 2 && t2 >= pi / 2)
                         ? 1.0
                         : std::max(std::sin(t1), std::sin(t2));
    double sin_min = std::min(std::sin(t1), std::sin(t2));
    BBox b;
    wedge_extents(s.r_min * std::max(0.0, sin_min),
                  s.r_max * sin_max,
                  s.phi_start,
                  s.delta_phi,
                  b.lower,
                  b.upper);
    b.lower.z = zmin;
    b.upper.z = zmax;
    return b;
}

BBox bbox_of(SubtractionShape const& s)
{
    return bounding_box(*s.left);
}

//---------------------------------------------------------------------------//
// Analytic volumes
//---------------------------------------------------------------------------//
double volume_of(BoxShape const& s)
{
    return 8 * s.half_x * s.half_y * s.half_z;
}

double volume_of(TubeShape const& s)
{
    return s.delta_phi * s.half_z * (s.r_max * s.r_max - s.r_min * s.r_min);
}

double volume_of(ConeShape const& s)
{
    auto frustum = [](double r1, double r2) { return r1 * r1 + r1 * r2 + r2 * r2; };
    return s.delta_phi * s.half_z / 3
           * (frustum(s.r_max1, s.r_max2) - frustum(s.r_min1, s.r_min2));
}

double volume_of(TrdShape const& s)
{
    return 4 * s.half_z / 3
           * (2 * s.half_x1 * s.half_y1 + s.half_x1 * s.half_y2
              + s.half_x2 * s.half_y1 + 2 * s.half_x2 * s.half_y2);
}

double volume_of(SphereShape const& s)
{
    double t2 = s.theta_start + s.delta_theta;
    return s.delta_phi / 3
           * (s.r_max * s.r_max * s.r_max - s.r_min * s.r_min * s.r_min)
           * (std::cos(s.theta_start) - std::cos(t2));
}

constexpr std::int64_t boolean_volume_samples = 1'000'000;
constexpr std::uint64_t boolean_volume_seed = 0x5eed'0b00'1ea5ULL;

double volume_of(SubtractionShape const&)
{
    return -1;  // handled by caller
}

//---------------------------------------------------------------------------//
// Ray crossings
//---------------------------------------------------------------------------//
enum class SurfaceKind
{
    plane,
    axial_cone,  //!< x^2 + y^2 = (a + b z)^2, b = 0 gives a cylinder
    sphere,
};

struct Surface
{
    SurfaceKind kind;
    Vec3 n{};     //!< plane normal
    double d{0};  //!< plane offset, axial a, sphere radius
    double b{0};  //!< axial slope
};

struct Root
{
    double t;
    int surface;
};

Surface plane(Vec3 const& n, double d)
{
    return {SurfaceKind::plane, n, d, 0};
}
Surface axial(double a, double b)
{
    return {SurfaceKind::axial_cone, {}, a, b};
}
Surface sphere(double r)
{
    return {SurfaceKind::sphere, {}, r, 0};
}

//! Roots of A t^2 + 2 B t + C = 0.
void solve_quadratic(double a, double b, double c, int surf, std::vector<Root>& out)
{
    double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    if (std::fabs(a) <= 1e-14 * scale)
    {
        if (std::fabs(b) > 0)
            out.push_back({-c / (2 * b), surf});
        return;
    }
    double disc = b * b - a * c;
    if (disc < 0)
        return;
    double sq = std::sqrt(disc);
    double q = -(b + std::copysign(sq, b));
    if (q != 0)
    {
        out.push_back({q / a, surf});
        out.push_back({c / q, surf});
    }
    else
    {
        out.push_back({0.0, surf});
    }
}

void roots(Surface const& s, Ray const& r, int idx, std::vector<Root>& out)
{
    Vec3 const& o = r.origin;
    Vec3 const& u = r.direction;
    switch (s.kind)
    {
        case SurfaceKind::plane: {
            double den = dot(s.n, u);
            if (den != 0)
                out.push_back({(s.d - dot(s.n, o)) / den, idx});
            break;
        }
        case SurfaceKind::axial_cone: {
            double w0 = s.d + s.b * o.z;
            double w1 = s.b * u.z;
            double a = u.x * u.x + u.y * u.y - w1 * w1;
            double b = o.x * u.x + o.y * u.y - w0 * w1;
            double c = o.x * o.x + o.y * o.y - w0 * w0;
            solve_quadratic(a, b, c, idx, out);
            break;
        }
        case SurfaceKind::sphere: {
            solve_quadratic(1.0, dot(o, u), dot(o, o) - s.d * s.d, idx, out);
            break;
        }
    }
}

Vec3 surface_normal(Surface const& s, Vec3 const& p)
{
    switch (s.kind)
    {
        case SurfaceKind::plane:
            return s.n;
        case SurfaceKind::axial_cone:
            return normalized({p.x, p.y, -s.b * (s.d + s.b * p.z)});
        case SurfaceKind::sphere:
            return normalized(p);
    }
    return {};
}

void add_phi_planes(double phi_start, double delta_phi, std::vector<Surface>& out)
{
    if (full_phi(delta_phi))
        return;
    for (double phi : {phi_start, phi_start + delta_phi})
        out.push_back(plane({-std::sin(phi), std::cos(phi), 0}, 0));
}

std::vector<Surface> surfaces_of(BoxShape const& s)
{
    return {plane({1, 0, 0}, s.half_x),
            plane({1, 0, 0}, -s.half_x),
            plane({0, 1, 0}, s.half_y),
            plane({0, 1, 0}, -s.half_y),
            plane({0, 0, 1}, s.half_z),
            plane({0, 0, 1}, -s.half_z)};
}

std::vector<Surface> surfaces_of(TubeShape const& s)
{
    std::vector<Surface> out{plane({0, 0, 1}, s.half_z),
                             plane({0, 0, 1}, -s.half_z),
                             axial(s.r_max, 0)};
    if (s.r_min > 0)
        out.push_back(axial(s.r_min, 0));
    add_phi_planes(s.phi_start, s.delta_phi, out);
    return out;
}

std::vector<Surface> surfaces_of(ConeShape const& s)
{
    auto line = [&s](double r1, double r2) {
        double b = (r2 - r1) / (2 * s.half_z);
        return axial((r1 + r2) / 2, b);
    };
    std::vector<Surface> out{plane({0, 0, 1}, s.half_z),
                             plane({0, 0, 1}, -s.half_z),
                             line(s.r_max1, s.r_max2)};
    if (s.r_min1 > 0 || s.r_min2 > 0)
        out.push_back(line(s.r_min1, s.r_min2));
    add_phi_planes(s.phi_start, s.delta_phi, out);
    return out;
}

std::vector<Surface> surfaces_of(TrdShape const& s)
{
    // x = a + b z  <=>  (1, 0, -b) . p = a
    double bx = (s.half_x2 - s.half_x1) / (2 * s.half_z);
    double ax = (s.half_x1 + s.half_x2) / 2;
    double by = (s.half_y2 - s.half_y1) / (2 * s.half_z);
    double ay = (s.half_y1 + s.half_y2) / 2;
    auto unit_plane = [](Vec3 n, double d) {
        double len = norm(n);
        return plane(n / len, d / len);
    };
    return {plane({0, 0, 1}, s.half_z),
            plane({0, 0, 1}, -s.half_z),
            unit_plane({1, 0, -bx}, ax),
            unit_plane({-1, 0, -bx}, ax),
            unit_plane({0, 1, -by}, ay),
            unit_plane({0, -1, -by}, ay)};
}

std::vector<Surface> surfaces_of(SphereShape const& s)
{
    std::vector<Surface> out{sphere(s.r_max)};
    if (s.r_min > 0)
        out.push_back(sphere(s.r_min));
    for (double theta : {s.theta_start, s.theta_start + s.delta_theta})
    {
        if (theta <= 0 || theta >= pi * (1 - 1e-12))
            continue;
        if (std::fabs(theta - pi / 2) < 1e-12)
            out.push_back(plane({0, 0, 1}, 0));
        else
            out.push_back(axial(0, std::tan(theta)));
    }
    add_phi_planes(s.phi_start, s.delta_phi, out);
    return out;
}

/*!
 * Inside intervals of a primitive: every surface root is a candidate
 * boundary, and the gaps between consecutive candidates are classified at
 * their midpoints. Spurious roots (other cone nappe, plane outside the face)
 * only split intervals and are merged away.
 */
template<class S>
std::vector<RaySegment> primitive_segments(S const& shape, Ray const& ray)
{
    auto surfs = surfaces_of(shape);
    std::vector<Root> rts;
    rts.reserve(surfs.size() * 2);
    for (std::size_t i = 0; i < surfs.size(); ++i)
        roots(surfs[i], ray, static_cast<int>(i), rts);

    std::vector<RaySegment> out;
    if (rts.empty())
        return out;
    std::sort(rts.begin(), rts.end(), [](Root const& a, Root const& b) {
        return a.t < b.t;
    });

    auto normal_at = [&](Root const& r) {
        return surface_normal(surfs[r.surface], ray.at(r.t));
    };

    bool inside = false;
    RayCrossing enter{};
    for (std::size_t i = 0; i + 1 < rts.size(); ++i)
    {
        double t0 = rts[i].t;
        double t1 = rts[i + 1].t;
        // Coincident roots (ray through an edge) carry no interval.
        if (!(t1 - t0 > 1e-12 * (1 + std::fabs(t0))))
            continue;
        Vec3 mid = ray.at(0.5 * (t0 + t1));
        bool seg_inside = classify(measure(shape, mid)) == Location::inside;
        if (seg_inside && !inside)
        {
            enter = {t0, normal_at(rts[i])};
            inside = true;
        }
        else if (!seg_inside && inside)
        {
            out.push_back({enter, {t0, normal_at(rts[i])}});
            inside = false;
        }
    }
    if (inside)
        out.push_back({enter, {rts.back().t, normal_at(rts.back())}});

    // Orient normals outward: against the ray on entry, along it on exit.
    for (auto& seg : out)
    {
        if (dot(seg.enter.normal, ray.direction) > 0)
            seg.enter.normal = -seg.enter.normal;
        if (dot(seg.exit.normal, ray.direction) < 0)
            seg.exit.normal = -seg.exit.normal;
    }
    return out;
}

std::vector<RaySegment>
subtraction_segments(SubtractionShape const& s, Ray const& ray)
{
    auto a_segs = ray_segments(*s.left, ray);
    if (a_segs.empty())
        return a_segs;
    Transform inv = s.right_transform.inverse();
    Ray local{inv.apply_point(ray.origin), inv.apply_vector(ray.direction)};
    auto b_segs = ray_segments(*s.right, local);
    for (auto& b : b_segs)
    {
        // Right-operand boundaries face the other way in the result.
        b.enter.normal = -s.right_transform.apply_vector(b.enter.normal);
        b.exit.normal = -s.right_transform.apply_vector(b.exit.normal);
    }

    std::vector<RaySegment> out;
    for (auto const& a : a_segs)
    {
        RayCrossing start = a.enter;
        bool open = true;
        for (auto const& b : b_segs)
        {
            if (b.exit.t <= start.t || b.enter.t >= a.exit.t)
                continue;
            if (b.enter.t > start.t)
            {
                if (b.enter.t - start.t > surface_tolerance)
                    out.push_back({start, b.enter});
            }
            if (b.exit.t >= a.exit.t)
            {
                open = false;
                break;
            }
            start = b.exit;
        }
        if (open && a.exit.t - start.t > surface_tolerance)
            out.push_back({start, a.exit});
    }
    return out;
}

}  // namespace

//---------------------------------------------------------------------------//
// Solid
//---------------------------------------------------------------------------//
Solid::Solid(std::string name, Shape shape)
    : name_{std::move(name)}, shape_{std::move(shape)}
{
    std::visit(
        [this](auto const& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BoxShape>)
            {
                require_positive(name_, "half_x", s.half_x);
                require_positive(name_, "half_y", s.half_y);
                require_positive(name_, "half_z", s.half_z);
            }
            else if constexpr (std::is_same_v<T, TubeShape>)
            {
                require_radii(name_, s.r_min, s.r_max);
                require_positive(name_, "half_z", s.half_z);
                require_phi(name_, s.phi_start, s.delta_phi);
            }
            else if constexpr (std::is_same_v<T, ConeShape>)
            {
                if (!(s.r_min1 >= 0 && s.r_min2 >= 0))
                    invalid(name_, "r_min must be >= 0");
                if (!(s.r_max1 >= s.r_min1 && s.r_max2 >= s.r_min2)
                    || !(s.r_max1 > s.r_min1 || s.r_max2 > s.r_min2))
                    invalid(name_, "r_max must be > r_min");
                require_positive(name_, "half_z", s.half_z);
                require_phi(name_, s.phi_start, s.delta_phi);
            }
            else if constexpr (std::is_same_v<T, TrdShape>)
            {
                require_positive(name_, "half_x1", s.half_x1);
                require_positive(name_, "half_x2", s.half_x2);
                require_positive(name_, "half_y1", s.half_y1);
                require_positive(name_, "half_y2", s.half_y2);
                require_positive(name_, "half_z", s.half_z);
            }
            else if constexpr (std::is_same_v<T, SphereShape>)
            {
                require_radii(name_, s.r_min, s.r_max);
                require_phi(name_, s.phi_start, s.delta_phi);
                if (!(s.theta_start >= 0) || !(s.delta_theta > 0)
                    || s.theta_start + s.delta_theta > pi * (1 + 1e-12))
                    invalid(name_, "theta range must lie within [0, pi]");
            }
            else if constexpr (std::is_same_v<T, SubtractionShape>)
            {
                if (!s.left || !s.right)
                    invalid(name_, "subtraction operands must be non-null");
                depth_ = 1
                         + std::max(s.left->boolean_depth(),
                                    s.right->boolean_depth());
                if (depth_ > max_boolean_depth)
                    invalid(name_, "boolean nesting deeper than 16");
            }
        },
        shape_);
}

std::string_view Solid::type_name() const
{
    static constexpr std::string_view names[]
        = {"Box", "Tube", "Cone", "Trd", "Sphere", "Subtraction"};
    return names[shape_.index()];
}

std::string Solid::describe() const
{
    using units::deg;
    std::ostringstream os;
    os << type_name() << ": ";
    auto len = [](double v) { return best_unit(v, UnitCategory::length); };
    auto ang = [](double v) { return format_number(v / deg) + " deg"; };
    std::visit(
        [&](auto const& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BoxShape>)
            {
                os << "half_x=" << len(s.half_x) << ", half_y=" << len(s.half_y)
                   << ", half_z=" << len(s.half_z);
            }
            else if constexpr (std::is_same_v<T, TubeShape>)
            {
                os << "r_min=" << len(s.r_min) << ", r_max=" << len(s.r_max)
                   << ", half_z=" << len(s.half_z)
                   << ", phi_start=" << ang(s.phi_start)
                   << ", delta_phi=" << ang(s.delta_phi);
            }
            else if constexpr (std::is_same_v<T, ConeShape>)
            {
                os << "r_min1=" << len(s.r_min1) << ", r_max1=" << len(s.r_max1)
                   << ", r_min2=" << len(s.r_min2) << ", r_max2=" << len(s.r_max2)
                   << ", half_z=" << len(s.half_z)
                   << ", phi_start=" << ang(s.phi_start)
                   << ", delta_phi=" << ang(s.delta_phi);
            }
            else if constexpr (std::is_same_v<T, TrdShape>)
            {
                os << "half_x1=" << len(s.half_x1) << ", half_x2=" << len(s.half_x2)
                   << ", half_y1=" << len(s.half_y1) << ", half_y2=" << len(s.half_y2)
                   << ", half_z=" << len(s.half_z);
            }
            else if constexpr (std::is_same_v<T, SphereShape>)
            {
                os << "r_min=" << len(s.r_min) << ", r_max=" << len(s.r_max)
                   << ", phi_start=" << ang(s.phi_start)
                   << ", delta_phi=" << ang(s.delta_phi)
                   << ", theta_start=" << ang(s.theta_start)
                   << ", delta_theta=" << ang(s.delta_theta);
            }
            else if constexpr (std::is_same_v<T, SubtractionShape>)
            {
                os << '"' << s.left->name() << "\" - \"" << s.right->name()
                   << "\" at " << s.right_transform.translation();
            }
        },
        shape_);
    return os.str();
}

SolidPtr make_box(std::string name, double hx, double hy, double hz)
{
    return std::make_shared<Solid>(std::move(name), BoxShape{hx, hy, hz});
}

SolidPtr make_tube(std::string name,
                   double r_min,
                   double r_max,
                   double half_z,
                   double phi_start,
                   double delta_phi)
{
    return std::make_shared<Solid>(
        std::move(name), TubeShape{r_min, r_max, half_z, phi_start, delta_phi});
}

SolidPtr make_cone(std::string name,
                   double r_min1,
                   double r_max1,
                   double r_min2,
                   double r_max2,
                   double half_z,
                   double phi_start,
                   double delta_phi)
{
    return std::make_shared<Solid>(
        std::move(name),
        ConeShape{r_min1, r_max1, r_min2, r_max2, half_z, phi_start, delta_phi});
}

SolidPtr make_trd(
    std::string name, double hx1, double hx2, double hy1, double hy2, double half_z)
{
    return std::make_shared<Solid>(std::move(name),
                                   TrdShape{hx1, hx2, hy1, hy2, half_z});
}

SolidPtr make_sphere(std::string name,
                     double r_min,
                     double r_max,
                     double phi_start,
                     double delta_phi,
                     double theta_start,
                     double delta_theta)
{
    return std::make_shared<Solid>(
        std::move(name),
        SphereShape{r_min, r_max, phi_start, delta_phi, theta_start, delta_theta});
}

SolidPtr make_subtraction(std::string name,
                          SolidPtr left,
                          SolidPtr right,
                          Transform const& right_transform)
{
    return std::make_shared<Solid>(
        std::move(name),
        SubtractionShape{std::move(left), std::move(right), right_transform});
}

//---------------------------------------------------------------------------//
// Queries
//---------------------------------------------------------------------------//
char const* to_cstring(Location loc)
{
    switch (loc)
    {
        case Location::inside:
            return "inside";
        case Location::surface:
            return "surface";
        case Location::outside:
            return "outside";
    }
    return "?";
}

Location contains(Solid const& solid, Vec3 const& point)
{
    return classify(measure(solid, point));
}

BBox bounding_box(Solid const& solid)
{
    return std::visit([](auto const& s) { return bbox_of(s); }, solid.shape());
}

double analytic_volume(Solid const& solid)
{
    if (std::holds_alternative<SubtractionShape>(solid.shape()))
    {
        return mc_volume(solid, boolean_volume_samples, boolean_volume_seed)
            .volume;
    }
    return std::visit([](auto const& s) { return volume_of(s); }, solid.shape());
}

VolumeEstimate
mc_volume(Solid const& solid, std::int64_t n_samples, std::uint64_t seed)
{
    if (n_samples < 10'000)
        throw std::invalid_argument("mc_volume: at least 10^4 samples required");
    BBox box = bounding_box(solid);
    if (box.empty())
        throw std::domain_error("mc_volume: empty bounding box for solid \""
                                + solid.name() + "\"");

    std::mt19937_64 rng{seed};
    // 53-bit mantissa conversion; std::uniform_real_distribution is not
    // specified bit-exactly across standard libraries.
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    Vec3 span = box.upper - box.lower;

    std::int64_t hits = std::visit(
        [&](auto const& s) {
            std::int64_t count = 0;
            for (std::int64_t i = 0; i < n_samples; ++i)
            {
                double x = box.lower.x + span.x * uniform();
                double y = box.lower.y + span.y * uniform();
                double z = box.lower.z + span.z * uniform();
                if (measure(s, Vec3{x, y, z}) <= surface_tolerance)
                    ++count;
            }
            return count;
        },
        solid.shape());

    double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    double vbox = box.volume();
    VolumeEstimate est;
    est.samples = n_samples;
    est.hits = hits;
    est.volume = vbox * p;
    est.std_error = vbox * std::sqrt(p * (1 - p) / static_cast<double>(n_samples));
    return est;
}

std::vector<RaySegment> ray_segments(Solid const& solid, Ray const& ray)
{
    return std::visit(
        [&ray](auto const& s) -> std::vector<RaySegment> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SubtractionShape>)
                return subtraction_segments(s, ray);
            else
                return primitive_segments(s, ray);
        },
        solid.shape());
}

std::optional<RayHit> ray_intersect(Solid const& solid, Ray const& ray)
{
    if (std::fabs(norm(ray.direction) - 1) > 1e-12)
        throw std::invalid_argument("ray_intersect: direction must be a unit vector");
    for (auto const& seg : ray_segments(solid, ray))
    {
        if (seg.enter.t > ray_tolerance)
            return RayHit{seg.enter.t, seg.enter.normal, true};
        if (seg.exit.t > ray_tolerance)
            return RayHit{seg.exit.t, seg.exit.normal, false};
    }
    return std::nullopt;
}

}  // namespace multivis
