//---------------------------------------------------------------------------//
//! \file multivis/solids.hpp
//! \brief Shape definitions, volumes, containment, ray intersection and
//!        tessellation.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "math.hpp"

namespace multivis
{
//---------------------------------------------------------------------------//
// Tolerances (mm)
//---------------------------------------------------------------------------//
inline constexpr double surface_tolerance = 1e-9;
inline constexpr double ray_tolerance = 1e-7;
inline constexpr int min_segments_per_circle = 12;
inline constexpr int max_boolean_depth = 16;

//---------------------------------------------------------------------------//
// Shapes
//---------------------------------------------------------------------------//
struct BoxShape
{
    double half_x;
    double half_y;
    double half_z;
};

struct TubeShape
{
    double r_min;
    double r_max;
    double half_z;
    double phi_start;
    double delta_phi;
};

struct ConeShape
{
    double r_min1;  //!< at -half_z
    double r_max1;
    double r_min2;  //!< at +half_z
    double r_max2;
    double half_z;
    double phi_start;
    double delta_phi;
};

struct TrdShape
{
    double half_x1;  //!< at -half_z
    double half_x2;  //!< at +half_z
    double half_y1;
    double half_y2;
    double half_z;
};

struct SphereShape
{
    double r_min;
    double r_max;
    double phi_start;
    double delta_phi;
    double theta_start;
    double delta_theta;
};

class Solid;
using SolidPtr = std::shared_ptr<Solid const>;

//! Left minus right, with right placed in the left frame by a transform.
struct SubtractionShape
{
    SolidPtr left;
    SolidPtr right;
    Transform right_transform;
};

//---------------------------------------------------------------------------//
/*!
 * Named, immutable, validated shape.
 *
 * Construction checks the parameter invariants and throws
 * std::invalid_argument on violation.
 */
class Solid
{
  public:
    using Shape = std::variant<BoxShape,
                               TubeShape,
                               ConeShape,
                               TrdShape,
                               SphereShape,
                               SubtractionShape>;

    Solid(std::string name, Shape shape);

    std::string const& name() const { return name_; }
    Shape const& shape() const { return shape_; }

    //! Short type tag: Box, Tube, Cone, Trd, Sphere, Subtraction.
    std::string_view type_name() const;

    //! Boolean nesting depth (0 for primitives).
    int boolean_depth() const { return depth_; }

    //! Parameter dump with units, e.g. "Box: half_x=10 mm, ...".
    std::string describe() const;

  private:
    std::string name_;
    Shape shape_;
    int depth_{0};
};

SolidPtr make_box(std::string name, double hx, double hy, double hz);
SolidPtr make_tube(std::string name,
                   double r_min,
                   double r_max,
                   double half_z,
                   double phi_start = 0,
                   double delta_phi = two_pi);
SolidPtr make_cone(std::string name,
                   double r_min1,
                   double r_max1,
                   double r_min2,
                   double r_max2,
                   double half_z,
                   double phi_start = 0,
                   double delta_phi = two_pi);
SolidPtr make_trd(std::string name,
                  double hx1,
                  double hx2,
                  double hy1,
                  double hy2,
                  double half_z);
SolidPtr make_sphere(std::string name,
                     double r_min,
                     double r_max,
                     double phi_start = 0,
                     double delta_phi = two_pi,
                     double theta_start = 0,
                     double delta_theta = pi);
SolidPtr make_subtraction(std::string name,
                          SolidPtr left,
                          SolidPtr right,
                          Transform const& right_transform = {});

//---------------------------------------------------------------------------//
// Queries
//---------------------------------------------------------------------------//
enum class Location
{
    inside,
    surface,
    outside,
};

char const* to_cstring(Location);

//! Classify a point; a band of +-surface_tolerance counts as surface.
Location contains(Solid const& solid, Vec3 const& point);

//! Conservative local-frame bounds, tight for primitives.
BBox bounding_box(Solid const& solid);

//! Exact cubic volume for primitives, deterministic MC estimate for booleans.
double analytic_volume(Solid const& solid);

struct VolumeEstimate
{
    double volume{0};
    double std_error{0};
    std::int64_t samples{0};
    std::int64_t hits{0};
};

//! Hit-or-miss estimate over the bounding box. Bit-reproducible per seed.
VolumeEstimate
mc_volume(Solid const& solid, std::int64_t n_samples, std::uint64_t seed);

//---------------------------------------------------------------------------//
// Rays
//---------------------------------------------------------------------------//
struct Ray
{
    Vec3 origin;
    Vec3 direction;  //!< unit length

    //! Normalise the direction.
    static Ray through(Vec3 const& origin, Vec3 const& direction)
    {
        return {origin, normalized(direction)};
    }
    Vec3 at(double t) const { return origin + direction * t; }
};

struct RayHit
{
    double distance;
    Vec3 normal;  //!< outward from the solid
    bool entering;
};

//! Boundary crossing along a ray with the outward normal there.
struct RayCrossing
{
    double t;
    Vec3 normal;
};

//! Maximal interval of the (infinite) line lying inside the solid.
struct RaySegment
{
    RayCrossing enter;
    RayCrossing exit;
};

//! Inside intervals along the whole line, sorted by t.
std::vector<RaySegment> ray_segments(Solid const& solid, Ray const& ray);

/*!
 * Nearest boundary crossing at distance > ray_tolerance.
 *
 * A ray starting on a surface therefore never reports a zero-distance hit.
 * Throws std::invalid_argument if the direction is not unit length.
 */
std::optional<RayHit> ray_intersect(Solid const& solid, Ray const& ray);

//---------------------------------------------------------------------------//
// Mesh
//---------------------------------------------------------------------------//
enum class EdgeKind
{
    real,
    auxiliary,  //!< artefact of discretising a surface
};

struct MeshEdge
{
    int a;
    int b;
    EdgeKind kind;
};

/*!
 * Polygon mesh with convex, outward-wound (counter-clockwise seen from
 * outside) faces.
 */
struct Mesh
{
    std::vector<Vec3> vertices;
    std::vector<std::vector<int>> faces;
    std::vector<MeshEdge> edges;

    double signed_volume() const;
    Vec3 face_normal(std::size_t face) const;
    Vec3 face_centroid(std::size_t face) const;
    Mesh transformed(Transform const& t) const;
    std::size_t count_edges(EdgeKind kind) const;
};

/*!
 * Polygonal approximation of a solid.
 *
 * Curved surfaces get exactly \c segments_per_circle divisions per full
 * turn. Subtractions keep the faces of the (subdivided) left mesh whose
 * centroids lie outside the right operand, plus the inward-facing right
 * faces whose centroids lie inside the left operand.
 */
Mesh tessellate(Solid const& solid, int segments_per_circle);

}  // namespace multivis
