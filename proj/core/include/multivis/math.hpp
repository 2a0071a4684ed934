//---------------------------------------------------------------------------//
//! \file multivis/math.hpp
//! \brief Three-vectors, rotations and rigid transforms.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <iosfwd>

namespace multivis
{
//---------------------------------------------------------------------------//
struct Vec3
{
    double x{0};
    double y{0};
    double z{0};

    constexpr Vec3& operator+=(Vec3 const& o)
    {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(Vec3 const& o)
    {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s)
    {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    friend constexpr bool operator==(Vec3 const&, Vec3 const&) = default;
};

constexpr Vec3 operator+(Vec3 a, Vec3 const& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, Vec3 const& b) { return a -= b; }
constexpr Vec3 operator-(Vec3 const& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }

constexpr double dot(Vec3 const& a, Vec3 const& b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(Vec3 const& a, Vec3 const& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 const& a) { return std::sqrt(dot(a, a)); }

//! Unit vector along a; a zero vector is returned unchanged.
inline Vec3 normalized(Vec3 const& a)
{
    double n = norm(a);
    return n > 0 ? a / n : a;
}

std::ostream& operator<<(std::ostream&, Vec3 const&);

//---------------------------------------------------------------------------//
/*!
 * Proper rotation stored as a row-major 3x3 matrix.
 */
class Rotation
{
  public:
    using Rows = std::array<Vec3, 3>;

    constexpr Rotation() : rows_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}
    constexpr explicit Rotation(Rows const& rows) : rows_{rows} {}

    static Rotation about_x(double angle);
    static Rotation about_y(double angle);
    static Rotation about_z(double angle);

    Vec3 operator*(Vec3 const& v) const
    {
        return {dot(rows_[0], v), dot(rows_[1], v), dot(rows_[2], v)};
    }
    Rotation operator*(Rotation const& other) const;

    Rotation transposed() const;
    Rows const& rows() const { return rows_; }
    bool is_identity(double tol = 0) const;

    friend bool operator==(Rotation const&, Rotation const&) = default;

  private:
    Rows rows_;
};

//---------------------------------------------------------------------------//
/*!
 * Rigid transform: p' = rotation * p + translation.
 */
class Transform
{
  public:
    Transform() = default;
    Transform(Rotation const& r, Vec3 const& t) : rot_{r}, trans_{t} {}
    explicit Transform(Vec3 const& t) : trans_{t} {}

    static Transform translation(Vec3 const& t) { return Transform{t}; }

    Vec3 apply_point(Vec3 const& p) const { return rot_ * p + trans_; }
    Vec3 apply_vector(Vec3 const& v) const { return rot_ * v; }

    //! this ∘ inner: apply inner first, then this.
    Transform operator*(Transform const& inner) const
    {
        return {rot_ * inner.rot_, rot_ * inner.trans_ + trans_};
    }

    Transform inverse() const
    {
        Rotation rt = rot_.transposed();
        return {rt, -(rt * trans_)};
    }

    Rotation const& rotation() const { return rot_; }
    Vec3 const& translation() const { return trans_; }

    friend bool operator==(Transform const&, Transform const&) = default;

  private:
    Rotation rot_;
    Vec3 trans_;
};

//---------------------------------------------------------------------------//
//! Axis-aligned box.
struct BBox
{
    Vec3 lower;
    Vec3 upper;

    Vec3 centre() const { return (lower + upper) * 0.5; }
    Vec3 half_widths() const { return (upper - lower) * 0.5; }
    double volume() const
    {
        Vec3 d = upper - lower;
        return d.x * d.y * d.z;
    }
    bool empty() const
    {
        return !(upper.x > lower.x && upper.y > lower.y && upper.z > lower.z);
    }
};

//! Axis-aligned bounds of a transformed box (conservative).
BBox transform_bbox(BBox const& box, Transform const& t);
//! Smallest box enclosing both.
BBox merge(BBox const& a, BBox const& b);

constexpr double pi = 3.14159265358979323846;
constexpr double two_pi = 2 * pi;

//---------------------------------------------------------------------------//
}  // namespace multivis
