//---------------------------------------------------------------------------//
//! \file math.cpp
//---------------------------------------------------------------------------//
#include "multivis/math.hpp"

#include <algorithm>
#include <ostream>

namespace multivis
{
std::ostream& operator<<(std::ostream& os, Vec3 const& v)
{
    return os << '(' << v.x << ',' << v.y << ',' << v.z << ')';
}

Rotation Rotation::about_x(double a)
{
    double c = std::cos(a), s = std::sin(a);
    return Rotation{Rows{{{1, 0, 0}, {0, c, -s}, {0, s, c}}}};
}

Rotation Rotation::about_y(double a)
{
    double c = std::cos(a), s = std::sin(a);
    return Rotation{Rows{{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}}};
}

Rotation Rotation::about_z(double a)
{
    double c = std::cos(a), s = std::sin(a);
    return Rotation{Rows{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}}};
}

Rotation Rotation::operator*(Rotation const& other) const
{
    Rotation ot = other.transposed();
    Rows out;
    for (int i = 0; i < 3; ++i)
    {
        out[i] = {dot(rows_[i], ot.rows_[0]),
                  dot(rows_[i], ot.rows_[1]),
                  dot(rows_[i], ot.rows_[2])};
    }
    return Rotation{out};
}

Rotation Rotation::transposed() const
{
    auto const& r = rows_;
    return Rotation{Rows{{{r[0].x, r[1].x, r[2].x},
                          {r[0].y, r[1].y, r[2].y},
                          {r[0].z, r[1].z, r[2].z}}}};
}

bool Rotation::is_identity(double tol) const
{
    Rotation id;
    for (int i = 0; i < 3; ++i)
    {
        for (int j = 0; j < 3; ++j)
        {
            if (std::fabs(rows_[i][j] - id.rows_[i][j]) > tol)
                return false;
        }
    }
    return true;
}

BBox transform_bbox(BBox const& box, Transform const& t)
{
    Vec3 c = t.apply_point(box.centre());
    Vec3 h = box.half_widths();
    Vec3 ext;
    auto const& rows = t.rotation().rows();
    for (int i = 0; i < 3; ++i)
    {
        ext[i] = std::fabs(rows[i].x) * h.x + std::fabs(rows[i].y) * h.y
                 + std::fabs(rows[i].z) * h.z;
    }
    return {c - ext, c + ext};
}

BBox merge(BBox const& a, BBox const& b)
{
    return {{std::min(a.lower.x, b.lower.x),
             std::min(a.lower.y, b.lower.y),
             std::min(a.lower.z, b.lower.z)},
            {std::max(a.upper.x, b.upper.x),
             std::max(a.upper.y, b.upper.y),
             std::max(a.upper.z, b.upper.z)}};
}
}  // namespace multivis
