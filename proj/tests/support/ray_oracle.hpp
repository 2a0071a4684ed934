#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "oracles.hpp"

namespace multivis::test
{
struct RayReport
{
    int rays{0};
    int hits{0};
    int disagreements{0};
    double max_error{0};
    std::string first_failure;
};

/*!
 * Fire `n_rays` rays from outside at random shapes of one kind (0-4 the
 * primitives, 5 subtraction) and compare the first entry against a dense
 * march of the reference membership. A fresh shape is drawn every 100 rays.
 */
inline RayReport
compare_rays(ShapeSampler& sampler, int kind, int n_rays, double step, double tolerance)
{
    RayReport rep;
    SolidPtr solid;
    Inside inside;
    BBox box;
    for (int i = 0; i < n_rays; ++i)
    {
        if (i % 100 == 0)
        {
            solid = kind == 5 ? sampler.subtraction() : sampler.primitive(kind);
            inside = reference_inside(*solid);
            box = reference_box(*solid);
        }
        double r = norm(box.upper - box.lower);
        Vec3 origin = box.centre() + sampler.direction() * (2 * r);
        Vec3 target = sampler.coin(0.8) ? sampler.point_in(box) : box.centre() + sampler.direction() * r;
        Ray ray = Ray::through(origin, target - origin);

        auto hit = ray_intersect(*solid, ray);
        std::optional<MarchHit> ref;
        if (auto span = slab(box, ray.origin, ray.direction))
        {
            std::vector<double> probe;
            for (auto const& seg : ray_segments(*solid, ray))
                probe.push_back(0.5 * (seg.enter.t + seg.exit.t));
            ref = march(inside, ray.origin, ray.direction, std::max(span->first, 0.0) - step,
                        span->second + step, step, probe);
        }
        ++rep.rays;
        rep.hits += hit.has_value();
        bool agree = hit.has_value() == ref.has_value();
        double err = 0;
        if (agree && hit)
        {
            err = std::fabs(hit->distance - ref->distance);
            rep.max_error = std::max(rep.max_error, err);
            agree = err <= tolerance && hit->entering;
        }
        if (!agree)
        {
            ++rep.disagreements;
            if (rep.first_failure.empty())
            {
                std::ostringstream os;
                os << solid->describe() << " origin (" << ray.origin.x << ',' << ray.origin.y << ','
                   << ray.origin.z << ") dir (" << ray.direction.x << ',' << ray.direction.y << ','
                   << ray.direction.z << ") library "
                   << (hit ? std::to_string(hit->distance) : std::string("miss")) << " oracle "
                   << (ref ? std::to_string(ref->distance) : std::string("miss"));
                rep.first_failure = os.str();
            }
        }
    }
    return rep;
}

}  // namespace multivis::test
