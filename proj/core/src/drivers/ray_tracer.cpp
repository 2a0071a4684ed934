//---------------------------------------------------------------------------//
//! \file drivers/ray_tracer.cpp
//---------------------------------------------------------------------------//
#include "multivis/drivers/ray_tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "multivis/drivers/painter.hpp"

namespace multivis
{
void write_ppm(std::ostream& os, Image const& image)
{
    os << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    os.write(reinterpret_cast<char const*>(image.rgb.data()),
             static_cast<std::streamsize>(image.rgb.size()));
}

void RayTracerSink::begin_session(ViewParameters const& view, SceneInfo const& info)
{
    view_ = view;
    camera_.emplace(view, info.centre, info.radius);
    items_.clear();
}

void RayTracerSink::pre_add_solid(Transform const& t, VisAttributes const& vis, SolidContext const*)
{
    transform_ = t;
    vis_ = vis;
}

void RayTracerSink::add_solid(Solid const& s)
{
    Item item;
    item.solid = std::make_shared<Solid const>(s);
    item.to_world = transform_;
    item.to_local = transform_.inverse();
    item.world_box = transform_bbox(bounding_box(s), transform_);
    item.colour = vis_.colour;
    items_.push_back(std::move(item));
}

namespace
{
//! Slab test of a ray against an axis-aligned box.
bool hits_box(BBox const& b, Vec3 const& o, Vec3 const& d)
{
    double t0 = 0;
    double t1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
    {
        double lo = b.lower[i] - ray_tolerance;
        double hi = b.upper[i] + ray_tolerance;
        if (d[i] == 0)
        {
            if (o[i] < lo || o[i] > hi)
                return false;
            continue;
        }
        double a = (lo - o[i]) / d[i];
        double c = (hi - o[i]) / d[i];
        if (a > c)
            std::swap(a, c);
        t0 = std::max(t0, a);
        t1 = std::min(t1, c);
        if (t0 > t1)
            return false;
    }
    return true;
}

struct Crossing
{
    double t;
    Vec3 normal;
    Colour colour;
};
}  // namespace

Colour RayTracerSink::trace(Vec3 const& origin, Vec3 const& dir) const
{
    std::vector<Crossing> crossings;
    for (auto const& item : items_)
    {
        if (!hits_box(item.world_box, origin, dir))
            continue;
        Ray local{item.to_local.apply_point(origin), item.to_local.apply_vector(dir)};
        for (auto const& seg : ray_segments(*item.solid, local))
        {
            // Surfaces facing the viewer along this ray.
            if (seg.enter.t > ray_tolerance)
            {
                crossings.push_back(
                    {seg.enter.t, item.to_world.apply_vector(seg.enter.normal), item.colour});
            }
            if (item.colour.transparent() && seg.exit.t > ray_tolerance)
            {
                crossings.push_back(
                    {seg.exit.t, -item.to_world.apply_vector(seg.exit.normal), item.colour});
            }
        }
    }
    std::stable_sort(crossings.begin(), crossings.end(),
                     [](Crossing const& a, Crossing const& b) { return a.t < b.t; });

    double r = 0, g = 0, b = 0;
    double remaining = 1;
    for (auto const& c : crossings)
    {
        double shade = lambert(c.normal, view_.lights);
        double a = c.colour.alpha();
        r += remaining * a * c.colour.red() * shade;
        g += remaining * a * c.colour.green() * shade;
        b += remaining * a * c.colour.blue() * shade;
        remaining *= 1 - a;
        if (remaining < 1e-6)
            break;
    }
    return {r + remaining, g + remaining, b + remaining};
}

void RayTracerSink::end_session()
{
    int w = camera_->width();
    int h = camera_->height();
    image_.width = w;
    image_.height = h;
    image_.rgb.assign(3 * static_cast<std::size_t>(w) * h, 0);

    auto render_rows = [this, w, h](int first, int step) {
        for (int y = first; y < h; y += step)
        {
            for (int x = 0; x < w; ++x)
            {
                Vec3 o, d;
                camera_->pixel_ray(x + 0.5, y + 0.5, o, d);
                Colour c = trace(o, d);
                auto i = 3 * (static_cast<std::size_t>(y) * w + x);
                image_.rgb[i] = static_cast<std::uint8_t>(std::lround(255 * c.red()));
                image_.rgb[i + 1] = static_cast<std::uint8_t>(std::lround(255 * c.green()));
                image_.rgb[i + 2] = static_cast<std::uint8_t>(std::lround(255 * c.blue()));
            }
        }
    };

    int n = threads_ > 0 ? threads_
                         : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n = std::min(n, std::max(h, 1));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i)
        pool.emplace_back(render_rows, i, n);
    render_rows(0, n);
    for (auto& t : pool)
        t.join();
}

}  // namespace multivis
