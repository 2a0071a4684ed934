//---------------------------------------------------------------------------//
//! \file multivis/drivers/ray_tracer.hpp
//! \brief Pixel-by-pixel ray casting of the scene's solids.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "../scene.hpp"

namespace multivis
{
//! 8-bit RGB raster, row-major from the top-left.
struct Image
{
    int width{0};
    int height{0};
    std::vector<std::uint8_t> rgb;

    std::array<std::uint8_t, 3> at(int x, int y) const
    {
        auto i = 3 * (static_cast<std::size_t>(y) * width + x);
        return {rgb[i], rgb[i + 1], rgb[i + 2]};
    }
};

//! Binary PPM (P6).
void write_ppm(std::ostream& os, Image const& image);

/*!
 * Sink that collects solids and casts one ray per pixel at end of session.
 *
 * Crossings are composited front to back over a white background; a
 * surface contributes its shaded colour weighted by alpha. Trajectories,
 * hits and primitives other than meshes are not drawn. Rows are split
 * across threads; the result does not depend on the thread count.
 */
class RayTracerSink : public SceneSink
{
  public:
    explicit RayTracerSink(int threads = 0) : threads_{threads} {}

    void begin_session(ViewParameters const& view, SceneInfo const& info) override;
    void pre_add_solid(Transform const& t,
                       VisAttributes const& vis,
                       SolidContext const* ctx) override;
    void add_solid(Solid const& s) override;
    void post_add_solid() override {}
    void begin_primitives(Transform const&) override {}
    void begin_primitives_2d() override {}
    void add_primitive(Primitive const&) override {}
    void end_primitives() override {}
    void end_primitives_2d() override {}
    void add_trajectory(Trajectory const&, DrawStyle const&, AttValues const&) override {}
    void add_hit(Hit const&, DrawStyle const&, AttValues const&) override {}
    void end_session() override;

    Image const& image() const { return image_; }
    std::size_t solid_count() const { return items_.size(); }

  private:
    struct Item
    {
        SolidPtr solid;
        Transform to_world;
        Transform to_local;
        BBox world_box;
        Colour colour;
    };

    Colour trace(Vec3 const& origin, Vec3 const& dir) const;

    int threads_;
    ViewParameters view_;
    std::optional<Camera> camera_;
    Transform transform_;
    VisAttributes vis_;
    std::vector<Item> items_;
    Image image_;
};

}  // namespace multivis
