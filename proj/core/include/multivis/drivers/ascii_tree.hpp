//---------------------------------------------------------------------------//
//! \file multivis/drivers/ascii_tree.hpp
//! \brief Text dump of the volume hierarchy with volumes and masses.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "../scene.hpp"

namespace multivis
{
/*!
 * Verbosity v: detail = v % 10 selects the columns (0 name, 1 logical
 * volume, 2 solid, 3 volume and density, 5 daughter-subtracted volume and
 * mass; 4 and up adds the summary). Below 10, replica copies after the
 * first and daughters of repeated logical volumes are skipped.
 */
class AsciiTreeSink : public SceneSink
{
  public:
    AsciiTreeSink(std::ostream& out, int verbosity) : out_{out}, verbosity_{verbosity} {}

    void begin_session(ViewParameters const& view, SceneInfo const& info) override;
    void pre_add_solid(Transform const& t,
                       VisAttributes const& vis,
                       SolidContext const* ctx) override;
    void add_solid(Solid const&) override {}
    void post_add_solid() override {}
    void begin_primitives(Transform const&) override {}
    void begin_primitives_2d() override {}
    void add_primitive(Primitive const&) override {}
    void end_primitives() override {}
    void end_primitives_2d() override {}
    void add_trajectory(Trajectory const&, DrawStyle const&, AttValues const&) override {}
    void add_hit(Hit const&, DrawStyle const&, AttValues const&) override {}
    void end_session() override;

  private:
    struct Top
    {
        PhysicalVolume const* volume;
        int depth_limit;
        int depth;
    };

    std::ostream& out_;
    int verbosity_;
    std::vector<Top> tops_;
    std::set<LogicalVolume const*> expanded_;
    //! Skip touchables deeper than this (collapsed subtree); -1 for none.
    int skip_below_{-1};
    TouchablePath skip_prefix_;
};

//! Render a whole detector (culling off) as the ASCII tree driver would.
std::string ascii_tree_render(Detector const& detector, int verbosity);

}  // namespace multivis
