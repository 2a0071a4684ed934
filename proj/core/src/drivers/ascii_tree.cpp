//---------------------------------------------------------------------------//
//! \file ascii_tree.cpp
//---------------------------------------------------------------------------//
#include "multivis/drivers/ascii_tree.hpp"

#include <memory>
#include <ostream>
#include <sstream>

#include "multivis/units.hpp"

namespace multivis
{
namespace
{
bool has_prefix(TouchablePath const& path, TouchablePath const& prefix)
{
    return path.size() > prefix.size()
           && std::equal(prefix.begin(), prefix.end(), path.begin());
}
}  // namespace

void AsciiTreeSink::begin_session(ViewParameters const&, SceneInfo const& info)
{
    tops_.clear();
    expanded_.clear();
    skip_prefix_.clear();
    skip_below_ = -1;
    int detail = verbosity_ % 10;
    out_ << "# ASCII tree of scene \"" << info.scene_name << "\", verbosity "
         << verbosity_ << '\n';
    out_ << "# Line format: PV:copy";
    if (detail >= 1)
        out_ << " / LV";
    if (detail >= 2)
        out_ << " / Solid(type)";
    if (detail >= 3)
        out_ << ", volume, density (material)";
    if (detail >= 5)
        out_ << ", daughter-subtracted volume and mass";
    out_ << '\n';
    if (verbosity_ < 10)
        out_ << "# Replica copies and daughters of repeated volumes are not listed"
                " (verbosity >= 10 lists all)\n";
}

void AsciiTreeSink::pre_add_solid(Transform const&,
                                  VisAttributes const&,
                                  SolidContext const* ctx)
{
    if (!ctx || !ctx->touchable)
        return;
    Touchable const& t = *ctx->touchable;
    if (tops_.empty() || tops_.back().volume != ctx->model_top)
        tops_.push_back({ctx->model_top, ctx->model_depth_limit, t.depth});

    if (skip_below_ >= 0)
    {
        if (has_prefix(t.path, skip_prefix_))
            return;
        skip_below_ = -1;
    }

    auto const& pv = *t.physical;
    auto const& lv = *t.logical;
    bool collapse = verbosity_ < 10;
    int copy = t.path.back().copy;
    if (collapse && pv.replica() && copy > 0)
    {
        // Later replica copies and their subtrees are folded into copy 0.
        skip_prefix_ = t.path;
        skip_below_ = t.depth;
        return;
    }

    int detail = verbosity_ % 10;
    std::ostringstream line;
    line << std::string(2 * t.depth, ' ') << '"' << pv.name() << "\":" << copy;
    if (detail >= 1)
        line << " / \"" << lv.name() << '"';
    if (detail >= 2)
        line << " / \"" << t.solid->name() << "\"(" << t.solid->type_name() << ')';
    if (detail >= 3)
    {
        auto const& mat = *lv.material();
        line << ", " << best_unit(analytic_volume(*t.solid), UnitCategory::volume) << ", "
             << best_unit(mat.density, UnitCategory::density) << " (" << mat.name << ')';
    }
    if (detail >= 5)
    {
        int limit = ctx->model_depth_limit;
        bool at_limit = limit >= 0 && t.depth - tops_.back().depth >= limit;
        MassNode node = compute_masses(pv, at_limit ? 0 : 1);
        line << ", " << best_unit(node.ds_volume, UnitCategory::volume) << ", "
             << best_unit(node.mass, UnitCategory::mass);
    }
    if (collapse && pv.replica())
        line << " (" << pv.replica()->count << " replicas)";
    out_ << line.str() << '\n';

    if (collapse && !lv.daughters().empty() && !expanded_.insert(&lv).second)
    {
        skip_prefix_ = t.path;
        skip_below_ = t.depth;
    }
}

void AsciiTreeSink::end_session()
{
    if (verbosity_ % 10 >= 4)
    {
        out_ << "Calculating mass(es)...\n";
        for (auto const& top : tops_)
        {
            MassNode m = compute_masses(*top.volume, top.depth_limit);
            std::string depth = top.depth_limit < 0
                                    ? "unlimited depth"
                                    : "depth " + std::to_string(top.depth_limit);
            out_ << "Overall volume of \"" << top.volume->name() << "\":0, is "
                 << best_unit(m.own_volume, UnitCategory::volume)
                 << " and the daughter-included mass to " << depth << " is "
                 << best_unit(m.di_mass, UnitCategory::mass) << '\n';
        }
    }
    out_.flush();
}

std::string ascii_tree_render(Detector const& detector, int verbosity)
{
    std::ostringstream os;
    AsciiTreeSink sink(os, verbosity);
    Scene scene("ascii-tree");
    // Non-owning handle: the detector outlives this call.
    std::shared_ptr<Detector> handle(std::shared_ptr<Detector>{},
                                     const_cast<Detector*>(&detector));
    scene.add_model(PhysicalVolumeModel{handle, detector.world()->name(), unlimited_depth});
    TraversalContext ctx;
    ctx.view.culling_invisible = false;
    traverse(scene, sink, ctx);
    return os.str();
}

}  // namespace multivis
