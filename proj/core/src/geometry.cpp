//---------------------------------------------------------------------------//
//! \file geometry.cpp
//---------------------------------------------------------------------------//
#include "multivis/geometry.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "multivis/units.hpp"

namespace multivis
{
char const* to_cstring(MaterialState s)
{
    switch (s)
    {
        case MaterialState::undefined:
            return "undefined";
        case MaterialState::solid:
            return "solid";
        case MaterialState::liquid:
            return "liquid";
        case MaterialState::gas:
            return "gas";
    }
    return "?";
}

std::optional<MaterialState> material_state_from_string(std::string_view s)
{
    for (auto v : {MaterialState::undefined,
                   MaterialState::solid,
                   MaterialState::liquid,
                   MaterialState::gas})
    {
        if (s == to_cstring(v))
            return v;
    }
    return std::nullopt;
}

MaterialPtr make_material(std::string name,
                          double density,
                          MaterialState state,
                          std::optional<double> radiation_length)
{
    if (state != MaterialState::undefined && !(density > 0))
    {
        throw std::invalid_argument("material '" + name
                                    + "': density must be positive");
    }
    if (radiation_length && !(*radiation_length > 0))
    {
        throw std::invalid_argument("material '" + name
                                    + "': radiation length must be positive");
    }
    return std::make_shared<Material const>(
        Material{std::move(name), density, state, radiation_length});
}

//---------------------------------------------------------------------------//
LogicalVolume::LogicalVolume(std::string name, SolidPtr solid, MaterialPtr material)
    : name_{std::move(name)}, solid_{std::move(solid)}, material_{std::move(material)}
{
    if (!solid_)
        throw std::invalid_argument("logical volume '" + name_ + "' has no solid");
    if (!material_)
        throw std::invalid_argument("logical volume '" + name_ + "' has no material");
}

bool LogicalVolume::contains_logical(LogicalVolume const* lv) const
{
    if (lv == this)
        return true;
    for (auto const& d : daughters_)
    {
        if (d->logical()->contains_logical(lv))
            return true;
    }
    return false;
}

void LogicalVolume::add_daughter(PhysicalVolumePtr pv)
{
    if (!pv)
        throw std::invalid_argument("null daughter");
    if (pv->logical()->contains_logical(this))
    {
        throw std::invalid_argument("placing '" + pv->name() + "' in '" + name_
                                    + "' would create a containment cycle");
    }
    constexpr double slack = 1e-6;
    BBox mother = bounding_box(*solid_);
    BBox daughter = bounding_box(*pv->logical()->solid());
    auto check = [&](int copy) {
        BBox b = transform_bbox(daughter, pv->transform(copy));
        for (int i = 0; i < 3; ++i)
        {
            if (b.lower[i] < mother.lower[i] - slack
                || b.upper[i] > mother.upper[i] + slack)
            {
                throw std::invalid_argument("daughter '" + pv->name()
                                            + "' protrudes from mother '"
                                            + name_ + "'");
            }
        }
    };
    check(0);
    if (pv->multiplicity() > 1)
        check(pv->multiplicity() - 1);
    daughters_.push_back(std::move(pv));
}

//---------------------------------------------------------------------------//
PhysicalVolume::PhysicalVolume(std::string name,
                               LogicalVolumePtr logical,
                               Transform transform)
    : name_{std::move(name)}, logical_{std::move(logical)}, transform_{transform}
{
    if (!logical_)
        throw std::invalid_argument("physical volume '" + name_ + "' has no logical volume");
}

PhysicalVolume::PhysicalVolume(std::string name, LogicalVolumePtr logical, Replica replica)
    : PhysicalVolume(std::move(name), std::move(logical))
{
    if (replica.count < 1)
        throw std::invalid_argument("replica '" + name_ + "': count must be >= 1");
    if (!(replica.width > 0))
        throw std::invalid_argument("replica '" + name_ + "': width must be positive");
    replica_ = replica;
}

Transform PhysicalVolume::transform(int copy) const
{
    if (!replica_)
        return transform_;
    double offset = -replica_->width * (replica_->count - 1) / 2
                    + copy * replica_->width;
    Vec3 t;
    t[static_cast<int>(replica_->axis)] = offset;
    return transform_ * Transform::translation(t);
}

//---------------------------------------------------------------------------//
std::string to_string(TouchablePath const& path)
{
    std::string out;
    for (auto const& e : path)
    {
        out += '/';
        out += e.name;
        out += ':';
        out += std::to_string(e.copy);
    }
    return out;
}

Detector::Detector(PhysicalVolumePtr world) : world_{std::move(world)}
{
    if (!world_)
        throw std::invalid_argument("detector needs a world volume");
}

namespace
{
template<class F>
bool visit_pv(PhysicalVolume const& pv, F&& f, int depth = 0)
{
    if (depth > max_descent_depth)
        throw std::runtime_error("geometry deeper than " + std::to_string(max_descent_depth)
                                 + " levels (cycle suspected)");
    if (f(pv))
        return true;
    for (auto const& d : pv.logical()->daughters())
    {
        if (visit_pv(*d, f, depth + 1))
            return true;
    }
    return false;
}
}  // namespace

LogicalVolume* Detector::find_logical(std::string_view name) const
{
    LogicalVolume* found = nullptr;
    visit_pv(*world_, [&](PhysicalVolume const& pv) {
        if (pv.logical()->name() == name)
        {
            found = pv.logical().get();
            return true;
        }
        return false;
    });
    return found;
}

PhysicalVolume const* Detector::find_physical(std::string_view name) const
{
    PhysicalVolume const* found = nullptr;
    visit_pv(*world_, [&](PhysicalVolume const& pv) {
        if (pv.name() == name)
        {
            found = &pv;
            return true;
        }
        return false;
    });
    return found;
}

EditResult
Detector::set_logical_vis(std::string_view name, int depth, VisPatch const& patch)
{
    LogicalVolume* lv = find_logical(name);
    if (!lv)
    {
        return {0, "logical volume \"" + std::string(name) + "\" not found"};
    }
    // Shared logical volumes are edited once.
    std::vector<LogicalVolume*> done;
    std::function<void(LogicalVolume*, int)> edit = [&](LogicalVolume* v, int level) {
        if (std::find(done.begin(), done.end(), v) == done.end())
        {
            apply(patch, v->vis());
            done.push_back(v);
        }
        if (depth >= 0 && level >= depth)
            return;
        for (auto const& d : v->daughters())
            edit(d->logical().get(), level + 1);
    };
    edit(lv, 0);
    return {static_cast<int>(done.size()), {}};
}

EditResult Detector::set_touchable_vis(TouchablePath const& path, VisPatch const& patch)
{
    for (auto const& t : descend(unlimited_depth, false))
    {
        if (t.path == path)
        {
            overrides_[to_string(path)].merge(patch);
            return {1, {}};
        }
    }
    return {0, "touchable " + to_string(path) + " not found"};
}

std::vector<Touchable> Detector::descend(int depth_limit, bool cull_invisible) const
{
    return descend_impl(nullptr, depth_limit, cull_invisible);
}

std::vector<Touchable>
Detector::descend(Touchable const& top, int depth_limit, bool cull_invisible) const
{
    return descend_impl(&top, depth_limit, cull_invisible);
}

std::vector<Touchable> Detector::find_touchables(std::string_view pv_name) const
{
    std::vector<Touchable> out;
    for (auto& t : descend(unlimited_depth, false))
    {
        if (t.physical->name() == pv_name)
            out.push_back(std::move(t));
    }
    return out;
}

std::vector<Touchable> Detector::descend_impl(Touchable const* top,
                                              int depth_limit,
                                              bool cull_invisible) const
{
    std::vector<Touchable> out;
    TouchablePath path;
    Transform base;
    int base_depth = 0;
    if (top)
    {
        path.assign(top->path.begin(), top->path.end() - 1);
        base = top->world_transform * top->physical->transform(top->path.back().copy).inverse();
        base_depth = top->depth;
    }
    std::function<void(PhysicalVolume const&, int, Transform const&, int)> walk;
    walk = [&](PhysicalVolume const& pv, int copy, Transform const& mother, int level) {
        int depth = base_depth + level;
        if (depth > max_descent_depth)
        {
            throw std::runtime_error("geometry deeper than "
                                     + std::to_string(max_descent_depth)
                                     + " levels (cycle suspected)");
        }
        path.push_back({pv.name(), copy});
        Transform world = mother * pv.transform(copy);
        VisAttributes vis = pv.logical()->vis();
        if (auto it = overrides_.find(to_string(path)); it != overrides_.end())
            apply(it->second, vis);

        if (!cull_invisible || vis.visible)
        {
            out.push_back(Touchable{path,
                                    world,
                                    pv.logical()->solid(),
                                    pv.logical().get(),
                                    &pv,
                                    vis,
                                    depth});
        }
        bool descend_further = depth_limit < 0 || level < depth_limit;
        if (cull_invisible && vis.daughters_invisible)
            descend_further = false;
        if (descend_further)
        {
            for (auto const& d : pv.logical()->daughters())
            {
                for (int c = 0; c < d->multiplicity(); ++c)
                    walk(*d, c, world, level + 1);
            }
        }
        path.pop_back();
    };
    if (top)
        walk(*top->physical, top->path.back().copy, base, 0);
    else
        walk(*world_, 0, Transform{}, 0);
    return out;
}

//---------------------------------------------------------------------------//
MassNode compute_masses(PhysicalVolume const& top, int depth_limit)
{
    std::function<MassNode(PhysicalVolume const&, int, int)> build;
    build = [&](PhysicalVolume const& pv, int copy, int depth) {
        if (depth > max_descent_depth)
            throw std::runtime_error("geometry too deep for mass calculation");
        auto const& lv = *pv.logical();
        MassNode node;
        node.volume = &pv;
        node.copy = copy;
        node.multiplicity = pv.multiplicity();
        node.depth = depth;
        node.own_volume = analytic_volume(*lv.solid());
        node.density = lv.material()->density;
        node.ds_volume = node.own_volume;
        bool leaf = depth_limit >= 0 && depth >= depth_limit;
        if (!leaf)
        {
            for (auto const& d : lv.daughters())
            {
                MassNode child = build(*d, 0, depth + 1);
                node.ds_volume -= child.multiplicity * child.own_volume;
                node.daughters.push_back(std::move(child));
            }
        }
        if (node.ds_volume < -1e-9 * node.own_volume)
        {
            throw std::runtime_error("daughters of '" + pv.name()
                                     + "' exceed its volume (overlap)");
        }
        node.ds_volume = std::max(0.0, node.ds_volume);
        node.mass = node.density * node.ds_volume;
        node.di_mass = node.mass;
        for (auto const& c : node.daughters)
            node.di_mass += c.multiplicity * c.di_mass;
        return node;
    };
    return build(top, 0, 0);
}

//---------------------------------------------------------------------------//
AttValues touchable_attributes(Touchable const& t)
{
    auto const& mat = *t.logical->material();
    auto const& rot = t.world_transform.rotation().rows();
    std::ostringstream trans;
    for (auto const& r : rot)
        trans << r << ' ';
    trans << best_unit(t.world_transform.translation(), UnitCategory::length);

    AttValues v;
    v.push_back({"Density", best_unit(mat.density, UnitCategory::density), mat.density});
    v.push_back({"DmpSol", t.solid->describe(), {}});
    v.push_back({"EType", t.physical->replica() ? "Replica" : "Placement", {}});
    v.push_back({"LVol", t.logical->name(), {}});
    v.push_back({"Material", mat.name, {}});
    v.push_back({"PVPath", to_string(t.path), {}});
    if (mat.radiation_length)
    {
        v.push_back({"Radlen",
                     best_unit(*mat.radiation_length, UnitCategory::length),
                     *mat.radiation_length});
    }
    else
    {
        v.push_back({"Radlen", "n/a", {}});
    }
    v.push_back({"Region", "n/a", {}});
    v.push_back({"RootRegion", t.depth == 0 ? "1" : "0", t.depth == 0 ? 1.0 : 0.0});
    v.push_back({"Solid", t.solid->name(), {}});
    v.push_back({"State", to_cstring(mat.state), {}});
    v.push_back({"Trans", trans.str(), {}});
    return v;
}

}  // namespace multivis
