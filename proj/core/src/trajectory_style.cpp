//---------------------------------------------------------------------------//
//! \file trajectory_style.cpp
//---------------------------------------------------------------------------//
#include "multivis/trajectory_style.hpp"

#include <cmath>

namespace multivis
{
void DrawByCharge::set(int sign, Colour c)
{
    if (sign > 0)
        positive = c;
    else if (sign < 0)
        negative = c;
    else
        neutral = c;
}

std::string const& model_name(TrajectoryModel const& m)
{
    return std::visit([](auto const& v) -> std::string const& { return v.name; }, m);
}

StyleDefaults& model_defaults(TrajectoryModel& m)
{
    return std::visit([](auto& v) -> StyleDefaults& { return v.defaults; }, m);
}

namespace
{
DrawStyle from_defaults(StyleDefaults const& d, Colour c)
{
    return {c, d.draw_line, d.draw_step_points, d.step_points_size, d.line_width};
}

DrawStyle style_of(DrawByCharge const& m, Trajectory const& t)
{
    Colour c = t.charge > 0 ? m.positive : (t.charge < 0 ? m.negative : m.neutral);
    return from_defaults(m.defaults, c);
}

DrawStyle style_of(DrawByParticleID const& m, Trajectory const& t)
{
    auto it = m.colours.find(t.particle_name);
    return from_defaults(m.defaults,
                         it != m.colours.end() ? it->second : m.defaults.default_colour);
}

bool raw_accept(ParticleFilter const& f, Trajectory const& t, AttValues const&, bool*)
{
    return f.particles.count(t.particle_name) > 0;
}

bool raw_accept(ChargeFilter const& f, Trajectory const& t, AttValues const&, bool*)
{
    return f.charges.count(static_cast<int>(std::lround(t.charge))) > 0;
}

bool raw_accept(AttributeIntervalFilter const& f,
                Trajectory const&,
                AttValues const& atts,
                bool* unknown)
{
    AttValue const* v = find_value(atts, f.key);
    if (!v || !v->number)
    {
        if (unknown)
            *unknown = true;
        return false;
    }
    return *v->number >= f.min && *v->number <= f.max;
}
}  // namespace

DrawStyle style_trajectory(TrajectoryModel const& model, Trajectory const& t)
{
    return std::visit([&t](auto const& m) { return style_of(m, t); }, model);
}

std::string const& filter_name(TrajectoryFilter const& f)
{
    return std::visit([](auto const& v) -> std::string const& { return v.name; }, f);
}

bool filter_accept(TrajectoryFilter const& f,
                   Trajectory const& t,
                   AttValues const& atts,
                   bool* unknown_key)
{
    return std::visit(
        [&](auto const& filt) {
            bool unknown = false;
            bool ok = raw_accept(filt, t, atts, &unknown);
            if (unknown_key)
                *unknown_key = unknown;
            // An unknown key rejects regardless of inversion.
            if (unknown)
                return false;
            return ok != filt.invert;
        },
        f);
}

TrajectoryFilter* FilterChain::find(std::string_view name)
{
    for (auto& f : filters_)
    {
        if (filter_name(f) == name)
            return &f;
    }
    return nullptr;
}

bool FilterChain::accept(Trajectory const& t) const
{
    bool any_active = false;
    for (auto const& f : filters_)
        any_active = any_active || std::visit([](auto const& v) { return v.active; }, f);
    if (!any_active)
        return true;

    AttValues atts = trajectory_attributes(t);
    for (auto const& f : filters_)
    {
        if (!std::visit([](auto const& v) { return v.active; }, f))
            continue;
        bool unknown = false;
        if (!filter_accept(f, t, atts, &unknown))
        {
            if (unknown)
            {
                auto const& key = std::get<AttributeIntervalFilter>(f).key;
                if (warned_.insert(key).second && warn_)
                {
                    warn_("filter " + filter_name(f) + ": trajectory attribute \""
                          + key + "\" is unknown or not numeric");
                }
            }
            return false;
        }
    }
    return true;
}

}  // namespace multivis
