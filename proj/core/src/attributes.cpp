//---------------------------------------------------------------------------//
//! \file attributes.cpp
//---------------------------------------------------------------------------//
#include "multivis/attributes.hpp"

#include <algorithm>

namespace multivis
{
char const* to_cstring(LineStyle s)
{
    switch (s)
    {
        case LineStyle::solid:
            return "solid";
        case LineStyle::dashed:
            return "dashed";
        case LineStyle::dotted:
            return "dotted";
    }
    return "?";
}

char const* to_cstring(ForcedStyle s)
{
    switch (s)
    {
        case ForcedStyle::none:
            return "none";
        case ForcedStyle::wireframe:
            return "wireframe";
        case ForcedStyle::surface:
            return "surface";
    }
    return "?";
}

std::optional<LineStyle> line_style_from_string(std::string_view s)
{
    for (auto v : {LineStyle::solid, LineStyle::dashed, LineStyle::dotted})
    {
        if (s == to_cstring(v))
            return v;
    }
    return std::nullopt;
}

std::optional<ForcedStyle> forced_style_from_string(std::string_view s)
{
    for (auto v : {ForcedStyle::none, ForcedStyle::wireframe, ForcedStyle::surface})
    {
        if (s == to_cstring(v))
            return v;
    }
    return std::nullopt;
}

bool VisPatch::empty() const
{
    return !visible && !colour && !line_width && !line_style && !forced_style
           && !daughters_invisible;
}

void VisPatch::merge(VisPatch const& o)
{
    if (o.visible)
        visible = o.visible;
    if (o.colour)
        colour = o.colour;
    if (o.line_width)
        line_width = o.line_width;
    if (o.line_style)
        line_style = o.line_style;
    if (o.forced_style)
        forced_style = o.forced_style;
    if (o.daughters_invisible)
        daughters_invisible = o.daughters_invisible;
}

void apply(VisPatch const& p, VisAttributes& a)
{
    if (p.visible)
        a.visible = *p.visible;
    if (p.colour)
        a.colour = *p.colour;
    if (p.line_width)
        a.line_width = std::max(0.0, *p.line_width);
    if (p.line_style)
        a.line_style = *p.line_style;
    if (p.forced_style)
        a.forced_style = *p.forced_style;
    if (p.daughters_invisible)
        a.daughters_invisible = *p.daughters_invisible;
}

//---------------------------------------------------------------------------//
char const* to_cstring(ValueKind k)
{
    switch (k)
    {
        case ValueKind::text:
            return "text";
        case ValueKind::integer:
            return "int";
        case ValueKind::real:
            return "double";
        case ValueKind::vector:
            return "vector";
    }
    return "?";
}

std::optional<ValueKind> value_kind_from_string(std::string_view s)
{
    for (auto k : {ValueKind::text, ValueKind::integer, ValueKind::real, ValueKind::vector})
    {
        if (s == to_cstring(k))
            return k;
    }
    return std::nullopt;
}

AttDef const* find_def(AttDefs const& defs, std::string_view key)
{
    auto it = std::find_if(
        defs.begin(), defs.end(), [key](AttDef const& d) { return d.key == key; });
    return it == defs.end() ? nullptr : &*it;
}

AttValue const* find_value(AttValues const& values, std::string_view key)
{
    auto it = std::find_if(values.begin(), values.end(), [key](AttValue const& v) {
        return v.key == key;
    });
    return it == values.end() ? nullptr : &*it;
}

bool keys_resolve(AttValues const& values, AttDefs const& defs)
{
    return std::all_of(values.begin(), values.end(), [&defs](AttValue const& v) {
        return std::count_if(defs.begin(), defs.end(), [&v](AttDef const& d) {
                   return d.key == v.key;
               })
               == 1;
    });
}

AttDefs const& touchable_att_defs()
{
    using K = ValueKind;
    static AttDefs const defs = {
        {"Density", "Material Density", K::real, true},
        {"DmpSol", "Dump of Solid properties", K::text, false},
        {"EType", "Entity Type", K::text, false},
        {"LVol", "Logical Volume", K::text, false},
        {"Material", "Material Name", K::text, false},
        {"PVPath", "Physical Volume Path", K::text, false},
        {"Radlen", "Material Radiation Length", K::real, true},
        {"Region", "Cuts Region", K::text, false},
        {"RootRegion", "Root Region (0/1 = false/true)", K::integer, false},
        {"Solid", "Solid Name", K::text, false},
        {"State", "Material State (enum undefined,solid,liquid,gas)", K::text, false},
        {"Trans", "Transformation of volume", K::text, false},
    };
    return defs;
}

AttDefs const& trajectory_att_defs()
{
    using K = ValueKind;
    static AttDefs const defs = {
        {"EventID", "Event ID", K::integer, false},
        {"CPN", "Creator Process Name", K::text, false},
        {"Ch", "Charge", K::real, true},
        {"ID", "Track ID", K::integer, false},
        {"IKE", "Initial kinetic energy", K::real, true},
        {"IMag", "Initial momentum magnitude", K::real, true},
        {"IMom", "Initial momentum", K::vector, true},
        {"NTP", "No. of points", K::integer, false},
        {"PDG", "PDG Encoding", K::integer, false},
        {"PID", "Parent ID", K::integer, false},
        {"PN", "Particle Name", K::text, false},
    };
    return defs;
}

AttDefs const& hit_att_defs()
{
    using K = ValueKind;
    static AttDefs const defs = {
        {"EventID", "Event ID", K::integer, false},
        {"Det", "Detector Name", K::text, false},
        {"Pos", "Position", K::vector, true},
        {"Edep", "Energy Deposit", K::real, true},
    };
    return defs;
}

}  // namespace multivis
