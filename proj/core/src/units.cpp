//---------------------------------------------------------------------------//
//! \file units.cpp
//---------------------------------------------------------------------------//
#include "multivis/units.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace multivis
{
char const* to_cstring(UnitCategory c)
{
    switch (c)
    {
        case UnitCategory::length:
            return "Length";
        case UnitCategory::angle:
            return "Angle";
        case UnitCategory::energy:
            return "Energy";
        case UnitCategory::volume:
            return "Volume";
        case UnitCategory::mass:
            return "Mass";
        case UnitCategory::density:
            return "Density";
        case UnitCategory::time:
            return "Time";
        case UnitCategory::field:
            return "MagneticField";
    }
    return "?";
}

std::vector<UnitSymbol> const& unit_table()
{
    using namespace units;
    using C = UnitCategory;
    // Within a category, entries are ordered by increasing size; best_unit
    // relies on this.
    static std::vector<UnitSymbol> const table = {
        {"nm", nm, C::length},
        {"um", um, C::length},
        {"mm", mm, C::length},
        {"cm", cm, C::length},
        {"m", m, C::length},
        {"km", km, C::length},
        {"mrad", mrad, C::angle},
        {"deg", deg, C::angle},
        {"rad", rad, C::angle},
        {"eV", eV, C::energy},
        {"keV", keV, C::energy},
        {"MeV", MeV, C::energy},
        {"GeV", GeV, C::energy},
        {"TeV", TeV, C::energy},
        {"mm3", mm3, C::volume},
        {"cm3", cm3, C::volume},
        {"m3", m3, C::volume},
        {"mg", mg, C::mass},
        {"g", g, C::mass},
        {"kg", kg, C::mass},
        {"mg/cm3", mg_per_cm3, C::density},
        {"g/cm3", g_per_cm3, C::density},
        {"ns", ns, C::time},
        {"us", us, C::time},
        {"ms", ms, C::time},
        {"s", s, C::time},
        {"gauss", gauss, C::field},
        {"kilogauss", kilogauss, C::field},
        {"tesla", tesla, C::field},
        {"T", tesla, C::field},
    };
    return table;
}

std::optional<UnitSymbol>
find_unit(std::string_view symbol, std::optional<UnitCategory> category)
{
    for (auto const& u : unit_table())
    {
        if (u.symbol == symbol && (!category || u.category == *category))
            return u;
    }
    return std::nullopt;
}

std::vector<std::string_view> unit_symbols(UnitCategory cat)
{
    std::vector<std::string_view> out;
    for (auto const& u : unit_table())
    {
        if (u.category == cat)
            out.push_back(u.symbol);
    }
    return out;
}

namespace
{
// Aliases sharing a value (tesla/T) are skipped so the canonical name wins.
UnitSymbol const& choose_unit(double magnitude, UnitCategory cat)
{
    UnitSymbol const* best = nullptr;
    UnitSymbol const* smallest = nullptr;
    UnitSymbol const* base = nullptr;
    for (auto const& u : unit_table())
    {
        if (u.category != cat || u.symbol == "T" || u.symbol == "deg")
            continue;
        if (!smallest)
            smallest = &u;
        if (u.value == 1.0 && !base)
            base = &u;
        if (magnitude / u.value >= 1.0)
            best = &u;
    }
    if (magnitude == 0)
        return base ? *base : *smallest;
    return best ? *best : *smallest;
}
}  // namespace

std::optional<double> parse_quantity(std::string_view text,
                                     UnitCategory cat,
                                     std::string_view default_unit)
{
    std::istringstream is{std::string(text)};
    double value;
    if (!(is >> value))
        return std::nullopt;
    std::string symbol;
    if (!(is >> symbol))
        symbol = default_unit;
    std::string extra;
    if (is >> extra)
        return std::nullopt;
    auto u = find_unit(symbol, cat);
    if (!u)
        return std::nullopt;
    return value * u->value;
}

std::string format_number(double value)
{
    std::ostringstream os;
    os << value;
    return os.str();
}

std::string best_unit(double value, UnitCategory cat)
{
    auto const& u = choose_unit(std::fabs(value), cat);
    std::ostringstream os;
    os << value / u.value << ' ' << u.symbol;
    return os.str();
}

std::string best_unit(Vec3 const& v, UnitCategory cat)
{
    double mag = std::max({std::fabs(v.x), std::fabs(v.y), std::fabs(v.z)});
    auto const& u = choose_unit(mag, cat);
    std::ostringstream os;
    os << '(' << v.x / u.value << ',' << v.y / u.value << ',' << v.z / u.value
       << ") " << u.symbol;
    return os.str();
}
}  // namespace multivis
