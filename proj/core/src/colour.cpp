//---------------------------------------------------------------------------//
//! \file colour.cpp
//---------------------------------------------------------------------------//
#include "multivis/colour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace multivis
{
namespace
{
double clamp01(double v)
{
    if (std::isnan(v))
        return 0;
    return std::clamp(v, 0.0, 1.0);
}
}  // namespace

Colour::Colour(double r, double g, double b, double a)
    : r_{clamp01(r)}, g_{clamp01(g)}, b_{clamp01(b)}, a_{clamp01(a)}
{
}

Colour Colour::scaled(double f) const
{
    return {r_ * f, g_ * f, b_ * f, a_};
}

std::optional<Colour> colour_from_name(std::string_view name)
{
    struct Named
    {
        std::string_view name;
        Colour colour;
    };
    static std::array<Named, 11> const table = {{
        {"white", {1, 1, 1}},
        {"black", {0, 0, 0}},
        {"red", {1, 0, 0}},
        {"green", {0, 1, 0}},
        {"blue", {0, 0, 1}},
        {"cyan", {0, 1, 1}},
        {"magenta", {1, 0, 1}},
        {"yellow", {1, 1, 0}},
        {"gray", {0.5, 0.5, 0.5}},
        {"grey", {0.5, 0.5, 0.5}},
        {"brown", {0.45, 0.25, 0.0}},
    }};
    for (auto const& n : table)
    {
        if (n.name == name)
            return n.colour;
    }
    return std::nullopt;
}

std::string to_hex(Colour const& c)
{
    auto byte = [](double v) { return static_cast<int>(std::lround(v * 255)); };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", byte(c.red()),
                  byte(c.green()), byte(c.blue()));
    return buf;
}

std::string to_string(Colour const& c)
{
    std::ostringstream os;
    os << c.red() << ' ' << c.green() << ' ' << c.blue() << ' ' << c.alpha();
    return os.str();
}
}  // namespace multivis
