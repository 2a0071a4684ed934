//---------------------------------------------------------------------------//
//! \file multivis/colour.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace multivis
{
//---------------------------------------------------------------------------//
/*!
 * RGBA colour with components clamped to [0, 1]. Alpha below one denotes
 * transparency.
 */
class Colour
{
  public:
    constexpr Colour() = default;
    Colour(double r, double g, double b, double a = 1.0);

    double red() const { return r_; }
    double green() const { return g_; }
    double blue() const { return b_; }
    double alpha() const { return a_; }
    bool transparent() const { return a_ < 1.0; }

    //! Scale RGB, keeping alpha.
    Colour scaled(double factor) const;

    static Colour white() { return {1, 1, 1}; }
    static Colour black() { return {0, 0, 0}; }

    friend bool operator==(Colour const&, Colour const&) = default;

  private:
    double r_{1};
    double g_{1};
    double b_{1};
    double a_{1};
};

//! Named colour lookup (white, red, green, blue, cyan, magenta, yellow,
//! gray/grey, black, brown).
std::optional<Colour> colour_from_name(std::string_view name);

//! "#rrggbb" for SVG output.
std::string to_hex(Colour const& c);

//! Text rendering "r g b a" with six significant digits.
std::string to_string(Colour const& c);

}  // namespace multivis
