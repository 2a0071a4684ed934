//---------------------------------------------------------------------------//
//! \file multivis/units.hpp
//! \brief Unit constants, unit lookup and best-unit formatting.
//!
//! Internal units: millimetre, radian, MeV, nanosecond, gram, tesla.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "math.hpp"

namespace multivis
{
namespace units
{
inline constexpr double mm = 1;
inline constexpr double um = 1e-3;
inline constexpr double nm = 1e-6;
inline constexpr double cm = 10;
inline constexpr double m = 1000;
inline constexpr double km = 1e6;

inline constexpr double mm3 = 1;
inline constexpr double cm3 = cm * cm * cm;
inline constexpr double m3 = m * m * m;

inline constexpr double rad = 1;
inline constexpr double mrad = 1e-3;
inline constexpr double deg = pi / 180;

inline constexpr double MeV = 1;
inline constexpr double eV = 1e-6;
inline constexpr double keV = 1e-3;
inline constexpr double GeV = 1e3;
inline constexpr double TeV = 1e6;

inline constexpr double ns = 1;
inline constexpr double us = 1e3;
inline constexpr double ms = 1e6;
inline constexpr double s = 1e9;

inline constexpr double g = 1;
inline constexpr double mg = 1e-3;
inline constexpr double kg = 1e3;

inline constexpr double g_per_cm3 = g / cm3;
inline constexpr double mg_per_cm3 = mg / cm3;

inline constexpr double tesla = 1;
inline constexpr double gauss = 1e-4;
inline constexpr double kilogauss = 1e-1;

//! Charge in units of the positron charge.
inline constexpr double eplus = 1;
}  // namespace units

//---------------------------------------------------------------------------//
enum class UnitCategory
{
    length,
    angle,
    energy,
    volume,
    mass,
    density,
    time,
    field,
};

char const* to_cstring(UnitCategory);

struct UnitSymbol
{
    std::string_view symbol;
    double value;
    UnitCategory category;
};

//! All known unit symbols.
std::vector<UnitSymbol> const& unit_table();

//! Look up a unit symbol, optionally restricted to one category.
std::optional<UnitSymbol>
find_unit(std::string_view symbol,
          std::optional<UnitCategory> category = std::nullopt);

//! Symbols of one category, for help and error messages.
std::vector<std::string_view> unit_symbols(UnitCategory);

//---------------------------------------------------------------------------//
// Best-unit formatting
//---------------------------------------------------------------------------//
/*!
 * Format a value with the largest unit of its category for which the
 * mantissa is at least one (six significant digits, ostream default).
 */
std::string best_unit(double value, UnitCategory cat);

//! Three-vector variant: unit chosen from the largest |component|.
std::string best_unit(Vec3 const& value, UnitCategory cat);

/*!
 * Parse "value [unit]"; without a unit token the default unit applies.
 *
 * Returns nullopt for malformed text or a unit outside the category.
 */
std::optional<double> parse_quantity(std::string_view text,
                                     UnitCategory cat,
                                     std::string_view default_unit);

//! Format a plain number with six significant digits.
std::string format_number(double value);

}  // namespace multivis
