//---------------------------------------------------------------------------//
//! \file multivis/attributes.hpp
//! \brief Drawing attributes and typed attribute definitions/values.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colour.hpp"

namespace multivis
{
//---------------------------------------------------------------------------//
// Vis attributes
//---------------------------------------------------------------------------//
enum class LineStyle
{
    solid,
    dashed,
    dotted,
};

enum class ForcedStyle
{
    none,
    wireframe,
    surface,
};

char const* to_cstring(LineStyle);
char const* to_cstring(ForcedStyle);
std::optional<LineStyle> line_style_from_string(std::string_view);
std::optional<ForcedStyle> forced_style_from_string(std::string_view);

struct VisAttributes
{
    bool visible{true};
    Colour colour{Colour::white()};
    double line_width{1};
    LineStyle line_style{LineStyle::solid};
    ForcedStyle forced_style{ForcedStyle::none};
    bool daughters_invisible{false};

    friend bool operator==(VisAttributes const&, VisAttributes const&) = default;
};

//! Partial edit: only engaged fields are applied.
struct VisPatch
{
    std::optional<bool> visible;
    std::optional<Colour> colour;
    std::optional<double> line_width;
    std::optional<LineStyle> line_style;
    std::optional<ForcedStyle> forced_style;
    std::optional<bool> daughters_invisible;

    bool empty() const;
    //! Overlay another patch (its engaged fields win).
    void merge(VisPatch const& other);
    friend bool operator==(VisPatch const&, VisPatch const&) = default;
};

void apply(VisPatch const& patch, VisAttributes& attr);

//---------------------------------------------------------------------------//
// Attribute definitions and values
//---------------------------------------------------------------------------//
enum class ValueKind
{
    text,
    integer,
    real,
    vector,
};

char const* to_cstring(ValueKind);
std::optional<ValueKind> value_kind_from_string(std::string_view);

struct AttDef
{
    std::string key;
    std::string description;
    ValueKind kind{ValueKind::text};
    bool dimensioned{false};
};

/*!
 * Rendered attribute value.
 *
 * The text is what pickers and exporters show. Scalar numeric attributes also
 * keep their value in internal units so filters can compare without parsing.
 */
struct AttValue
{
    std::string key;
    std::string value;
    std::optional<double> number;

    friend bool operator==(AttValue const&, AttValue const&) = default;
};

using AttDefs = std::vector<AttDef>;
using AttValues = std::vector<AttValue>;

AttDef const* find_def(AttDefs const& defs, std::string_view key);
AttValue const* find_value(AttValues const& values, std::string_view key);

//! True if every value's key names exactly one definition.
bool keys_resolve(AttValues const& values, AttDefs const& defs);

AttDefs const& touchable_att_defs();
AttDefs const& trajectory_att_defs();
AttDefs const& hit_att_defs();

}  // namespace multivis
