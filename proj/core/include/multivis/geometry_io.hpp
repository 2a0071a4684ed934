//---------------------------------------------------------------------------//
//! \file multivis/geometry_io.hpp
//! \brief Declarative JSON geometry files (schema in docs/geometry-format.md).
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string_view>

#include "geometry.hpp"

namespace multivis
{
class GeometryFormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::shared_ptr<Detector> load_geometry(std::filesystem::path const& path);
std::shared_ptr<Detector> parse_geometry(std::string_view json_text);

}  // namespace multivis
