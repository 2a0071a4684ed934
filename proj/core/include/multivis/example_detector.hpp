//---------------------------------------------------------------------------//
//! \file multivis/example_detector.hpp
//! \brief Built-in geometry fixtures.
//---------------------------------------------------------------------------//
#pragma once

#include <memory>

#include "geometry.hpp"

namespace multivis
{
/*!
 * Water envelope in an air world holding a tissue cone and a bone trd.
 *
 * The layout of the classic "basic example B1" application.
 */
std::shared_ptr<Detector> make_b1_detector();

//! Box of `count` replica slices along z inside an air world.
std::shared_ptr<Detector> make_replica_detector(int count);

}  // namespace multivis
