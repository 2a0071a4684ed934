//---------------------------------------------------------------------------//
//! \file example_detector.cpp
//---------------------------------------------------------------------------//
#include "multivis/example_detector.hpp"

#include "multivis/units.hpp"

namespace multivis
{
using namespace units;

std::shared_ptr<Detector> make_b1_detector()
{
    auto air = make_material("G4_AIR", 1.20479 * mg_per_cm3, MaterialState::gas);
    auto water = make_material("G4_WATER", 1.0 * g_per_cm3, MaterialState::liquid);
    auto tissue
        = make_material("G4_A-150_TISSUE", 1.127 * g_per_cm3, MaterialState::solid);
    auto bone = make_material(
        "G4_BONE_COMPACT_ICRU", 1.85 * g_per_cm3, MaterialState::solid);

    auto world_lv = std::make_shared<LogicalVolume>(
        "World", make_box("World", 12 * cm, 12 * cm, 18 * cm), air);
    auto env_lv = std::make_shared<LogicalVolume>(
        "Envelope", make_box("Envelope", 10 * cm, 10 * cm, 15 * cm), water);
    auto shape1_lv = std::make_shared<LogicalVolume>(
        "Shape1", make_cone("Shape1", 0, 2 * cm, 0, 4 * cm, 3 * cm), tissue);
    auto shape2_lv = std::make_shared<LogicalVolume>(
        "Shape2", make_trd("Shape2", 6 * cm, 6 * cm, 5 * cm, 8 * cm, 3 * cm), bone);

    env_lv->add_daughter(std::make_shared<PhysicalVolume>(
        "Shape1", shape1_lv, Transform::translation({0, 2 * cm, -7 * cm})));
    env_lv->add_daughter(std::make_shared<PhysicalVolume>(
        "Shape2", shape2_lv, Transform::translation({0, -1 * cm, 7 * cm})));
    world_lv->add_daughter(std::make_shared<PhysicalVolume>("Envelope", env_lv));
    return std::make_shared<Detector>(
        std::make_shared<PhysicalVolume>("World", world_lv));
}

std::shared_ptr<Detector> make_replica_detector(int count)
{
    auto air = make_material("G4_AIR", 1.20479 * mg_per_cm3, MaterialState::gas);
    auto lead = make_material("G4_Pb", 11.35 * g_per_cm3, MaterialState::solid,
                              5.6125 * mm);
    double width = 1 * cm;
    double hz = 0.5 * width * count;
    auto world_lv = std::make_shared<LogicalVolume>(
        "World", make_box("World", 10 * cm, 10 * cm, hz + 1 * cm), air);
    auto stack_lv = std::make_shared<LogicalVolume>(
        "Stack", make_box("Stack", 5 * cm, 5 * cm, hz), air);
    auto slice_lv = std::make_shared<LogicalVolume>(
        "Slice", make_box("Slice", 5 * cm, 5 * cm, 0.5 * width), lead);
    stack_lv->add_daughter(std::make_shared<PhysicalVolume>(
        "Slice", slice_lv, Replica{Axis::z, count, width}));
    world_lv->add_daughter(std::make_shared<PhysicalVolume>("Stack", stack_lv));
    return std::make_shared<Detector>(
        std::make_shared<PhysicalVolume>("World", world_lv));
}

}  // namespace multivis
