#include <cmath>

#include <gtest/gtest.h>

#include "multivis/colour.hpp"
#include "multivis/units.hpp"

using namespace multivis;
using namespace multivis::units;

TEST(Units, ParseQuantity)
{
    auto a = parse_quantity("90 deg", UnitCategory::angle, "rad");
    auto b = parse_quantity("1.5707963 rad", UnitCategory::angle, "rad");
    ASSERT_TRUE(a && b);
    EXPECT_NEAR(*a, *b, 1e-6);
    EXPECT_DOUBLE_EQ(*parse_quantity("10 cm", UnitCategory::length, "m"), 100);
    EXPECT_DOUBLE_EQ(*parse_quantity("2", UnitCategory::length, "m"), 2000);
    EXPECT_DOUBLE_EQ(*parse_quantity("1.85 g/cm3", UnitCategory::density, "g/cm3"),
                     1.85 * g_per_cm3);
    EXPECT_FALSE(parse_quantity("10 MeV", UnitCategory::length, "mm"));
    EXPECT_FALSE(parse_quantity("ten mm", UnitCategory::length, "mm"));
    EXPECT_FALSE(parse_quantity("1 mm extra", UnitCategory::length, "mm"));
}

TEST(Units, Lookup)
{
    ASSERT_TRUE(find_unit("GeV"));
    EXPECT_EQ(find_unit("GeV")->value, 1000);
    EXPECT_EQ(find_unit("GeV")->category, UnitCategory::energy);
    EXPECT_FALSE(find_unit("GeV", UnitCategory::length));
    EXPECT_FALSE(find_unit("furlong"));
    for (auto const& u : unit_table())
        EXPECT_GT(u.value, 0) << u.symbol;
}

TEST(Units, BestUnit)
{
    EXPECT_EQ(best_unit(20736 * cm3, UnitCategory::volume), "20736 cm3");
    EXPECT_EQ(best_unit(12828.5, UnitCategory::mass), "12.8285 kg");
    EXPECT_EQ(best_unit(10.525, UnitCategory::mass), "10.525 g");
    EXPECT_EQ(best_unit(1.20479 * mg_per_cm3, UnitCategory::density), "1.20479 mg/cm3");
    EXPECT_EQ(best_unit(250, UnitCategory::energy), "250 MeV");
    EXPECT_EQ(best_unit(2500, UnitCategory::energy), "2.5 GeV");
    EXPECT_EQ(best_unit(0, UnitCategory::length), "0 mm");
}

TEST(Units, BestUnitParsesBack)
{
    for (double v : {1e-4, 0.37, 3.0, 42.5, 1234.0, 9.87e6})
    {
        for (auto cat : {UnitCategory::length, UnitCategory::energy, UnitCategory::mass})
        {
            auto back = parse_quantity(best_unit(v, cat), cat, "mm");
            ASSERT_TRUE(back) << best_unit(v, cat);
            EXPECT_NEAR(*back, v, 1e-5 * v);
        }
    }
}

TEST(Colour, Names)
{
    EXPECT_EQ(colour_from_name("red"), (Colour{1, 0, 0}));
    EXPECT_EQ(colour_from_name("yellow"), (Colour{1, 1, 0}));
    EXPECT_FALSE(colour_from_name("octarine"));
    EXPECT_EQ(to_hex(Colour{1, 0.5, 0}), "#ff8000");
}
