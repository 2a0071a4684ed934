//---------------------------------------------------------------------------//
//! \file geometry_io.cpp
//---------------------------------------------------------------------------//
#include "multivis/geometry_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "multivis/units.hpp"

namespace multivis
{
namespace
{
using nlohmann::json;

[[noreturn]] void fail(std::string const& where, std::string const& what)
{
    throw GeometryFormatError(where + ": " + what);
}

json const& require(json const& obj, char const* key, std::string const& where)
{
    auto it = obj.find(key);
    if (it == obj.end())
        fail(where, std::string("missing \"") + key + "\"");
    return *it;
}

std::string text(json const& obj, char const* key, std::string const& where)
{
    auto const& v = require(obj, key, where);
    if (!v.is_string())
        fail(where, std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

//! Number in the default unit, or "value unit" string.
double quantity(json const& v,
                UnitCategory cat,
                std::string_view default_unit,
                std::string const& where)
{
    if (v.is_number())
    {
        return v.get<double>() * find_unit(default_unit, cat)->value;
    }
    if (v.is_string())
    {
        if (auto q = parse_quantity(v.get<std::string>(), cat, default_unit))
            return *q;
    }
    fail(where, "bad " + std::string(to_cstring(cat)) + " value " + v.dump());
}

double quantity(json const& obj,
                char const* key,
                UnitCategory cat,
                std::string_view default_unit,
                std::string const& where)
{
    return quantity(require(obj, key, where), cat, default_unit, where + "." + key);
}

double optional_quantity(json const& obj,
                         char const* key,
                         UnitCategory cat,
                         std::string_view default_unit,
                         double fallback,
                         std::string const& where)
{
    if (!obj.contains(key))
        return fallback;
    return quantity(obj, key, cat, default_unit, where);
}

Vec3 vector3(json const& v,
             UnitCategory cat,
             std::string_view default_unit,
             std::string const& where)
{
    if (!v.is_array() || v.size() != 3)
        fail(where, "expected an array of three values");
    return {quantity(v[0], cat, default_unit, where),
            quantity(v[1], cat, default_unit, where),
            quantity(v[2], cat, default_unit, where)};
}

Colour colour(json const& v, std::string const& where)
{
    if (v.is_string())
    {
        if (auto c = colour_from_name(v.get<std::string>()))
            return *c;
        fail(where, "unknown colour " + v.dump());
    }
    if (v.is_array() && (v.size() == 3 || v.size() == 4))
    {
        for (auto const& c : v)
        {
            if (!c.is_number())
                fail(where, "colour components must be numbers");
        }
        return {v[0].get<double>(),
                v[1].get<double>(),
                v[2].get<double>(),
                v.size() == 4 ? v[3].get<double>() : 1.0};
    }
    fail(where, "colour must be a name or [r, g, b(, a)]");
}

SolidPtr make_solid(json const& s,
                    std::map<std::string, SolidPtr> const& known,
                    std::string const& where)
{
    using C = UnitCategory;
    std::string name = text(s, "name", where);
    std::string type = text(s, "type", where);
    auto len = [&](char const* key) { return quantity(s, key, C::length, "mm", where); };
    auto len_or = [&](char const* key, double d) {
        return optional_quantity(s, key, C::length, "mm", d, where);
    };
    auto ang_or = [&](char const* key, double d) {
        return optional_quantity(s, key, C::angle, "deg", d, where);
    };
    if (type == "box")
        return make_box(name, len("half_x"), len("half_y"), len("half_z"));
    if (type == "tube")
    {
        return make_tube(name,
                         len_or("r_min", 0),
                         len("r_max"),
                         len("half_z"),
                         ang_or("phi_start", 0),
                         ang_or("delta_phi", two_pi));
    }
    if (type == "cone")
    {
        return make_cone(name,
                         len_or("r_min1", 0),
                         len("r_max1"),
                         len_or("r_min2", 0),
                         len("r_max2"),
                         len("half_z"),
                         ang_or("phi_start", 0),
                         ang_or("delta_phi", two_pi));
    }
    if (type == "trd")
    {
        return make_trd(name,
                        len("half_x1"),
                        len("half_x2"),
                        len("half_y1"),
                        len("half_y2"),
                        len("half_z"));
    }
    if (type == "sphere")
    {
        return make_sphere(name,
                           len_or("r_min", 0),
                           len("r_max"),
                           ang_or("phi_start", 0),
                           ang_or("delta_phi", two_pi),
                           ang_or("theta_start", 0),
                           ang_or("delta_theta", pi));
    }
    if (type == "subtraction")
    {
        auto operand = [&](char const* key) {
            std::string ref = text(s, key, where);
            auto it = known.find(ref);
            if (it == known.end())
                fail(where, "unknown solid \"" + ref + "\" (define operands first)");
            return it->second;
        };
        Transform t;
        if (s.contains("position") || s.contains("rotation"))
        {
            Vec3 pos = s.contains("position")
                           ? vector3(s["position"], C::length, "mm", where + ".position")
                           : Vec3{};
            Vec3 rot = s.contains("rotation")
                           ? vector3(s["rotation"], C::angle, "deg", where + ".rotation")
                           : Vec3{};
            t = Transform{Rotation::about_z(rot.z) * Rotation::about_y(rot.y)
                              * Rotation::about_x(rot.x),
                          pos};
        }
        return make_subtraction(name, operand("left"), operand("right"), t);
    }
    fail(where, "unknown solid type \"" + type + "\"");
}

void apply_vis(json const& v, VisAttributes& vis, std::string const& where)
{
    if (!v.is_object())
        fail(where, "\"vis\" must be an object");
    if (v.contains("visible"))
        vis.visible = v["visible"].get<bool>();
    if (v.contains("colour"))
        vis.colour = colour(v["colour"], where + ".colour");
    if (v.contains("line_width"))
        vis.line_width = v["line_width"].get<double>();
    if (v.contains("daughters_invisible"))
        vis.daughters_invisible = v["daughters_invisible"].get<bool>();
    if (v.contains("line_style"))
    {
        auto ls = line_style_from_string(v["line_style"].get<std::string>());
        if (!ls)
            fail(where, "bad line_style");
        vis.line_style = *ls;
    }
    if (v.contains("forced_style"))
    {
        auto fs = forced_style_from_string(v["forced_style"].get<std::string>());
        if (!fs)
            fail(where, "bad forced_style");
        vis.forced_style = *fs;
    }
}

std::optional<Axis> axis_from_string(std::string_view s)
{
    if (s == "x")
        return Axis::x;
    if (s == "y")
        return Axis::y;
    if (s == "z")
        return Axis::z;
    return std::nullopt;
}

json const& array_of(json const& doc, char const* key, bool required)
{
    static json const empty = json::array();
    if (!doc.contains(key))
    {
        if (required)
            fail("geometry", std::string("missing \"") + key + "\"");
        return empty;
    }
    if (!doc[key].is_array())
        fail("geometry", std::string("\"") + key + "\" must be an array");
    return doc[key];
}

std::shared_ptr<Detector> build(json const& doc)
{
    using C = UnitCategory;
    if (!doc.is_object())
        fail("geometry", "top level must be an object");

    std::map<std::string, MaterialPtr> materials;
    int i = 0;
    for (auto const& m : array_of(doc, "materials", true))
    {
        std::string where = "materials[" + std::to_string(i++) + "]";
        std::string name = text(m, "name", where);
        double density = quantity(m, "density", C::density, "g/cm3", where);
        auto state = material_state_from_string(
            m.contains("state") ? m["state"].get<std::string>() : "undefined");
        if (!state)
            fail(where, "bad state");
        std::optional<double> radlen;
        if (m.contains("radiation_length"))
            radlen = quantity(m, "radiation_length", C::length, "mm", where);
        try
        {
            materials[name] = make_material(name, density, *state, radlen);
        }
        catch (std::invalid_argument const& e)
        {
            fail(where, e.what());
        }
    }

    std::map<std::string, SolidPtr> solids;
    i = 0;
    for (auto const& s : array_of(doc, "solids", true))
    {
        std::string where = "solids[" + std::to_string(i++) + "]";
        try
        {
            auto solid = make_solid(s, solids, where);
            if (!solids.emplace(solid->name(), solid).second)
                fail(where, "duplicate solid \"" + solid->name() + "\"");
        }
        catch (std::invalid_argument const& e)
        {
            fail(where, e.what());
        }
    }

    std::map<std::string, LogicalVolumePtr> volumes;
    i = 0;
    for (auto const& v : array_of(doc, "volumes", true))
    {
        std::string where = "volumes[" + std::to_string(i++) + "]";
        std::string name = text(v, "name", where);
        std::string solid = text(v, "solid", where);
        std::string material = text(v, "material", where);
        if (!solids.count(solid))
            fail(where, "unknown solid \"" + solid + "\"");
        if (!materials.count(material))
            fail(where, "unknown material \"" + material + "\"");
        auto lv = std::make_shared<LogicalVolume>(
            name, solids[solid], materials[material]);
        if (v.contains("vis"))
            apply_vis(v["vis"], lv->vis(), where + ".vis");
        if (!volumes.emplace(name, lv).second)
            fail(where, "duplicate volume \"" + name + "\"");
    }

    i = 0;
    for (auto const& p : array_of(doc, "placements", false))
    {
        std::string where = "placements[" + std::to_string(i++) + "]";
        std::string vol = text(p, "volume", where);
        std::string mother = text(p, "mother", where);
        std::string name = p.contains("name") ? text(p, "name", where) : vol;
        if (!volumes.count(vol))
            fail(where, "unknown volume \"" + vol + "\"");
        if (!volumes.count(mother))
            fail(where, "unknown mother \"" + mother + "\"");
        PhysicalVolumePtr pv;
        if (p.contains("replica"))
        {
            auto const& r = p["replica"];
            auto axis = axis_from_string(text(r, "axis", where + ".replica"));
            if (!axis)
                fail(where, "replica axis must be x, y or z");
            Replica rep{*axis,
                        require(r, "count", where).get<int>(),
                        quantity(r, "width", C::length, "mm", where + ".replica")};
            try
            {
                pv = std::make_shared<PhysicalVolume>(name, volumes[vol], rep);
            }
            catch (std::invalid_argument const& e)
            {
                fail(where, e.what());
            }
        }
        else
        {
            Vec3 pos = p.contains("position")
                           ? vector3(p["position"], C::length, "mm", where + ".position")
                           : Vec3{};
            Vec3 rot = p.contains("rotation")
                           ? vector3(p["rotation"], C::angle, "deg", where + ".rotation")
                           : Vec3{};
            Transform t{Rotation::about_z(rot.z) * Rotation::about_y(rot.y)
                            * Rotation::about_x(rot.x),
                        pos};
            pv = std::make_shared<PhysicalVolume>(name, volumes[vol], t);
        }
        try
        {
            volumes[mother]->add_daughter(pv);
        }
        catch (std::invalid_argument const& e)
        {
            fail(where, e.what());
        }
    }

    std::string world = text(doc, "world", "geometry");
    if (!volumes.count(world))
        fail("geometry", "unknown world volume \"" + world + "\"");
    return std::make_shared<Detector>(
        std::make_shared<PhysicalVolume>(world, volumes[world]));
}
}  // namespace

std::shared_ptr<Detector> parse_geometry(std::string_view json_text)
{
    json doc;
    try
    {
        doc = json::parse(json_text);
    }
    catch (json::parse_error const& e)
    {
        throw GeometryFormatError(std::string("geometry: ") + e.what());
    }
    try
    {
        return build(doc);
    }
    catch (json::exception const& e)
    {
        throw GeometryFormatError(std::string("geometry: ") + e.what());
    }
}

std::shared_ptr<Detector> load_geometry(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw GeometryFormatError("cannot open geometry file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try
    {
        return parse_geometry(ss.str());
    }
    catch (GeometryFormatError const& e)
    {
        throw GeometryFormatError(path.string() + ": " + e.what());
    }
}

}  // namespace multivis
