//---------------------------------------------------------------------------//
//! \file drivers/scene_export.cpp
//---------------------------------------------------------------------------//
#include "multivis/drivers/scene_export.hpp"

#include <set>

#include "json.hpp"

namespace multivis
{
using ojson = nlohmann::ordered_json;

char const* to_cstring(PayloadKind k)
{
    switch (k)
    {
        case PayloadKind::mesh:
            return "mesh";
        case PayloadKind::polyline:
            return "polyline";
        case PayloadKind::markers:
            return "markers";
        case PayloadKind::text:
            return "text";
        case PayloadKind::none:
            return "none";
    }
    return "?";
}

SceneType const* SceneDocument::find_type(std::string_view name) const
{
    for (auto const& t : types)
    {
        if (t.name == name)
            return &t;
    }
    return nullptr;
}

std::size_t SceneDocument::count(std::string_view type) const
{
    std::size_t n = 0;
    for (auto const& i : instances)
        n += i.type == type;
    return n;
}

//---------------------------------------------------------------------------//
// Writer
//---------------------------------------------------------------------------//
namespace
{
ojson vec(Vec3 const& v)
{
    return ojson::array({v.x, v.y, v.z});
}

ojson colour_json(Colour const& c)
{
    return ojson::array({c.red(), c.green(), c.blue(), c.alpha()});
}

ojson view_json(SceneHeader const& h)
{
    auto const& v = h.view;
    ojson j;
    j["viewpoint"] = vec(v.viewpoint);
    j["up"] = vec(v.up);
    j["lights"] = vec(v.lights);
    j["target"] = vec(h.target);
    j["radius"] = h.radius;
    j["zoom"] = v.zoom;
    j["style"] = to_cstring(v.style);
    j["auxiliary_edges"] = v.auxiliary_edges;
    j["projection"] = to_cstring(v.projection);
    j["field_half_angle"] = v.field_half_angle;
    j["window"] = ojson::array({v.window.width, v.window.height});
    j["segments_per_circle"] = v.segments_per_circle;
    j["background"] = colour_json(v.background);
    return j;
}

ojson attvalues_json(AttValues const& atts)
{
    ojson arr = ojson::array();
    for (auto const& a : atts)
    {
        ojson j;
        j["key"] = a.key;
        j["value"] = a.value;
        if (a.number)
            j["number"] = *a.number;
        arr.push_back(std::move(j));
    }
    return arr;
}
}  // namespace

std::string to_json(SceneDocument const& doc)
{
    ojson root;
    root["schema"] = doc.header.schema;
    root["generator"] = doc.header.generator;
    root["timestamp"] = doc.header.timestamp;
    root["scene"] = doc.header.scene_name;
    root["view"] = view_json(doc.header);

    ojson types = ojson::array();
    for (auto const& t : doc.types)
    {
        ojson jt;
        jt["name"] = t.name;
        jt["parent"] = t.parent;
        ojson defs = ojson::array();
        for (auto const& d : t.attdefs)
        {
            ojson jd;
            jd["key"] = d.key;
            jd["description"] = d.description;
            jd["kind"] = to_cstring(d.kind);
            jd["dimensioned"] = d.dimensioned;
            defs.push_back(std::move(jd));
        }
        jt["attdefs"] = std::move(defs);
        types.push_back(std::move(jt));
    }
    root["types"] = std::move(types);

    ojson instances = ojson::array();
    for (auto const& i : doc.instances)
    {
        ojson ji;
        ji["id"] = i.id;
        ji["type"] = i.type;
        ji["parent"] = i.parent;
        ji["kind"] = to_cstring(i.kind);
        ji["colour"] = colour_json(i.colour);
        ji["line_width"] = i.line_width;
        ji["marker_size"] = i.marker_size;
        ji["draw_line"] = i.draw_line;
        ji["draw_points"] = i.draw_points;
        ji["forced_style"] = to_cstring(i.forced_style);
        ojson verts = ojson::array();
        for (auto const& v : i.vertices)
            verts.push_back(vec(v));
        ji["vertices"] = std::move(verts);
        ji["faces"] = i.faces;
        ji["edges"] = i.edges;
        ji["text"] = i.text;
        ji["attributes"] = attvalues_json(i.attributes);
        instances.push_back(std::move(ji));
    }
    root["instances"] = std::move(instances);
    return root.dump() + "\n";
}

//---------------------------------------------------------------------------//
// Reader
//---------------------------------------------------------------------------//
namespace
{
Vec3 read_vec(ojson const& j)
{
    if (!j.is_array() || j.size() != 3)
        throw SceneFormatError("expected a 3-vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Colour read_colour(ojson const& j)
{
    if (!j.is_array() || j.size() != 4)
        throw SceneFormatError("expected an RGBA colour");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

template<class E, class F>
E read_enum(ojson const& j, F from_string, char const* what)
{
    auto v = from_string(j.get<std::string>());
    if (!v)
        throw SceneFormatError(std::string{"unknown "} + what + " \"" + j.get<std::string>()
                               + "\"");
    return *v;
}

std::optional<DrawingStyle> style_from(std::string_view s)
{
    for (auto v : {DrawingStyle::wireframe, DrawingStyle::surface})
    {
        if (s == to_cstring(v))
            return v;
    }
    return std::nullopt;
}

std::optional<Projection> projection_from(std::string_view s)
{
    for (auto v : {Projection::orthographic, Projection::perspective})
    {
        if (s == to_cstring(v))
            return v;
    }
    return std::nullopt;
}

std::optional<PayloadKind> payload_from(std::string_view s)
{
    for (auto v : {PayloadKind::mesh,
                   PayloadKind::polyline,
                   PayloadKind::markers,
                   PayloadKind::text,
                   PayloadKind::none})
    {
        if (s == to_cstring(v))
            return v;
    }
    return std::nullopt;
}
}  // namespace

SceneDocument scene_from_json(std::string const& text)
{
    SceneDocument doc;
    try
    {
        ojson root = ojson::parse(text);
        auto& h = doc.header;
        h.schema = root.at("schema").get<std::string>();
        if (h.schema != scene_schema)
            throw SceneFormatError("unsupported schema \"" + h.schema + "\"");
        h.generator = root.at("generator").get<std::string>();
        h.timestamp = root.at("timestamp").get<std::string>();
        h.scene_name = root.at("scene").get<std::string>();

        auto const& v = root.at("view");
        h.view.viewpoint = read_vec(v.at("viewpoint"));
        h.view.up = read_vec(v.at("up"));
        h.view.lights = read_vec(v.at("lights"));
        h.target = read_vec(v.at("target"));
        h.radius = v.at("radius").get<double>();
        h.view.zoom = v.at("zoom").get<double>();
        h.view.style = read_enum<DrawingStyle>(v.at("style"), style_from, "style");
        h.view.auxiliary_edges = v.at("auxiliary_edges").get<bool>();
        h.view.projection
            = read_enum<Projection>(v.at("projection"), projection_from, "projection");
        h.view.field_half_angle = v.at("field_half_angle").get<double>();
        h.view.window.width = v.at("window").at(0).get<int>();
        h.view.window.height = v.at("window").at(1).get<int>();
        h.view.segments_per_circle = v.at("segments_per_circle").get<int>();
        h.view.background = read_colour(v.at("background"));

        for (auto const& jt : root.at("types"))
        {
            SceneType t;
            t.name = jt.at("name").get<std::string>();
            t.parent = jt.at("parent").get<std::string>();
            for (auto const& jd : jt.at("attdefs"))
            {
                AttDef d;
                d.key = jd.at("key").get<std::string>();
                d.description = jd.at("description").get<std::string>();
                d.kind = read_enum<ValueKind>(jd.at("kind"), value_kind_from_string, "kind");
                d.dimensioned = jd.at("dimensioned").get<bool>();
                t.attdefs.push_back(std::move(d));
            }
            doc.types.push_back(std::move(t));
        }

        for (auto const& ji : root.at("instances"))
        {
            SceneInstance i;
            i.id = ji.at("id").get<std::string>();
            i.type = ji.at("type").get<std::string>();
            i.parent = ji.at("parent").get<std::string>();
            i.kind = read_enum<PayloadKind>(ji.at("kind"), payload_from, "payload kind");
            i.colour = read_colour(ji.at("colour"));
            i.line_width = ji.at("line_width").get<double>();
            i.marker_size = ji.at("marker_size").get<double>();
            i.draw_line = ji.at("draw_line").get<bool>();
            i.draw_points = ji.at("draw_points").get<bool>();
            i.forced_style = read_enum<ForcedStyle>(
                ji.at("forced_style"), forced_style_from_string, "forced style");
            for (auto const& jv : ji.at("vertices"))
                i.vertices.push_back(read_vec(jv));
            i.faces = ji.at("faces").get<std::vector<std::vector<int>>>();
            i.edges = ji.at("edges").get<std::vector<std::array<int, 3>>>();
            i.text = ji.at("text").get<std::string>();
            for (auto const& ja : ji.at("attributes"))
            {
                AttValue a;
                a.key = ja.at("key").get<std::string>();
                a.value = ja.at("value").get<std::string>();
                if (ja.contains("number"))
                    a.number = ja.at("number").get<double>();
                i.attributes.push_back(std::move(a));
            }
            doc.instances.push_back(std::move(i));
        }
    }
    catch (ojson::exception const& e)
    {
        throw SceneFormatError(e.what());
    }
    validate(doc);
    return doc;
}

void validate(SceneDocument const& doc)
{
    std::set<std::string> type_names;
    for (auto const& t : doc.types)
    {
        if (!type_names.insert(t.name).second)
            throw SceneFormatError("duplicate type \"" + t.name + "\"");
    }
    for (auto const& t : doc.types)
    {
        if (!t.parent.empty() && !type_names.count(t.parent))
            throw SceneFormatError("type \"" + t.name + "\" has unknown parent");
    }
    std::set<std::string> ids;
    for (auto const& i : doc.instances)
    {
        SceneType const* t = doc.find_type(i.type);
        if (!t)
            throw SceneFormatError("instance \"" + i.id + "\" has unknown type \"" + i.type + "\"");
        if (!i.parent.empty() && !ids.count(i.parent))
            throw SceneFormatError("instance \"" + i.id + "\" has unknown parent");
        if (!ids.insert(i.id).second)
            throw SceneFormatError("duplicate instance id \"" + i.id + "\"");
        if (!keys_resolve(i.attributes, t->attdefs))
            throw SceneFormatError("instance \"" + i.id + "\" has unresolved attribute keys");
        auto n = static_cast<int>(i.vertices.size());
        for (auto const& f : i.faces)
        {
            for (int idx : f)
            {
                if (idx < 0 || idx >= n)
                    throw SceneFormatError("instance \"" + i.id + "\" face index out of range");
            }
        }
        for (auto const& e : i.edges)
        {
            if (e[0] < 0 || e[0] >= n || e[1] < 0 || e[1] >= n)
                throw SceneFormatError("instance \"" + i.id + "\" edge index out of range");
        }
    }
}

//---------------------------------------------------------------------------//
// Sink
//---------------------------------------------------------------------------//
namespace
{
AttDefs const& event_att_defs()
{
    static AttDefs const defs{{"EventID", "Event ID", ValueKind::integer, false}};
    return defs;
}

void fill_mesh(SceneInstance& inst, Mesh const& mesh)
{
    inst.kind = PayloadKind::mesh;
    inst.vertices = mesh.vertices;
    inst.faces = mesh.faces;
    for (auto const& e : mesh.edges)
        inst.edges.push_back({e.a, e.b, e.kind == EdgeKind::auxiliary ? 1 : 0});
}
}  // namespace

void SceneExportSink::begin_session(ViewParameters const& view, SceneInfo const& info)
{
    doc_ = {};
    doc_.header.timestamp = timestamp_;
    doc_.header.scene_name = info.scene_name;
    doc_.header.view = view;
    doc_.header.target = info.centre + view.target_offset;
    doc_.header.radius = info.radius;
    doc_.types = {
        {"Geometry", "", touchable_att_defs()},
        {"Event", "", event_att_defs()},
        {"Trajectory", "Event", trajectory_att_defs()},
        {"Hit", "Event", hit_att_defs()},
        {"Primitive", "", {}},
    };
    serial_ = 0;
    two_d_ = false;
}

std::string SceneExportSink::next_id(char const* prefix)
{
    return std::string{prefix} + "/" + std::to_string(serial_++);
}

void SceneExportSink::pre_add_solid(Transform const& t,
                                    VisAttributes const& vis,
                                    SolidContext const* ctx)
{
    transform_ = t;
    vis_ = vis;
    ctx_ = ctx;
    ctx_atts_.clear();
    ctx_path_.clear();
    if (ctx && ctx->touchable)
    {
        ctx_path_ = to_string(ctx->touchable->path);
        ctx_atts_ = ctx->attributes ? *ctx->attributes : touchable_attributes(*ctx->touchable);
    }
}

void SceneExportSink::add_solid(Solid const& s)
{
    SceneInstance inst;
    bool geometry = !ctx_path_.empty();
    inst.type = geometry ? "Geometry" : "Primitive";
    inst.id = geometry ? ctx_path_ : next_id("solid");
    for (auto const& other : doc_.instances)
    {
        if (other.id == inst.id)
        {
            inst.id = next_id(ctx_path_.c_str());
            break;
        }
    }
    inst.colour = vis_.colour;
    inst.line_width = vis_.line_width;
    inst.forced_style = vis_.forced_style;
    fill_mesh(inst, tessellate(s, doc_.header.view.segments_per_circle).transformed(transform_));
    inst.attributes = ctx_atts_;
    doc_.instances.push_back(std::move(inst));
}

void SceneExportSink::begin_primitives(Transform const& t)
{
    transform_ = t;
    two_d_ = false;
}

void SceneExportSink::begin_primitives_2d()
{
    transform_ = {};
    two_d_ = true;
}

void SceneExportSink::add_primitive(Primitive const& p)
{
    SceneInstance inst;
    inst.type = "Primitive";
    inst.id = next_id(two_d_ ? "primitive2d" : "primitive");
    auto pt = [this](Vec3 const& v) { return two_d_ ? v : transform_.apply_point(v); };
    std::visit(
        [&](auto const& prim) {
            using T = std::decay_t<decltype(prim)>;
            inst.colour = prim.vis.colour;
            inst.line_width = prim.vis.line_width;
            if constexpr (std::is_same_v<T, Polyline>)
            {
                inst.kind = PayloadKind::polyline;
                for (auto const& v : prim.points)
                    inst.vertices.push_back(pt(v));
            }
            else if constexpr (std::is_same_v<T, Polymarker>)
            {
                inst.kind = PayloadKind::markers;
                inst.draw_line = false;
                inst.draw_points = true;
                inst.marker_size = prim.size;
                for (auto const& v : prim.points)
                    inst.vertices.push_back(pt(v));
            }
            else if constexpr (std::is_same_v<T, Circle> || std::is_same_v<T, Square>)
            {
                inst.kind = PayloadKind::markers;
                inst.draw_line = false;
                inst.draw_points = true;
                inst.marker_size = prim.size;
                inst.vertices.push_back(pt(prim.position));
            }
            else if constexpr (std::is_same_v<T, Text>)
            {
                inst.kind = PayloadKind::text;
                inst.marker_size = prim.size;
                inst.vertices.push_back(pt(prim.position));
                inst.text = prim.content;
            }
            else if constexpr (std::is_same_v<T, MeshPrimitive>)
            {
                fill_mesh(inst, two_d_ ? prim.mesh : prim.mesh.transformed(transform_));
            }
            else if constexpr (std::is_same_v<T, ScaleBar>)
            {
                inst.kind = PayloadKind::polyline;
                inst.vertices = {pt(prim.start),
                                 pt(prim.start + prim.direction * prim.length)};
                inst.text = prim.annotation;
            }
        },
        p);
    doc_.instances.push_back(std::move(inst));
}

std::string SceneExportSink::event_parent(AttValues const& atts)
{
    AttValue const* ev = find_value(atts, "EventID");
    if (!ev)
        return {};
    std::string id = "event/" + ev->value;
    for (auto const& i : doc_.instances)
    {
        if (i.id == id)
            return id;
    }
    SceneInstance inst;
    inst.id = id;
    inst.type = "Event";
    inst.attributes = {*ev};
    doc_.instances.push_back(std::move(inst));
    return id;
}

void SceneExportSink::add_trajectory(Trajectory const& t,
                                     DrawStyle const& style,
                                     AttValues const& atts)
{
    SceneInstance inst;
    inst.parent = event_parent(atts);
    inst.type = "Trajectory";
    inst.id = next_id((inst.parent.empty() ? std::string{"trajectory"}
                                            : inst.parent + "/trajectory")
                          .c_str());
    inst.kind = PayloadKind::polyline;
    inst.colour = style.colour;
    inst.line_width = style.line_width;
    inst.marker_size = style.point_size;
    inst.draw_line = style.draw_line;
    inst.draw_points = style.draw_points;
    for (auto const& sp : t.points)
        inst.vertices.push_back(sp.position);
    inst.attributes = atts;
    doc_.instances.push_back(std::move(inst));
}

void SceneExportSink::add_hit(Hit const& h, DrawStyle const& style, AttValues const& atts)
{
    auto& defs = doc_.types[3].attdefs;
    for (auto const& a : atts)
    {
        if (!find_def(defs, a.key))
            defs.push_back({a.key, a.key, a.number ? ValueKind::real : ValueKind::text, false});
    }
    SceneInstance inst;
    inst.parent = event_parent(atts);
    inst.type = "Hit";
    inst.id = next_id(
        (inst.parent.empty() ? std::string{"hit"} : inst.parent + "/hit").c_str());
    inst.kind = PayloadKind::markers;
    inst.colour = style.colour;
    inst.marker_size = style.point_size;
    inst.draw_line = false;
    inst.draw_points = true;
    inst.vertices = {h.position};
    inst.attributes = atts;
    doc_.instances.push_back(std::move(inst));
}

void SceneExportSink::end_session()
{
    validate(doc_);
}

}  // namespace multivis
