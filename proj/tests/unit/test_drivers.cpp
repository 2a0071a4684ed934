#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "multivis/drivers/ascii_tree.hpp"
#include "multivis/drivers/painter.hpp"
#include "multivis/drivers/protocol.hpp"
#include "multivis/drivers/ray_tracer.hpp"
#include "multivis/drivers/scene_export.hpp"
#include "multivis/example_detector.hpp"
#include "multivis/units.hpp"

using namespace multivis;
using namespace multivis::units;

namespace
{
std::shared_ptr<Detector> single_box(double hx, double hy, double hz)
{
    auto mat = make_material("m", 1 * g_per_cm3, MaterialState::solid);
    auto lv = std::make_shared<LogicalVolume>("Box", make_box("Box", hx, hy, hz), mat);
    return std::make_shared<Detector>(std::make_shared<PhysicalVolume>("Box", lv));
}

Scene volume_scene(std::shared_ptr<Detector> det, std::string top = "World")
{
    Scene s("s");
    s.add_model(PhysicalVolumeModel{std::move(det), std::move(top), unlimited_depth});
    return s;
}

PainterSink paint(Scene const& s, ViewParameters const& view)
{
    PainterSink p;
    TraversalContext ctx;
    ctx.view = view;
    traverse(s, p, ctx);
    return p;
}

//! Rotation taking the viewpoint to +z, then a roll bringing up to +y.
struct ProjectionOracle
{
    double m[3][3];

    ProjectionOracle(double theta, double phi, Vec3 up)
    {
        double rz[3][3] = {{std::cos(-phi), -std::sin(-phi), 0},
                           {std::sin(-phi), std::cos(-phi), 0},
                           {0, 0, 1}};
        double ry[3][3] = {{std::cos(-theta), 0, std::sin(-theta)},
                           {0, 1, 0},
                           {-std::sin(-theta), 0, std::cos(-theta)}};
        double a[3][3];
        mul(ry, rz, a);
        double u[3];
        apply(a, up, u);
        double roll = std::atan2(u[0], u[1]);
        double rr[3][3] = {{std::cos(roll), -std::sin(roll), 0},
                           {std::sin(roll), std::cos(roll), 0},
                           {0, 0, 1}};
        mul(rr, a, m);
    }

    static void mul(double const x[3][3], double const y[3][3], double out[3][3])
    {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
            {
                out[i][j] = 0;
                for (int k = 0; k < 3; ++k)
                    out[i][j] += x[i][k] * y[k][j];
            }
    }

    static void apply(double const x[3][3], Vec3 v, double out[3])
    {
        double in[3] = {v.x, v.y, v.z};
        for (int i = 0; i < 3; ++i)
            out[i] = x[i][0] * in[0] + x[i][1] * in[1] + x[i][2] * in[2];
    }

    //! Pixel coordinates for an orthographic frame of side `frame` mm.
    std::pair<double, double> pixel(Vec3 p, double frame, int w, int h) const
    {
        double c[3];
        apply(m, p, c);
        double s = frame / std::min(w, h);
        return {w / 2.0 + c[0] / s, h / 2.0 - c[1] / s};
    }
};

std::size_t count_substr(std::string const& text, std::string const& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++n;
    return n;
}
}  // namespace

//---------------------------------------------------------------------------//
TEST(Painter, WireframeBoxHasTwelveLines)
{
    auto s = volume_scene(single_box(10, 20, 30), "Box");
    ViewParameters view;
    view.set_viewpoint_theta_phi(60 * deg, 30 * deg);
    auto p = paint(s, view);
    EXPECT_EQ(std::count_if(p.items().begin(), p.items().end(),
                            [](PaintItem const& i) { return i.kind == PaintKind::line; }),
              12);
    std::ostringstream svg;
    write_svg(svg, p);
    EXPECT_EQ(count_substr(svg.str(), "<line") + count_substr(svg.str(), "<polyline"), 12u);
}

TEST(Painter, ThetaPhiProjectionMatchesOracle)
{
    double hx = 10, hy = 20, hz = 30;
    auto s = volume_scene(single_box(hx, hy, hz), "Box");
    ViewParameters view;
    view.set_viewpoint_theta_phi(120 * deg, 150 * deg);
    view.window.width = 800;
    view.window.height = 600;
    auto p = paint(s, view);

    double radius = std::sqrt(hx * hx + hy * hy + hz * hz);
    ProjectionOracle oracle(120 * deg, 150 * deg, {0, 1, 0});
    std::vector<std::pair<double, double>> corners;
    for (int i = 0; i < 8; ++i)
    {
        Vec3 c{(i & 1) ? hx : -hx, (i & 2) ? hy : -hy, (i & 4) ? hz : -hz};
        corners.push_back(oracle.pixel(c, 2 * radius, 800, 600));
    }
    int matched = 0;
    for (auto const& item : p.items())
    {
        for (auto const& pt : item.points)
        {
            double best = 1e300;
            for (auto const& c : corners)
                best = std::min(best, std::hypot(pt.x - c.first, pt.y - c.second));
            EXPECT_LT(best, 1e-6);
            ++matched;
        }
    }
    EXPECT_EQ(matched, 24);
}

TEST(Painter, ViewpointThetaPhiVector)
{
    ViewParameters v;
    v.set_viewpoint_theta_phi(120 * deg, 150 * deg);
    EXPECT_NEAR(norm(v.viewpoint), 1, 1e-12);
    EXPECT_NEAR(v.viewpoint.x, std::sin(120 * deg) * std::cos(150 * deg), 1e-12);
    EXPECT_NEAR(v.viewpoint.y, std::sin(120 * deg) * std::sin(150 * deg), 1e-12);
    EXPECT_NEAR(v.viewpoint.z, std::cos(120 * deg), 1e-12);
    ViewParameters a;
    a.set_viewpoint_theta_phi(90 * deg, 0);
    EXPECT_GT(a.viewpoint.x, 0.999);
}

TEST(Painter, LambertSign)
{
    Vec3 light{-1, 0, 0};
    EXPECT_GT(lambert({1, 0, 0}, light), lambert({-1, 0, 0}, light));
    EXPECT_DOUBLE_EQ(lambert({1, 0, 0}, light), 1.0);
    EXPECT_DOUBLE_EQ(lambert({-1, 0, 0}, light), 0.2);

    // Opaque back faces are culled; look at each side in turn
    auto s = volume_scene(single_box(10, 10, 10), "Box");
    ViewParameters view;
    view.style = DrawingStyle::surface;
    view.lights = light;
    auto shades_from = [&](Vec3 viewpoint) {
        view.viewpoint = normalized(viewpoint);
        std::vector<double> out;
        auto p = paint(s, view);
        for (auto const& item : p.items())
            if (item.kind == PaintKind::polygon)
                out.push_back(item.colour.red());
        return out;
    };
    auto plus_side = shades_from({1, 0.4, 0.3});
    auto minus_side = shades_from({-1, 0.4, 0.3});
    ASSERT_EQ(plus_side.size(), 3u);
    ASSERT_EQ(minus_side.size(), 3u);
    EXPECT_EQ(std::count(plus_side.begin(), plus_side.end(), 1.0), 1);
    EXPECT_EQ(std::count(plus_side.begin(), plus_side.end(), 0.2), 2);
    EXPECT_EQ(std::count(minus_side.begin(), minus_side.end(), 0.2), 3);
}

TEST(Painter, FacesSortedFarToNear)
{
    auto det = make_b1_detector();
    auto s = volume_scene(det);
    ViewParameters view;
    view.style = DrawingStyle::surface;
    view.set_viewpoint_theta_phi(70 * deg, 20 * deg);
    auto p = paint(s, view);
    double last = -1e300;
    for (auto const& item : p.items())
    {
        if (item.two_d || item.kind != PaintKind::polygon)
            continue;
        EXPECT_GE(item.depth, last);
        last = item.depth;
    }
}

TEST(Painter, AuxiliaryEdgesOnlyWhenRequested)
{
    auto mat = make_material("m", 1 * g_per_cm3, MaterialState::solid);
    auto lv = std::make_shared<LogicalVolume>("T", make_tube("T", 0, 10, 10), mat);
    auto det = std::make_shared<Detector>(std::make_shared<PhysicalVolume>("T", lv));
    auto s = volume_scene(det, "T");
    ViewParameters view;
    view.set_viewpoint_theta_phi(60 * deg, 10 * deg);
    auto plain = paint(s, view);
    view.auxiliary_edges = true;
    auto aux = paint(s, view);
    Mesh m = tessellate(*make_tube("T", 0, 10, 10), view.segments_per_circle);
    EXPECT_EQ(plain.items().size(), m.count_edges(EdgeKind::real));
    EXPECT_EQ(aux.items().size(), m.edges.size());
}

TEST(Painter, Deterministic)
{
    auto s = volume_scene(make_b1_detector());
    ViewParameters view;
    view.style = DrawingStyle::surface;
    std::ostringstream a, b;
    write_svg(a, paint(s, view));
    write_svg(b, paint(s, view));
    EXPECT_EQ(a.str(), b.str());
}

TEST(Painter, TwoDimensionalTextIgnoresViewpoint)
{
    Scene s = volume_scene(make_b1_detector());
    s.add_model(Text2DModel{0, -0.9, 24, 0, 0, "exampleB1"});
    auto find_text = [](PainterSink const& p) {
        for (auto const& i : p.items())
            if (i.kind == PaintKind::text && i.text == "exampleB1")
                return i.points.at(0);
        return Vec3{-1, -1, -1};
    };
    ViewParameters v1;
    ViewParameters v2;
    v2.set_viewpoint_theta_phi(120 * deg, 150 * deg);
    Vec3 a = find_text(paint(s, v1));
    Vec3 b = find_text(paint(s, v2));
    EXPECT_EQ(a, b);
    EXPECT_NEAR(a.x, 300, 1e-9);
    EXPECT_NEAR(a.y, 0.5 * 600 * 1.9, 1e-9);
}

TEST(VectorWriters, SvgAndEpsShareGeometry)
{
    Scene s = volume_scene(make_b1_detector());
    s.add_model(FrameModel{Colour{1, 0, 0}, 1});
    ViewParameters view;
    view.style = DrawingStyle::surface;
    auto p = paint(s, view);
    std::ostringstream svg, eps;
    write_svg(svg, p);
    write_eps(eps, p);
    EXPECT_EQ(svg.str().rfind("<svg", 0) == 0 || svg.str().find("<svg") != std::string::npos, true);
    EXPECT_EQ(eps.str().rfind("%!PS-Adobe-3.0 EPSF-3.0", 0), 0u);
    EXPECT_NE(eps.str().find("%%BoundingBox:"), std::string::npos);
    std::size_t polygons = std::count_if(p.items().begin(), p.items().end(), [](PaintItem const& i) {
        return i.kind == PaintKind::polygon;
    });
    EXPECT_EQ(count_substr(svg.str(), "<polygon"), polygons);
    // One more fill for the background
    EXPECT_EQ(count_substr(eps.str(), "closepath fill\n"), polygons + 1);
}

//---------------------------------------------------------------------------//
namespace
{
std::shared_ptr<Detector> sphere_in_world(double r, double world_half)
{
    auto mat = make_material("m", 1 * g_per_cm3, MaterialState::solid);
    auto world = std::make_shared<LogicalVolume>(
        "World", make_box("World", world_half, world_half, world_half), mat);
    auto ball = std::make_shared<LogicalVolume>("Ball", make_sphere("Ball", 0, r), mat);
    world->add_daughter(std::make_shared<PhysicalVolume>("Ball", ball));
    auto det = std::make_shared<Detector>(std::make_shared<PhysicalVolume>("World", world));
    det->set_logical_vis("World", 0, VisPatch{.visible = false});
    return det;
}

Image ray_trace(Scene const& s, ViewParameters const& view, int threads)
{
    RayTracerSink rt(threads);
    TraversalContext ctx;
    ctx.view = view;
    traverse(s, rt, ctx);
    return rt.image();
}
}  // namespace

TEST(RayTracer, SphereCentreAndCorner)
{
    auto s = volume_scene(sphere_in_world(50, 100));
    ViewParameters view;
    view.window.width = 201;
    view.window.height = 201;
    Image img = ray_trace(s, view, 1);
    ASSERT_EQ(img.width, 201);
    double shade = std::max(0.2, 1 / std::sqrt(3.0));
    auto centre = img.at(100, 100);
    for (auto c : centre)
        EXPECT_NEAR(c, 255 * shade, 0.51);
    auto corner = img.at(0, 0);
    for (auto c : corner)
        EXPECT_EQ(c, 255);
}

TEST(RayTracer, SphereSilhouetteArea)
{
    double r = 50, half = 100;
    auto s = volume_scene(sphere_in_world(r, half));
    ViewParameters view;
    Image img = ray_trace(s, view, 0);
    std::size_t covered = 0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            covered += img.at(x, y) != std::array<std::uint8_t, 3>{255, 255, 255};
    double frame = 2 * half * std::sqrt(3.0);
    double expected = pi * r * r / (frame * frame);
    double measured = double(covered) / (img.width * img.height);
    EXPECT_NEAR(measured / expected, 1, 0.01);
}

TEST(RayTracer, ThreadCountDoesNotChangeBytes)
{
    auto s = volume_scene(make_b1_detector());
    ViewParameters view;
    view.window.width = 160;
    view.window.height = 120;
    view.set_viewpoint_theta_phi(70 * deg, 20 * deg);
    std::ostringstream a, b;
    write_ppm(a, ray_trace(s, view, 2));
    write_ppm(b, ray_trace(s, view, 8));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().rfind("P6\n160 120\n255\n", 0), 0u);
}

TEST(RayTracer, ContributorsMatchPainter)
{
    auto mat = make_material("m", 1 * g_per_cm3, MaterialState::solid);
    auto world = std::make_shared<LogicalVolume>("World", make_box("World", 100, 100, 100), mat);
    std::vector<Colour> colours{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
    {
        auto lv = std::make_shared<LogicalVolume>("B" + std::to_string(i),
                                                  make_box("b", 10, 10, 10), mat);
        lv->vis().colour = colours[i];
        lv->vis().visible = i != 2;
        world->add_daughter(std::make_shared<PhysicalVolume>(
            "B" + std::to_string(i), lv, Transform(Vec3{-50.0 + 50 * i, 0, 0})));
    }
    auto det = std::make_shared<Detector>(std::make_shared<PhysicalVolume>("World", world));
    det->set_logical_vis("World", 0, VisPatch{.visible = false});
    auto s = volume_scene(det);
    ViewParameters view;
    view.style = DrawingStyle::surface;
    view.window.width = 120;
    view.window.height = 120;

    auto channel_of = [](double r, double g, double b) {
        if (r > g && r > b)
            return 0;
        if (g > r && g > b)
            return 1;
        return 2;
    };
    std::set<int> traced;
    Image img = ray_trace(s, view, 1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
        {
            auto px = img.at(x, y);
            if (px != std::array<std::uint8_t, 3>{255, 255, 255})
                traced.insert(channel_of(px[0], px[1], px[2]));
        }
    std::set<int> painted;
    auto painter = paint(s, view);
    for (auto const& i : painter.items())
        if (i.kind == PaintKind::polygon)
            painted.insert(channel_of(i.colour.red(), i.colour.green(), i.colour.blue()));
    EXPECT_EQ(traced, (std::set<int>{0, 1}));
    EXPECT_EQ(traced, painted);
}

//---------------------------------------------------------------------------//
TEST(SceneExport, CountsAndAttributes)
{
    Scene s = volume_scene(make_b1_detector());
    s.add_model(TrajectoriesModel{});
    s.add_model(HitsModel{});
    auto ev = generate_toy_event(3, 7, 1.0, 0);
    SceneExportSink sink("2026-10-18T00:00:00");
    TraversalContext ctx;
    ctx.events = {&ev};
    traverse(s, sink, ctx);
    auto const& doc = sink.document();
    EXPECT_EQ(doc.header.schema, "multivis-scene/1");
    EXPECT_EQ(doc.count("Geometry"), 4u);
    EXPECT_EQ(doc.count("Trajectory"), ev.trajectories.size());
    EXPECT_EQ(doc.count("Hit"), ev.hits.size());
    EXPECT_EQ(doc.count("Event"), 1u);
    for (auto const& inst : doc.instances)
    {
        if (inst.type != "Geometry")
            continue;
        for (char const* key : {"Density", "Material", "PVPath"})
            EXPECT_TRUE(find_value(inst.attributes, key)) << key;
        EXPECT_EQ(inst.kind, PayloadKind::mesh);
    }
    EXPECT_NO_THROW(validate(doc));
}

TEST(SceneExport, CanonicalRoundTrip)
{
    Scene s = volume_scene(make_b1_detector());
    s.add_model(TrajectoriesModel{});
    s.add_model(HitsModel{});
    s.add_model(Text2DModel{0, -0.9, 24, 0, 0, "exampleB1"});
    s.add_model(AxesModel{});
    auto ev = generate_toy_event(8, 5, 1.0, 3);
    SceneExportSink sink("t");
    TraversalContext ctx;
    ctx.events = {&ev};
    traverse(s, sink, ctx);
    std::string first = to_json(sink.document());
    std::string second = to_json(scene_from_json(first));
    EXPECT_EQ(first, second);
}

TEST(SceneExport, RejectsBrokenDocuments)
{
    EXPECT_THROW(scene_from_json("{}"), SceneFormatError);
    EXPECT_THROW(scene_from_json("not json"), SceneFormatError);
    Scene s = volume_scene(make_b1_detector());
    SceneExportSink sink("t");
    traverse(s, sink, {});
    SceneDocument doc = sink.document();
    doc.instances.front().type = "Unknown";
    EXPECT_THROW(validate(doc), SceneFormatError);
    doc = sink.document();
    doc.instances.front().attributes.push_back({"NoSuchKey", "x", {}});
    EXPECT_THROW(validate(doc), SceneFormatError);
}

//---------------------------------------------------------------------------//
TEST(AsciiTree, ExampleDetectorLines)
{
    std::string text = ascii_tree_render(*make_b1_detector(), 15);
    EXPECT_NE(text.find("\"Shape1\":0 / \"Shape1\" / \"Shape1\"(Cone), 175.929 cm3, 1.127 g/cm3 "
                        "(G4_A-150_TISSUE), 175.929 cm3, 198.272 g"),
              std::string::npos)
        << text;
    EXPECT_NE(text.find("Overall volume of \"World\":0, is 20736 cm3 and the daughter-included "
                        "mass to unlimited depth is 12.8285 kg"),
              std::string::npos)
        << text;
}

TEST(AsciiTree, MassesMatchComputation)
{
    auto det = make_b1_detector();
    std::string text = ascii_tree_render(*det, 15);
    auto root = compute_masses(*det->world(), unlimited_depth);
    std::function<void(MassNode const&)> check = [&](MassNode const& n) {
        EXPECT_NE(text.find(best_unit(n.mass, UnitCategory::mass)), std::string::npos);
        EXPECT_NE(text.find(best_unit(n.ds_volume, UnitCategory::volume)), std::string::npos);
        for (auto const& d : n.daughters)
            check(d);
    };
    check(root);
}

TEST(AsciiTree, VerbosityZeroNamesOnly)
{
    std::string text = ascii_tree_render(*make_b1_detector(), 0);
    EXPECT_NE(text.find("\"World\":0\n"), std::string::npos);
    EXPECT_NE(text.find("\n  \"Envelope\":0\n"), std::string::npos);
    EXPECT_NE(text.find("\n    \"Shape2\":0\n"), std::string::npos);
    EXPECT_EQ(text.find("cm3"), std::string::npos);
}

TEST(AsciiTree, ReplicaCollapsing)
{
    auto det = make_replica_detector(5);
    EXPECT_EQ(count_substr(ascii_tree_render(*det, 9), "\"Slice\":"), 1u);
    EXPECT_EQ(count_substr(ascii_tree_render(*det, 10), "\"Slice\":"), 5u);
}
