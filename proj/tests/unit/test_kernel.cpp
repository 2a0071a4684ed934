#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "multivis/drivers/protocol.hpp"
#include "multivis/example_detector.hpp"
#include "multivis/kernel.hpp"
#include "temp_dir.hpp"

using namespace multivis;
using multivis::test::TempDir;

namespace
{
struct Session
{
    std::ostringstream out;
    TempDir dir{"kernel"};
    VisManager vis{out};

    Session()
    {
        vis.register_builtin_systems();
        vis.set_output_directory(dir.path());
        vis.set_clock([] { return std::string("2026-10-18 12:00:00"); });
        vis.set_detector(make_b1_detector());
    }

    //! Viewer on the B1 world with trajectories and hits.
    void standard_scene(std::string const& system = "SVG")
    {
        vis.open_viewer(system, "600x600-0+0");
        vis.set_auto_refresh(true);
        vis.draw_volume("", unlimited_depth);
        vis.add_model(TrajectoriesModel{});
        vis.add_model(HitsModel{});
    }
};

void check_registry(VisManager const& vis)
{
    std::set<std::string> scenes;
    for (auto const& s : vis.scenes())
        EXPECT_TRUE(scenes.insert(s.name()).second) << "duplicate scene " << s.name();
    std::set<std::string> handlers;
    for (auto const& h : vis.handlers())
    {
        handlers.insert(h.name);
        EXPECT_TRUE(scenes.count(h.scene)) << h.name << " -> " << h.scene;
    }
    for (auto const& v : vis.viewers())
        EXPECT_TRUE(handlers.count(v.handler)) << v.name;
    EXPECT_EQ(vis.has_current_viewer(), !vis.viewers().empty());
    if (vis.has_current_viewer())
    {
        bool found = false;
        for (auto const& v : vis.viewers())
            found |= &v == &vis.current_viewer();
        EXPECT_TRUE(found);
    }
}
}  // namespace

//---------------------------------------------------------------------------//
TEST(Systems, BuiltinsRegistered)
{
    Session s;
    EXPECT_EQ(s.vis.systems().size(), 4u);
    std::string list = s.vis.list();
    for (char const* nick : {"ATree", "SVG", "RayTracer", "SceneExport"})
        EXPECT_NE(list.find(nick), std::string::npos) << nick;
    EXPECT_THROW(s.vis.register_system(builtin_systems().front()), VisError);
}

TEST(Systems, UnknownNicknameListsRegistered)
{
    Session s;
    try
    {
        s.vis.open_viewer("OGL", "600x600-0+0");
        FAIL();
    }
    catch (VisError const& e)
    {
        std::string msg = e.what();
        EXPECT_NE(msg.find("OGL"), std::string::npos);
        EXPECT_NE(msg.find("ATree"), std::string::npos);
        EXPECT_NE(msg.find("SceneExport"), std::string::npos);
    }
    EXPECT_FALSE(s.vis.has_current_viewer());
}

TEST(Viewers, OpenNamesAndGeometry)
{
    Session s;
    EXPECT_EQ(s.vis.open_viewer("SVG", "600x600-0+0"), "viewer-0 (SVG)");
    auto const& w = s.vis.current_viewer().view.window;
    EXPECT_EQ(w.width, 600);
    EXPECT_EQ(w.height, 600);
    EXPECT_TRUE(w.has_position);
    EXPECT_TRUE(w.from_right);
    EXPECT_FALSE(w.from_bottom);
    // Only retained systems start with auto refresh on
    EXPECT_FALSE(s.vis.current_viewer().auto_refresh);
    EXPECT_EQ(s.vis.open_viewer("ATree", ""), "viewer-1 (ATree)");
    EXPECT_EQ(s.vis.current_viewer().name, "viewer-1 (ATree)");
    EXPECT_THROW(s.vis.open_viewer("SVG", "600by600"), VisError);
    EXPECT_EQ(s.vis.viewers().size(), 2u);
    s.vis.open_viewer("SceneExport", "");
    EXPECT_TRUE(s.vis.current_viewer().auto_refresh);
    check_registry(s.vis);
}

TEST(Viewers, FailedOperationsLeaveStateUnchanged)
{
    Session s;
    s.standard_scene();
    std::string before = s.vis.state_dump();
    EXPECT_THROW(s.vis.open_viewer("OGL", ""), VisError);
    EXPECT_THROW(s.vis.select_viewer("viewer-9"), VisError);
    EXPECT_THROW(s.vis.attach_scene("nope"), VisError);
    EXPECT_THROW(s.vis.draw_volume("NoSuchVolume", 0), VisError);
    EXPECT_THROW(s.vis.create_scene("scene-0"), VisError);
    ViewParameters bad = s.vis.current_viewer().view;
    bad.zoom = 0;
    EXPECT_THROW(s.vis.set_view(bad), VisError);
    EXPECT_EQ(s.vis.state_dump(), before);
}

TEST(Viewers, RegistryInvariantUnderRandomOperations)
{
    std::mt19937_64 rng(2024);
    std::vector<std::string> systems{"ATree", "SVG", "RayTracer", "SceneExport", "OGL"};
    for (int trial = 0; trial < 20; ++trial)
    {
        Session s;
        s.vis.set_render_threads(1);
        for (int step = 0; step < 25; ++step)
        {
            try
            {
                switch (rng() % 6)
                {
                    case 0:
                        s.vis.create_scene(rng() % 2 ? "" : "named");
                        break;
                    case 1:
                        s.vis.open_viewer(systems[rng() % systems.size()], "64x48");
                        break;
                    case 2:
                        s.vis.select_viewer("viewer-" + std::to_string(rng() % 4));
                        break;
                    case 3:
                        s.vis.attach_scene("scene-" + std::to_string(rng() % 3));
                        break;
                    case 4:
                        s.vis.draw_volume(rng() % 2 ? "Envelope" : "", unlimited_depth);
                        break;
                    case 5:
                        s.vis.flush();
                        break;
                }
            }
            catch (VisError const&)
            {
            }
            check_registry(s.vis);
        }
    }
}

TEST(Viewers, DrawVolumeNeedsViewer)
{
    Session s;
    EXPECT_THROW(s.vis.draw_volume("", unlimited_depth), VisError);
    EXPECT_TRUE(s.vis.scenes().empty());
}

//---------------------------------------------------------------------------//
TEST(Refresh, AutoRefreshOffDefersOutput)
{
    Session s;
    s.standard_scene();
    int seq = s.vis.current_viewer().sequence;
    s.vis.set_auto_refresh(false);
    ViewParameters v = s.vis.current_viewer().view;
    v.set_viewpoint_theta_phi(1.0, 0.5);
    s.vis.set_view(v);
    s.vis.add_model(AxesModel{});
    EXPECT_EQ(s.vis.current_viewer().sequence, seq);
    s.vis.flush();
    EXPECT_EQ(s.vis.current_viewer().sequence, seq + 1);
}

TEST(Refresh, SceneChangeRebuildsAllViewersOfScene)
{
    Session s;
    s.standard_scene();
    s.vis.open_viewer("ATree", "");
    s.vis.set_auto_refresh(true);
    ASSERT_EQ(s.vis.handler_of(s.vis.viewers()[1]).scene,
              s.vis.handler_of(s.vis.viewers()[0]).scene);
    int a = s.vis.viewers()[0].sequence;
    int b = s.vis.viewers()[1].sequence;
    s.vis.add_model(AxesModel{});
    EXPECT_EQ(s.vis.viewers()[0].sequence, a + 1);
    EXPECT_EQ(s.vis.viewers()[1].sequence, b + 1);
}

TEST(Refresh, ViewChangeReRollsGeometry)
{
    Session s;
    s.standard_scene();
    RecordingSink rec;
    s.vis.set_tap(&rec);
    ViewParameters v = s.vis.current_viewer().view;
    v.set_viewpoint_theta_phi(1.0, 0.5);
    s.vis.set_view(v);
    EXPECT_EQ(rec.count("add_solid"), 4u);
    rec.clear();
    s.vis.flush();
    EXPECT_EQ(rec.count("add_solid"), 4u);
    s.vis.set_tap(nullptr);
}

//---------------------------------------------------------------------------//
TEST(EndOfEvent, AccumulateKeepsAllEvents)
{
    Session s;
    s.standard_scene();
    s.vis.set_end_of_event_action(EndOfEventAction::accumulate);
    RecordingSink rec;
    s.vis.set_tap(&rec);
    s.vis.beam_on(10);
    std::size_t expected = 0;
    for (auto const& e : s.vis.event_store().events())
        expected += e.trajectories.size();
    EXPECT_EQ(s.vis.event_store().size(), 10u);
    rec.clear();
    s.vis.flush();
    EXPECT_EQ(rec.count("add_trajectory"), expected);
    s.vis.set_tap(nullptr);
}

TEST(EndOfEvent, RefreshShowsLastEventOnly)
{
    Session s;
    s.standard_scene();
    RecordingSink rec;
    s.vis.set_tap(&rec);
    s.vis.beam_on(10);
    auto const* last = s.vis.event_store().latest();
    ASSERT_NE(last, nullptr);
    EXPECT_EQ(last->event_id, 9);
    rec.clear();
    s.vis.flush();
    EXPECT_EQ(rec.count("add_trajectory"), last->trajectories.size());
    for (auto const& line : rec.transient_calls())
        EXPECT_NE(line.find("EventID=9"), std::string::npos);
    s.vis.set_tap(nullptr);
}

TEST(EndOfEvent, SwitchViewerReproducesTransients)
{
    Session s;
    s.standard_scene("SVG");
    s.vis.set_end_of_event_action(EndOfEventAction::accumulate);
    s.vis.beam_on(5);
    RecordingSink rec;
    s.vis.set_tap(&rec);
    s.vis.flush();
    auto original = rec.transient_calls();
    ASSERT_FALSE(original.empty());

    for (char const* nick : {"SceneExport", "ATree", "RayTracer"})
    {
        s.vis.open_viewer(nick, "64x64");
        rec.clear();
        s.vis.flush();
        EXPECT_EQ(rec.transient_calls(), original) << nick;
    }
    s.vis.select_viewer("viewer-0");
    rec.clear();
    s.vis.flush();
    EXPECT_EQ(rec.transient_calls(), original);
    s.vis.set_tap(nullptr);
}

TEST(EndOfEvent, StoreCapacityBoundsRecovery)
{
    Session s;
    s.standard_scene();
    s.vis.set_end_of_event_action(EndOfEventAction::accumulate);
    s.vis.event_store().set_capacity(3);
    s.vis.beam_on(6);
    EXPECT_EQ(s.vis.event_store().size(), 3u);
    EXPECT_EQ(s.vis.event_store().events().front().event_id, 3);
}

//---------------------------------------------------------------------------//
TEST(DrawFacade, NoViewerIsSilentNoOp)
{
    Session s;
    EXPECT_NO_THROW(s.vis.draw(Circle{{0, 0, 0}, 5}));
    EXPECT_NO_THROW(s.vis.draw_2d(Text{{0, -0.9, 0}, "hello"}));
    EXPECT_FALSE(s.vis.has_current_viewer());
}

TEST(DrawFacade, UserTransientsSurviveFlushNotRebuild)
{
    Session s;
    s.standard_scene();
    RecordingSink rec;
    s.vis.set_tap(&rec);
    rec.clear();
    s.vis.draw(Circle{{0, 0, 0}, 5});
    s.vis.draw_2d(Text{{0, -0.9, 0}, "hello"});
    s.vis.flush();
    EXPECT_EQ(rec.count("add_primitive") >= 2, true);
    auto has = [&](std::string const& what) {
        for (auto const& c : rec.calls())
            if (c.find(what) != std::string::npos)
                return true;
        return false;
    };
    EXPECT_TRUE(has("\"hello\""));
    rec.clear();
    s.vis.rebuild();
    EXPECT_FALSE(has("\"hello\""));
    EXPECT_EQ(s.vis.current_viewer().user_transients.size(), 0u);
    s.vis.set_tap(nullptr);
}

TEST(DrawFacade, UserVisActionPersists)
{
    Session s;
    s.standard_scene();
    int calls = 0;
    s.vis.register_user_vis_action(
        "overlay",
        [&calls](VisActionCanvas& c) {
            ++calls;
            c.draw(make_box("box", 10, 10, 10), VisAttributes{});
            c.draw(make_subtraction("sub", make_box("a", 20, 20, 20), make_tube("b", 0, 5, 30)),
                   VisAttributes{}, Transform(Vec3{0, 0, 50}));
        },
        BBox{{-20, -20, -20}, {20, 20, 70}});
    EXPECT_THROW(s.vis.register_user_vis_action("overlay", [](VisActionCanvas&) {}), VisError);

    RecordingSink rec;
    s.vis.set_tap(&rec);
    rec.clear();
    int before = calls;
    s.vis.rebuild();
    auto first = rec.calls();
    rec.clear();
    s.vis.rebuild();
    EXPECT_EQ(calls, before + 2);
    EXPECT_EQ(rec.calls(), first);
    EXPECT_EQ(rec.count("add_solid"), 6u);

    ViewParameters v = s.vis.current_viewer().view;
    v.set_viewpoint_theta_phi(1.2, 0.3);
    rec.clear();
    s.vis.set_view(v);
    EXPECT_EQ(rec.count("add_solid"), 6u);

    s.vis.remove_user_vis_action("overlay");
    rec.clear();
    s.vis.rebuild();
    EXPECT_EQ(rec.count("add_solid"), 4u);
    s.vis.set_tap(nullptr);
}

//---------------------------------------------------------------------------//
TEST(Export, FileExtensionsPickFormats)
{
    Session s;
    s.standard_scene();
    s.vis.beam_on(1);
    for (char const* name : {"a.svg", "b.eps", "c.ppm", "d.json", "e.txt"})
    {
        auto path = s.vis.export_view(s.dir / name);
        EXPECT_TRUE(std::filesystem::exists(path)) << name;
        EXPECT_GT(std::filesystem::file_size(path), 0u) << name;
    }
    EXPECT_THROW(s.vis.export_view(s.dir / "f.gif"), VisError);
}

TEST(Models, NamingAndSelection)
{
    Session s;
    EXPECT_EQ(s.vis.next_name("drawByCharge"), "drawByCharge-0");
    auto a = s.vis.create_trajectory_model(DrawByCharge{});
    auto b = s.vis.create_trajectory_model(DrawByParticleID{});
    EXPECT_EQ(a, "drawByCharge-0");
    EXPECT_EQ(b, "drawByParticleID-0");
    EXPECT_EQ(model_name(*s.vis.current_trajectory_model()), b);
    s.vis.select_trajectory_model(a);
    EXPECT_EQ(model_name(*s.vis.current_trajectory_model()), a);
    EXPECT_THROW(s.vis.select_trajectory_model("nope"), VisError);
    EXPECT_EQ(s.vis.create_filter(ParticleFilter{}), "particleFilter-0");
}
