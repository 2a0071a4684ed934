#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "multivis/example_detector.hpp"
#include "multivis/kernel.hpp"
#include "multivis/shell.hpp"
#include "temp_dir.hpp"

using namespace multivis;
using multivis::test::TempDir;

namespace
{
struct ShellSession
{
    std::ostringstream out;
    TempDir dir{"shell"};
    VisManager vis{out};
    Shell shell{vis, out};

    ShellSession()
    {
        vis.register_builtin_systems();
        vis.set_output_directory(dir.path());
        vis.set_clock([] { return std::string("2026-10-18 12:00:00"); });
        vis.set_render_threads(1);
        vis.set_detector(make_b1_detector());
    }

    CommandResult run(std::string_view line) { return shell.execute(line); }

    std::filesystem::path write(std::string const& name, std::string const& text)
    {
        auto p = dir / name;
        std::ofstream(p) << text;
        return p;
    }
};

std::string const startup_macro = MULTIVIS_TEST_DATA_DIR "/vis.mac";
}  // namespace

//---------------------------------------------------------------------------//
TEST(Tokenize, BasicsAndComments)
{
    auto cl = tokenize("  /vis/open SVG 600x600-0+0  # trailing");
    ASSERT_TRUE(cl);
    EXPECT_EQ(cl->path, "/vis/open");
    EXPECT_EQ(cl->tokens, (std::vector<std::string>{"SVG", "600x600-0+0"}));
    EXPECT_FALSE(tokenize("# only a comment"));
    EXPECT_FALSE(tokenize("   "));
    auto q = tokenize("/vis/scene/add/text2D 0 0 12 ! ! \"a # b\"");
    ASSERT_TRUE(q);
    EXPECT_EQ(q->tokens.back(), "a # b");
}

TEST(Tokenize, RoundTripProperty)
{
    std::mt19937_64 rng(3);
    std::string const alphabet = "abcXYZ019-_.+! #\"\t";
    for (int trial = 0; trial < 2000; ++trial)
    {
        CommandLine cl;
        cl.path = "/vis/x" + std::to_string(trial % 7);
        int n = static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i)
        {
            std::string tok;
            int len = 1 + static_cast<int>(rng() % 6);
            for (int k = 0; k < len; ++k)
                tok += alphabet[rng() % alphabet.size()];
            if (tok.find('"') != std::string::npos)
                continue;
            cl.tokens.push_back(tok);
        }
        auto back = tokenize(to_string(cl));
        ASSERT_TRUE(back) << to_string(cl);
        EXPECT_EQ(*back, cl) << to_string(cl);
    }
}

//---------------------------------------------------------------------------//
TEST(Commands, ViewpointThetaPhiSetsViewpoint)
{
    ShellSession s;
    ASSERT_EQ(s.run("/vis/open SVG 600x600-0+0").status, Status::success);
    ASSERT_EQ(s.run("/vis/viewer/set/viewpointThetaPhi 120 150").status, Status::success);
    double th = 120 * M_PI / 180;
    double ph = 150 * M_PI / 180;
    Vec3 expected{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
    Vec3 got = s.vis.current_viewer().view.viewpoint;
    EXPECT_NEAR(norm(got - expected), 0, 1e-12);
}

TEST(Commands, ShapeLabelTextModel)
{
    ShellSession s;
    s.run("/vis/open SVG 600x600-0+0");
    s.run("/vis/drawVolume");
    ASSERT_EQ(s.run("/vis/scene/add/text 0 6 -4 cm 18 4 4 Shape1").status, Status::success);
    Text3DModel const* text = nullptr;
    for (auto const& m : s.vis.current_scene().permanent_models())
        if (auto const* t = std::get_if<Text3DModel>(&m))
            text = t;
    ASSERT_TRUE(text);
    EXPECT_NEAR(text->position.x, 0, 1e-12);
    EXPECT_NEAR(text->position.y, 60, 1e-12);
    EXPECT_NEAR(text->position.z, -40, 1e-12);
    EXPECT_EQ(text->size, 18);
    EXPECT_EQ(text->x_offset, 4);
    EXPECT_EQ(text->y_offset, 4);
    EXPECT_EQ(text->text, "Shape1");
}

TEST(Commands, UnitOfWrongCategoryIsError)
{
    ShellSession s;
    s.run("/vis/open SVG 600x600-0+0");
    s.run("/vis/drawVolume");
    auto r = s.run("/vis/scene/add/text 0 6 -4 GeV 18 4 4 Shape1");
    EXPECT_EQ(r.status, Status::error);
    EXPECT_NE(r.message.find("GeV"), std::string::npos);
    EXPECT_EQ(s.shell.error_count(), 1);
}

TEST(Commands, DrawVolumeWithoutViewer)
{
    ShellSession s;
    auto r = s.run("/vis/drawVolume");
    EXPECT_EQ(r.status, Status::error);
    EXPECT_NE(r.message.find("no current viewer"), std::string::npos);
    EXPECT_NE(s.out.str().find("ERROR:"), std::string::npos);
}

TEST(Commands, OmittedValuesRevertToDefaults)
{
    ShellSession s;
    s.run("/vis/set/colour red");
    s.run("/vis/set/lineWidth 2");
    EXPECT_EQ(s.vis.draw_defaults().colour, (Colour{1, 0, 0}));
    EXPECT_EQ(s.vis.draw_defaults().line_width, 2);
    EXPECT_EQ(s.run("/vis/set/colour").status, Status::success);
    EXPECT_EQ(s.run("/vis/set/lineWidth").status, Status::success);
    EXPECT_EQ(s.vis.draw_defaults().colour, Colour::white());
    EXPECT_EQ(s.vis.draw_defaults().line_width, 1);
    s.run("/vis/set/textColour green");
    s.run("/vis/set/textColour");
    EXPECT_EQ(s.vis.draw_defaults().text_colour, (Colour{0, 0, 1}));
}

TEST(Commands, ExplicitDefaultMarker)
{
    ShellSession s;
    s.run("/vis/open SVG 600x600-0+0");
    s.run("/vis/drawVolume");
    ASSERT_EQ(s.run("/vis/scene/add/text2D 0 -.9 24 ! ! exampleB1").status, Status::success);
    Text2DModel const* text = nullptr;
    for (auto const& m : s.vis.current_scene().permanent_models())
        if (auto const* t = std::get_if<Text2DModel>(&m))
            text = t;
    ASSERT_TRUE(text);
    EXPECT_EQ(text->x_offset, 0);
    EXPECT_EQ(text->y_offset, 0);
    EXPECT_EQ(text->size, 24);
    EXPECT_EQ(text->text, "exampleB1");
}

TEST(Commands, Verbose)
{
    ShellSession s;
    EXPECT_EQ(s.run("/vis/verbose errors").status, Status::success);
    EXPECT_EQ(s.vis.verbosity(), Verbosity::errors);
    EXPECT_EQ(s.run("/vis/verbose 5").status, Status::success);
    EXPECT_EQ(s.vis.verbosity(), Verbosity::parameters);
    EXPECT_EQ(s.run("/vis/verbose loud").status, Status::error);
    EXPECT_EQ(s.vis.verbosity(), Verbosity::parameters);
}

TEST(Commands, WrongArityAndType)
{
    ShellSession s;
    s.run("/vis/open SVG 600x600-0+0");
    EXPECT_EQ(s.run("/vis/viewer/set/viewpointThetaPhi abc 1").status, Status::error);
    EXPECT_EQ(s.run("/vis/viewer/set/autoRefresh maybe").status, Status::error);
    EXPECT_EQ(s.run("/vis/viewer/set/style wireframe extra tokens here").status, Status::error);
    EXPECT_EQ(s.shell.error_count(), 3);
}

TEST(Commands, UnknownCommandSuggests)
{
    ShellSession s;
    auto r = s.run("/vis/viewr/flush");
    EXPECT_EQ(r.status, Status::error);
    EXPECT_NE(r.message.find("/vis/viewer/flush"), std::string::npos);
}

//---------------------------------------------------------------------------//
TEST(Help, ListsDirectory)
{
    ShellSession s;
    ASSERT_EQ(s.run("help /vis/viewer/set").status, Status::success);
    EXPECT_NE(s.out.str().find("viewpointThetaPhi"), std::string::npos);
    EXPECT_NE(s.out.str().find("autoRefresh"), std::string::npos);
}

TEST(Help, UnknownSuggests)
{
    ShellSession s;
    auto r = s.run("help /vis/viewer/sett");
    EXPECT_EQ(r.status, Status::error);
    EXPECT_NE(r.message.find("did you mean"), std::string::npos);
}

//---------------------------------------------------------------------------//
TEST(Macro, SelfRecursionStopsAtDepthLimit)
{
    ShellSession s;
    auto p = s.write("self.mac", "");
    std::ofstream(p) << "/control/execute " << p.string() << "\n";
    auto r = s.run("/control/execute " + p.string());
    EXPECT_EQ(r.status, Status::error);
    EXPECT_NE(r.message.find("nesting deeper than 8"), std::string::npos);
    EXPECT_EQ(s.shell.error_count(), 1);
}

TEST(Macro, ErrorReportsFileLineAndKeepsEarlierLines)
{
    ShellSession s;
    auto p = s.write("bad.mac",
                     "/vis/open SVG 600x600-0+0\n"
                     "# comment\n"
                     "/vis/viewer/set/autoRefresh false\n"
                     "/vis/viewer/set/style nonsense\n"
                     "/vis/viewer/set/auxiliaryEdge true\n");
    auto r = s.shell.execute_macro(p);
    EXPECT_EQ(r.status, Status::error);
    EXPECT_NE(r.message.find("bad.mac:4:"), std::string::npos) << r.message;
    ASSERT_TRUE(s.vis.has_current_viewer());
    EXPECT_FALSE(s.vis.current_viewer().auto_refresh);
    EXPECT_FALSE(s.vis.current_viewer().view.auxiliary_edges);
}

TEST(Macro, MissingFile)
{
    ShellSession s;
    EXPECT_EQ(s.run("/control/execute /nonexistent/x.mac").status, Status::error);
}

TEST(Macro, SameMacroSameState)
{
    ShellSession a;
    ShellSession b;
    a.run("/control/execute " + startup_macro);
    b.run("/control/execute " + startup_macro);
    EXPECT_EQ(a.vis.state_digest(), b.vis.state_digest());
    a.run("/vis/viewer/set/viewpointThetaPhi 10 10");
    EXPECT_NE(a.vis.state_digest(), b.vis.state_digest());
}

TEST(Macro, ExampleCorpusRunsClean)
{
    ShellSession s;
    auto r = s.run("/control/execute " + startup_macro);
    EXPECT_EQ(r.status, Status::success) << r.message;
    EXPECT_EQ(s.shell.error_count(), 0) << s.out.str();
    EXPECT_GE(s.dir.file_count(), 1u);
    EXPECT_EQ(s.run("/run/beamOn 3").status, Status::success);
    EXPECT_EQ(s.shell.error_count(), 0) << s.out.str();
}

//---------------------------------------------------------------------------//
TEST(Repl, PromptAndExit)
{
    ShellSession s;
    std::istringstream in("/vis/verbose errors\nexit\n/vis/verbose all\n");
    s.shell.repl(in, true);
    EXPECT_EQ(s.vis.verbosity(), Verbosity::errors);
    EXPECT_NE(s.out.str().find("vis> "), std::string::npos);
}
