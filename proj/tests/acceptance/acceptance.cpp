//---------------------------------------------------------------------------//
//! \file acceptance.cpp
//! \brief Top-level acceptance checks; one PASS/FAIL line per criterion.
//---------------------------------------------------------------------------//
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "multivis/drivers/ascii_tree.hpp"
#include "multivis/drivers/protocol.hpp"
#include "multivis/drivers/ray_tracer.hpp"
#include "multivis/drivers/scene_export.hpp"
#include "multivis/events.hpp"
#include "multivis/example_detector.hpp"
#include "multivis/kernel.hpp"
#include "multivis/shell.hpp"
#include "multivis/trajectory_style.hpp"
#include "oracles.hpp"
#include "ray_oracle.hpp"
#include "temp_dir.hpp"

using namespace multivis;
using Clock = std::chrono::steady_clock;

namespace
{
struct Outcome
{
    bool pass{true};
    std::string detail;

    void require(bool ok, std::string const& what)
    {
        if (!ok)
        {
            if (pass)
                detail.clear();
            else
                detail += "; ";
            detail += what;
            pass = false;
        }
    }
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t count_substr(std::string const& text, std::string const& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++n;
    return n;
}

std::string read_file(std::filesystem::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Session
{
    std::ostringstream out;
    test::TempDir dir{"accept"};
    VisManager vis{out};

    Session()
    {
        vis.register_builtin_systems();
        vis.set_output_directory(dir.path());
        vis.set_clock([] { return std::string("2026-10-18 12:00:00"); });
        vis.set_render_threads(1);
        vis.set_detector(make_b1_detector());
    }
};

//---------------------------------------------------------------------------//
Outcome ascii_tree_example()
{
    Outcome o;
    auto start = Clock::now();
    std::string text = ascii_tree_render(*make_b1_detector(), 15);
    double t = seconds_since(start);
    std::vector<std::string> lines{
        "\"World\":0 / \"World\" / \"World\"(Box), 20736 cm3, 1.20479 mg/cm3 (G4_AIR), 8736 cm3, 10.525 g",
        "\"Envelope\":0 / \"Envelope\" / \"Envelope\"(Box), 12000 cm3, 1 g/cm3 (G4_WATER), 10888.1 cm3, "
        "10.8881 kg",
        "\"Shape1\":0 / \"Shape1\" / \"Shape1\"(Cone), 175.929 cm3, 1.127 g/cm3 (G4_A-150_TISSUE), "
        "175.929 cm3, 198.272 g",
        "\"Shape2\":0 / \"Shape2\" / \"Shape2\"(Trd), 936 cm3, 1.85 g/cm3 (G4_BONE_COMPACT_ICRU), 936 cm3, "
        "1.7316 kg",
        "Overall volume of \"World\":0, is 20736 cm3 and the daughter-included mass to unlimited depth "
        "is 12.8285 kg"};
    for (auto const& l : lines)
        o.require(text.find(l) != std::string::npos, "missing line: " + l);
    o.require(t < 1.0, "took " + std::to_string(t) + " s");
    if (o.pass)
        o.detail = "5 reference lines matched in " + std::to_string(t) + " s";
    return o;
}

Outcome volume_oracle()
{
    Outcome o;
    auto start = Clock::now();
    test::ShapeSampler sampler(642);
    double worst = 0;
    for (int i = 0; i < 500; ++i)
    {
        auto s = sampler.primitive(i % 5);
        auto est = test::hit_or_miss(*s, 1'000'000, 1000 + i);
        double v = analytic_volume(*s);
        double sigmas = est.std_error > 0 ? std::fabs(v - est.volume) / est.std_error : 0;
        worst = std::max(worst, sigmas);
        o.require(std::fabs(v - est.volume) <= 4 * est.std_error + 1e-9 * v,
                  s->describe() + " analytic " + std::to_string(v) + " mc "
                      + std::to_string(est.volume));
    }
    double t = seconds_since(start);
    o.require(t < 60, "took " + std::to_string(t) + " s");
    if (o.pass)
        o.detail = "500 shapes, worst deviation " + std::to_string(worst) + " sigma, "
                   + std::to_string(t) + " s";
    return o;
}

Outcome ray_oracle()
{
    Outcome o;
    char const* names[] = {"box", "tube", "cone", "trd", "sphere"};
    double worst = 0;
    for (int kind = 0; kind < 5; ++kind)
    {
        test::ShapeSampler sampler(643 + kind, 1, 10);
        auto rep = test::compare_rays(sampler, kind, 10'000, 1e-3, 1e-5);
        worst = std::max(worst, rep.max_error);
        o.require(rep.disagreements == 0, std::string(names[kind]) + ": "
                                              + std::to_string(rep.disagreements)
                                              + " disagreements, first " + rep.first_failure);
    }
    if (o.pass)
    {
        std::ostringstream os;
        os << "5 x 10000 rays agree, max distance error " << worst << " mm";
        o.detail = os.str();
    }
    return o;
}

Outcome startup_macro()
{
    Outcome o;
    Session s;
    Shell shell(s.vis, s.out);
    shell.execute("/control/execute " MULTIVIS_TEST_DATA_DIR "/vis.mac");
    shell.execute("/run/beamOn 10");
    o.require(shell.error_count() == 0, std::to_string(shell.error_count()) + " errors: " + s.out.str());
    if (!s.vis.has_current_viewer())
    {
        o.require(false, "no viewer");
        return o;
    }
    std::size_t expected = 0;
    for (auto const& e : s.vis.event_store().events())
        expected += e.trajectories.size();
    o.require(s.vis.event_store().size() == 10, "store holds "
                                                    + std::to_string(s.vis.event_store().size()));

    RecordingSink rec;
    s.vis.set_tap(&rec);
    shell.execute("/vis/viewer/flush");
    s.vis.set_tap(nullptr);
    o.require(rec.count("add_trajectory") == expected,
              "sink saw " + std::to_string(rec.count("add_trajectory")) + " trajectories, expected "
                  + std::to_string(expected));

    auto const& svg_path = s.vis.current_viewer().last_output;
    o.require(svg_path.extension() == ".svg", "last output " + svg_path.string());
    std::string svg = read_file(svg_path);
    std::size_t geometry = count_substr(svg, "class=\"geometry\"");
    // Depth-sorted segments: one fewer than the step points of each track
    std::size_t points = 0;
    for (auto const& e : s.vis.event_store().events())
        for (auto const& t : e.trajectories)
            points += t.points.size();
    std::size_t markers = count_substr(svg, "class=\"step-point\"");
    std::size_t segments = count_substr(svg, "class=\"trajectory\"");
    std::size_t drawn = markers - segments;
    o.require(geometry > 0, "no geometry in SVG");
    o.require(markers == points, "SVG has " + std::to_string(markers) + " step points, expected "
                                     + std::to_string(points));
    o.require(drawn == expected, "SVG has " + std::to_string(drawn) + " trajectories");
    if (o.pass)
        o.detail = "0 errors, SVG with " + std::to_string(geometry) + " geometry elements and "
                   + std::to_string(drawn) + " trajectories from 10 events";
    return o;
}

Outcome event_store()
{
    Outcome o;
    std::mt19937_64 rng(645);
    int trials = 0;
    for (; trials < 500; ++trials)
    {
        std::size_t cap = trials == 0 ? 100 : 1 + rng() % 150;
        EventStore store(cap);
        int n = static_cast<int>(cap + rng() % 300);
        for (int i = 0; i < n; ++i)
        {
            Event e;
            e.event_id = i;
            store.store(std::move(e));
        }
        bool ok = store.size() == cap;
        int id = n - static_cast<int>(cap);
        for (auto const& e : store.events())
            ok &= e.event_id == id++;
        o.require(ok, "C=" + std::to_string(cap) + " N=" + std::to_string(n));
    }
    o.require(EventStore().capacity() == 100, "default capacity "
                                                  + std::to_string(EventStore().capacity()));
    if (o.pass)
        o.detail = std::to_string(trials) + " random (N, C) cases keep the C newest; default C = 100";
    return o;
}

Outcome driver_equivalence()
{
    Outcome o;
    Session s;
    s.vis.open_viewer("SVG", "400x400");
    s.vis.draw_volume("", unlimited_depth);
    s.vis.add_model(TrajectoriesModel{});
    s.vis.add_model(HitsModel{});
    s.vis.add_model(AxesModel{});
    s.vis.add_model(Text2DModel{0, -0.9, 24, 0, 0, "exampleB1"});
    s.vis.set_end_of_event_action(EndOfEventAction::accumulate);
    s.vis.beam_on(5);

    std::vector<std::string> reference;
    std::vector<std::string> reference_transients;
    for (char const* nick : {"SVG", "SceneExport", "ATree"})
    {
        if (std::string(nick) != "SVG")
            s.vis.open_viewer(nick, "400x400");
        RecordingSink rec;
        ProtocolChecker checker(&rec);
        s.vis.set_tap(&checker);
        try
        {
            s.vis.flush();
        }
        catch (std::exception const& e)
        {
            o.require(false, std::string(nick) + ": " + e.what());
        }
        s.vis.set_tap(nullptr);
        if (reference.empty())
        {
            reference = rec.calls();
            reference_transients = rec.transient_calls();
        }
        else
        {
            o.require(rec.calls() == reference, std::string(nick) + " call sequence differs");
        }
    }
    o.require(!reference_transients.empty(), "no transients recorded");

    s.vis.select_viewer("viewer-0");
    RecordingSink back;
    s.vis.set_tap(&back);
    s.vis.flush();
    s.vis.set_tap(nullptr);
    o.require(back.transient_calls() == reference_transients,
              "switching back to viewer-0 changed the transients");
    if (o.pass)
        o.detail = std::to_string(reference.size()) + " identical calls for SVG, SceneExport, ATree; "
                   + std::to_string(reference_transients.size())
                   + " transients reproduced after switching";
    return o;
}

std::shared_ptr<Detector> sphere_in_world(double r, double world_half)
{
    auto mat = make_material("m", 1 * units::g_per_cm3, MaterialState::solid);
    auto world = std::make_shared<LogicalVolume>(
        "World", make_box("World", world_half, world_half, world_half), mat);
    auto ball = std::make_shared<LogicalVolume>("Ball", make_sphere("Ball", 0, r), mat);
    world->add_daughter(std::make_shared<PhysicalVolume>("Ball", ball));
    auto det = std::make_shared<Detector>(std::make_shared<PhysicalVolume>("World", world));
    det->set_logical_vis("World", 0, VisPatch{.visible = false});
    return det;
}

Image ray_trace(Scene const& scene, ViewParameters const& view, int threads)
{
    RayTracerSink rt(threads);
    TraversalContext ctx;
    ctx.view = view;
    traverse(scene, rt, ctx);
    return rt.image();
}

Outcome ray_tracer()
{
    Outcome o;
    Scene b1("b1");
    b1.add_model(PhysicalVolumeModel{make_b1_detector(), "World", unlimited_depth});
    ViewParameters view;
    view.window.width = 200;
    view.window.height = 150;
    view.set_viewpoint_theta_phi(120 * units::deg, 150 * units::deg);
    std::string bytes[3];
    int threads[3] = {1, 3, 8};
    for (int i = 0; i < 3; ++i)
    {
        std::ostringstream os;
        write_ppm(os, ray_trace(b1, view, threads[i]));
        bytes[i] = os.str();
    }
    o.require(bytes[0] == bytes[1] && bytes[0] == bytes[2], "bytes differ across thread counts");

    double r = 50, half = 100;
    Scene ball("ball");
    ball.add_model(PhysicalVolumeModel{sphere_in_world(r, half), "World", unlimited_depth});
    Image img = ray_trace(ball, ViewParameters{}, 0);
    std::size_t covered = 0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            covered += img.at(x, y) != std::array<std::uint8_t, 3>{255, 255, 255};
    double frame = 2 * half * std::sqrt(3.0);
    double expected = pi * r * r / (frame * frame);
    double measured = double(covered) / (double(img.width) * img.height);
    double rel = std::fabs(measured / expected - 1);
    o.require(rel <= 0.01, "silhouette off by " + std::to_string(100 * rel) + "%");

    ViewParameters big;
    big.window.width = 600;
    big.window.height = 600;
    big.style = DrawingStyle::surface;
    big.set_viewpoint_theta_phi(120 * units::deg, 150 * units::deg);
    auto start = Clock::now();
    Image full = ray_trace(b1, big, 1);
    double t = seconds_since(start);
    o.require(full.width == 600 && full.height == 600, "wrong image size");
    o.require(t < 10, "600x600 took " + std::to_string(t) + " s");
    if (o.pass)
    {
        std::ostringstream os;
        os << "bytes equal for 1/3/8 threads; silhouette within " << 100 * rel
           << "%; B1 600x600 on one thread in " << t << " s";
        o.detail = os.str();
    }
    return o;
}

Outcome filters_and_models()
{
    Outcome o;
    std::vector<Trajectory> tracks;
    for (std::uint64_t seed = 0; tracks.size() < 10'000; ++seed)
    {
        auto ev = generate_toy_event(648 + seed, 100, 1.0, static_cast<int>(seed));
        for (auto& t : ev.trajectories)
            tracks.push_back(std::move(t));
    }
    tracks.resize(10'000);

    FilterChain gamma;
    gamma.add(ParticleFilter{"particleFilter-0", {"gamma"}});
    int gammas = 0;
    for (auto const& t : tracks)
    {
        bool is_gamma = t.particle_name == "gamma";
        gammas += is_gamma;
        if (gamma.accept(t) != is_gamma)
        {
            o.require(false, "particleFilter wrong for " + t.particle_name);
            break;
        }
    }
    o.require(gammas > 0 && gammas < 10'000, "degenerate particle mix");

    ParticleFilter pf{"p", {"gamma", "e-"}};
    ChargeFilter cf{"c", {-1, 1}};
    FilterChain f, g, fg, inv, twice;
    f.add(pf);
    g.add(cf);
    fg.add(pf);
    fg.add(cf);
    ParticleFilter pf_inv = pf;
    pf_inv.invert = true;
    inv.add(pf_inv);
    twice.add(pf);
    twice.add(pf);
    for (auto const& t : tracks)
    {
        bool a = f.accept(t), b = g.accept(t);
        if (fg.accept(t) != (a && b) || inv.accept(t) != !a || twice.accept(t) != a)
        {
            o.require(false, "conjunction/inversion/idempotence broken for " + t.particle_name);
            break;
        }
    }

    TrajectoryModel model = DrawByCharge{"drawByCharge-0"};
    std::map<int, std::set<std::string>> by_sign;
    std::map<std::string, std::set<int>> signs_of_colour;
    for (auto const& t : tracks)
    {
        int sign = (t.charge > 0) - (t.charge < 0);
        auto c = style_trajectory(model, t).colour;
        std::string key = to_hex(c);
        by_sign[sign].insert(key);
        signs_of_colour[key].insert(sign);
    }
    for (auto const& [sign, colours] : by_sign)
        o.require(colours.size() == 1, "charge sign " + std::to_string(sign) + " has several colours");
    for (auto const& [colour, signs] : signs_of_colour)
        o.require(signs.size() == 1, "colour " + colour + " spans several charge signs");
    o.require(by_sign.size() == 3, "expected three charge signs among the tracks");
    if (o.pass)
        o.detail = "10000 tracks (" + std::to_string(gammas)
                   + " gammas); conjunction, inversion, idempotence hold; 3 colour classes by sign";
    return o;
}

Outcome export_round_trip()
{
    Outcome o;
    Session s;
    s.vis.open_viewer("SceneExport", "600x600");
    s.vis.draw_volume("", unlimited_depth);
    s.vis.add_model(TrajectoriesModel{});
    s.vis.add_model(HitsModel{});
    s.vis.add_model(AxesModel{});
    s.vis.add_model(Text2DModel{0, -0.9, 24, 0, 0, "exampleB1"});
    s.vis.set_end_of_event_action(EndOfEventAction::accumulate);
    s.vis.beam_on(3);
    s.vis.flush();
    auto path = s.vis.current_viewer().last_output;
    std::string first = read_file(path);
    o.require(!first.empty(), "no export written");
    try
    {
        SceneDocument doc = scene_from_json(first);
        std::string second = to_json(doc);
        o.require(second == first, "write-read-write changed the bytes");
        validate(doc);
        std::size_t values = 0;
        for (auto const& inst : doc.instances)
            values += inst.attributes.size();
        if (o.pass)
            o.detail = std::to_string(first.size()) + " bytes identical after round trip; "
                       + std::to_string(doc.instances.size()) + " instances, "
                       + std::to_string(values) + " attribute values resolve";
    }
    catch (std::exception const& e)
    {
        o.require(false, e.what());
    }
    return o;
}
}  // namespace

int main()
{
    std::vector<std::pair<char const*, std::function<Outcome()>>> criteria{
        {"ascii-tree-example", ascii_tree_example},
        {"volume-oracle", volume_oracle},
        {"ray-oracle", ray_oracle},
        {"startup-macro", startup_macro},
        {"event-store", event_store},
        {"driver-equivalence", driver_equivalence},
        {"ray-tracer", ray_tracer},
        {"filters-models", filters_and_models},
        {"export-round-trip", export_round_trip},
    };
    int failures = 0;
    for (auto const& [name, check] : criteria)
    {
        Outcome o;
        try
        {
            o = check();
        }
        catch (std::exception const& e)
        {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
