#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "multivis/events.hpp"
#include "multivis/trajectory_style.hpp"
#include "multivis/units.hpp"

using namespace multivis;

namespace
{
Event numbered(int id)
{
    Event e;
    e.event_id = id;
    return e;
}

//! RK4 in path length of du/ds = k u x z, k = 0.3 q B / p (mm^-1).
std::vector<Vec3> lorentz_integrate(Vec3 x, Vec3 u, double k, double length, double h)
{
    auto rhs = [k](Vec3 const& v) { return Vec3{v.y * k, -v.x * k, 0}; };
    std::vector<Vec3> out{x};
    int n = static_cast<int>(std::lround(length / h));
    for (int i = 0; i < n; ++i)
    {
        Vec3 k1u = rhs(u), k1x = u;
        Vec3 k2u = rhs(u + k1u * (h / 2)), k2x = u + k1u * (h / 2);
        Vec3 k3u = rhs(u + k2u * (h / 2)), k3x = u + k2u * (h / 2);
        Vec3 k4u = rhs(u + k3u * h), k4x = u + k3u * h;
        x = x + (k1x + k2x * 2 + k3x * 2 + k4x) * (h / 6);
        u = u + (k1u + k2u * 2 + k3u * 2 + k4u) * (h / 6);
        out.push_back(x);
    }
    return out;
}

Trajectory track(std::string name, double charge, double ike = 100)
{
    Trajectory t;
    t.particle_name = std::move(name);
    t.charge = charge;
    t.initial_kinetic_energy = ike;
    t.initial_momentum = {0, 0, ike};
    t.points = {{{0, 0, 0}, 0}};
    return t;
}

std::string attr(AttValues const& v, std::string_view key)
{
    auto const* a = find_value(v, key);
    return a ? a->value : "<missing>";
}
}  // namespace

//---------------------------------------------------------------------------//
TEST(EventStore, KeepsLastHundred)
{
    EventStore store;
    EXPECT_EQ(store.capacity(), 100u);
    for (int i = 0; i <= 100; ++i)
        store.store(numbered(i));
    ASSERT_EQ(store.size(), 100u);
    EXPECT_EQ(store.events().front().event_id, 1);
    EXPECT_EQ(store.events().back().event_id, 100);
}

TEST(EventStore, CapacityOneAndZero)
{
    EventStore one(1);
    for (int i = 0; i < 5; ++i)
    {
        one.store(numbered(i));
        ASSERT_EQ(one.size(), 1u);
        EXPECT_EQ(one.latest()->event_id, i);
    }
    one.set_capacity(0);
    EXPECT_TRUE(one.empty());
    one.store(numbered(9));
    EXPECT_TRUE(one.empty());
}

TEST(EventStore, SizeAndOrderProperty)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::size_t cap = rng() % 20;
        int n = static_cast<int>(rng() % 50);
        EventStore store(cap);
        for (int i = 0; i < n; ++i)
            store.store(numbered(i));
        std::size_t expect = std::min<std::size_t>(n, cap);
        ASSERT_EQ(store.size(), expect);
        int id = n - static_cast<int>(expect);
        for (auto const& e : store.events())
            EXPECT_EQ(e.event_id, id++);
    }
}

TEST(EventStore, ShrinkEvictsOldest)
{
    EventStore store(10);
    for (int i = 0; i < 10; ++i)
        store.store(numbered(i));
    store.set_capacity(3);
    ASSERT_EQ(store.size(), 3u);
    EXPECT_EQ(store.events().front().event_id, 7);
}

//---------------------------------------------------------------------------//
TEST(ToyEvent, Deterministic)
{
    EXPECT_EQ(generate_toy_event(42, 20, 1.0, 3), generate_toy_event(42, 20, 1.0, 3));
    EXPECT_NE(generate_toy_event(42, 20, 1.0), generate_toy_event(43, 20, 1.0));
    EXPECT_THROW(generate_toy_event(1, 0, 1.0), std::invalid_argument);
}

TEST(ToyEvent, TracksComeFromTable)
{
    auto ev = generate_toy_event(5, 200, 1.0, 7);
    EXPECT_EQ(ev.event_id, 7);
    ASSERT_EQ(ev.trajectories.size(), 200u);
    for (auto const& t : ev.trajectories)
    {
        bool known = false;
        for (auto const& p : toy_particle_table())
            known |= (t.particle_name == p.name && t.charge == p.charge && t.pdg_encoding == p.pdg);
        EXPECT_TRUE(known) << t.particle_name;
        EXPECT_GE(t.points.size(), 1u);
        for (auto const& pt : t.points)
            EXPECT_GE(pt.energy_deposit, 0);
    }
    for (auto const& h : ev.hits)
        EXPECT_GE(h.energy_deposit, 0);
}

TEST(ToyEvent, StraightWithoutField)
{
    auto ev = generate_toy_event(9, 50, 0.0);
    for (auto const& t : ev.trajectories)
    {
        if (t.points.size() < 3)
            continue;
        Vec3 a = t.points.front().position;
        Vec3 d = t.points.back().position - a;
        double len = norm(d);
        for (auto const& p : t.points)
        {
            Vec3 r = p.position - a;
            EXPECT_LT(norm(cross(r, d)) / len, 1e-9);
        }
    }
}

TEST(ToyEvent, PointsSpacedAndClipped)
{
    ToyConfig cfg;
    auto ev = generate_toy_event(10, 50, 0.0, 0, cfg);
    for (auto const& t : ev.trajectories)
    {
        for (std::size_t i = 1; i < t.points.size(); ++i)
            EXPECT_NEAR(norm(t.points[i].position - t.points[i - 1].position), 10, 1e-9);
        for (auto const& p : t.points)
        {
            EXPECT_LE(std::fabs(p.position.x), 120);
            EXPECT_LE(std::fabs(p.position.z), 180);
        }
    }
}

TEST(ToyEvent, HelixRadiusMatchesLorentzIntegration)
{
    EXPECT_NEAR(helix_radius(300, -1, 1.0), 1000, 1e-9);
    EXPECT_NEAR(helix_radius(300, 2, 1.0), 500, 1e-9);

    // Half a turn of a transverse 300 MeV track: the farthest point is the diameter
    double k = 0.3 * 1 * 1.0 / 300;
    auto pts = lorentz_integrate({0, 0, 0}, {1, 0, 0}, k, pi / k, 0.01);
    double diameter = 0;
    for (auto const& p : pts)
        diameter = std::max(diameter, norm(p));
    EXPECT_NEAR(diameter / 2, 1000, 1e-3);
}

TEST(ToyEvent, ChargedPointsFollowIntegratedHelix)
{
    double field = 1.0;
    auto ev = generate_toy_event(21, 40, field);
    int checked = 0;
    for (auto const& t : ev.trajectories)
    {
        if (t.charge == 0 || t.points.size() < 2)
            continue;
        double p = norm(t.initial_momentum);
        double k = 0.3 * t.charge * field / p;
        double length = 10.0 * (t.points.size() - 1);
        double h = 0.05;
        auto ref = lorentz_integrate(t.points[0].position, t.initial_momentum / p, k, length, h);
        int stride = static_cast<int>(std::lround(10.0 / h));
        for (std::size_t i = 0; i < t.points.size(); ++i)
            EXPECT_LT(norm(t.points[i].position - ref[i * stride]), 1e-6)
                << t.particle_name << " point " << i;
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

//---------------------------------------------------------------------------//
TEST(EventFile, RoundTrip)
{
    EventStore store(5);
    for (int i = 0; i < 7; ++i)
        store.store(generate_toy_event(100 + i, 4, 1.0, i));
    std::ostringstream out;
    write_events(out, store.events());
    std::istringstream in(out.str());
    auto back = read_events(in);
    EventStore again(5);
    for (auto& e : back)
        again.store(std::move(e));
    ASSERT_EQ(again.size(), store.size());
    for (std::size_t i = 0; i < store.size(); ++i)
        EXPECT_EQ(again.events()[i], store.events()[i]);
    std::ostringstream out2;
    write_events(out2, again.events());
    EXPECT_EQ(out.str(), out2.str());
}

TEST(EventFile, EmptyFile)
{
    std::istringstream in("");
    EXPECT_TRUE(read_events(in).empty());
    auto path = std::filesystem::temp_directory_path() / "multivis_empty_events.jsonl";
    std::ofstream(path).close();
    EXPECT_TRUE(ingest_events(path).empty());
    std::filesystem::remove(path);
}

TEST(EventFile, MissingParticleNameNamesLine)
{
    auto ev = generate_toy_event(1, 1, 1.0);
    std::string good = event_to_json(ev);
    std::string bad = good;
    auto pos = bad.find("\"name\"");
    ASSERT_NE(pos, std::string::npos);
    bad.replace(pos, 6, "\"nome\"");
    std::istringstream in(good + "\n\n" + bad + "\n");
    try
    {
        read_events(in);
        FAIL() << "expected EventFormatError";
    }
    catch (EventFormatError const& e)
    {
        EXPECT_EQ(e.line(), 3);
        EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("name"), std::string::npos);
    }
}

TEST(EventFile, MalformedJson)
{
    std::istringstream in("{\"event_id\": 1,");
    EXPECT_THROW(read_events(in), EventFormatError);
}

//---------------------------------------------------------------------------//
TEST(TrajectoryAttributes, Fields)
{
    auto ev = generate_toy_event(33, 30, 1.0, 4);
    bool saw_electron = false;
    for (auto const& t : ev.trajectories)
    {
        auto v = trajectory_attributes(t, ev.event_id);
        EXPECT_TRUE(keys_resolve(v, trajectory_att_defs()));
        EXPECT_EQ(attr(v, "NTP"), std::to_string(t.points.size()));
        EXPECT_EQ(attr(v, "PN"), t.particle_name);
        EXPECT_EQ(attr(v, "EventID"), "4");
        auto const* imag = find_value(v, "IMag");
        ASSERT_TRUE(imag && imag->number);
        auto m = t.initial_momentum;
        EXPECT_NEAR(*imag->number, std::sqrt(m.x * m.x + m.y * m.y + m.z * m.z), 1e-9);
        if (t.particle_name == "e-")
        {
            saw_electron = true;
            EXPECT_EQ(attr(v, "Ch"), "-1 e+");
        }
    }
    EXPECT_TRUE(saw_electron);
    auto t = track("gamma", 0, 250);
    EXPECT_EQ(attr(trajectory_attributes(t), "IKE"), "250 MeV");
    EXPECT_EQ(attr(trajectory_attributes(t), "IMom"), "(0,0,250) MeV");
}

//---------------------------------------------------------------------------//
TEST(Filters, ParticleFilter)
{
    FilterChain chain;
    EXPECT_TRUE(chain.accept(track("anything", 5)));
    chain.add(ParticleFilter{"particleFilter-0", {"gamma"}});
    EXPECT_TRUE(chain.accept(track("gamma", 0)));
    EXPECT_FALSE(chain.accept(track("e-", -1)));
}

TEST(Filters, InvertedConjunction)
{
    FilterChain chain;
    chain.add(ParticleFilter{"p", {"gamma"}, true});
    chain.add(ChargeFilter{"c", {-1}});
    EXPECT_TRUE(chain.accept(track("e-", -1)));
    EXPECT_FALSE(chain.accept(track("e+", 1)));
    EXPECT_FALSE(chain.accept(track("gamma", 0)));
}

TEST(Filters, InactiveFilterIgnored)
{
    FilterChain chain;
    chain.add(ParticleFilter{"p", {"gamma"}, false, false});
    EXPECT_TRUE(chain.accept(track("e-", -1)));
}

TEST(Filters, MomentumInterval)
{
    FilterChain chain;
    chain.add(AttributeIntervalFilter{"m", "IMag", 50, 150});
    EXPECT_TRUE(chain.accept(track("e-", -1, 100)));
    EXPECT_FALSE(chain.accept(track("e-", -1, 200)));
}

TEST(Filters, UnknownKeyRejectsAndWarnsOnce)
{
    FilterChain chain;
    int warnings = 0;
    chain.set_warning_hook([&](std::string const&) { ++warnings; });
    chain.add(AttributeIntervalFilter{"a", "NoSuchKey", 0, 1});
    EXPECT_FALSE(chain.accept(track("e-", -1)));
    EXPECT_FALSE(chain.accept(track("e+", 1)));
    EXPECT_EQ(warnings, 1);
}

TEST(Filters, IdempotentAndIndependentOfStyle)
{
    auto ev = generate_toy_event(77, 500, 1.0);
    FilterChain chain;
    chain.add(ParticleFilter{"p", {"gamma", "proton"}, true});
    chain.add(AttributeIntervalFilter{"m", "IKE", 20, 500});

    std::vector<Trajectory> once;
    for (auto const& t : ev.trajectories)
        if (chain.accept(t))
            once.push_back(t);
    std::vector<Trajectory> twice;
    for (auto const& t : once)
        if (chain.accept(t))
            twice.push_back(t);
    EXPECT_EQ(once, twice);
    EXPECT_FALSE(once.empty());

    TrajectoryModel model = DrawByCharge{"m"};
    for (auto const& t : ev.trajectories)
    {
        bool before = chain.accept(t);
        auto style = style_trajectory(model, t);
        EXPECT_EQ(chain.accept(t), before);
        EXPECT_EQ(style_trajectory(model, t), style);
    }
}

//---------------------------------------------------------------------------//
TEST(Models, DrawByChargeDefaults)
{
    TrajectoryModel m = DrawByCharge{"drawByCharge-0"};
    EXPECT_EQ(style_trajectory(m, track("e-", -1)).colour, (Colour{1, 0, 0}));
    EXPECT_EQ(style_trajectory(m, track("e+", 1)).colour, (Colour{0, 0, 1}));
    EXPECT_EQ(style_trajectory(m, track("gamma", 0)).colour, (Colour{0, 1, 0}));
    EXPECT_EQ(style_trajectory(m, track("alpha", 2)).colour, (Colour{0, 0, 1}));
    std::get<DrawByCharge>(m).set(-1, Colour{1, 1, 0});
    EXPECT_EQ(style_trajectory(m, track("e-", -1)).colour, (Colour{1, 1, 0}));
}

TEST(Models, StepPoints)
{
    TrajectoryModel m = DrawByCharge{"drawByCharge-0"};
    EXPECT_FALSE(style_trajectory(m, track("e-", -1)).draw_points);
    model_defaults(m).draw_step_points = true;
    model_defaults(m).step_points_size = 2;
    auto s = style_trajectory(m, track("e-", -1));
    EXPECT_TRUE(s.draw_points);
    EXPECT_EQ(s.point_size, 2);
}

TEST(Models, DrawByParticleID)
{
    DrawByParticleID pid{"drawByParticleID-0"};
    pid.colours["gamma"] = Colour{0, 1, 0};
    pid.defaults.default_colour = Colour{0.5, 0.5, 0.5};
    TrajectoryModel m = pid;
    EXPECT_EQ(style_trajectory(m, track("gamma", 0)).colour, (Colour{0, 1, 0}));
    EXPECT_EQ(style_trajectory(m, track("proton", 1)).colour, (Colour{0.5, 0.5, 0.5}));
    EXPECT_EQ(model_name(m), "drawByParticleID-0");
}
