//---------------------------------------------------------------------------//
//! \file event_io.cpp
//! \brief One JSON object per line; schema in docs/event-format.md.
//---------------------------------------------------------------------------//
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "multivis/events.hpp"

namespace multivis
{
namespace
{
using nlohmann::json;

json vec(Vec3 const& v)
{
    return json::array({v.x, v.y, v.z});
}

Vec3 to_vec(json const& j, char const* what)
{
    if (!j.is_array() || j.size() != 3)
        throw std::runtime_error(std::string(what) + " must be [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json const& field(json const& obj, char const* key, std::string const& where)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw std::runtime_error(where + " is missing \"" + key + "\"");
    return *it;
}
}  // namespace

std::string event_to_json(Event const& e)
{
    json trajs = json::array();
    for (auto const& t : e.trajectories)
    {
        json pts = json::array();
        for (auto const& p : t.points)
        {
            pts.push_back(json::array(
                {p.position.x, p.position.y, p.position.z, p.energy_deposit}));
        }
        trajs.push_back(json{{"id", t.track_id},
                             {"parent_id", t.parent_id},
                             {"pdg", t.pdg_encoding},
                             {"name", t.particle_name},
                             {"charge", t.charge},
                             {"ike_mev", t.initial_kinetic_energy},
                             {"imom_mev", vec(t.initial_momentum)},
                             {"creator_process", t.creator_process},
                             {"points", std::move(pts)}});
    }
    json hits = json::array();
    for (auto const& h : e.hits)
    {
        json jh{{"position", vec(h.position)},
                {"edep_mev", h.energy_deposit},
                {"detector", h.detector_name}};
        if (!h.extra.empty())
        {
            json extra = json::array();
            for (auto const& a : h.extra)
            {
                json ja{{"key", a.key}, {"value", a.value}};
                if (a.number)
                    ja["number"] = *a.number;
                extra.push_back(std::move(ja));
            }
            jh["atts"] = std::move(extra);
        }
        hits.push_back(std::move(jh));
    }
    json doc{{"event_id", e.event_id},
             {"trajectories", std::move(trajs)},
             {"hits", std::move(hits)}};
    return doc.dump();
}

Event event_from_json(std::string_view line, int line_number)
{
    std::string prefix = "line " + std::to_string(line_number);
    try
    {
        json doc = json::parse(line);
        if (!doc.is_object())
            throw std::runtime_error("event record must be an object");
        Event e;
        e.event_id = field(doc, "event_id", "event").get<int>();
        int i = 0;
        for (auto const& jt : field(doc, "trajectories", "event"))
        {
            std::string where = "trajectory " + std::to_string(i++);
            Trajectory t;
            t.track_id = field(jt, "id", where).get<int>();
            t.parent_id = jt.value("parent_id", 0);
            t.pdg_encoding = field(jt, "pdg", where).get<int>();
            t.particle_name = field(jt, "name", where).get<std::string>();
            t.charge = field(jt, "charge", where).get<double>();
            t.initial_kinetic_energy = field(jt, "ike_mev", where).get<double>();
            t.initial_momentum = to_vec(field(jt, "imom_mev", where), "imom_mev");
            t.creator_process = jt.value("creator_process", std::string{});
            for (auto const& jp : field(jt, "points", where))
            {
                if (!jp.is_array() || jp.size() != 4)
                    throw std::runtime_error(where + ": points must be [x, y, z, edep]");
                t.points.push_back({{jp[0].get<double>(), jp[1].get<double>(), jp[2].get<double>()},
                                    jp[3].get<double>()});
            }
            if (t.points.empty())
                throw std::runtime_error(where + " has no points");
            e.trajectories.push_back(std::move(t));
        }
        i = 0;
        for (auto const& jh : doc.value("hits", json::array()))
        {
            std::string where = "hit " + std::to_string(i++);
            Hit h;
            h.position = to_vec(field(jh, "position", where), "position");
            h.energy_deposit = field(jh, "edep_mev", where).get<double>();
            if (h.energy_deposit < 0)
                throw std::runtime_error(where + " has negative energy");
            h.detector_name = jh.value("detector", std::string{});
            for (auto const& ja : jh.value("atts", json::array()))
            {
                AttValue a{field(ja, "key", where).get<std::string>(),
                           field(ja, "value", where).get<std::string>(),
                           {}};
                if (ja.contains("number"))
                    a.number = ja["number"].get<double>();
                h.extra.push_back(std::move(a));
            }
            e.hits.push_back(std::move(h));
        }
        return e;
    }
    catch (json::exception const& ex)
    {
        throw EventFormatError(prefix + ": " + ex.what(), line_number);
    }
    catch (std::runtime_error const& ex)
    {
        throw EventFormatError(prefix + ": " + ex.what(), line_number);
    }
}

std::vector<Event> read_events(std::istream& in)
{
    std::vector<Event> out;
    std::string line;
    int n = 0;
    while (std::getline(in, line))
    {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        out.push_back(event_from_json(line, n));
    }
    return out;
}

std::vector<Event> ingest_events(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open event file " + path.string());
    return read_events(in);
}

void write_events(std::ostream& out, std::deque<Event> const& events)
{
    for (auto const& e : events)
        out << event_to_json(e) << '\n';
}

}  // namespace multivis
