//---------------------------------------------------------------------------//
//! \file multivis/events.hpp
//! \brief Trajectories, hits, events, the event store and the toy source.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "attributes.hpp"
#include "math.hpp"

namespace multivis
{
//---------------------------------------------------------------------------//
struct StepPoint
{
    Vec3 position;  //!< mm
    double energy_deposit{0};  //!< MeV

    friend bool operator==(StepPoint const&, StepPoint const&) = default;
};

struct Trajectory
{
    int track_id{0};
    int parent_id{0};
    std::string particle_name;
    int pdg_encoding{0};
    double charge{0};  //!< units of e+
    double initial_kinetic_energy{0};  //!< MeV
    Vec3 initial_momentum;  //!< MeV
    std::vector<StepPoint> points;
    std::string creator_process;

    friend bool operator==(Trajectory const&, Trajectory const&) = default;
};

struct Hit
{
    Vec3 position;
    double energy_deposit{0};  //!< MeV
    std::string detector_name;
    AttValues extra;

    friend bool operator==(Hit const&, Hit const&) = default;
};

struct Event
{
    int event_id{0};
    std::vector<Trajectory> trajectories;
    std::vector<Hit> hits;

    friend bool operator==(Event const&, Event const&) = default;
};

AttValues trajectory_attributes(Trajectory const& t,
                                std::optional<int> event_id = std::nullopt);
AttValues hit_attributes(Hit const& h, std::optional<int> event_id = std::nullopt);

//---------------------------------------------------------------------------//
/*!
 * Ring buffer of the most recent events.
 */
class EventStore
{
  public:
    static constexpr std::size_t default_capacity = 100;

    explicit EventStore(std::size_t capacity = default_capacity)
        : capacity_{capacity}
    {
    }

    //! Append, evicting the oldest when full.
    void store(Event event);
    //! Shrinking evicts the oldest events.
    void set_capacity(std::size_t capacity);
    void clear() { events_.clear(); }

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }
    std::deque<Event> const& events() const { return events_; }
    Event const* latest() const { return events_.empty() ? nullptr : &events_.back(); }

  private:
    std::size_t capacity_;
    std::deque<Event> events_;
};

//---------------------------------------------------------------------------//
// Toy source
//---------------------------------------------------------------------------//
struct ParticleSpec
{
    char const* name;
    int pdg;
    double charge;
    double mass;  //!< MeV
};

//! e-, e+, gamma, mu-, proton.
std::vector<ParticleSpec> const& toy_particle_table();

struct ToyConfig
{
    BBox world{{-120, -120, -180}, {120, 120, 180}};  //!< tracks are clipped here
    Vec3 vertex{};
    double step{10};  //!< mm of path between points
    int max_points{1000};
    double min_kinetic_energy{10};  //!< MeV
    double max_kinetic_energy{1000};  //!< MeV
};

/*!
 * Deterministic event of straight (neutral) and helical (charged) tracks in
 * a uniform field along +z.
 */
Event generate_toy_event(std::uint64_t seed,
                         int n_tracks,
                         double field_tesla,
                         int event_id = 0,
                         ToyConfig const& config = {});

//! Transverse radius (mm) of a track with momentum in MeV and field in tesla.
double helix_radius(double pt_mev, double charge, double field_tesla);

//---------------------------------------------------------------------------//
// Line-delimited JSON event files
//---------------------------------------------------------------------------//
class EventFormatError : public std::runtime_error
{
  public:
    EventFormatError(std::string const& msg, int line)
        : std::runtime_error(msg), line_{line}
    {
    }
    int line() const { return line_; }

  private:
    int line_;
};

std::string event_to_json(Event const& e);
Event event_from_json(std::string_view line, int line_number = 0);

std::vector<Event> read_events(std::istream& in);
std::vector<Event> ingest_events(std::filesystem::path const& path);
void write_events(std::ostream& out, std::deque<Event> const& events);

}  // namespace multivis
