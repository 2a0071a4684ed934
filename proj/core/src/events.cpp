//---------------------------------------------------------------------------//
//! \file events.cpp
//---------------------------------------------------------------------------//
#include "multivis/events.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "multivis/units.hpp"

namespace multivis
{
//---------------------------------------------------------------------------//
AttValues trajectory_attributes(Trajectory const& t, std::optional<int> event_id)
{
    using C = UnitCategory;
    double imag = norm(t.initial_momentum);
    AttValues v;
    if (event_id)
        v.push_back({"EventID", std::to_string(*event_id), double(*event_id)});
    v.push_back({"CPN", t.creator_process, {}});
    v.push_back({"Ch", format_number(t.charge) + " e+", t.charge});
    v.push_back({"ID", std::to_string(t.track_id), double(t.track_id)});
    v.push_back({"IKE", best_unit(t.initial_kinetic_energy, C::energy), t.initial_kinetic_energy});
    v.push_back({"IMag", best_unit(imag, C::energy), imag});
    v.push_back({"IMom", best_unit(t.initial_momentum, C::energy), {}});
    v.push_back({"NTP", std::to_string(t.points.size()), double(t.points.size())});
    v.push_back({"PDG", std::to_string(t.pdg_encoding), double(t.pdg_encoding)});
    v.push_back({"PID", std::to_string(t.parent_id), double(t.parent_id)});
    v.push_back({"PN", t.particle_name, {}});
    return v;
}

AttValues hit_attributes(Hit const& h, std::optional<int> event_id)
{
    AttValues v;
    if (event_id)
        v.push_back({"EventID", std::to_string(*event_id), double(*event_id)});
    v.push_back({"Det", h.detector_name, {}});
    v.push_back({"Pos", best_unit(h.position, UnitCategory::length), {}});
    v.push_back({"Edep", best_unit(h.energy_deposit, UnitCategory::energy), h.energy_deposit});
    for (auto const& e : h.extra)
        v.push_back(e);
    return v;
}

//---------------------------------------------------------------------------//
void EventStore::store(Event event)
{
    if (capacity_ == 0)
        return;
    events_.push_back(std::move(event));
    while (events_.size() > capacity_)
        events_.pop_front();
}

void EventStore::set_capacity(std::size_t capacity)
{
    capacity_ = capacity;
    while (events_.size() > capacity_)
        events_.pop_front();
}

//---------------------------------------------------------------------------//
std::vector<ParticleSpec> const& toy_particle_table()
{
    static std::vector<ParticleSpec> const table = {
        {"e-", 11, -1, 0.51099895},
        {"e+", -11, 1, 0.51099895},
        {"gamma", 22, 0, 0},
        {"mu-", 13, -1, 105.6583755},
        {"proton", 2212, 1, 938.27208816},
    };
    return table;
}

double helix_radius(double pt_mev, double charge, double field_tesla)
{
    return pt_mev / (0.3 * std::fabs(charge) * field_tesla);
}

namespace
{
bool inside(BBox const& b, Vec3 const& p)
{
    return p.x >= b.lower.x && p.x <= b.upper.x && p.y >= b.lower.y
           && p.y <= b.upper.y && p.z >= b.lower.z && p.z <= b.upper.z;
}

//! Uniform in [0, 1) from the top 53 bits.
double canonical(std::mt19937_64& rng)
{
    return (rng() >> 11) * 0x1.0p-53;
}
}  // namespace

Event generate_toy_event(std::uint64_t seed,
                         int n_tracks,
                         double field_tesla,
                         int event_id,
                         ToyConfig const& cfg)
{
    if (n_tracks < 1)
        throw std::invalid_argument("toy event needs at least one track");
    std::mt19937_64 rng(seed);
    auto const& table = toy_particle_table();

    Event ev;
    ev.event_id = event_id;
    for (int i = 0; i < n_tracks; ++i)
    {
        auto const& spec = table[rng() % table.size()];
        double cos_t = 2 * canonical(rng) - 1;
        double phi0 = two_pi * canonical(rng);
        double sin_t = std::sqrt(std::max(0.0, 1 - cos_t * cos_t));
        double log_lo = std::log(cfg.min_kinetic_energy);
        double log_hi = std::log(cfg.max_kinetic_energy);
        double ke = std::exp(log_lo + (log_hi - log_lo) * canonical(rng));
        double p = std::sqrt(ke * (ke + 2 * spec.mass));
        Vec3 dir{sin_t * std::cos(phi0), sin_t * std::sin(phi0), cos_t};

        Trajectory t;
        t.track_id = i + 1;
        t.parent_id = 0;
        t.particle_name = spec.name;
        t.pdg_encoding = spec.pdg;
        t.charge = spec.charge;
        t.initial_kinetic_energy = ke;
        t.initial_momentum = dir * p;
        t.creator_process = "primary";

        // dphi/ds for a helix about +z; zero gives a straight line
        double omega = spec.charge != 0 && field_tesla != 0
                           ? -0.3 * spec.charge * field_tesla / p
                           : 0.0;
        Vec3 const& x0 = cfg.vertex;
        double dedx = spec.charge != 0 ? 0.2 : 0.0;  // MeV/mm
        for (int k = 0; k < cfg.max_points; ++k)
        {
            double s = k * cfg.step;
            Vec3 pos;
            if (omega == 0)
            {
                pos = x0 + dir * s;
            }
            else
            {
                double phi = phi0 + omega * s;
                pos = {x0.x + sin_t / omega * (std::sin(phi) - std::sin(phi0)),
                       x0.y - sin_t / omega * (std::cos(phi) - std::cos(phi0)),
                       x0.z + s * cos_t};
            }
            if (!inside(cfg.world, pos))
                break;
            double edep = k == 0 ? 0.0 : dedx * cfg.step * (0.5 + canonical(rng));
            t.points.push_back({pos, edep});
        }

        if (spec.charge != 0)
        {
            // Every fifth step point of a charged track registers a hit.
            for (std::size_t k = 5; k < t.points.size(); k += 5)
            {
                double e = 0;
                for (std::size_t j = k - 4; j <= k; ++j)
                    e += t.points[j].energy_deposit;
                ev.hits.push_back({t.points[k].position, e, "Tracker", {}});
            }
        }
        ev.trajectories.push_back(std::move(t));
    }
    return ev;
}

}  // namespace multivis
