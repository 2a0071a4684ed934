//---------------------------------------------------------------------------//
//! \file multivis/trajectory_style.hpp
//! \brief Trajectory models (styling) and filters (selection).
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "colour.hpp"
#include "events.hpp"

namespace multivis
{
//---------------------------------------------------------------------------//
struct DrawStyle
{
    Colour colour;
    bool draw_line{true};
    bool draw_points{false};
    double point_size{2};  //!< pixels
    double line_width{1};

    friend bool operator==(DrawStyle const&, DrawStyle const&) = default;
};

//! Settings shared by all models ("<model>/default/...").
struct StyleDefaults
{
    bool draw_line{true};
    bool draw_step_points{false};
    double step_points_size{2};
    double line_width{1};
    Colour default_colour{Colour::white()};
};

struct DrawByCharge
{
    std::string name;
    Colour positive{0, 0, 1};
    Colour negative{1, 0, 0};
    Colour neutral{0, 1, 0};
    StyleDefaults defaults;

    //! Colour for charges of the given sign (-1, 0, +1).
    void set(int sign, Colour c);
};

struct DrawByParticleID
{
    std::string name;
    std::map<std::string, Colour> colours;
    StyleDefaults defaults;
};

using TrajectoryModel = std::variant<DrawByCharge, DrawByParticleID>;

std::string const& model_name(TrajectoryModel const&);
StyleDefaults& model_defaults(TrajectoryModel&);
DrawStyle style_trajectory(TrajectoryModel const& model, Trajectory const& t);

//---------------------------------------------------------------------------//
struct ParticleFilter
{
    std::string name;
    std::set<std::string> particles;
    bool invert{false};
    bool active{true};
};

struct ChargeFilter
{
    std::string name;
    std::set<int> charges;
    bool invert{false};
    bool active{true};
};

//! Accepts trajectories whose numeric attribute lies in [min, max].
struct AttributeIntervalFilter
{
    std::string name;
    std::string key;
    double min{0};
    double max{0};
    bool invert{false};
    bool active{true};
};

using TrajectoryFilter
    = std::variant<ParticleFilter, ChargeFilter, AttributeIntervalFilter>;

std::string const& filter_name(TrajectoryFilter const&);

/*!
 * Conjunction of filters; an empty chain accepts everything.
 *
 * Interval filters on keys without a numeric value reject, warning once per
 * key through the warning hook.
 */
class FilterChain
{
  public:
    using WarningHook = std::function<void(std::string const&)>;

    std::vector<TrajectoryFilter>& filters() { return filters_; }
    std::vector<TrajectoryFilter> const& filters() const { return filters_; }
    void add(TrajectoryFilter f) { filters_.push_back(std::move(f)); }
    TrajectoryFilter* find(std::string_view name);

    void set_warning_hook(WarningHook hook) { warn_ = std::move(hook); }

    bool accept(Trajectory const& t) const;

  private:
    std::vector<TrajectoryFilter> filters_;
    WarningHook warn_;
    mutable std::set<std::string> warned_;
};

//! Single-filter decision (invert applied, active ignored).
bool filter_accept(TrajectoryFilter const& f,
                   Trajectory const& t,
                   AttValues const& atts,
                   bool* unknown_key = nullptr);

}  // namespace multivis
