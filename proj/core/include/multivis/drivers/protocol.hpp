//---------------------------------------------------------------------------//
//! \file multivis/drivers/protocol.hpp
//! \brief Sinks that check, record and fan out the sink call protocol.
//---------------------------------------------------------------------------//
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "../scene.hpp"

namespace multivis
{
class ProtocolError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

/*!
 * Validates bracket matching and call ordering, optionally forwarding to
 * another sink. Violations throw ProtocolError.
 */
class ProtocolChecker : public SceneSink
{
  public:
    explicit ProtocolChecker(SceneSink* next = nullptr) : next_{next} {}

    void begin_session(ViewParameters const& view, SceneInfo const& info) override;
    void pre_add_solid(Transform const& t,
                       VisAttributes const& vis,
                       SolidContext const* ctx) override;
    void add_solid(Solid const& s) override;
    void post_add_solid() override;
    void begin_primitives(Transform const& t) override;
    void begin_primitives_2d() override;
    void add_primitive(Primitive const& p) override;
    void end_primitives() override;
    void end_primitives_2d() override;
    void add_trajectory(Trajectory const& t,
                        DrawStyle const& style,
                        AttValues const& atts) override;
    void add_hit(Hit const& h, DrawStyle const& style, AttValues const& atts) override;
    void end_session() override;

    int sessions() const { return sessions_; }

  private:
    enum class State
    {
        idle,
        open,
        solid_pre,
        solid_added,
        prims,
        prims_2d,
    };

    void expect(bool ok, char const* call);

    SceneSink* next_;
    State state_{State::idle};
    int sessions_{0};
};

/*!
 * Records one canonical text line per call, optionally forwarding.
 */
class RecordingSink : public SceneSink
{
  public:
    explicit RecordingSink(SceneSink* next = nullptr) : next_{next} {}

    void begin_session(ViewParameters const& view, SceneInfo const& info) override;
    void pre_add_solid(Transform const& t,
                       VisAttributes const& vis,
                       SolidContext const* ctx) override;
    void add_solid(Solid const& s) override;
    void post_add_solid() override;
    void begin_primitives(Transform const& t) override;
    void begin_primitives_2d() override;
    void add_primitive(Primitive const& p) override;
    void end_primitives() override;
    void end_primitives_2d() override;
    void add_trajectory(Trajectory const& t,
                        DrawStyle const& style,
                        AttValues const& atts) override;
    void add_hit(Hit const& h, DrawStyle const& style, AttValues const& atts) override;
    void end_session() override;

    std::vector<std::string> const& calls() const { return calls_; }
    //! Calls whose name (first word) matches.
    std::size_t count(std::string_view call) const;
    //! Lines recorded for transients (trajectories, hits).
    std::vector<std::string> transient_calls() const;
    void clear() { calls_.clear(); }

  private:
    void record(std::string line) { calls_.push_back(std::move(line)); }

    SceneSink* next_;
    std::vector<std::string> calls_;
};

//! Forwards every call to several sinks in order.
class TeeSink : public SceneSink
{
  public:
    explicit TeeSink(std::vector<SceneSink*> sinks) : sinks_{std::move(sinks)} {}

    void begin_session(ViewParameters const& view, SceneInfo const& info) override;
    void pre_add_solid(Transform const& t,
                       VisAttributes const& vis,
                       SolidContext const* ctx) override;
    void add_solid(Solid const& s) override;
    void post_add_solid() override;
    void begin_primitives(Transform const& t) override;
    void begin_primitives_2d() override;
    void add_primitive(Primitive const& p) override;
    void end_primitives() override;
    void end_primitives_2d() override;
    void add_trajectory(Trajectory const& t,
                        DrawStyle const& style,
                        AttValues const& atts) override;
    void add_hit(Hit const& h, DrawStyle const& style, AttValues const& atts) override;
    void end_session() override;

  private:
    std::vector<SceneSink*> sinks_;
};

}  // namespace multivis
