//---------------------------------------------------------------------------//
//! \file protocol.cpp
//---------------------------------------------------------------------------//
#include "multivis/drivers/protocol.hpp"

#include <sstream>

namespace multivis
{
//---------------------------------------------------------------------------//
// ProtocolChecker
//---------------------------------------------------------------------------//
void ProtocolChecker::expect(bool ok, char const* call)
{
    if (!ok)
    {
        throw ProtocolError(std::string("sink protocol violation: ") + call
                            + " in state " + std::to_string(static_cast<int>(state_)));
    }
}

void ProtocolChecker::begin_session(ViewParameters const& view, SceneInfo const& info)
{
    expect(state_ == State::idle, "begin_session");
    state_ = State::open;
    ++sessions_;
    if (next_)
        next_->begin_session(view, info);
}

void ProtocolChecker::pre_add_solid(Transform const& t,
                                    VisAttributes const& vis,
                                    SolidContext const* ctx)
{
    expect(state_ == State::open, "pre_add_solid");
    state_ = State::solid_pre;
    if (next_)
        next_->pre_add_solid(t, vis, ctx);
}

void ProtocolChecker::add_solid(Solid const& s)
{
    expect(state_ == State::solid_pre, "add_solid");
    state_ = State::solid_added;
    if (next_)
        next_->add_solid(s);
}

void ProtocolChecker::post_add_solid()
{
    expect(state_ == State::solid_added, "post_add_solid");
    state_ = State::open;
    if (next_)
        next_->post_add_solid();
}

void ProtocolChecker::begin_primitives(Transform const& t)
{
    expect(state_ == State::open, "begin_primitives");
    state_ = State::prims;
    if (next_)
        next_->begin_primitives(t);
}

void ProtocolChecker::begin_primitives_2d()
{
    expect(state_ == State::open, "begin_primitives_2d");
    state_ = State::prims_2d;
    if (next_)
        next_->begin_primitives_2d();
}

void ProtocolChecker::add_primitive(Primitive const& p)
{
    expect(state_ == State::prims || state_ == State::prims_2d, "add_primitive");
    if (next_)
        next_->add_primitive(p);
}

void ProtocolChecker::end_primitives()
{
    expect(state_ == State::prims, "end_primitives");
    state_ = State::open;
    if (next_)
        next_->end_primitives();
}

void ProtocolChecker::end_primitives_2d()
{
    expect(state_ == State::prims_2d, "end_primitives_2d");
    state_ = State::open;
    if (next_)
        next_->end_primitives_2d();
}

void ProtocolChecker::add_trajectory(Trajectory const& t,
                                     DrawStyle const& style,
                                     AttValues const& atts)
{
    expect(state_ == State::open, "add_trajectory");
    if (next_)
        next_->add_trajectory(t, style, atts);
}

void ProtocolChecker::add_hit(Hit const& h, DrawStyle const& style, AttValues const& atts)
{
    expect(state_ == State::open, "add_hit");
    if (next_)
        next_->add_hit(h, style, atts);
}

void ProtocolChecker::end_session()
{
    expect(state_ == State::open, "end_session");
    state_ = State::idle;
    if (next_)
        next_->end_session();
}

//---------------------------------------------------------------------------//
// RecordingSink
//---------------------------------------------------------------------------//
namespace
{
std::string fmt_transform(Transform const& t)
{
    std::ostringstream os;
    os.precision(9);
    for (auto const& r : t.rotation().rows())
        os << r;
    os << t.translation();
    return os.str();
}

std::string fmt_vis(VisAttributes const& v)
{
    std::ostringstream os;
    os << (v.visible ? "vis" : "invis") << ' ' << to_string(v.colour) << " w"
       << v.line_width << ' ' << to_cstring(v.line_style) << ' '
       << to_cstring(v.forced_style);
    return os.str();
}

std::string fmt_style(DrawStyle const& s)
{
    std::ostringstream os;
    os << to_string(s.colour) << (s.draw_line ? " line" : "")
       << (s.draw_points ? " points" : "") << " size" << s.point_size;
    return os.str();
}

std::string fmt_atts(AttValues const& atts)
{
    std::string out;
    for (auto const& a : atts)
        out += " " + a.key + "=" + a.value;
    return out;
}
}  // namespace

void RecordingSink::begin_session(ViewParameters const& view, SceneInfo const& info)
{
    record("begin_session " + info.scene_name);
    if (next_)
        next_->begin_session(view, info);
}

void RecordingSink::pre_add_solid(Transform const& t,
                                  VisAttributes const& vis,
                                  SolidContext const* ctx)
{
    std::string path = ctx && ctx->touchable ? to_string(ctx->touchable->path) : "-";
    record("pre_add_solid " + path + " " + fmt_transform(t) + " " + fmt_vis(vis));
    if (next_)
        next_->pre_add_solid(t, vis, ctx);
}

void RecordingSink::add_solid(Solid const& s)
{
    record("add_solid " + s.name() + " " + s.describe());
    if (next_)
        next_->add_solid(s);
}

void RecordingSink::post_add_solid()
{
    record("post_add_solid");
    if (next_)
        next_->post_add_solid();
}

void RecordingSink::begin_primitives(Transform const& t)
{
    record("begin_primitives " + fmt_transform(t));
    if (next_)
        next_->begin_primitives(t);
}

void RecordingSink::begin_primitives_2d()
{
    record("begin_primitives_2d");
    if (next_)
        next_->begin_primitives_2d();
}

void RecordingSink::add_primitive(Primitive const& p)
{
    std::ostringstream os;
    os << "add_primitive " << primitive_kind(p);
    std::visit(
        [&os](auto const& prim) {
            using T = std::decay_t<decltype(prim)>;
            if constexpr (std::is_same_v<T, Polyline> || std::is_same_v<T, Polymarker>)
            {
                for (auto const& pt : prim.points)
                    os << ' ' << pt;
            }
            else if constexpr (std::is_same_v<T, Text>)
            {
                os << ' ' << prim.position << " \"" << prim.content << "\"";
            }
            else if constexpr (std::is_same_v<T, MeshPrimitive>)
            {
                os << ' ' << prim.mesh.faces.size() << " faces";
            }
            else if constexpr (std::is_same_v<T, ScaleBar>)
            {
                os << ' ' << prim.annotation;
            }
            else
            {
                os << ' ' << prim.position << ' ' << prim.size;
            }
            os << ' ' << fmt_vis(prim.vis);
        },
        p);
    record(os.str());
    if (next_)
        next_->add_primitive(p);
}

void RecordingSink::end_primitives()
{
    record("end_primitives");
    if (next_)
        next_->end_primitives();
}

void RecordingSink::end_primitives_2d()
{
    record("end_primitives_2d");
    if (next_)
        next_->end_primitives_2d();
}

void RecordingSink::add_trajectory(Trajectory const& t,
                                   DrawStyle const& style,
                                   AttValues const& atts)
{
    std::ostringstream os;
    os << "add_trajectory " << fmt_style(style) << fmt_atts(atts) << " pts";
    for (auto const& p : t.points)
        os << ' ' << p.position;
    record(os.str());
    if (next_)
        next_->add_trajectory(t, style, atts);
}

void RecordingSink::add_hit(Hit const& h, DrawStyle const& style, AttValues const& atts)
{
    record("add_hit " + fmt_style(style) + fmt_atts(atts));
    if (next_)
        next_->add_hit(h, style, atts);
}

void RecordingSink::end_session()
{
    record("end_session");
    if (next_)
        next_->end_session();
}

std::size_t RecordingSink::count(std::string_view call) const
{
    std::size_t n = 0;
    for (auto const& c : calls_)
    {
        std::string_view head = std::string_view(c).substr(0, c.find(' '));
        n += head == call;
    }
    return n;
}

std::vector<std::string> RecordingSink::transient_calls() const
{
    std::vector<std::string> out;
    for (auto const& c : calls_)
    {
        if (c.rfind("add_trajectory", 0) == 0 || c.rfind("add_hit", 0) == 0)
            out.push_back(c);
    }
    return out;
}

//---------------------------------------------------------------------------//
// TeeSink
//---------------------------------------------------------------------------//
void TeeSink::begin_session(ViewParameters const& view, SceneInfo const& info)
{
    for (auto* s : sinks_)
        s->begin_session(view, info);
}

void TeeSink::pre_add_solid(Transform const& t, VisAttributes const& vis, SolidContext const* ctx)
{
    for (auto* s : sinks_)
        s->pre_add_solid(t, vis, ctx);
}

void TeeSink::add_solid(Solid const& solid)
{
    for (auto* s : sinks_)
        s->add_solid(solid);
}

void TeeSink::post_add_solid()
{
    for (auto* s : sinks_)
        s->post_add_solid();
}

void TeeSink::begin_primitives(Transform const& t)
{
    for (auto* s : sinks_)
        s->begin_primitives(t);
}

void TeeSink::begin_primitives_2d()
{
    for (auto* s : sinks_)
        s->begin_primitives_2d();
}

void TeeSink::add_primitive(Primitive const& p)
{
    for (auto* s : sinks_)
        s->add_primitive(p);
}

void TeeSink::end_primitives()
{
    for (auto* s : sinks_)
        s->end_primitives();
}

void TeeSink::end_primitives_2d()
{
    for (auto* s : sinks_)
        s->end_primitives_2d();
}

void TeeSink::add_trajectory(Trajectory const& t, DrawStyle const& style, AttValues const& atts)
{
    for (auto* s : sinks_)
        s->add_trajectory(t, style, atts);
}

void TeeSink::add_hit(Hit const& h, DrawStyle const& style, AttValues const& atts)
{
    for (auto* s : sinks_)
        s->add_hit(h, style, atts);
}

void TeeSink::end_session()
{
    for (auto* s : sinks_)
        s->end_session();
}

}  // namespace multivis
