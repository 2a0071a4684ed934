//---------------------------------------------------------------------------//
//! \file drivers/vector_writer.cpp
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "multivis/drivers/painter.hpp"

namespace multivis
{
namespace
{
std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string xml_escape(std::string const& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string dash_attr(LineStyle s, double width)
{
    switch (s)
    {
        case LineStyle::dashed: return " stroke-dasharray=\"" + num(4 * width) + "," + num(3 * width) + "\"";
        case LineStyle::dotted: return " stroke-dasharray=\"" + num(width) + "," + num(2 * width) + "\"";
        default: return {};
    }
}

std::string opacity_attr(char const* what, Colour const& c)
{
    if (!c.transparent())
        return {};
    return std::string{" "} + what + "-opacity=\"" + num(c.alpha()) + "\"";
}

char const* anchor(TextLayout l)
{
    switch (l)
    {
        case TextLayout::centre: return "middle";
        case TextLayout::right: return "end";
        default: return "start";
    }
}
}  // namespace

//---------------------------------------------------------------------------//
void write_svg(std::ostream& os, PainterSink const& painter)
{
    Camera const& cam = painter.camera();
    int w = cam.width();
    int h = cam.height();
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
       << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
       << "\" fill=\"" << to_hex(painter.view().background) << "\"/>\n";

    for (auto const& item : painter.items())
    {
        std::string cls = " class=\"" + item.group + "\"";
        std::string col = to_hex(item.colour);
        switch (item.kind)
        {
            case PaintKind::line:
                if (item.points.size() == 2)
                {
                    os << "<line" << cls << " x1=\"" << num(item.points[0].x) << "\" y1=\""
                       << num(item.points[0].y) << "\" x2=\"" << num(item.points[1].x)
                       << "\" y2=\"" << num(item.points[1].y) << '"';
                }
                else
                {
                    os << "<polyline" << cls << " fill=\"none\" points=\"";
                    for (std::size_t i = 0; i < item.points.size(); ++i)
                    {
                        os << (i ? " " : "") << num(item.points[i].x) << ','
                           << num(item.points[i].y);
                    }
                    os << '"';
                }
                os << " stroke=\"" << col << "\" stroke-width=\"" << num(item.width) << '"'
                   << opacity_attr("stroke", item.colour)
                   << dash_attr(item.line_style, item.width) << "/>\n";
                break;
            case PaintKind::polygon:
                os << "<polygon" << cls << " points=\"";
                for (std::size_t i = 0; i < item.points.size(); ++i)
                {
                    os << (i ? " " : "") << num(item.points[i].x) << ','
                       << num(item.points[i].y);
                }
                os << "\" fill=\"" << col << '"' << opacity_attr("fill", item.colour)
                   << " stroke=\"none\"/>\n";
                break;
            case PaintKind::circle:
                os << "<circle" << cls << " cx=\"" << num(item.points[0].x) << "\" cy=\""
                   << num(item.points[0].y) << "\" r=\"" << num(0.5 * item.width)
                   << "\" fill=\"" << col << '"' << opacity_attr("fill", item.colour)
                   << "/>\n";
                break;
            case PaintKind::square:
                os << "<rect" << cls << " x=\"" << num(item.points[0].x - 0.5 * item.width)
                   << "\" y=\"" << num(item.points[0].y - 0.5 * item.width) << "\" width=\""
                   << num(item.width) << "\" height=\"" << num(item.width) << "\" fill=\""
                   << col << '"' << opacity_attr("fill", item.colour) << "/>\n";
                break;
            case PaintKind::text:
                os << "<text" << cls << " x=\"" << num(item.points[0].x) << "\" y=\""
                   << num(item.points[0].y) << "\" font-size=\"" << num(item.text_size)
                   << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor(item.layout)
                   << "\" fill=\"" << col << "\">" << xml_escape(item.text) << "</text>\n";
                break;
        }
    }
    os << "</svg>\n";
}

//---------------------------------------------------------------------------//
namespace
{
std::string ps_string(std::string const& s)
{
    std::string out = "(";
    for (char c : s)
    {
        if (c == '(' || c == ')' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + ")";
}

std::string ps_colour(Colour const& c)
{
    return num(c.red()) + " " + num(c.green()) + " " + num(c.blue()) + " setrgbcolor";
}
}  // namespace

void write_eps(std::ostream& os, PainterSink const& painter)
{
    Camera const& cam = painter.camera();
    double w = cam.width();
    double h = cam.height();

    // Bounding box of everything drawn, clipped to the window.
    double x0 = w, y0 = h, x1 = 0, y1 = 0;
    for (auto const& item : painter.items())
    {
        double pad = item.kind == PaintKind::text ? item.text_size : 0.5 * item.width;
        for (auto const& p : item.points)
        {
            x0 = std::min(x0, p.x - pad);
            x1 = std::max(x1, p.x + pad);
            y0 = std::min(y0, p.y - pad);
            y1 = std::max(y1, p.y + pad);
        }
    }
    if (x1 < x0 || y1 < y0)
    {
        x0 = y0 = 0;
        x1 = w;
        y1 = h;
    }
    x0 = std::clamp(x0, 0.0, w);
    x1 = std::clamp(x1, 0.0, w);
    y0 = std::clamp(y0, 0.0, h);
    y1 = std::clamp(y1, 0.0, h);
    // PostScript y grows upward.
    int bx0 = static_cast<int>(std::floor(x0));
    int by0 = static_cast<int>(std::floor(h - y1));
    int bx1 = static_cast<int>(std::ceil(x1));
    int by1 = static_cast<int>(std::ceil(h - y0));

    os << "%!PS-Adobe-3.0 EPSF-3.0\n"
       << "%%BoundingBox: " << bx0 << ' ' << by0 << ' ' << bx1 << ' ' << by1 << '\n'
       << "%%Creator: multivis\n"
       << "%%EndComments\n"
       << "/Helvetica findfont 12 scalefont setfont\n"
       << ps_colour(painter.view().background) << '\n'
       << "newpath " << bx0 << ' ' << by0 << " moveto " << bx1 << ' ' << by0 << " lineto "
       << bx1 << ' ' << by1 << " lineto " << bx0 << ' ' << by1 << " lineto closepath fill\n";

    auto pt = [h](Vec3 const& p) { return num(p.x) + " " + num(h - p.y); };
    for (auto const& item : painter.items())
    {
        os << ps_colour(item.colour) << '\n';
        switch (item.kind)
        {
            case PaintKind::line:
                os << num(item.width) << " setlinewidth ";
                if (item.line_style == LineStyle::dashed)
                    os << "[4 3] 0 setdash ";
                else if (item.line_style == LineStyle::dotted)
                    os << "[1 2] 0 setdash ";
                else
                    os << "[] 0 setdash ";
                os << "newpath " << pt(item.points[0]) << " moveto";
                for (std::size_t i = 1; i < item.points.size(); ++i)
                    os << ' ' << pt(item.points[i]) << " lineto";
                os << " stroke\n";
                break;
            case PaintKind::polygon:
                os << "newpath " << pt(item.points[0]) << " moveto";
                for (std::size_t i = 1; i < item.points.size(); ++i)
                    os << ' ' << pt(item.points[i]) << " lineto";
                os << " closepath fill\n";
                break;
            case PaintKind::circle:
                os << "newpath " << pt(item.points[0]) << ' ' << num(0.5 * item.width)
                   << " 0 360 arc fill\n";
                break;
            case PaintKind::square:
            {
                double s = item.width;
                os << "newpath " << num(item.points[0].x - 0.5 * s) << ' '
                   << num(h - item.points[0].y - 0.5 * s) << ' ' << num(s) << ' ' << num(s)
                   << " rectfill\n";
                break;
            }
            case PaintKind::text:
            {
                os << "/Helvetica findfont " << num(item.text_size) << " scalefont setfont ";
                os << "newpath " << pt(item.points[0]) << " moveto ";
                std::string str = ps_string(item.text);
                if (item.layout == TextLayout::centre)
                    os << str << " dup stringwidth pop -2 div 0 rmoveto show\n";
                else if (item.layout == TextLayout::right)
                    os << str << " dup stringwidth pop neg 0 rmoveto show\n";
                else
                    os << str << " show\n";
                break;
            }
        }
    }
    os << "showpage\n%%EOF\n";
}

}  // namespace multivis
