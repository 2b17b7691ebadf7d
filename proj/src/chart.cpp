#include "sseq/chart.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sseq {

ChartFormat chart_format_from(const std::string& name)
{
    if (name == "text")
        return ChartFormat::Text;
    if (name == "svg")
        return ChartFormat::Svg;
    if (name == "csv")
        return ChartFormat::Csv;
    throw std::invalid_argument("unknown chart format '" + name + "'");
}

namespace {

struct Bounds {
    int x_lo = 0, x_hi = 0, s_lo = 0, s_hi = 0;
    bool empty = true;
};

Bounds bounds_of(const Page& page)
{
    Bounds b;
    for (const auto& [bd, d] : page.module.dims) {
        int x = bd.t - bd.s;
        if (b.empty) {
            b = Bounds{x, x, bd.s, bd.s, false};
        } else {
            b.x_lo = std::min(b.x_lo, x);
            b.x_hi = std::max(b.x_hi, x);
            b.s_lo = std::min(b.s_lo, bd.s);
            b.s_hi = std::max(b.s_hi, bd.s);
        }
    }
    return b;
}

std::string csv_chart(const Page& page)
{
    std::ostringstream os;
    os << "s,t,dim\n";
    for (const auto& [bd, d] : page.module.dims)
        os << bd.s << "," << bd.t << "," << d << "\n";
    return os.str();
}

std::string text_chart(const Page& page)
{
    std::ostringstream os;
    os << "page r=" << page.r << " (columns t-s, rows s)\n";
    Bounds b = bounds_of(page);
    if (b.empty) {
        os << "(empty)\n";
        return os.str();
    }
    auto cell = [&](int s, int x) -> std::string {
        int d = page.module.dim({s, x + s});
        return d ? std::to_string(d) : ".";
    };
    os << "  s\\x";
    for (int x = b.x_lo; x <= b.x_hi; ++x) {
        std::string h = std::to_string(x);
        os << std::string(4 - std::min<std::size_t>(3, h.size()), ' ') << h;
    }
    os << "\n";
    for (int s = b.s_hi; s >= b.s_lo; --s) {
        std::string h = std::to_string(s);
        os << std::string(5 - std::min<std::size_t>(4, h.size()), ' ') << h;
        for (int x = b.x_lo; x <= b.x_hi; ++x) {
            std::string c = cell(s, x);
            os << std::string(4 - std::min<std::size_t>(3, c.size()), ' ') << c;
        }
        os << "\n";
    }
    return os.str();
}

/* Pixel coordinate with two exact decimal digits, computed in integers. */
std::string px(long long num, long long den)
{
    long long scaled = num * 100 / den;
    long long whole = scaled / 100;
    long long frac = scaled % 100;
    if (frac < 0) {
        frac += 100;
        whole -= 1;
    }
    std::ostringstream os;
    os << whole << "." << (frac < 10 ? "0" : "") << frac;
    return os.str();
}

std::string svg_chart(const Page& page, const std::optional<LineSpec>& line)
{
    const int cell = 40;
    const int margin = 50;
    Bounds b = bounds_of(page);
    if (b.empty)
        b = Bounds{0, 0, 0, 0, false};
    if (line) {
        // Pad a row on each side so the overlay is visible at the edges.
        b.s_lo -= 1;
        b.s_hi += 1;
    }
    int width = margin * 2 + (b.x_hi - b.x_lo + 1) * cell;
    int height = margin * 2 + (b.s_hi - b.s_lo + 1) * cell;
    auto cx = [&](int x) { return margin + (x - b.x_lo) * cell + cell / 2; };
    auto cy = [&](int s) { return margin + (b.s_hi - s) * cell + cell / 2; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height
       << "\" fill=\"white\" stroke=\"none\"/>\n";
    for (int x = b.x_lo; x <= b.x_hi; ++x)
        os << "<text x=\"" << cx(x) << "\" y=\"" << height - margin / 2
           << "\" font-size=\"12\" text-anchor=\"middle\">" << x << "</text>\n";
    for (int s = b.s_lo; s <= b.s_hi; ++s)
        os << "<text x=\"" << margin / 2 << "\" y=\"" << cy(s) + 4
           << "\" font-size=\"12\" text-anchor=\"middle\">" << s << "</text>\n";
    for (const auto& [bd, d] : page.module.dims) {
        int x = bd.t - bd.s;
        os << "<circle cx=\"" << cx(x) << "\" cy=\"" << cy(bd.s)
           << "\" r=\"6\" fill=\"black\"/>\n";
        if (d > 1)
            os << "<text x=\"" << cx(x) + 10 << "\" y=\"" << cy(bd.s) - 6
               << "\" font-size=\"11\">" << d << "</text>\n";
    }
    if (line) {
        // s = m x + b at the left and right edges of the drawn window.
        auto y_at = [&](long long xnum, long long xden) {
            // s-value as a rational m*(x) + b
            Rational s = line->m * Rational(xnum, xden) + line->b;
            // pixel: margin + (s_hi - s + 1/2) * cell
            long long num = (static_cast<long long>(b.s_hi) * s.den - s.num) * 2 * cell +
                            static_cast<long long>(s.den) * cell;
            long long den = 2 * s.den;
            return px(num + 2LL * margin * s.den, den);
        };
        long long x_left_num = 2LL * b.x_lo - 1, x_right_num = 2LL * b.x_hi + 1;
        os << "<line x1=\"" << margin << "\" y1=\"" << y_at(x_left_num, 2) << "\" x2=\""
           << width - margin << "\" y2=\"" << y_at(x_right_num, 2)
           << "\" stroke=\"red\" stroke-width=\"1\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string emit_chart(const Page& page, ChartFormat format, const std::optional<LineSpec>& line)
{
    switch (format) {
    case ChartFormat::Csv:
        return csv_chart(page);
    case ChartFormat::Text:
        return text_chart(page);
    case ChartFormat::Svg:
        return svg_chart(page, line);
    }
    throw std::invalid_argument("unknown chart format");
}

}  // namespace sseq
