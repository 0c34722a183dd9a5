#include "dhk/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dhk::harness
{
namespace
{
void write_value(nlohmann::ordered_json const& j, std::string& out, int indent,
                 int depth)
{
    auto newline = [&](int d) {
        if (indent < 0)
            return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type())
    {
    case nlohmann::json::value_t::number_float:
    {
        double v = j.get<double>();
        out += std::isfinite(v) ? format_double(v) : "null";
        return;
    }
    case nlohmann::json::value_t::array:
    {
        if (j.empty())
        {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (auto const& e : j)
        {
            if (!first)
                out += ',';
            first = false;
            newline(depth + 1);
            write_value(e, out, indent, depth + 1);
        }
        newline(depth);
        out += ']';
        return;
    }
    case nlohmann::json::value_t::object:
    {
        if (j.empty())
        {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto const& [k, v] : j.items())
        {
            if (!first)
                out += ',';
            first = false;
            newline(depth + 1);
            out += nlohmann::json(k).dump();
            out += indent < 0 ? ":" : ": ";
            write_value(v, out, indent, depth + 1);
        }
        newline(depth);
        out += '}';
        return;
    }
    default:
        out += j.dump();
    }
}

nlohmann::ordered_json point_json(Point const& p)
{
    auto a = nlohmann::ordered_json::array();
    for (double c : p.coords())
        a.push_back(c);
    return a;
}

std::string csv_field(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
    {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + '"';
}

std::string csv(Report const& r)
{
    std::vector<std::string> value_cols;
    std::vector<std::string> ratio_cols;
    auto note = [](std::vector<std::string>& cols, std::string const& n) {
        if (std::find(cols.begin(), cols.end(), n) == cols.end())
            cols.push_back(n);
    };
    for (auto const& row : r.rows)
    {
        for (auto const& [n, v] : row.values)
            note(value_cols, n);
        for (auto const& q : row.ratios)
            note(ratio_cols, q.name);
    }

    std::string out = "label,t,x,y";
    for (auto const& c : value_cols)
        out += ',' + csv_field(c);
    for (auto const& c : ratio_cols)
        out += ",ratio:" + csv_field(c);
    out += '\n';

    for (auto const& row : r.rows)
    {
        out += csv_field(row.label) + ',' + format_double(row.t) + ',';
        if (row.x)
            out += geometry::format_point(*row.x, ';');
        out += ',';
        if (row.y)
            out += geometry::format_point(*row.y, ';');
        for (auto const& c : value_cols)
        {
            out += ',';
            auto it = std::find_if(row.values.begin(), row.values.end(),
                                   [&](auto const& p) { return p.first == c; });
            if (it != row.values.end())
                out += format_double(it->second);
        }
        for (auto const& c : ratio_cols)
        {
            out += ',';
            auto it = std::find_if(row.ratios.begin(), row.ratios.end(),
                                   [&](auto const& q) { return q.name == c; });
            if (it != row.ratios.end())
                out += format_double(it->value);
        }
        out += '\n';
    }
    return out;
}

std::string plotdata(Report const& r)
{
    std::string out;
    for (auto const& s : r.plots)
    {
        out += "# " + s.name + '\n';
        for (auto const& [a, b] : s.points)
            out += format_double(a) + ' ' + format_double(b) + '\n';
        out += '\n';
    }
    return out;
}

}  // namespace

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void Row::set(std::string const& name, double v)
{
    for (auto& [n, old] : values)
    {
        if (n == name)
        {
            old = v;
            return;
        }
    }
    values.emplace_back(name, v);
}

double Row::value(std::string_view name) const
{
    for (auto const& [n, v] : values)
        if (n == name)
            return v;
    throw std::out_of_range("row has no value " + std::string(name));
}

void Row::add_bound(bounds::BoundBreakdown const& b)
{
    bounds.push_back(b);
    set(std::string(bounds::to_string(b.kind)), b.value);
}

void Row::add_oracle(oracle::McEstimate const& est)
{
    oracle = est;
    set("oracle", est.mean);
    set("oracle_stderr", est.std_error);
}

double Row::add_ratio(std::string const& name, std::string const& numerator,
                      std::string const& denominator)
{
    double v = value(numerator) / value(denominator);
    ratios.push_back({name, numerator, denominator, v});
    return v;
}

bool Report::pass() const
{
    return std::all_of(checks.begin(), checks.end(),
                       [](Check const& c) { return c.pass; });
}

void Report::summarize(std::string const& n, double v)
{
    for (auto& [k, old] : summary)
    {
        if (k == n)
        {
            old = v;
            return;
        }
    }
    summary.emplace_back(n, v);
}

double Report::summary_value(std::string_view n) const
{
    for (auto const& [k, v] : summary)
        if (k == n)
            return v;
    throw std::out_of_range("report has no summary value " + std::string(n));
}

void Report::check(std::string const& n, bool ok, std::string detail)
{
    checks.push_back({n, ok, std::move(detail)});
}

nlohmann::ordered_json Report::to_json() const
{
    nlohmann::ordered_json j;
    j["name"] = name;
    j["seed"] = seed;
    j["wall_clock_ceiling_s"] = wall_clock_ceiling_s;
    j["pass"] = pass();

    auto s = nlohmann::ordered_json::object();
    for (auto const& [k, v] : summary)
        s[k] = v;
    j["summary"] = s;

    auto cs = nlohmann::ordered_json::array();
    for (auto const& c : checks)
        cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = cs;

    auto rs = nlohmann::ordered_json::array();
    for (auto const& row : rows)
    {
        nlohmann::ordered_json o;
        o["label"] = row.label;
        o["t"] = row.t;
        if (row.x)
            o["x"] = point_json(*row.x);
        if (row.y)
            o["y"] = point_json(*row.y);
        auto vals = nlohmann::ordered_json::object();
        for (auto const& [k, v] : row.values)
            vals[k] = v;
        o["values"] = vals;
        if (!row.bounds.empty())
        {
            auto bs = nlohmann::ordered_json::array();
            for (auto const& b : row.bounds)
                bs.push_back(b.to_json());
            o["bounds"] = bs;
        }
        if (row.oracle)
            o["oracle"] = row.oracle->to_json();
        auto rat = nlohmann::ordered_json::array();
        for (auto const& q : row.ratios)
            rat.push_back({{"name", q.name},
                           {"numerator", q.numerator},
                           {"denominator", q.denominator},
                           {"value", q.value}});
        o["ratios"] = rat;
        rs.push_back(o);
    }
    j["rows"] = rs;

    if (!notes.empty())
        j["notes"] = notes;
    if (!attachments.empty())
        j["attachments"] = attachments;
    return j;
}

double ratio_recompute_error(Report const& r)
{
    double worst = 0;
    for (auto const& row : r.rows)
    {
        for (auto const& q : row.ratios)
        {
            double v = row.value(q.numerator) / row.value(q.denominator);
            if (v == q.value || (std::isnan(v) && std::isnan(q.value)))
                continue;
            worst = std::max(worst, std::abs(v - q.value)
                                        / std::max(std::abs(v), 1e-300));
        }
    }
    return worst;
}

std::string dump_json(nlohmann::ordered_json const& j, int indent)
{
    std::string out;
    write_value(j, out, indent, 0);
    return out;
}

std::string emit_report(Report const& r, ReportFormat format)
{
    switch (format)
    {
    case ReportFormat::json:
        return dump_json(r.to_json()) + '\n';
    case ReportFormat::csv:
        return csv(r);
    case ReportFormat::plotdata:
        return plotdata(r);
    }
    throw std::invalid_argument("unknown report format");
}

void write_report(Report const& r, ReportFormat format, std::string const& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path + " for writing");
    f << emit_report(r, format);
    if (!f)
        throw std::runtime_error("failed writing " + path);
}

}  // namespace dhk::harness
