#include "cyberevo/harness/trace_io.hpp"

#include "cyberevo/kv_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace cyberevo::harness {

namespace {

std::string number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string_view> data_lines(std::string_view text) {
    std::vector<std::string_view> out;
    for (auto line : split(text, '\n')) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        out.push_back(line);
    }
    return out;
}

} // namespace

std::string trace_csv(const evo::FitnessTrace& trace, const std::vector<std::string>& header_lines) {
    std::string out = "# cyberevo fitness trace v1\n";
    for (const auto& h : header_lines) out += "# " + h + "\n";
    out += kTraceColumns;
    out += '\n';
    for (const auto& r : trace) {
        out += std::to_string(r.trial) + ',' + std::to_string(r.iteration) + ',' + std::string(to_string(r.side)) + ',' +
               r.algorithm + ',' + number(r.best) + ',' + number(r.mean) + ',' + std::to_string(r.episodes) + ',' +
               number(r.wall_time) + '\n';
    }
    return out;
}

evo::FitnessTrace parse_trace_csv(std::string_view text, std::string_view origin) {
    const auto lines = data_lines(text);
    if (lines.empty() || lines.front() != kTraceColumns)
        throw Error(std::string(origin) + ": not a fitness trace (expected columns " + std::string(kTraceColumns) + ")");
    evo::FitnessTrace trace;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split(lines[i], ',');
        const std::string where = std::string(origin) + " row " + std::to_string(i);
        if (f.size() != 8) throw Error(where + ": expected 8 fields");
        evo::TraceRow r;
        r.trial = static_cast<int>(parse_int(f[0], where));
        r.iteration = static_cast<int>(parse_int(f[1], where));
        r.side = parse_side(trim(f[2]));
        r.algorithm = std::string(trim(f[3]));
        r.best = parse_double(f[4], where);
        r.mean = parse_double(f[5], where);
        r.episodes = static_cast<std::size_t>(parse_int(f[6], where));
        r.wall_time = parse_double(f[7], where);
        trace.push_back(std::move(r));
    }
    return trace;
}

evo::FitnessTrace read_trace(const std::filesystem::path& path) {
    return parse_trace_csv(read_file(path.string()), path.string());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::vector<SummaryRow> summarize(const std::vector<evo::FitnessTrace>& traces) {
    std::map<std::tuple<std::string, int, int>, SummaryRow> groups;
    for (const auto& trace : traces)
        for (const auto& r : trace) {
            auto& g = groups[{r.algorithm, static_cast<int>(r.side), r.iteration}];
            g.algorithm = r.algorithm;
            g.side = r.side;
            g.iteration = r.iteration;
            ++g.trials;
            g.best += r.best;
            g.mean += r.mean;
        }
    std::vector<SummaryRow> out;
    for (auto& [key, g] : groups) {
        g.best /= static_cast<double>(g.trials);
        g.mean /= static_cast<double>(g.trials);
        out.push_back(g);
    }
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "# cyberevo fitness summary v1\n";
    out += kSummaryColumns;
    out += '\n';
    for (const auto& r : rows)
        out += r.algorithm + ',' + std::string(to_string(r.side)) + ',' + std::to_string(r.iteration) + ',' +
               std::to_string(r.trials) + ',' + number(r.best) + ',' + number(r.mean) + '\n';
    return out;
}

std::vector<DampeningEntry> dampening(const std::vector<SummaryRow>& rows) {
    std::map<std::pair<std::string, int>, double> peak;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.algorithm, static_cast<int>(r.side));
        auto it = peak.find(key);
        if (it == peak.end()) peak.emplace(key, r.best);
        else it->second = std::max(it->second, r.best);
    }
    std::vector<DampeningEntry> out;
    for (const auto& [key, best] : peak) {
        const std::string& label = key.first;
        std::size_t pos = std::string::npos;
        for (std::size_t p = label.find("-C"); p != std::string::npos; p = label.find("-C", p + 1))
            if (p + 2 == label.size() || label[p + 2] == '-') pos = p;
        if (pos == std::string::npos) continue;
        const Side side = static_cast<Side>(key.second);
        std::string one_sided = label;
        one_sided[pos + 1] = side == Side::Red ? 'R' : 'B';
        const auto other = peak.find({one_sided, key.second});
        if (other == peak.end()) continue;
        out.push_back({label, one_sided, side, best, other->second, best < other->second});
    }
    return out;
}

std::string dampening_report(const std::vector<DampeningEntry>& entries) {
    std::ostringstream out;
    out << "Dampening (coevolved best vs one-sided best, peak cross-trial mean):\n";
    if (entries.empty()) out << "  no coevolution run with a matching one-sided run\n";
    for (const auto& e : entries) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "  %s %s: %.3f vs %s %.3f -> %s\n", e.coevolved.c_str(),
                      std::string(to_string(e.side)).c_str(), e.coevolved_best, e.one_sided.c_str(), e.one_sided_best,
                      e.dampened ? "dampened" : "not dampened");
        out << buf;
    }
    return out.str();
}

} // namespace cyberevo::harness
