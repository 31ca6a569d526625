#include "cyberevo/ctrl/classifier.hpp"

#include "cyberevo/embedded_data.hpp"
#include "cyberevo/kv_config.hpp"

#include <algorithm>

namespace cyberevo::ctrl {

namespace {

constexpr std::array<std::string_view, kRedFeatureCount> kRedNames{"host_scanned", "host_user", "host_root",
                                                                   "fresh_discovery"};
constexpr std::array<std::string_view, kBlueFeatureCount> kBlueNames{
    "net_suspicious", "net_compromised", "host_analysed_clean", "host_suspicious", "host_compromised"};

const sim::HostRecord* find_record(std::span<const sim::HostRecord> records, sim::HostId h) {
    if (h == sim::kNoHost) return nullptr;
    // Blue records are indexed by host id; red records follow discovery order.
    if (h < records.size() && records[h].host == h) return &records[h];
    for (const auto& r : records)
        if (r.host == h) return &r;
    return nullptr;
}

int suspicious(const sim::HostRecord& r) { return r.connections + r.processes; }
int compromised(const sim::HostRecord& r) {
    return r.user_files + r.root_files + (r.decoy_alert ? 1 : 0) + r.user_sessions + r.root_sessions;
}

} // namespace

std::span<const std::string_view> feature_names(Side side) noexcept {
    if (side == Side::Red) return kRedNames;
    return kBlueNames;
}

std::vector<int> extract_features(const sim::Observation& obs, const sim::AgentView& view, sim::HostId focus) {
    const auto records = obs.records();
    const sim::HostRecord* rec = find_record(records, focus);
    if (view.side == Side::Red) {
        std::vector<int> f(kRedFeatureCount, 0);
        if (rec) {
            f[static_cast<std::size_t>(RedFeature::HostScanned)] = rec->scanned ? 1 : 0;
            f[static_cast<std::size_t>(RedFeature::HostUser)] = rec->user_sessions + rec->root_sessions > 0 ? 1 : 0;
            f[static_cast<std::size_t>(RedFeature::HostRoot)] = rec->root_sessions > 0 ? 1 : 0;
        }
        f[static_cast<std::size_t>(RedFeature::FreshDiscovery)] = view.fresh_discoveries;
        return f;
    }
    std::vector<int> f(kBlueFeatureCount, 0);
    for (const auto& r : records) {
        if (std::find(view.zones.begin(), view.zones.end(), r.zone) == view.zones.end()) continue;
        f[static_cast<std::size_t>(BlueFeature::NetSuspicious)] += suspicious(r);
        f[static_cast<std::size_t>(BlueFeature::NetCompromised)] += compromised(r);
    }
    if (rec) {
        f[static_cast<std::size_t>(BlueFeature::HostAnalysedClean)] =
            view.last_analysed == focus && view.last_analysis_clean ? 1 : 0;
        f[static_cast<std::size_t>(BlueFeature::HostSuspicious)] = suspicious(*rec);
        f[static_cast<std::size_t>(BlueFeature::HostCompromised)] = compromised(*rec);
    }
    return f;
}

StateClassifier StateClassifier::parse(std::string_view text, Side side) {
    StateClassifier c;
    c.side_ = side;
    const auto names = feature_names(side);
    const std::string wanted = side == Side::Red ? "[red]" : "[blue]";
    bool in_section = false;
    std::size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            in_section = line == wanted;
            continue;
        }
        if (!in_section) continue;
        const auto where = "classifier line " + std::to_string(line_no) + ": ";
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw Error(where + "expected 'STATE: condition'");
        StateRule rule{std::string(trim(line.substr(0, colon))), {}};
        const auto cond = trim(line.substr(colon + 1));
        if (cond != "always") {
            for (auto term_text : split(cond, ',')) {
                const auto parts = split(term_text, ' ');
                std::vector<std::string_view> words;
                for (auto p : parts)
                    if (!p.empty()) words.push_back(p);
                if (words.size() != 3) throw Error(where + "expected '<feature> <op> <value>'");
                Term term;
                const auto f = std::find(names.begin(), names.end(), words[0]);
                if (f == names.end()) throw Error(where + "unknown feature '" + std::string(words[0]) + "'");
                term.feature = static_cast<std::size_t>(f - names.begin());
                if (words[1] == ">") term.op = Op::Greater;
                else if (words[1] == ">=") term.op = Op::GreaterEqual;
                else if (words[1] == "<") term.op = Op::Less;
                else if (words[1] == "<=") term.op = Op::LessEqual;
                else if (words[1] == "==") term.op = Op::Equal;
                else throw Error(where + "unknown operator '" + std::string(words[1]) + "'");
                term.value = static_cast<int>(parse_int(words[2], "classifier threshold"));
                rule.terms.push_back(term);
            }
        }
        c.rules_.push_back(std::move(rule));
    }
    if (c.rules_.empty()) throw Error("classifier has no " + wanted + " states");
    return c;
}

const StateClassifier& StateClassifier::standard(Side side) {
    static const StateClassifier red = parse(embedded_file("classifier.txt"), Side::Red);
    static const StateClassifier blue = parse(embedded_file("classifier.txt"), Side::Blue);
    return side == Side::Red ? red : blue;
}

std::size_t StateClassifier::classify(std::span<const int> features) const {
    const auto holds = [&](const Term& t) {
        const int v = features[t.feature];
        switch (t.op) {
        case Op::Greater:
            return v > t.value;
        case Op::GreaterEqual:
            return v >= t.value;
        case Op::Less:
            return v < t.value;
        case Op::LessEqual:
            return v <= t.value;
        case Op::Equal:
            return v == t.value;
        }
        return false;
    };
    if (features.size() != feature_names(side_).size()) throw Error("classifier: wrong feature count");
    for (std::size_t i = rules_.size(); i-- > 0;)
        if (std::all_of(rules_[i].terms.begin(), rules_[i].terms.end(), holds)) return i;
    throw Error("classifier: no state matches");
}

} // namespace cyberevo::ctrl
