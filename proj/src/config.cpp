#include "synforge/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace synforge {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ParseError("expected a number, got '" + v + "'", line);
    }
}

uint64_t parse_uint(const std::string& v, int line) {
    uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ParseError("expected a non-negative integer, got '" + v + "'", line);
    return out;
}

struct RawConfig {
    // (section, key) -> (value, line)
    std::map<std::pair<std::string, std::string>, std::pair<std::string, int>> kv;
    bool has(const std::string& s, const std::string& k) const { return kv.count({s, k}) > 0; }
};

RawConfig read_raw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    RawConfig raw;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        size_t hash = t.find('#');
        if (hash != std::string::npos) t = trim(t.substr(0, hash));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ParseError("unterminated section header", line_no);
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) throw ParseError("empty section name", line_no);
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no);
        if (section.empty()) throw ParseError("key outside any section", line_no);
        if (raw.kv.count({section, key}))
            throw ParseError("duplicate key '" + key + "'", line_no);
        raw.kv[{section, key}] = {val, line_no};
    }
    return raw;
}

PauliChannel parse_channel(const RawConfig& raw) {
    auto get = [&](const std::string& k) -> const std::pair<std::string, int>& {
        auto it = raw.kv.find({"channel", k});
        if (it == raw.kv.end()) throw ParseError("[channel] is missing key '" + k + "'");
        return it->second;
    };
    const auto& [type, type_line] = get("type");

    if (type == "qber") return PauliChannel::for_qber(parse_double(get("qber").first, get("qber").second));
    if (type == "depolarizing")
        return PauliChannel::depolarizing(parse_double(get("q").first, get("q").second));
    if (type == "iid") {
        return PauliChannel::iid(parse_double(get("p_i").first, get("p_i").second),
                                 parse_double(get("p_x").first, get("p_x").second),
                                 parse_double(get("p_y").first, get("p_y").second),
                                 parse_double(get("p_z").first, get("p_z").second));
    }
    if (type == "correlated") {
        size_t pairs = parse_uint(get("pairs").first, get("pairs").second);
        const auto& [spec, line] = get("components");
        std::vector<PauliChannel::Component> comps;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            size_t colon = item.find(':');
            if (colon == std::string::npos)
                throw ParseError("component must be 'prob:paulistring'", line);
            PauliChannel::Component c;
            c.prob = parse_double(trim(item.substr(0, colon)), line);
            try {
                c.op = PauliOp::from_string(trim(item.substr(colon + 1)));
            } catch (const ValidationError& e) {
                throw ParseError(e.what(), line);
            }
            comps.push_back(std::move(c));
        }
        try {
            return PauliChannel::correlated(std::move(comps), pairs);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line);
        }
    }
    throw ParseError("unknown channel type '" + type + "'", type_line);
}

const std::set<std::string> kSessionKeys = {"signals",    "test_sample",      "seed",
                                            "verify_rounds", "pa_safety_margin", "max_pz",
                                            "max_px",     "sample_delta"};
const std::set<std::string> kChannelKeys = {"type", "qber", "q",   "p_i",   "p_x",
                                            "p_y",  "p_z",  "pairs", "components"};
const std::set<std::string> kCascadeKeys = {"passes", "block_factor", "k1_override",
                                            "error_headroom"};

} // namespace

SessionConfig load_session_config(const std::string& path) {
    RawConfig raw = read_raw(path);

    for (const auto& [sk, vl] : raw.kv) {
        const auto& [section, key] = sk;
        const std::set<std::string>* allowed = nullptr;
        if (section == "session")
            allowed = &kSessionKeys;
        else if (section == "channel")
            allowed = &kChannelKeys;
        else if (section == "cascade")
            allowed = &kCascadeKeys;
        else
            throw ParseError("unknown section '" + section + "'", vl.second);
        if (!allowed->count(key))
            throw ParseError("unknown key '" + key + "' in [" + section + "]", vl.second);
    }

    SessionConfig cfg;
    auto opt = [&](const std::string& sec, const std::string& key, auto&& apply) {
        auto it = raw.kv.find({sec, key});
        if (it != raw.kv.end()) apply(it->second.first, it->second.second);
    };
    opt("session", "signals", [&](const std::string& v, int l) { cfg.signals = parse_uint(v, l); });
    opt("session", "test_sample",
        [&](const std::string& v, int l) { cfg.test_sample = parse_uint(v, l); });
    opt("session", "seed", [&](const std::string& v, int l) { cfg.seed = parse_uint(v, l); });
    opt("session", "verify_rounds",
        [&](const std::string& v, int l) { cfg.verify_rounds = parse_uint(v, l); });
    opt("session", "pa_safety_margin",
        [&](const std::string& v, int l) { cfg.pa_safety_margin = parse_uint(v, l); });
    opt("session", "max_pz", [&](const std::string& v, int l) { cfg.max_pz = parse_double(v, l); });
    opt("session", "max_px", [&](const std::string& v, int l) { cfg.max_px = parse_double(v, l); });
    opt("session", "sample_delta",
        [&](const std::string& v, int l) { cfg.sample_delta = parse_double(v, l); });
    opt("cascade", "passes",
        [&](const std::string& v, int l) { cfg.cascade.passes = parse_uint(v, l); });
    opt("cascade", "block_factor",
        [&](const std::string& v, int l) { cfg.cascade.block_factor = parse_double(v, l); });
    opt("cascade", "k1_override",
        [&](const std::string& v, int l) { cfg.cascade.k1_override = parse_uint(v, l); });
    opt("cascade", "error_headroom",
        [&](const std::string& v, int l) { cfg.cascade.error_headroom = parse_double(v, l); });

    if (raw.has("channel", "type")) {
        try {
            cfg.channel = parse_channel(raw);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(e.what());
        }
    }

    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

std::vector<double> parse_qber_grid(const std::string& spec) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::stringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(ss >> std::ws).eof())
        throw ParseError("grid must be LO:HI:STEP");
    if (step <= 0.0 || hi < lo) throw ParseError("grid requires LO <= HI and STEP > 0");
    std::vector<double> grid;
    for (double q = lo; q <= hi + 1e-12; q += step) grid.push_back(q);
    for (double q : grid)
        if (q <= 0.0 || q >= 0.5) throw ParseError("grid point outside (0, 0.5)");
    return grid;
}

} // namespace synforge
