#include "synforge/report_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace synforge {

using ordered_json = nlohmann::ordered_json;

std::string transcript_to_jsonl(const Transcript& t) {
    std::string out;
    for (const auto& e : t.entries) {
        ordered_json j;
        j["round"] = e.round;
        j["sender"] = sender_name(e.sender);
        j["mask"] = e.mask.to_string();
        j["bit"] = e.bit ? 1 : 0;
        j["encrypted"] = e.encrypted;
        j["pad_index"] = e.pad_index;
        out += j.dump();
        out += '\n';
    }
    return out;
}

Transcript transcript_from_jsonl(const std::string& text) {
    Transcript t;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad transcript entry: ") + e.what(), line_no);
        }
        try {
            TranscriptEntry e;
            e.round = j.at("round").get<uint32_t>();
            std::string s = j.at("sender").get<std::string>();
            if (s != "A" && s != "B") throw ParseError("sender must be A or B", line_no);
            e.sender = (s == "A") ? Sender::alice : Sender::bob;
            e.mask = BitVec::from_string(j.at("mask").get<std::string>());
            int bit = j.at("bit").get<int>();
            if (bit != 0 && bit != 1) throw ParseError("bit must be 0 or 1", line_no);
            e.bit = bit == 1;
            e.encrypted = j.at("encrypted").get<bool>();
            e.pad_index = j.at("pad_index").get<int64_t>();
            t.entries.push_back(std::move(e));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad transcript entry: ") + e.what(), line_no);
        }
    }
    return t;
}

void write_transcript(const Transcript& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << transcript_to_jsonl(t);
}

Transcript read_transcript(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open transcript file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return transcript_from_jsonl(ss.str());
}

std::string report_to_json(const RunReport& rep) {
    ordered_json j;
    j["p_hat_z"] = rep.p_hat_z;
    j["p_hat_x"] = rep.p_hat_x;
    j["sample_epsilon"] = rep.sample_epsilon;
    j["aborted"] = rep.aborted;
    j["abort_stage"] = rep.abort_stage;
    j["residual_error"] = rep.residual_error;
    j["keys_equal"] = rep.keys_equal;
    j["ledger"] = {{"n", rep.ledger.n},
                   {"s", rep.ledger.s},
                   {"t", rep.ledger.t},
                   {"gross", rep.ledger.gross},
                   {"net", rep.ledger.net}};
    j["transcript_digest"] = rep.transcript_digest;
    j["pad_pool_size"] = rep.pad_pool_size;
    j["pad_consumed"] = rep.pad_consumed;
    j["footnote_check"] = rep.footnote_check;
    j["sifted"] = rep.sifted;
    j["tested"] = rep.tested;
    j["discarded"] = rep.discarded;
    return j.dump(2) + "\n";
}

void write_report(const RunReport& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << report_to_json(rep);
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "qber,n,s,t,gross,net,aborted,keys_equal,seed\n";
    for (const auto& r : rows) {
        out << r.qber << ',' << r.n << ',' << r.s << ',' << r.t << ',' << r.gross << ',' << r.net
            << ',' << (r.aborted ? 1 : 0) << ',' << (r.keys_equal ? 1 : 0) << ',' << r.seed
            << '\n';
    }
    return out.str();
}

AuditResult audit_transcript(const Transcript& t) {
    AuditResult res;
    res.entries = t.entries.size();
    std::map<int64_t, std::vector<size_t>> by_pad;
    for (size_t i = 0; i < t.entries.size(); ++i) {
        const auto& e = t.entries[i];
        if (!e.encrypted) {
            res.violations.push_back("entry " + std::to_string(i) + " is not encrypted");
            continue;
        }
        if (e.pad_index < 0)
            res.violations.push_back("entry " + std::to_string(i) + " has no pad index");
        else
            by_pad[e.pad_index].push_back(i);
    }
    for (const auto& [pad, idx] : by_pad) {
        if (idx.size() != 2) {
            res.violations.push_back("pad index " + std::to_string(pad) + " used by " +
                                     std::to_string(idx.size()) + " entries");
            continue;
        }
        const auto& a = t.entries[idx[0]];
        const auto& b = t.entries[idx[1]];
        if (a.sender == b.sender)
            res.violations.push_back("pad index " + std::to_string(pad) +
                                     " reused by the same sender");
        if (a.round != b.round || !(a.mask == b.mask))
            res.violations.push_back("pad index " + std::to_string(pad) +
                                     " spans two different announcements");
    }
    res.s = by_pad.size();
    res.ok = res.violations.empty();
    return res;
}

std::vector<PauliOp> read_operator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open operators file '" + path + "'");
    std::vector<PauliOp> ops;
    std::string line;
    int line_no = 0;
    size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        line = line.substr(b);
        PauliOp op;
        try {
            op = PauliOp::from_string(line);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_no);
        }
        if (width == 0)
            width = op.size();
        else if (op.size() != width)
            throw ParseError("operator length differs from earlier lines", line_no);
        ops.push_back(std::move(op));
    }
    return ops;
}

void write_operator_file(const std::vector<PauliOp>& ops, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    for (const auto& op : ops) out << op.to_string() << '\n';
}

StabilizerSet stabilizers_from_run(const Transcript& t, const BitMatrix& pa_matrix) {
    StabilizerSet s;
    std::set<std::string> seen;
    for (const auto& e : t.entries) {
        std::string key = e.mask.to_string();
        if (seen.insert(key).second) s.ops.push_back(PauliOp::z_with_support(e.mask));
    }
    for (size_t r = 0; r < pa_matrix.rows(); ++r)
        s.ops.push_back(PauliOp::x_with_support(pa_matrix.row(r)));
    return s;
}

} // namespace synforge
