#pragma once

#include <string>
#include <vector>

#include "synforge/pauli.hpp"
#include "synforge/pipeline.hpp"

namespace synforge {

// One JSON line per announcement:
// {"round":..,"sender":"A","mask":"0101..","bit":0,"encrypted":true,"pad_index":..}
std::string transcript_to_jsonl(const Transcript& t);
Transcript transcript_from_jsonl(const std::string& text);

void write_transcript(const Transcript& t, const std::string& path);
Transcript read_transcript(const std::string& path);

std::string report_to_json(const RunReport& rep);
void write_report(const RunReport& rep, const std::string& path);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// Structural audit of a transcript: entries pair up per pad index (same
// round and mask, one entry per sender), no pad index serves two events,
// and s comes out as the encrypted event count.
struct AuditResult {
    bool ok = true;
    size_t s = 0;              // encrypted announcement events
    size_t entries = 0;
    std::vector<std::string> violations;
};
AuditResult audit_transcript(const Transcript& t);

// Operators-file round trip for the analyzer: one Pauli string per line,
// '#' comments allowed.
std::vector<PauliOp> read_operator_file(const std::string& path);
void write_operator_file(const std::vector<PauliOp>& ops, const std::string& path);

// The stabilizer view of a finished session: every distinct announced mask
// as a Z-type operator followed by the published hashing rows as X-type
// operators.
StabilizerSet stabilizers_from_run(const Transcript& t, const BitMatrix& pa_matrix);

} // namespace synforge
