#pragma once

#include "pluri/enclosure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pluri {

enum class ValueKind { integer, linear_in_n, cbrt2_multiple };

// One printed value. n_or_l holds n (T1), l (T2-T5, ALL_L) or the dimension d
// (NV_ALPHA, NV_M, BIR_ALPHA, BIR_LMIN); coeff holds c of "c(n+1)-3" or the
// fixed alpha of NV_M / BIR_LMIN.
struct ReferenceRow {
    std::string table;
    long g = 0;
    long n_or_l = 0;
    ValueKind kind = ValueKind::integer;
    Integer value;
    std::optional<long> coeff;
    bool strict = false;
};

struct EmbeddedFile {
    std::string_view name;
    std::string_view content;
};

const std::vector<EmbeddedFile>& embedded_files();
std::uint64_t fnv1a64(std::string_view bytes);
// Names whose embedded bytes disagree with the embedded checksums.txt.
std::vector<std::string> checksum_failures();

// Throws DomainError on schema violations.
std::vector<ReferenceRow> parse_reference_csv(std::string_view text);
std::vector<ReferenceRow> reference_rows();

enum class RowStatus { match, mismatch, undecided };
const char* to_string(RowStatus s);
const char* to_string(ValueKind k);

struct RowResult {
    ReferenceRow row;
    RowStatus status = RowStatus::undecided;
    std::optional<Integer> engine_value;
    std::optional<Enclosure> enclosure; // of the engine's exact threshold, in alpha units
    std::string detail;
};

struct DiffReport {
    std::vector<RowResult> rows;
    std::size_t matched = 0;
    std::size_t mismatched = 0;
    std::size_t undecided = 0;

    bool ok() const { return mismatched == 0 && undecided == 0; }
};

// Recomputes each row. Table rows compare the attained lattice value (least c
// with c * unit satisfying the bound); T1F rows only require the engine to be
// at most the fallback. For the higher-dimensional alpha thresholds a printed
// "alpha > c" is compared with ceil(threshold), "alpha >= c" with the least
// integer satisfying the strict bound.
DiffReport verify_rows(const std::vector<ReferenceRow>& rows, const Precision& prec = {});
DiffReport verify_all(const Precision& prec = {});

} // namespace pluri
