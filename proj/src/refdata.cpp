#include "pluri/refdata.hpp"

#include "pluri/errors.hpp"
#include "pluri/higherdim.hpp"
#include "pluri/threefold.hpp"

#include <map>
#include <sstream>

namespace pluri {

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string_view file_content(std::string_view name)
{
    for (const auto& f : embedded_files()) {
        if (f.name == name) {
            return f.content;
        }
    }
    throw DomainError("no embedded file " + std::string(name));
}

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

long parse_long(const std::string& s, std::size_t line_no)
{
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw DomainError("line " + std::to_string(line_no) + ": expected an integer, got '" + s + "'");
}

} // namespace

std::vector<std::string> checksum_failures()
{
    std::map<std::string, std::string> recorded;
    std::istringstream in{std::string(file_content("checksums.txt"))};
    std::string name;
    std::string hex;
    while (in >> name >> hex) {
        recorded[name] = hex;
    }
    std::vector<std::string> bad;
    for (const auto& f : embedded_files()) {
        if (f.name == "checksums.txt") {
            continue;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(f.content)));
        const auto it = recorded.find(std::string(f.name));
        if (it == recorded.end() || it->second != buf) {
            bad.emplace_back(f.name);
        }
    }
    return bad;
}

const char* to_string(ValueKind k)
{
    switch (k) {
    case ValueKind::integer:
        return "int";
    case ValueKind::linear_in_n:
        return "linear_in_n";
    case ValueKind::cbrt2_multiple:
        return "cbrt2_multiple";
    }
    return "?";
}

const char* to_string(RowStatus s)
{
    switch (s) {
    case RowStatus::match:
        return "match";
    case RowStatus::mismatch:
        return "mismatch";
    case RowStatus::undecided:
        return "undecided";
    }
    return "?";
}

std::vector<ReferenceRow> parse_reference_csv(std::string_view text)
{
    std::vector<ReferenceRow> rows;
    std::size_t line_no = 0;
    bool header = true;
    for (const auto& raw : split(text, '\n')) {
        ++line_no;
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 7) {
            throw DomainError("line " + std::to_string(line_no) + ": expected 7 fields, got " + std::to_string(f.size()));
        }
        if (header) {
            header = false;
            if (line != "table_id,g,n_or_l,value_kind,value,coeff,strict") {
                throw DomainError("unexpected CSV header: " + line);
            }
            continue;
        }
        ReferenceRow r;
        r.table = f[0];
        r.g = parse_long(f[1], line_no);
        r.n_or_l = parse_long(f[2], line_no);
        if (f[3] == "int") {
            r.kind = ValueKind::integer;
        } else if (f[3] == "linear_in_n") {
            r.kind = ValueKind::linear_in_n;
        } else if (f[3] == "cbrt2_multiple") {
            r.kind = ValueKind::cbrt2_multiple;
        } else {
            throw DomainError("line " + std::to_string(line_no) + ": unknown value_kind '" + f[3] + "'");
        }
        if (r.value.set_str(f[4], 10) != 0) {
            throw DomainError("line " + std::to_string(line_no) + ": bad value '" + f[4] + "'");
        }
        if (!f[5].empty()) {
            r.coeff = parse_long(f[5], line_no);
        }
        if (f[6] != "0" && f[6] != "1") {
            throw DomainError("line " + std::to_string(line_no) + ": strict must be 0 or 1");
        }
        r.strict = f[6] == "1";
        if (r.kind == ValueKind::linear_in_n) {
            if (!r.coeff || r.value != Integer(*r.coeff) * (r.n_or_l + 1) - 3) {
                throw DomainError("line " + std::to_string(line_no) + ": linear_in_n row inconsistent with its coefficient");
            }
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ReferenceRow> reference_rows()
{
    std::vector<ReferenceRow> all;
    for (const auto& f : embedded_files()) {
        if (f.name.size() > 4 && f.name.substr(f.name.size() - 4) == ".csv") {
            auto rows = parse_reference_csv(f.content);
            all.insert(all.end(), rows.begin(), rows.end());
        }
    }
    return all;
}

namespace {

const Rational& window()
{
    static const Rational w(1, 1000000);
    return w;
}

void judge(RowResult& r, const Integer& engine)
{
    r.engine_value = engine;
    r.status = engine == r.row.value ? RowStatus::match : RowStatus::mismatch;
}

// Table entries are least lattice points satisfying the bound whichever
// symbol is printed beside them; (l, g) = (6, 8) has infimum exactly 72 cbrt2
// (strict) and prints 73.
void judge_report(RowResult& r, const ThresholdReport& rep, const Precision& prec)
{
    judge(r, rep.lattice_value);
    r.enclosure = enclose(rep.infimum.value, window(), prec);
    r.detail = rep.branch + ", " + rep.attained_by + ", " + rep.infimum.to_string();
}

void judge_alpha(RowResult& r, const AlphaThreshold& t, const Precision& prec)
{
    judge(r, r.row.strict ? approached_lattice(t.bound, RealExpr(1), prec) : t.min_integer);
    r.enclosure = t.enclosure;
    r.detail = t.bound.to_string();
}

RowResult verify_row(const ReferenceRow& row, const Precision& prec)
{
    RowResult r;
    r.row = row;
    const std::string& t = row.table;
    if (t == "T1") {
        const auto rep = nv_threshold(NvQuery{row.g, row.n_or_l}, prec);
        judge_report(r, rep, prec);
        if (r.status == RowStatus::match && row.kind == ValueKind::linear_in_n
            && (rep.attained_by != "(a4)" || !rep.m_star || 12 * *rep.m_star != *row.coeff)) {
            r.status = RowStatus::mismatch;
            r.detail += "; closed form not attained by (a4) with 12m* = " + std::to_string(*row.coeff);
        }
    } else if (t == "T1F") {
        const auto rep = nv_threshold(NvQuery{row.g, row.n_or_l}, prec);
        r.engine_value = rep.lattice_value;
        r.enclosure = enclose(rep.infimum.value, window(), prec);
        r.status = rep.lattice_value <= row.value ? RowStatus::match : RowStatus::mismatch;
        r.detail = rep.lattice_value == row.value ? "equals fallback" : "below fallback";
    } else if (t == "T2") {
        judge_report(r, bir_threshold(BirQuery{row.g, row.n_or_l, BirKind::general}, prec), prec);
    } else if (t == "T3" || t == "T4" || t == "T5") {
        const BirKind k = t == "T3" ? BirKind::map4 : (t == "T4" ? BirKind::map3 : BirKind::map2);
        judge_report(r, bir_threshold(BirQuery{row.g, row.n_or_l, k}, prec), prec);
    } else if (t == "TRICAN") {
        judge_report(r, trican_threshold(row.g, prec), prec);
    } else if (t == "ALL_L") {
        const auto all = all_l_threshold(row.g, prec);
        judge_report(r, all.report, prec);
        r.detail = "l*=" + std::to_string(all.l_star) + ", " + r.detail;
    } else if (t == "NV_ALPHA") {
        judge_alpha(r, nv_alpha_threshold(row.n_or_l, mu_profile(default_profile(row.n_or_l, row.g)), prec), prec);
    } else if (t == "BIR_ALPHA") {
        judge_alpha(r, bir_alpha_threshold(row.n_or_l, mu_profile(default_profile(row.n_or_l, row.g)), prec), prec);
    } else if (t == "NV_M" || t == "BIR_LMIN") {
        if (!row.coeff) {
            throw DomainError(t + " rows need alpha in the coeff column");
        }
        const auto mu = mu_profile(default_profile(row.n_or_l, row.g));
        const RealExpr alpha(*row.coeff);
        judge(r, t == "NV_M" ? nv_multiplier(row.n_or_l, alpha, mu, prec) : bir_l_min(row.n_or_l, alpha, mu, prec));
        r.detail = "alpha=" + std::to_string(*row.coeff);
    } else {
        throw DomainError("unknown table id '" + t + "'");
    }
    return r;
}

} // namespace

DiffReport verify_rows(const std::vector<ReferenceRow>& rows, const Precision& prec)
{
    DiffReport report;
    for (const auto& row : rows) {
        RowResult r;
        try {
            r = verify_row(row, prec);
        } catch (const PrecisionExhausted& e) {
            r.row = row;
            r.status = RowStatus::undecided;
            r.detail = e.what();
        } catch (const Error& e) {
            r.row = row;
            r.status = RowStatus::mismatch;
            r.detail = e.what();
        }
        switch (r.status) {
        case RowStatus::match:
            ++report.matched;
            break;
        case RowStatus::mismatch:
            ++report.mismatched;
            break;
        case RowStatus::undecided:
            ++report.undecided;
            break;
        }
        report.rows.push_back(std::move(r));
    }
    return report;
}

DiffReport verify_all(const Precision& prec)
{
    return verify_rows(reference_rows(), prec);
}

} // namespace pluri
