#include "pluri/format.hpp"

#include "pluri/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace pluri {

const char* const kTableCsvHeader
    = "table,g,key,lattice,unit,m_star,branch,attained_by,strict,closed_form,row_kind,infimum,lo,hi";

namespace {

using nlohmann::ordered_json;

const Rational& table_width()
{
    static const Rational w(1, Integer("1000000000000"));
    return w;
}

std::string lo_str(const Enclosure& e) { return to_decimal(e.lo, kDecimalDigits, Rounding::down); }
std::string hi_str(const Enclosure& e) { return to_decimal(e.hi, kDecimalDigits, Rounding::up); }

bool unit_is_one(const RealExpr& u) { return u.is_rational() && u.rational() == 1; }

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

// "432(n+1)-3", ">= 879", "> 118 cbrt2"
std::string printed_value(const TableRow& row)
{
    if (row.closed_form) {
        return ">= " + std::to_string(*row.closed_form) + "(n+1)-3";
    }
    if (unit_is_one(row.report.unit)) {
        return ">= " + row.report.lattice_value.get_str();
    }
    return "> " + row.report.lattice_value.get_str() + " cbrt2";
}

std::string span(long a, long b) { return a == b ? std::to_string(a) : std::to_string(a) + ".." + std::to_string(b); }

// One line per run of consecutive n at fixed g printing the same value.
void markdown_t1(std::ostringstream& out, const std::vector<TableRow>& rows)
{
    out << "| g | n | alpha | m* | attained by | kind |\n|---|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < rows.size();) {
        std::size_t j = i + 1;
        while (j < rows.size() && rows[j].g == rows[i].g && rows[j].key == rows[j - 1].key + 1
               && printed_value(rows[j]) == printed_value(rows[i]) && rows[j].row_kind == rows[i].row_kind) {
            ++j;
        }
        const auto& r = rows[i].report;
        out << "| " << rows[i].g << " | " << span(rows[i].key, rows[j - 1].key) << " | " << printed_value(rows[i])
            << " | " << (j - i == 1 ? r.branch : "varies") << " | " << r.attained_by << " | " << rows[i].row_kind
            << " |\n";
        i = j;
    }
}

// Published layout for T2..T5: only rows off the general formula, runs of
// consecutive g collapsed.
void markdown_special(std::ostringstream& out, const std::vector<TableRow>& rows)
{
    const bool t2 = rows.front().table == "T2";
    const std::string general = t2 ? "f(l, g) or beta->1-" : "general";
    std::vector<const TableRow*> special;
    for (const auto& row : rows) {
        if (row.row_kind == "special") {
            special.push_back(&row);
        }
    }
    std::stable_sort(special.begin(), special.end(), [](const TableRow* a, const TableRow* b) {
        return a->key != b->key ? a->key < b->key : a->g < b->g;
    });
    out << "| l | g | alpha | m* | attained by | kind |\n|---|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < special.size();) {
        std::size_t j = i + 1;
        while (j < special.size() && special[j]->key == special[i]->key && special[j]->g == special[j - 1]->g + 1
               && special[j]->report.lattice_value == special[i]->report.lattice_value
               && special[j]->row_kind == special[i]->row_kind) {
            ++j;
        }
        const auto& r = special[i]->report;
        out << "| " << special[i]->key << " | " << span(special[i]->g, special[j - 1]->g) << " | "
            << printed_value(*special[i]) << " | " << (j - i == 1 ? r.branch : "varies") << " | " << r.attained_by
            << " | " << special[i]->row_kind << " |\n";
        i = j;
    }
    out << "\n" << rows.size() - special.size() << " of " << rows.size() << " rows follow the " << general
        << " formula (use --format csv or json to list them)\n";
}

ordered_json report_json(const ThresholdReport& r, const Precision& prec)
{
    const Enclosure en = enclose(r.infimum.value, table_width(), prec);
    ordered_json j;
    j["m_star"] = r.m_star ? ordered_json(*r.m_star) : ordered_json(nullptr);
    j["branch"] = r.branch;
    j["lattice"] = std::stol(r.lattice_value.get_str());
    j["unit"] = r.unit.to_string();
    j["attained_by"] = r.attained_by;
    j["strict"] = r.infimum.strict;
    j["infimum"] = {{"expr", r.infimum.value.to_string()}, {"lo", lo_str(en)}, {"hi", hi_str(en)}};
    j["approached"] = std::stol(r.approached_value.get_str());
    j["m_min"] = r.m_min ? ordered_json(*r.m_min) : ordered_json(nullptr);
    ordered_json trace = ordered_json::array();
    for (const auto& t : r.trace) {
        trace.push_back({{"id", t.id}, {"expr", t.bound.value.to_string()}, {"strict", t.bound.strict},
                         {"lattice", std::stol(t.lattice.get_str())}});
    }
    j["trace"] = trace;
    return j;
}

} // namespace

Format parse_format(const std::string& s)
{
    if (s == "markdown" || s == "md") {
        return Format::markdown;
    }
    if (s == "csv") {
        return Format::csv;
    }
    if (s == "json") {
        return Format::json;
    }
    throw DomainError("unknown format '" + s + "' (markdown, csv, json)");
}

std::string format_report(const std::string& query, const ThresholdReport& r, Format f, const Precision& prec)
{
    const Enclosure en = enclose(r.infimum.value, table_width(), prec);
    const std::string unit = unit_is_one(r.unit) ? "" : " * " + r.unit.to_string();
    std::ostringstream out;
    switch (f) {
    case Format::json: {
        ordered_json j;
        j["query"] = query;
        j.update(report_json(r, prec));
        out << j.dump(2) << "\n";
        break;
    }
    case Format::csv:
        out << "query,lattice,unit,m_star,branch,attained_by,strict,infimum,lo,hi\n"
            << csv_quote(query) << "," << r.lattice_value << "," << csv_quote(r.unit.to_string()) << ","
            << (r.m_star ? std::to_string(*r.m_star) : "") << "," << csv_quote(r.branch) << ","
            << csv_quote(r.attained_by) << "," << (r.infimum.strict ? 1 : 0) << ","
            << csv_quote(r.infimum.value.to_string()) << "," << lo_str(en) << "," << hi_str(en) << "\n";
        break;
    case Format::markdown:
        out << "### " << query << "\n\n"
            << "- lattice value: " << r.lattice_value << unit << "\n"
            << "- branch: " << r.branch << (r.m_min ? " (m_min " + std::to_string(*r.m_min) + ")" : "") << "\n"
            << "- infimum: " << r.infimum.to_string() << "\n"
            << "- enclosure: [" << lo_str(en) << ", " << hi_str(en) << "]\n"
            << "- attained by: " << r.attained_by << "\n\n"
            << "| condition | bound | lattice |\n|---|---|---|\n";
        for (const auto& t : r.trace) {
            out << "| " << t.id << " | " << t.bound.to_string() << " | " << t.lattice << " |\n";
        }
        break;
    }
    return out.str();
}

std::string format_table(const std::vector<TableRow>& rows, Format f, const Precision& prec)
{
    std::ostringstream out;
    switch (f) {
    case Format::json: {
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json j;
            j["table"] = row.table;
            j["g"] = row.g;
            j["key"] = row.key;
            j["row_kind"] = row.row_kind;
            j["closed_form"] = row.closed_form ? ordered_json(*row.closed_form) : ordered_json(nullptr);
            j.update(report_json(row.report, prec));
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << "\n";
        break;
    }
    case Format::csv:
        out << kTableCsvHeader << "\n";
        for (const auto& row : rows) {
            const auto& r = row.report;
            const Enclosure en = enclose(r.infimum.value, table_width(), prec);
            out << row.table << "," << row.g << "," << row.key << "," << r.lattice_value << ","
                << csv_quote(r.unit.to_string()) << "," << (r.m_star ? std::to_string(*r.m_star) : "") << ","
                << csv_quote(r.branch) << "," << csv_quote(r.attained_by) << "," << (r.infimum.strict ? 1 : 0)
                << "," << (row.closed_form ? std::to_string(*row.closed_form) : "") << "," << row.row_kind << ","
                << csv_quote(r.infimum.value.to_string()) << "," << lo_str(en) << "," << hi_str(en) << "\n";
        }
        break;
    case Format::markdown:
        if (rows.empty()) {
            break;
        }
        if (rows.front().table == "T1") {
            markdown_t1(out, rows);
        } else {
            markdown_special(out, rows);
        }
        break;
    }
    return out.str();
}

std::string format_diff(const DiffReport& d, Format f)
{
    std::ostringstream out;
    switch (f) {
    case Format::json: {
        ordered_json j;
        j["matched"] = d.matched;
        j["mismatched"] = d.mismatched;
        j["undecided"] = d.undecided;
        ordered_json rows = ordered_json::array();
        for (const auto& r : d.rows) {
            ordered_json row;
            row["table"] = r.row.table;
            row["g"] = r.row.g;
            row["n_or_l"] = r.row.n_or_l;
            row["printed"] = r.row.value.get_str();
            row["status"] = to_string(r.status);
            row["engine"] = r.engine_value ? ordered_json(r.engine_value->get_str()) : ordered_json(nullptr);
            if (r.enclosure) {
                row["enclosure"] = {lo_str(*r.enclosure), hi_str(*r.enclosure)};
            }
            row["detail"] = r.detail;
            rows.push_back(std::move(row));
        }
        j["rows"] = rows;
        out << j.dump(2) << "\n";
        break;
    }
    case Format::csv:
        out << "table,g,n_or_l,printed,status,engine,lo,hi,detail\n";
        for (const auto& r : d.rows) {
            out << r.row.table << "," << r.row.g << "," << r.row.n_or_l << "," << r.row.value << ","
                << to_string(r.status) << "," << (r.engine_value ? r.engine_value->get_str() : "") << ","
                << (r.enclosure ? lo_str(*r.enclosure) : "") << "," << (r.enclosure ? hi_str(*r.enclosure) : "") << ","
                << csv_quote(r.detail) << "\n";
        }
        break;
    case Format::markdown: {
        out << "verified " << d.rows.size() << " rows: " << d.matched << " match, " << d.mismatched << " mismatch, "
            << d.undecided << " undecided\n\n";
        std::map<std::string, std::pair<std::size_t, std::size_t>> per_table;
        for (const auto& r : d.rows) {
            auto& [ok, total] = per_table[r.row.table];
            ++total;
            ok += r.status == RowStatus::match ? 1 : 0;
        }
        out << "| table | match | rows |\n|---|---|---|\n";
        for (const auto& [t, c] : per_table) {
            out << "| " << t << " | " << c.first << " | " << c.second << " |\n";
        }
        out << "\n| table | g | n/l/d | printed | engine | status | enclosure |\n|---|---|---|---|---|---|---|\n";
        for (const auto& r : d.rows) {
            const bool headline = r.row.table.find('_') != std::string::npos || r.row.table == "TRICAN";
            if (r.status == RowStatus::match && !headline) {
                continue;
            }
            out << "| " << r.row.table << " | " << r.row.g << " | " << r.row.n_or_l << " | " << r.row.value << " | "
                << (r.engine_value ? r.engine_value->get_str() : "-") << " | " << to_string(r.status) << " | "
                << (r.enclosure ? "[" + lo_str(*r.enclosure) + ", " + hi_str(*r.enclosure) + "]" : r.detail) << " |\n";
        }
        break;
    }
    }
    return out.str();
}

std::string format_enclosure(const RealExpr& e, const Enclosure& en, Format f, int digits)
{
    std::ostringstream out;
    switch (f) {
    case Format::json: {
        ordered_json j;
        j["expr"] = e.to_string();
        j["lo"] = to_decimal(en.lo, digits, Rounding::down);
        j["hi"] = to_decimal(en.hi, digits, Rounding::up);
        j["width_bound"] = to_decimal(en.width(), digits, Rounding::up);
        out << j.dump(2) << "\n";
        break;
    }
    case Format::csv:
        out << "expr,lo,hi\n"
            << csv_quote(e.to_string()) << "," << to_decimal(en.lo, digits, Rounding::down) << ","
            << to_decimal(en.hi, digits, Rounding::up) << "\n";
        break;
    case Format::markdown:
        out << e.to_string() << " in [" << to_decimal(en.lo, digits, Rounding::down) << ", "
            << to_decimal(en.hi, digits, Rounding::up) << "]\n";
        break;
    }
    return out.str();
}

std::string format_fields(const std::vector<std::pair<std::string, std::string>>& fields, Format f)
{
    std::ostringstream out;
    switch (f) {
    case Format::json: {
        ordered_json j;
        for (const auto& [k, v] : fields) {
            const bool integer = !v.empty() && v.find_first_not_of("-0123456789") == std::string::npos
                                 && v.size() < 19;
            if (v == "true" || v == "false") {
                j[k] = v == "true";
            } else {
                j[k] = integer ? ordered_json(std::stoll(v)) : ordered_json(v);
            }
        }
        out << j.dump(2) << "\n";
        break;
    }
    case Format::csv: {
        std::string head;
        std::string vals;
        for (const auto& [k, v] : fields) {
            head += (head.empty() ? "" : ",") + k;
            vals += (vals.empty() ? "" : ",") + csv_quote(v);
        }
        out << head << "\n" << vals << "\n";
        break;
    }
    case Format::markdown:
        out << "| field | value |\n|---|---|\n";
        for (const auto& [k, v] : fields) {
            out << "| " << k << " | " << v << " |\n";
        }
        break;
    }
    return out.str();
}

} // namespace pluri
