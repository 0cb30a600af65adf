#include "pluri/cli.hpp"
#include "pluri/format.hpp"
#include "pluri/refdata.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pluri;
using nlohmann::json;

namespace {

struct Out {
    int code;
    std::string out;
    std::string err;
};

Out run(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> f(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                f.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                f.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            f.emplace_back();
        } else {
            f.back() += c;
        }
    }
    return f;
}

ReferenceRow reference(const std::string& table, long g, long key, const std::string& lattice)
{
    ReferenceRow r;
    r.table = table;
    r.g = g;
    r.n_or_l = key;
    r.kind = table == "T1" ? ValueKind::integer : ValueKind::cbrt2_multiple;
    r.value = Integer(lattice);
    r.strict = table != "T1";
    return r;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("pluri_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

} // namespace

TEST(Cli, ThresholdJson)
{
    const auto r = run({"threshold", "nv", "--g", "2", "--n", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["m_star"], 36);
    EXPECT_EQ(j["lattice"], 879);
    EXPECT_EQ(j["attained_by"], "(a2)");
    EXPECT_EQ(j["strict"], true);
    EXPECT_EQ(j["unit"], "1");
    EXPECT_EQ(j["infimum"]["lo"].get<std::string>().substr(0, 7), "878.958");
    EXPECT_FALSE(j["trace"].empty());
}

TEST(Cli, OtherThresholds)
{
    auto j = json::parse(run({"--format", "json", "threshold", "map4", "--g", "11"}).out);
    EXPECT_EQ(j["lattice"], 237);
    EXPECT_EQ(j["unit"], "root(3, 2)");
    j = json::parse(run({"threshold", "bir", "--g", "9", "--l", "5", "--format", "json"}).out);
    EXPECT_EQ(j["lattice"], 118);
    j = json::parse(run({"threshold", "trican", "--g", "2", "--format", "json"}).out);
    EXPECT_EQ(j["lattice"], 141);
    j = json::parse(run({"threshold", "all-l", "--g", "2", "--format", "json"}).out);
    EXPECT_EQ(j["lattice"], 1917);
    const auto md = run({"threshold", "map2", "--g", "8"});
    EXPECT_NE(md.out.find("lattice value: 3930"), std::string::npos);
}

TEST(Cli, TableT3Markdown)
{
    const auto r = run({"table", "t3"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        rows += line.rfind("| 4 |", 0) == 0 ? 1 : 0;
    }
    EXPECT_EQ(rows, 6);
    EXPECT_NE(r.out.find("| 4 | 11 | > 237 cbrt2"), std::string::npos);
    EXPECT_NE(r.out.find("| 4 | 30..37 | > 189 cbrt2"), std::string::npos);
    EXPECT_NE(r.out.find("| 4 | 41 | > 146 cbrt2"), std::string::npos);
}

TEST(Cli, EvalEnclosure)
{
    const auto r = run({"eval", "(3*sqrt(37)+6)/(sqrt(37)/3-2)", "--digits", "6", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    const Rational lo = parse_rational(j["lo"].get<std::string>());
    const Rational hi = parse_rational(j["hi"].get<std::string>());
    EXPECT_LE(hi - lo, make_rational(1, 1000000));
    EXPECT_LT(lo, make_rational(878959, 1000));
    EXPECT_GT(hi, make_rational(878958, 1000));
}

TEST(Cli, HigherdimFields)
{
    auto j = json::parse(run({"higherdim", "nv", "--d", "4", "--g", "2", "--format", "json"}).out);
    EXPECT_EQ(j["min_integer"], 1709);
    EXPECT_EQ(j["M"], 191);
    EXPECT_EQ(j["strict"], true);
    j = json::parse(run({"higherdim", "nv", "--d", "3", "--v", "2,1", "--format", "json"}).out);
    EXPECT_EQ(j["approached"], 27);
    EXPECT_EQ(j["M"], 4);
    j = json::parse(run({"higherdim", "bir", "--d", "4", "--g", "2", "--alpha", "2816", "--format", "json"}).out);
    EXPECT_EQ(j["l_min"], 817);
    EXPECT_EQ(j["min_integer"], 2816);
    j = json::parse(
        run({"higherdim", "dichotomy", "nv", "--d", "4", "--l", "10", "--g", "2", "--beta-bar", "3", "--format", "json"})
            .out);
    EXPECT_EQ(j["bound"], "alpha > 36");
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(run({"threshold", "nv", "--g", "2"}).code, cli::kUsage);
    EXPECT_EQ(run({"table", "t1", "--g-range", "5..3"}).code, cli::kUsage);
    EXPECT_EQ(run({"table", "t3", "--n-range", "1..3"}).code, cli::kUsage);
    EXPECT_EQ(run({"--precision", "32", "eval", "1"}).code, cli::kUsage);
    EXPECT_EQ(run({"--format", "xml", "eval", "1"}).code, cli::kUsage);
    EXPECT_EQ(run({"higherdim", "nv", "--d", "3"}).code, cli::kUsage);
    EXPECT_EQ(run({"higherdim", "nv", "--d", "3", "--g", "2", "--v", "2,1"}).code, cli::kUsage);
    const auto usage = run({"threshold"});
    EXPECT_EQ(usage.code, cli::kUsage);
    EXPECT_NE(usage.err.find("higherdim dichotomy nv|bir"), std::string::npos);

    EXPECT_EQ(run({"threshold", "map2", "--g", "3"}).code, cli::kDomain);
    EXPECT_EQ(run({"threshold", "bir", "--g", "2", "--l", "4"}).code, cli::kDomain);
    EXPECT_EQ(run({"eval", "1/(sqrt(2)-sqrt(2))"}).code, cli::kDomain);
    EXPECT_EQ(run({"eval", "sqrt("}).code, cli::kDomain);
    EXPECT_EQ(run({"higherdim", "nv", "--d", "6", "--g", "2"}).code, cli::kDomain);

    EXPECT_EQ(run({"--precision", "64", "threshold", "nv", "--g", "10", "--n", "305"}).code, cli::kPrecision);
    EXPECT_EQ(run({"eval", "sqrt(2)", "--digits", "400", "--precision", "128"}).code, cli::kPrecision);
    EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST(Cli, VerifyExitCodes)
{
    const auto path = temp_file("ref.csv");
    {
        std::ofstream f(path);
        f << "table_id,g,n_or_l,value_kind,value,coeff,strict\nT1,2,1,int,878,,0\n";
    }
    const auto bad = run({"verify", "--reference", path.string()});
    EXPECT_EQ(bad.code, cli::kMismatch);
    EXPECT_NE(bad.out.find("mismatch"), std::string::npos);
    {
        std::ofstream f(path);
        f << "table_id,g,n_or_l,value_kind,value,coeff,strict\nT1,2,1,int,879,,0\n";
    }
    EXPECT_EQ(run({"verify", "--reference", path.string()}).code, cli::kOk);
    std::filesystem::remove(path);
    EXPECT_EQ(run({"verify", "--reference", "/nonexistent/ref.csv"}).code, cli::kUsage);
}

TEST(Cli, PrecisionEnvironment)
{
    ::setenv(cli::kPrecisionEnv, "32", 1);
    EXPECT_EQ(run({"eval", "1"}).code, cli::kUsage);
    ::setenv(cli::kPrecisionEnv, "64", 1);
    EXPECT_EQ(run({"threshold", "nv", "--g", "10", "--n", "305"}).code, cli::kPrecision);
    // the flag wins over the environment
    EXPECT_EQ(run({"--precision", "256", "threshold", "nv", "--g", "10", "--n", "305"}).code, cli::kOk);
    ::unsetenv(cli::kPrecisionEnv);
    EXPECT_EQ(run({"threshold", "nv", "--g", "10", "--n", "305"}).code, cli::kOk);
}

TEST(Cli, OutputFile)
{
    const auto path = temp_file("out.json");
    const auto r = run({"threshold", "trican", "--g", "3", "--format", "json", "--output", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const auto j = json::parse(in);
    EXPECT_EQ(j["lattice"], 69);
    std::filesystem::remove(path);
}

TEST(Cli, CsvRoundTrip)
{
    const std::vector<std::vector<std::string>> cmds = {
        {"table", "t1", "--g-range", "2..12", "--n-range", "1..12"},
        {"table", "t2", "--g-range", "2..30", "--l-range", "5..9"},
        {"table", "t3"},
        {"table", "t4", "--g-range", "3..40"},
        {"table", "t5", "--g-range", "4..40"},
    };
    for (auto args : cmds) {
        args.insert(args.end(), {"--format", "csv"});
        const auto r = run(args);
        ASSERT_EQ(r.code, 0) << r.err;
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        EXPECT_EQ(line, kTableCsvHeader);
        std::vector<ReferenceRow> rows;
        while (std::getline(in, line)) {
            const auto f = split_csv_line(line);
            ASSERT_EQ(f.size(), 14U) << line;
            rows.push_back(reference(f[0], std::stol(f[1]), std::stol(f[2]), f[3]));
        }
        ASSERT_FALSE(rows.empty());
        const auto d = verify_rows(rows);
        EXPECT_EQ(d.matched, rows.size()) << args[1];
    }
}

TEST(Cli, JsonRoundTrip)
{
    for (const std::string t : {"t1", "t2", "t3", "t4", "t5"}) {
        std::vector<std::string> args{"table", t, "--format", "json", "--g-range", t == "t5" ? "4..30" : "3..15"};
        const auto r = run(args);
        ASSERT_EQ(r.code, 0) << r.err;
        const auto j = json::parse(r.out);
        std::vector<ReferenceRow> rows;
        for (const auto& e : j) {
            rows.push_back(reference(e["table"], e["g"], e["key"], std::to_string(e["lattice"].get<long>())));
            EXPECT_TRUE(e.contains("infimum"));
            EXPECT_TRUE(e["strict"].is_boolean());
        }
        ASSERT_FALSE(rows.empty());
        EXPECT_EQ(verify_rows(rows).matched, rows.size()) << t;
    }
}
