#include "pluri/errors.hpp"
#include "pluri/refdata.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace pluri;

namespace {

const char* const kHeader = "table_id,g,n_or_l,value_kind,value,coeff,strict\n";

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ReferenceRow row_of(const std::string& table, long g, long key)
{
    for (const auto& r : reference_rows()) {
        if (r.table == table && r.g == g && r.n_or_l == key) {
            return r;
        }
    }
    throw std::runtime_error("no row");
}

} // namespace

TEST(Checksums, Fnv1a64)
{
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Checksums, EmbeddedMatchesRecordedAndSource)
{
    EXPECT_TRUE(checksum_failures().empty());
    std::size_t csv = 0;
    for (const auto& f : embedded_files()) {
        EXPECT_EQ(f.content, read_file(std::string(PLURI_DATA_DIR) + "/" + std::string(f.name))) << f.name;
        csv += f.name.size() > 4 && f.name.substr(f.name.size() - 4) == ".csv" ? 1 : 0;
    }
    EXPECT_EQ(csv, 7U);
}

TEST(Parse, RowsAndKinds)
{
    const auto rows = parse_reference_csv(std::string(kHeader) + "T1,2,3,linear_in_n,1725,432,0\n"
                                          "T2,9,5,cbrt2_multiple,118,,1\n"
                                          "NV_M,2,3,int,4,27,0\n");
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_EQ(rows[0].kind, ValueKind::linear_in_n);
    EXPECT_EQ(rows[0].coeff, 432);
    EXPECT_EQ(rows[1].kind, ValueKind::cbrt2_multiple);
    EXPECT_TRUE(rows[1].strict);
    EXPECT_FALSE(rows[1].coeff);
    EXPECT_EQ(rows[2].coeff, 27);
}

TEST(Parse, SchemaErrors)
{
    const std::string h = kHeader;
    EXPECT_THROW((void)parse_reference_csv("table,g\nT1,2\n"), DomainError);
    EXPECT_THROW((void)parse_reference_csv(h + "T1,2,1,int,879,,0,9\n"), DomainError);
    EXPECT_THROW((void)parse_reference_csv(h + "T1,2,1,float,879,,0\n"), DomainError);
    EXPECT_THROW((void)parse_reference_csv(h + "T1,2,1,int,8x9,,0\n"), DomainError);
    EXPECT_THROW((void)parse_reference_csv(h + "T1,2,1,int,879,,2\n"), DomainError);
    EXPECT_THROW((void)parse_reference_csv(h + "T1,2,3,linear_in_n,1726,432,0\n"), DomainError);
}

TEST(Verify, CorruptedRowIsMismatch)
{
    auto rows = parse_reference_csv(std::string(kHeader) + "T1,2,1,int,878,,0\nT1,2,2,linear_in_n,1293,432,0\n");
    const auto d = verify_rows(rows);
    EXPECT_EQ(d.mismatched, 1U);
    EXPECT_EQ(d.matched, 1U);
    EXPECT_FALSE(d.ok());
    const auto& bad = d.rows.at(0);
    EXPECT_EQ(bad.status, RowStatus::mismatch);
    ASSERT_TRUE(bad.engine_value);
    EXPECT_EQ(*bad.engine_value, 879);
    ASSERT_TRUE(bad.enclosure);
    EXPECT_GT(bad.enclosure->lo, 878);
    EXPECT_LT(bad.enclosure->hi, 879);
}

TEST(Verify, DomainErrorsBecomeEntries)
{
    // map2 needs g >= 4
    const auto d = verify_rows(parse_reference_csv(std::string(kHeader) + "T5,3,2,cbrt2_multiple,1,,1\n"));
    ASSERT_EQ(d.rows.size(), 1U);
    EXPECT_EQ(d.rows[0].status, RowStatus::mismatch);
    EXPECT_FALSE(d.rows[0].detail.empty());
}

TEST(Verify, NamedConstantsCarryEnclosures)
{
    const auto d = verify_rows({row_of("NV_ALPHA", 2, 4), row_of("BIR_ALPHA", 2, 4), row_of("NV_ALPHA", 2, 3)});
    ASSERT_EQ(d.matched, 3U);
    const auto& e1709 = *d.rows[0].enclosure;
    EXPECT_GT(e1709.lo, 1708);
    EXPECT_LT(e1709.hi, 1709);
    const auto& e2816 = *d.rows[1].enclosure;
    EXPECT_GT(e2816.lo, 2815);
    EXPECT_LT(e2816.hi, 2816);
    EXPECT_EQ(d.rows[2].enclosure->lo, 27);
}

TEST(Verify, AllRowsMatchDeterministically)
{
    const auto a = verify_all();
    EXPECT_TRUE(a.ok());
    EXPECT_EQ(a.matched, a.rows.size());
    EXPECT_GT(a.rows.size(), 3800U);
    const auto b = verify_all(Precision{64, 1024});
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].status, b.rows[i].status);
        EXPECT_EQ(a.rows[i].engine_value, b.rows[i].engine_value);
        EXPECT_EQ(a.rows[i].enclosure.has_value(), b.rows[i].enclosure.has_value());
    }
}
