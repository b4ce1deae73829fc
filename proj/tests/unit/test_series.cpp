#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "rqa/errors.hpp"
#include "rqa/series.hpp"
#include "rqa/table.hpp"

using namespace rqa;

TEST(Series, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Series(std::vector<double>{}), DataError);
  EXPECT_THROW(Series({1.0, std::nan("")}), DataError);
  EXPECT_THROW(Series({std::numeric_limits<double>::infinity()}), DataError);
}

TEST(Series, IntegerValued) {
  EXPECT_TRUE(Series({0, 1, 2, 0}).is_integer_valued());
  EXPECT_FALSE(Series({0, 1.5}).is_integer_valued());
}

TEST(Series, ReadsPlainTextWithComments) {
  std::istringstream in("# generated\n1.5\n\n-2\n3e-1\n");
  const Series x = read_series(in);
  ASSERT_EQ(x.size(), 3u);
  EXPECT_DOUBLE_EQ(x[0], 1.5);
  EXPECT_DOUBLE_EQ(x[1], -2.0);
  EXPECT_DOUBLE_EQ(x[2], 0.3);
}

TEST(Series, ReadsSingleColumnCsvWithHeader) {
  std::istringstream in("value\r\n0\r\n1,\r\n0\r\n");
  const Series x = read_series(in);
  ASSERT_EQ(x.size(), 3u);
  EXPECT_EQ(x[1], 1.0);
}

TEST(Series, RejectsGarbageAfterData) {
  std::istringstream in("1\nabc\n");
  EXPECT_THROW(read_series(in), DataError);
}

TEST(Series, WriteReadRoundTripIsExact) {
  const Series x({0.1, -1e-300, 3.141592653589793, 12345678.9});
  std::stringstream buf;
  write_series(buf, x);
  const Series y = read_series(buf);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], y[i]);
}

TEST(Table, FormatsSixSignificantDigits) {
  EXPECT_EQ(format_sig6(11.0 / 13.0), "0.846154");
  EXPECT_EQ(format_sig6(0.44), "0.44");
  EXPECT_EQ(format_sig6(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_cell(NotAvailable{}), "NA");
}

TEST(Table, CsvCarriesConfigHeader) {
  ExperimentResult r;
  r.add_config("seed", "7");
  r.columns = {"a", "b"};
  r.add_row({std::int64_t{1}, 0.5});
  EXPECT_THROW(r.add_row({std::int64_t{1}}), DataError);
  std::ostringstream out;
  write_csv(out, r);
  EXPECT_EQ(out.str(), "# seed: 7\na,b\n1,0.5\n");
}
