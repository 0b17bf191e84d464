#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fnlse/datasets.hpp"
#include "fnlse/errors.hpp"
#include "fnlse/reference_tables.hpp"

using namespace fnlse;

namespace {

double total(const FailureDataset& d) {
  return std::accumulate(d.times().begin(), d.times().end(), 0.0);
}

}  // namespace

TEST_CASE("embedded sizes and checksums") {
  struct Expect {
    DatasetId id;
    std::size_t n;
    double sum;
  };
  const Expect e[] = {{DatasetId::NTDS, 34, 849},         {DatasetId::JDM1, 17, 14000},
                      {DatasetId::JDM2, 15, 296},         {DatasetId::JDM3, 163, 35578710},
                      {DatasetId::JDM4, 101, 1035.2352},  {DatasetId::ATT, 22, 680.02}};
  for (const auto& x : e) {
    auto d = builtin(x.id);
    CAPTURE(d.name());
    CHECK(d.size() == x.n);
    CHECK(total(d) == doctest::Approx(x.sum).epsilon(1e-12));
  }
}

TEST_CASE("embedded values") {
  auto ntds = builtin(DatasetId::NTDS);
  CHECK(ntds[0] == 9);
  CHECK(ntds[1] == 12);
  CHECK(ntds[2] == 11);
  CHECK(ntds[33] == 35);
  CHECK(ntds.unit() == "Day");
  auto j2 = builtin(DatasetId::JDM2);
  std::vector<double> want{10, 9, 13, 11, 15, 12, 18, 15, 22, 25, 19, 30, 32, 25, 40};
  CHECK(std::vector<double>(j2.times().begin(), j2.times().end()) == want);
  auto att = builtin(DatasetId::ATT);
  CHECK(att[0] == 5.50);
  CHECK(att[21] == 47.6);
}

TEST_CASE("dataset names") {
  CHECK(parse_dataset_id("jdm3") == DatasetId::JDM3);
  CHECK(parse_dataset_id("JDM-III") == DatasetId::JDM3);
  CHECK(parse_dataset_id("AT&T") == DatasetId::ATT);
  CHECK(parse_dataset_id("NTDS") == DatasetId::NTDS);
  CHECK_FALSE(parse_dataset_id("jdm5"));
  for (DatasetId id : all_datasets()) CHECK(parse_dataset_id(id_name(id)) == id);
}

TEST_CASE("plain parsing") {
  auto d = parse_failure_times("1 2 3", FileFormat::Plain, "t");
  CHECK(d.size() == 3);
  CHECK(d.unit() == "unspecified");
  CHECK(parse_failure_times("1.5\n 2e1\t3\n\n", FileFormat::Plain, "t")[1] == 20);
  try {
    parse_failure_times("1 -2 3", FileFormat::Plain, "t");
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("entry 2") != std::string::npos);
  }
  try {
    parse_failure_times("1\n2\nabc\n", FileFormat::Plain, "t");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_failure_times("  \n", FileFormat::Plain, "t"), ParseError);
}

TEST_CASE("csv parsing") {
  auto d = parse_failure_times("i,x\n1,9\n2,12", FileFormat::Csv, "t");
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 9);
  CHECK(d[1] == 12);
  CHECK(parse_failure_times("1,9\n2,12\n", FileFormat::Csv, "t").size() == 2);
  try {
    parse_failure_times("i,x\n1,9\n2,oops\n", FileFormat::Csv, "t");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_failure_times("i,x\n1,0\n", FileFormat::Csv, "t"), DomainError);
  CHECK_THROWS_AS(parse_failure_times("i,x\n", FileFormat::Csv, "t"), ParseError);
}

TEST_CASE("plain round trip is exact") {
  auto dir = std::filesystem::temp_directory_path() / "fnlse_dataset_test";
  std::filesystem::create_directories(dir);
  for (DatasetId id : all_datasets()) {
    auto d = builtin(id);
    auto path = dir / (std::string(id_name(id)) + ".txt");
    {
      std::ofstream f(path);
      write_plain(f, d);
    }
    auto back = load(path, format_for(path));
    CHECK(back.name() == id_name(id));
    REQUIRE(back.size() == d.size());
    for (std::size_t k = 0; k < d.size(); ++k) CHECK(back[k] == d[k]);
  }
  CHECK(format_for("a/b.CSV") == FileFormat::Csv);
  CHECK(format_for("a/b.dat") == FileFormat::Plain);
  CHECK_THROWS_AS(load(dir / "missing.txt", FileFormat::Plain), ParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reference values") {
  auto v = reference_value(Criterion::RE, DatasetId::JDM4, TableRow::PowLseOpt);
  CHECK(v.value == 14.922);
  REQUIRE(v.alpha);
  CHECK(*v.alpha == -0.25);
  CHECK(reference_value(Criterion::RBS, DatasetId::NTDS, TableRow::LogLSE).value == 1.216);
  CHECK_FALSE(reference_value(Criterion::RBS, DatasetId::NTDS, TableRow::LSE).alpha);
  CHECK(*reference_value(Criterion::RBS, DatasetId::JDM1, TableRow::PowLseBest).alpha == 0.75);
}
