#include "fnlse/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <vector>

#include "fnlse/errors.hpp"

namespace fnlse {

namespace {

// Tables 1-6, in the order printed.
constexpr double kNtds[] = {
    9, 12, 11, 4, 7, 2, 5, 8, 5, 7, 1, 6, 1, 9, 4, 1, 3, 3, 6, 1, 11, 33, 7,
    91, 2, 1, 87, 47, 12, 9, 135, 258, 16, 35};
constexpr double kJdm1[] = {
    932, 3103, 661, 197, 1476, 155, 1358, 288, 1169, 1061, 142, 494, 660, 209,
    361, 688, 1046};
constexpr double kJdm2[] = {
    10, 9, 13, 11, 15, 12, 18, 15, 22, 25, 19, 30, 32, 25, 40};
constexpr double kJdm3[] = {
    320, 1439, 9000, 2880, 5700, 21800, 26800, 113540, 112137, 660, 2700,
    28793, 2173, 7263, 10865, 4230, 8460, 14805, 11844, 5361, 6553, 6499, 3124,
    51323, 17010, 1890, 5400, 62313, 24826, 26355, 363, 13989, 15058, 32377,
    41632, 4160, 82040, 13189, 3426, 5833, 640, 640, 2880, 110, 22080, 60654,
    52163, 12546, 784, 10193, 7841, 31365, 24313, 298890, 1280, 22099, 19150,
    2611, 39170, 55794, 42632, 267600, 87074, 149606, 14400, 34560, 39600,
    334395, 296015, 177395, 214622, 156400, 166800, 10800, 267000, 34513, 7680,
    37667, 11100, 187200, 18000, 178200, 144000, 639200, 86400, 288000, 320,
    57600, 28800, 18000, 88640, 432000, 4160, 3200, 42800, 43600, 10560,
    115200, 86400, 57600, 28800, 432000, 345600, 115200, 44494, 10506, 177240,
    241487, 143028, 273564, 189391, 172800, 21600, 64800, 302400, 752188,
    86400, 100800, 19440, 115200, 64800, 3600, 230400, 583200, 259200, 183600,
    3600, 144000, 14400, 86400, 110100, 28800, 43200, 57600, 468000, 950400,
    400400, 883800, 273600, 432000, 864000, 202600, 203400, 277680, 105000,
    580080, 4533960, 432000, 1411200, 172800, 86400, 1123200, 1555200, 777600,
    1296000, 1872000, 335600, 921600, 1036800, 1728000, 777600, 57600, 17280};
constexpr double kJdm4[] = {
    5.7683, 9.5743, 9.105, 7.9655, 8.6482, 9.9887, 10.1962, 11.6399, 11.6275,
    6.4922, 7.901, 10.2679, 7.6839, 8.8905, 9.2933, 8.3499, 9.0431, 9.6027,
    9.3736, 8.5869, 8.7877, 8.7794, 8.0469, 10.8459, 8.7416, 7.5443, 8.5941,
    11.0399, 10.1196, 10.1786, 5.8944, 9.546, 9.6197, 10.3852, 10.6301, 8.3333,
    11.315, 9.4871, 8.1391, 8.6713, 6.4615, 6.4615, 7.6955, 4.7005, 10.0024,
    11.0129, 10.8621, 9.4372, 6.6644, 9.2294, 8.9671, 10.3534, 10.0998,
    12.6078, 7.1546, 10.0033, 9.8601, 7.8675, 10.5757, 10.9294, 10.6604,
    12.4972, 11.3745, 11.9158, 9.575, 10.4504, 10.5866, 12.7201, 12.5982,
    12.0859, 12.2766, 11.9602, 12.0246, 9.2873, 12.495, 14.5569, 13.3279,
    8.9464, 14.7824, 14.8969, 12.1399, 9.7981, 12.0907, 13.0977, 13.368,
    12.7206, 14.192, 11.3704, 12.2021, 12.2793, 11.3667, 11.3923, 14.4113,
    8.3333, 8.0709, 12.2021, 12.7831, 13.1585, 12.753, 10.3533, 12.4897};
constexpr double kAtt[] = {
    5.50, 1.83, 2.75, 70.89, 3.94, 14.98, 3.47, 9.96, 11.39, 19.88, 7.81,
    14.59, 11.42, 18.94, 65.3, 0.04, 125.67, 82.69, 0.45, 31.61, 129.31, 47.6};

constexpr DatasetId kAll[] = {DatasetId::NTDS, DatasetId::JDM1, DatasetId::JDM2,
                              DatasetId::JDM3, DatasetId::JDM4, DatasetId::ATT};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_positive(double v, std::size_t entry) {
  if (!(v > 0))
    throw DomainError(fmt::format("non-positive failure time {} at entry {}", v, entry));
}

std::vector<double> parse_plain(std::string_view text) {
  std::vector<double> out;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char ch = text[pos];
    if (ch == '\n') {
      ++line;
      ++pos;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view tok = text.substr(pos, end - pos);
    auto v = to_number(tok);
    if (!v) throw ParseError(fmt::format("line {}: '{}' is not a number", line, tok), line);
    check_positive(*v, out.size() + 1);
    out.push_back(*v);
    pos = end;
  }
  return out;
}

std::vector<double> parse_csv(std::string_view text) {
  std::vector<double> out;
  std::size_t line = 0;
  bool first_row = true;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view row = trim(text.substr(start, nl - start));
    start = nl + 1;
    ++line;
    if (row.empty()) continue;

    std::vector<std::string_view> cells;
    std::size_t c0 = 0;
    while (true) {
      std::size_t comma = row.find(',', c0);
      cells.push_back(trim(row.substr(c0, comma == std::string_view::npos ? row.npos : comma - c0)));
      if (comma == std::string_view::npos) break;
      c0 = comma + 1;
    }
    bool numeric = std::all_of(cells.begin(), cells.end(),
                               [](std::string_view c) { return to_number(c).has_value(); });
    if (first_row && !numeric) {  // header
      first_row = false;
      continue;
    }
    first_row = false;
    if (cells.size() > 2)
      throw ParseError(fmt::format("line {}: expected index,time", line), line);
    auto v = to_number(cells.back());
    if (!numeric || !v)
      throw ParseError(fmt::format("line {}: '{}' is not a number", line, row), line);
    check_positive(*v, out.size() + 1);
    out.push_back(*v);
  }
  return out;
}

}  // namespace

std::span<const DatasetId> all_datasets() { return kAll; }

FailureDataset builtin(DatasetId id) {
  auto make = [id](std::string_view unit, std::span<const double> v) {
    return FailureDataset(std::string(display_name(id)), std::string(unit),
                          std::vector<double>(v.begin(), v.end()));
  };
  switch (id) {
    case DatasetId::NTDS: return make("Day", kNtds);
    case DatasetId::JDM1: return make("Year", kJdm1);
    case DatasetId::JDM2: return make("Sec.", kJdm2);
    case DatasetId::JDM3: return make("Sec.", kJdm3);
    case DatasetId::JDM4: return make("Sec.", kJdm4);
    case DatasetId::ATT: return make("CPU Units", kAtt);
  }
  throw InvalidArgument("unknown dataset id");
}

std::string_view id_name(DatasetId id) {
  switch (id) {
    case DatasetId::NTDS: return "ntds";
    case DatasetId::JDM1: return "jdm1";
    case DatasetId::JDM2: return "jdm2";
    case DatasetId::JDM3: return "jdm3";
    case DatasetId::JDM4: return "jdm4";
    case DatasetId::ATT: return "att";
  }
  return "?";
}

std::string_view display_name(DatasetId id) {
  switch (id) {
    case DatasetId::NTDS: return "NTDS";
    case DatasetId::JDM1: return "JDM-I";
    case DatasetId::JDM2: return "JDM-II";
    case DatasetId::JDM3: return "JDM-III";
    case DatasetId::JDM4: return "JDM-IV";
    case DatasetId::ATT: return "AT&T";
  }
  return "?";
}

std::optional<DatasetId> parse_dataset_id(std::string_view text) {
  const std::string t = lower(trim(text));
  for (DatasetId id : kAll) {
    if (t == id_name(id) || t == lower(display_name(id))) return id;
  }
  return std::nullopt;
}

FailureDataset parse_failure_times(std::string_view text, FileFormat format,
                                   std::string name) {
  std::vector<double> v = format == FileFormat::Csv ? parse_csv(text) : parse_plain(text);
  if (v.empty()) throw ParseError("no failure times found", 0);
  return FailureDataset(std::move(name), "unspecified", std::move(v));
}

FailureDataset load(const std::filesystem::path& path, FileFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()), 0);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_failure_times(text, format, path.stem().string());
}

FileFormat format_for(const std::filesystem::path& path) {
  return lower(path.extension().string()) == ".csv" ? FileFormat::Csv : FileFormat::Plain;
}

void write_plain(std::ostream& out, const FailureDataset& data) {
  for (double v : data.times()) out << fmt::format("{}\n", v);
}

}  // namespace fnlse
