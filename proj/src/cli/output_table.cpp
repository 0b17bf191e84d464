#include "cli/output_table.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <ostream>

#include "fnlse/errors.hpp"

namespace fnlse::cli {

namespace {

std::string human_cell(const Cell& c) {
  if (auto* s = std::get_if<std::string>(&c)) return *s;
  if (auto* d = std::get_if<double>(&c)) return std::isnan(*d) ? "nan" : fmt::format("{:.3f}", *d);
  if (auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<bool>(c) ? "yes" : "no";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  if (auto* s = std::get_if<std::string>(&c)) return csv_escape(*s);
  if (auto* d = std::get_if<double>(&c)) return full_precision(*d);
  if (auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<bool>(c) ? "true" : "false";
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "human") return Format::Human;
  if (text == "csv") return Format::Csv;
  if (text == "jsonl") return Format::JsonLines;
  throw InvalidArgument(fmt::format("unknown format '{}' (human, csv, jsonl)", text));
}

std::string full_precision(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{}", v);
}

OutputTable::OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw IndexError(fmt::format("row has {} cells, table has {} columns", row.size(),
                                 columns_.size()));
  rows_.push_back(std::move(row));
}

void OutputTable::render(std::ostream& out, Format format) const {
  switch (format) {
    case Format::Human: {
      std::vector<std::vector<std::string>> text;
      std::vector<std::size_t> width(columns_.size());
      for (std::size_t c = 0; c < columns_.size(); ++c) width[c] = columns_[c].size();
      for (const auto& row : rows_) {
        auto& t = text.emplace_back();
        for (std::size_t c = 0; c < row.size(); ++c) {
          t.push_back(human_cell(row[c]));
          width[c] = std::max(width[c], t.back().size());
        }
      }
      auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (c) s += "  ";
          bool left = !rows_.empty() && std::holds_alternative<std::string>(rows_.front()[c]);
          s += left ? fmt::format("{:<{}}", cells[c], width[c])
                    : fmt::format("{:>{}}", cells[c], width[c]);
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << '\n';
      };
      line(columns_);
      for (const auto& t : text) line(t);
      break;
    }
    case Format::Csv: {
      for (std::size_t c = 0; c < columns_.size(); ++c)
        out << (c ? "," : "") << csv_escape(columns_[c]);
      out << '\n';
      for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
        out << '\n';
      }
      break;
    }
    case Format::JsonLines: {
      for (const auto& row : rows_) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c)
          std::visit([&](const auto& v) { obj[columns_[c]] = v; }, row[c]);
        out << obj.dump() << '\n';
      }
      break;
    }
  }
}

}  // namespace fnlse::cli
