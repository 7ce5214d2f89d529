#include "glq/records.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "glq/error.hpp"

namespace glq::records {

Format format_from_name(const std::string& name) {
  if (name == "json-lines" || name == "jsonl") return Format::json_lines;
  if (name == "csv") return Format::csv;
  if (name == "plain") return Format::plain;
  throw InvalidArgument("unknown output format: " + name);
}

std::string format_name(Format f) {
  switch (f) {
    case Format::json_lines: return "json-lines";
    case Format::csv: return "csv";
    case Format::plain: return "plain";
  }
  return "?";
}

const std::string* Record::find(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

std::string csv_escape(const std::string& value) {
  bool needs_quotes = value.find_first_of(",\"\n") != std::string::npos;
  if (!needs_quotes) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void RecordWriter::write(const Record& rec) {
  switch (format_) {
    case Format::json_lines: {
      nlohmann::ordered_json j;
      for (const auto& [k, v] : rec.fields) j[k] = v;
      out_ << j.dump() << '\n';
      break;
    }
    case Format::csv: {
      if (!header_written_) {
        bool first = true;
        for (const auto& [k, v] : rec.fields) {
          if (!first) out_ << ',';
          out_ << csv_escape(k);
          first = false;
        }
        out_ << '\n';
        header_written_ = true;
      }
      bool first = true;
      for (const auto& [k, v] : rec.fields) {
        if (!first) out_ << ',';
        out_ << csv_escape(v);
        first = false;
      }
      out_ << '\n';
      break;
    }
    case Format::plain: {
      bool first = true;
      for (const auto& [k, v] : rec.fields) {
        if (!first) out_ << ' ';
        out_ << k << '=' << v;
        first = false;
      }
      out_ << '\n';
      break;
    }
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

std::vector<Record> read_csv(std::istream& in) {
  std::vector<Record> records;
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size())
      throw InvalidArgument("csv: row width does not match header");
    Record rec;
    for (std::size_t i = 0; i < header.size(); ++i) rec.add(header[i], cells[i]);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<Record> read_json_lines(std::istream& in) {
  std::vector<Record> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::ordered_json::parse(line);
    Record rec;
    for (auto it = j.begin(); it != j.end(); ++it)
      rec.add(it.key(), it.value().get<std::string>());
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace glq::records
