#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace glq::records {

enum class Format { json_lines, csv, plain };

Format format_from_name(const std::string& name);
std::string format_name(Format f);

// A flat ordered record. All values are strings so exact integers and
// rationals survive round-trips untouched.
struct Record {
  std::vector<std::pair<std::string, std::string>> fields;

  void add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
  const std::string* find(const std::string& key) const;

  friend bool operator==(const Record&, const Record&) = default;
};

// Streams records in one format. CSV prints a header row before the first
// record; json-lines and plain are self-describing per line.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}
  void write(const Record& rec);

 private:
  std::ostream& out_;
  Format format_;
  bool header_written_ = false;
};

// Readers for the two machine formats; used by the round-trip tests and
// available to downstream consumers.
std::vector<Record> read_csv(std::istream& in);
std::vector<Record> read_json_lines(std::istream& in);

std::string csv_escape(const std::string& value);

}  // namespace glq::records
