#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace topobell::cli {

/// Formats a real with 15 significant digits, locale independent.
inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

using FieldValue = std::variant<double, std::uint64_t, std::string>;
using Record = std::vector<std::pair<std::string, FieldValue>>;

/// Streams records as CSV (header row first, RFC-4180 quoting) or as JSON
/// lines (one object per row). Numbers share one formatter so the two
/// formats carry identical values.
class RecordWriter {
 public:
  enum class Format { csv, json };

  RecordWriter(std::ostream& os, Format format) : os_(os), format_(format) {}

  void write(const Record& record) {
    if (format_ == Format::csv) {
      if (!header_written_) {
        for (std::size_t i = 0; i < record.size(); ++i) {
          if (i) os_ << ',';
          os_ << csv_quoted(record[i].first);
        }
        os_ << '\n';
        header_written_ = true;
      }
      for (std::size_t i = 0; i < record.size(); ++i) {
        if (i) os_ << ',';
        os_ << csv_quoted(to_text(record[i].second));
      }
      os_ << '\n';
    } else {
      os_ << '{';
      for (std::size_t i = 0; i < record.size(); ++i) {
        if (i) os_ << ',';
        os_ << json_string(record[i].first) << ':';
        if (std::holds_alternative<std::string>(record[i].second))
          os_ << json_string(std::get<std::string>(record[i].second));
        else
          os_ << to_text(record[i].second);
      }
      os_ << "}\n";
    }
  }

 private:
  static std::string to_text(const FieldValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return format_real(*d);
    if (const auto* u = std::get_if<std::uint64_t>(&v)) return std::to_string(*u);
    return std::get<std::string>(v);
  }

  static std::string csv_quoted(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
    return out;
  }

  static std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
      }
    }
    out += '"';
    return out;
  }

  std::ostream& os_;
  Format format_;
  bool header_written_ = false;
};

}  // namespace topobell::cli
