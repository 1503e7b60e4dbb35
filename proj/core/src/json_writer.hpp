#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace dsrr::internal {

// Minimal JSON emitter: keys keep insertion order, floats print with 17
// significant digits, so equal inputs serialize byte-identically.
class JsonWriter {
 public:
  void begin_object() {
    sep();
    out_ += '{';
  }
  void end_object() { out_ += '}'; }
  void begin_array() {
    sep();
    out_ += '[';
  }
  void end_array() { out_ += ']'; }

  void key(std::string_view k) {
    sep();
    write_string(k);
    out_ += ':';
  }
  void number(double v) {
    sep();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out_ += buf;
  }
  void integer(std::int64_t v) {
    sep();
    out_ += std::to_string(v);
  }
  void uinteger(std::uint64_t v) {
    sep();
    out_ += std::to_string(v);
  }
  void boolean(bool v) {
    sep();
    out_ += v ? "true" : "false";
  }
  void string(std::string_view s) {
    sep();
    write_string(s);
  }

  std::string take() { return std::move(out_); }

 private:
  // A separator is due unless we sit at a container opening or after a key.
  // A raw ':' can only be the key separator; colons inside strings are
  // followed by the closing quote.
  void sep() {
    if (out_.empty()) return;
    const char c = out_.back();
    if (c != '{' && c != '[' && c != ':') out_ += ',';
  }

  void write_string(std::string_view s) {
    out_ += '"';
    for (char ch : s) {
      switch (ch) {
        case '"':
          out_ += "\\\"";
          break;
        case '\\':
          out_ += "\\\\";
          break;
        case '\n':
          out_ += "\\n";
          break;
        case '\r':
          out_ += "\\r";
          break;
        case '\t':
          out_ += "\\t";
          break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", ch);
            out_ += buf;
          } else {
            out_ += ch;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
};

}  // namespace dsrr::internal
