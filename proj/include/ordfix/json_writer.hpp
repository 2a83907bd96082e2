#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace ordfix {

/// Formats a double with 17 significant digits, enough to round-trip and
/// fixed so that equal inputs always serialize to equal bytes.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Minimal JSON emitter with caller-controlled key order. Reports are
/// required to be byte-identical for identical inputs, which rules out
/// library serializers with their own float formatting; this writer pins
/// both the ordering and the number format.
class JsonWriter {
 public:
  void begin_object() {
    comma();
    out_ += '{';
    fresh_.push_back(true);
  }
  void end_object() {
    out_ += '}';
    fresh_.pop_back();
  }
  void begin_array() {
    comma();
    out_ += '[';
    fresh_.push_back(true);
  }
  void end_array() {
    out_ += ']';
    fresh_.pop_back();
  }

  void key(std::string_view k) {
    comma();
    append_string(k);
    out_ += ':';
    pending_value_ = true;
  }

  void value(double v) {
    comma();
    out_ += format_double(v);
  }
  void value(std::int64_t v) {
    comma();
    out_ += std::to_string(v);
  }
  void value(int v) { value(static_cast<std::int64_t>(v)); }
  void value(std::uint64_t v) {
    comma();
    out_ += std::to_string(v);
  }
  void value(bool v) {
    comma();
    out_ += v ? "true" : "false";
  }
  void value(std::string_view v) {
    comma();
    append_string(v);
  }
  void value(const char* v) { value(std::string_view(v)); }
  void null() {
    comma();
    out_ += "null";
  }

  const std::string& str() const { return out_; }

 private:
  void comma() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!fresh_.empty()) {
      if (fresh_.back()) {
        fresh_.back() = false;
      } else {
        out_ += ',';
      }
    }
  }

  void append_string(std::string_view s) {
    out_ += '"';
    for (unsigned char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += static_cast<char>(c);
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> fresh_;
  bool pending_value_ = false;
};

}  // namespace ordfix
