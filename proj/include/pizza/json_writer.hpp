#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace pizza {

// Minimal ordered JSON emitter. Key order is insertion order and doubles are
// printed with 17 significant digits, so identical inputs serialize to
// identical bytes.
class JsonWriter {
 public:
  static std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  static std::string number(long long v) { return std::to_string(v); }
  static std::string number(std::uint64_t v) { return std::to_string(v); }

  static std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
          } else {
            out += c;
          }
      }
    }
    out += '"';
    return out;
  }

  void begin_object() { punct('{'); }
  void end_object() { close('}'); }
  void begin_array() { punct('['); }
  void end_array() { close(']'); }

  void key(const std::string& k) {
    separator();
    out_ += quote(k);
    out_ += ':';
    pending_value_ = true;
  }

  void value(const std::string& s) { raw(quote(s)); }
  void value(const char* s) { raw(quote(s)); }
  void value(double v) { raw(number(v)); }
  void value(long long v) { raw(number(v)); }
  void value(int v) { raw(number(static_cast<long long>(v))); }
  void value(std::uint64_t v) { raw(number(v)); }
  void value(bool b) { raw(b ? "true" : "false"); }

  const std::string& str() const { return out_; }

 private:
  void separator() {
    if (needs_comma_) out_ += ',';
    needs_comma_ = false;
  }

  void punct(char c) {
    if (!pending_value_) separator();
    pending_value_ = false;
    out_ += c;
    needs_comma_ = false;
  }

  void close(char c) {
    out_ += c;
    needs_comma_ = true;
    pending_value_ = false;
  }

  void raw(const std::string& s) {
    if (!pending_value_) separator();
    pending_value_ = false;
    out_ += s;
    needs_comma_ = true;
  }

  std::string out_;
  bool needs_comma_ = false;
  bool pending_value_ = false;
};

}  // namespace pizza
