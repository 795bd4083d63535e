#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tr {

// write-only JSON tree; object keys keep insertion order so exact-mode
// output is byte stable across runs.  every number is emitted as a decimal
// string, rationals as "p/q", so consumers never face binary-float ambiguity
struct JVal {
  enum Kind { Obj, Arr, Str } kind = Obj;
  std::vector<std::pair<std::string, JVal>> obj;
  std::vector<JVal> arr;
  std::string str;

  static JVal object() { return JVal{}; }
  static JVal array() {
    JVal v;
    v.kind = Arr;
    return v;
  }
  static JVal s(std::string x) {
    JVal v;
    v.kind = Str;
    v.str = std::move(x);
    return v;
  }
  static JVal i(long x) { return s(std::to_string(x)); }

  JVal& set(const std::string& k, JVal v) {
    obj.emplace_back(k, std::move(v));
    return obj.back().second;
  }
  JVal& push(JVal v) {
    arr.push_back(std::move(v));
    return arr.back();
  }

  static void escape(std::ostream& o, const std::string& s) {
    o << '"';
    for (char c : s) {
      switch (c) {
        case '"': o << "\\\""; break;
        case '\\': o << "\\\\"; break;
        case '\n': o << "\\n"; break;
        case '\t': o << "\\t"; break;
        case '\r': o << "\\r"; break;
        default:
          if ((unsigned char)c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            o << buf;
          } else {
            o << c;
          }
      }
    }
    o << '"';
  }

  void write(std::ostream& o, int depth = 0) const {
    std::string pad(2 * (size_t)depth, ' '), pad2(2 * (size_t)(depth + 1), ' ');
    switch (kind) {
      case Str: escape(o, str); break;
      case Obj:
        if (obj.empty()) {
          o << "{}";
          break;
        }
        o << "{\n";
        for (size_t k = 0; k < obj.size(); k++) {
          o << pad2;
          escape(o, obj[k].first);
          o << ": ";
          obj[k].second.write(o, depth + 1);
          o << (k + 1 < obj.size() ? ",\n" : "\n");
        }
        o << pad << "}";
        break;
      case Arr:
        if (arr.empty()) {
          o << "[]";
          break;
        }
        o << "[\n";
        for (size_t k = 0; k < arr.size(); k++) {
          o << pad2;
          arr[k].write(o, depth + 1);
          o << (k + 1 < arr.size() ? ",\n" : "\n");
        }
        o << pad << "]";
        break;
    }
  }

  std::string dump() const {
    std::ostringstream o;
    write(o);
    o << "\n";
    return o.str();
  }
};

}  // namespace tr
