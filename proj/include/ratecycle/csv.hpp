#pragma once

// Small CSV utilities: RFC-4180 field splitting (quoted fields, embedded
// commas/quotes) and numeric formatting shared by all writers.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ratecycle::csv {

inline std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string escape_field(std::string_view f) {
    bool needs_quotes = f.find_first_of(",\"\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(f);
    std::string out = "\"";
    for (char c : f) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Fixed significant-digit rendering so repeated runs emit identical bytes.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string strip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

class Writer {
  public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
        path_ = path;
    }

    void write_row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << escape_field(fields[i]);
        }
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("write failed: " + path_);
    }

  private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace ratecycle::csv
