// Copyright 2026 The aqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aqec/textrec.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aqec/errors.hpp"

namespace aqec::textrec {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool is_word(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '/'))
            return false;
    return true;
}

// Strips a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

Value parse_value(const std::string& raw, int line) {
    Value v;
    v.line = line;
    if (raw.empty()) fail(line, "missing value");
    if (raw.front() == '"') {
        const auto close = raw.find('"', 1);
        if (close == std::string::npos || trim(raw.substr(close + 1)) != "") fail(line, "unterminated string");
        v.kind = Value::Kind::Word;
        v.word = raw.substr(1, close - 1);
        return v;
    }
    if (raw.front() == '[') {
        const auto close = raw.find(']');
        if (close == std::string::npos) fail(line, "unterminated list");
        v.kind = Value::Kind::List;
        std::stringstream items(raw.substr(1, close - 1));
        std::string item;
        while (std::getline(items, item, ',')) {
            item = trim(item);
            if (item.empty()) {
                if (items.eof() && v.list.empty()) break;
                fail(line, "empty list element");
            }
            double x;
            if (!parse_double(item, x)) fail(line, "not a number: '" + item + "'");
            v.list.push_back(x);
        }
        v.unit = trim(raw.substr(close + 1));
        if (!v.unit.empty() && !is_word(v.unit)) fail(line, "bad unit '" + v.unit + "'");
        return v;
    }
    std::stringstream ss(raw);
    std::string first, unit, extra;
    ss >> first >> unit >> extra;
    if (!extra.empty()) fail(line, "unexpected trailing text '" + extra + "'");
    double x;
    if (parse_double(first, x)) {
        v.kind = Value::Kind::Number;
        v.number = x;
        v.unit = unit;
        if (!unit.empty() && !is_word(unit)) fail(line, "bad unit '" + unit + "'");
        return v;
    }
    if (!unit.empty() || !is_word(first)) fail(line, "cannot parse value '" + raw + "'");
    v.kind = Value::Kind::Word;
    v.word = first;
    return v;
}

std::string value_to_text(const Value& v) {
    std::string out;
    switch (v.kind) {
        case Value::Kind::Number:
            out = format_number(v.number);
            break;
        case Value::Kind::List:
            out = "[";
            for (size_t i = 0; i < v.list.size(); ++i) {
                if (i) out += ", ";
                out += format_number(v.list[i]);
            }
            out += "]";
            break;
        case Value::Kind::Word:
            out = is_word(v.word) ? v.word : "\"" + v.word + "\"";
            return out;
    }
    if (!v.unit.empty()) out += " " + v.unit;
    return out;
}

}  // namespace

Value Value::of(double x, std::string unit) {
    Value v;
    v.kind = Kind::Number;
    v.number = x;
    v.unit = std::move(unit);
    return v;
}

Value Value::of(std::vector<double> xs, std::string unit) {
    Value v;
    v.kind = Kind::List;
    v.list = std::move(xs);
    v.unit = std::move(unit);
    return v;
}

Value Value::of_word(std::string w) {
    Value v;
    v.kind = Kind::Word;
    v.word = std::move(w);
    return v;
}

const Value* Section::find(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e.value;
    return nullptr;
}

Section& Section::set(const std::string& key, Value v) {
    for (auto& e : entries)
        if (e.key == key) {
            e.value = std::move(v);
            return *this;
        }
    entries.push_back({key, std::move(v)});
    return *this;
}

const Section* Document::find(const std::string& name) const {
    for (const auto& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

Section& Document::section(const std::string& name) {
    for (auto& s : sections)
        if (s.name == name) return s;
    sections.push_back(Section{name, 0, {}});
    return sections.back();
}

Document Document::parse(const std::string& text) {
    Document doc;
    Section* current = nullptr;
    std::stringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "malformed section header");
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (!is_word(name)) fail(line, "bad section name '" + name + "'");
            if (doc.find(name)) fail(line, "duplicate section [" + name + "]");
            doc.sections.push_back(Section{name, line, {}});
            current = &doc.sections.back();
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        if (!is_word(key)) fail(line, "bad key '" + key + "'");
        if (!current) {
            doc.sections.push_back(Section{"", line, {}});
            current = &doc.sections.back();
        }
        if (current->find(key)) fail(line, "duplicate key '" + key + "'");
        current->entries.push_back({key, parse_value(trim(s.substr(eq + 1)), line)});
    }
    return doc;
}

std::string Document::to_text() const {
    std::string out;
    bool first = true;
    for (const auto& sec : sections) {
        if (!first) out += "\n";
        first = false;
        if (!sec.name.empty()) out += "[" + sec.name + "]\n";
        for (const auto& e : sec.entries) out += e.key + " = " + value_to_text(e.value) + "\n";
    }
    return out;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << contents;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace aqec::textrec
