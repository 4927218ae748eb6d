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

// The structured-text record format shared by configs, pulse records, fit
// records and run manifests:
//
//   # comment
//   [section]
//   key = 350 MHz            number with an optional unit suffix
//   key = [5, 10, 15] us     list of numbers with an optional unit suffix
//   key = vslq               bare word
//   key = "some text"        quoted string
//
// Keys that appear before the first section header belong to section "".

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace aqec::textrec {

struct Value {
    enum class Kind { Number, List, Word };
    Kind kind = Kind::Word;
    double number = 0.0;
    std::vector<double> list;
    std::string word;
    std::string unit;
    int line = 0;

    static Value of(double x, std::string unit = {});
    static Value of(std::vector<double> xs, std::string unit = {});
    static Value of_word(std::string w);
};

struct Entry {
    std::string key;
    Value value;
};

struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;

    const Value* find(const std::string& key) const;
    Section& set(const std::string& key, Value v);
};

struct Document {
    std::vector<Section> sections;

    const Section* find(const std::string& name) const;
    Section& section(const std::string& name);  // find or append

    static Document parse(const std::string& text);
    std::string to_text() const;
};

/// %.17g: enough digits for any double to round-trip.
std::string format_number(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace aqec::textrec
