// Copyright 2026 The selectit Authors
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

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "selectit/common.hpp"

namespace selectit {

// One instruction-tuning record in Alpaca form. `input` may be empty;
// `sample_id` is a pure function of the three text fields.
struct Sample {
  std::string instruction;
  std::string input;
  std::string output;
  std::string sample_id;

  friend bool operator==(const Sample&, const Sample&) = default;
};

// Content hash over (instruction, input, output) in that fixed order with a
// one-byte separator, so ("a","","b") and ("a","b","") cannot collide at the
// field boundary. Stable across runs and platforms.
inline std::string compute_sample_id(const Sample& s) {
  constexpr std::string_view sep("\x1f", 1);
  std::uint64_t h = fnv1a64(s.instruction);
  h = fnv1a64(sep, h);
  h = fnv1a64(s.input, h);
  h = fnv1a64(sep, h);
  h = fnv1a64(s.output, h);
  return to_hex64(h);
}

inline Sample make_sample(std::string instruction, std::string input, std::string output) {
  Sample s{std::move(instruction), std::move(input), std::move(output), {}};
  s.sample_id = compute_sample_id(s);
  return s;
}

struct Dataset {
  std::vector<Sample> samples;
  std::string source_path;

  std::size_t count() const { return samples.size(); }

  friend bool operator==(const Dataset& a, const Dataset& b) { return a.samples == b.samples; }
};

inline std::unordered_map<std::string, const Sample*> index_by_id(const Dataset& d) {
  std::unordered_map<std::string, const Sample*> idx;
  idx.reserve(d.samples.size());
  for (const auto& s : d.samples) idx.emplace(s.sample_id, &s);
  return idx;
}

struct RejectedRecord {
  std::size_t index;  // position in the source array
  std::string reason;
};

struct LoadReport {
  std::size_t duplicates_dropped = 0;
  std::vector<RejectedRecord> rejected;
};

// Loads an Alpaca-style JSON array. Structurally malformed records (missing
// or non-string fields) are fatal; semantically empty ones (blank instruction
// or blank output) are dropped and recorded in the report, as are
// byte-identical duplicates.
inline Dataset load_dataset(const std::filesystem::path& path, LoadReport* report = nullptr) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec))
    throw Error(Errc::file_not_found, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::file_not_found, path.string());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::malformed_json, std::string(e.what()) + " in " + path.string());
  }
  if (!doc.is_array())
    throw Error(Errc::schema_violation, "top-level JSON value is not an array in " + path.string());

  Dataset ds;
  ds.source_path = path.string();
  ds.samples.reserve(doc.size());
  LoadReport local;
  LoadReport& rep = report ? *report : local;

  std::unordered_map<std::string, std::size_t> seen;  // sample_id -> index in ds.samples
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& rec = doc[i];
    if (!rec.is_object())
      throw Error(Errc::schema_violation, "record " + std::to_string(i) + " is not an object");
    auto require_string = [&](const char* key) -> std::string {
      auto it = rec.find(key);
      if (it == rec.end())
        throw Error(Errc::schema_violation,
                    "record " + std::to_string(i) + " is missing field \"" + key + "\"");
      if (!it->is_string())
        throw Error(Errc::schema_violation,
                    "record " + std::to_string(i) + " field \"" + key + "\" is not a string");
      return it->get<std::string>();
    };
    std::string instruction = require_string("instruction");
    std::string output = require_string("output");
    std::string input;
    if (auto it = rec.find("input"); it != rec.end()) {
      if (!it->is_string())
        throw Error(Errc::schema_violation,
                    "record " + std::to_string(i) + " field \"input\" is not a string");
      input = it->get<std::string>();
    }

    if (trim_view(instruction).empty()) {
      rep.rejected.push_back({i, "empty instruction"});
      continue;
    }
    if (trim_view(output).empty()) {
      rep.rejected.push_back({i, "empty output"});
      continue;
    }

    Sample s = make_sample(std::move(instruction), std::move(input), std::move(output));
    if (auto it = seen.find(s.sample_id); it != seen.end()) {
      const Sample& prev = ds.samples[it->second];
      if (prev.instruction == s.instruction && prev.input == s.input && prev.output == s.output) {
        ++rep.duplicates_dropped;
        continue;
      }
      throw Error(Errc::hash_collision,
                  "distinct records " + std::to_string(it->second) + " and " + std::to_string(i) +
                      " share sample_id " + s.sample_id);
    }
    seen.emplace(s.sample_id, ds.samples.size());
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

// Writes the dataset back out as an Alpaca JSON array. "input" is always
// present (possibly empty) so the on-disk schema is uniform.
inline void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : ds.samples) {
    nlohmann::ordered_json rec;
    rec["instruction"] = s.instruction;
    rec["input"] = s.input;
    rec["output"] = s.output;
    arr.push_back(std::move(rec));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_failure, "cannot open for writing: " + path.string());
  out << arr.dump(2) << '\n';
  out.flush();
  if (!out) throw Error(Errc::io_failure, "write failed: " + path.string());
}

}  // namespace selectit
