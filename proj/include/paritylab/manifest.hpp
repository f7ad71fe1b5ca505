// Copyright 2026 The paritylab developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace paritylab {

inline constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t file_hash(const std::string& path);

// Every artifact embeds the manifest that produced it; identical manifests
// produce byte-identical outputs, and `report` refuses mismatched inputs.
struct RunManifest {
    std::string command;
    std::map<std::string, std::uint64_t> input_hashes;  // path -> fnv1a
    std::uint64_t seed = 0;
    std::string params;
    std::string version = kToolVersion;

    std::uint64_t digest() const;
    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

// temp file + rename, so readers never observe partial artifacts
void atomic_write(const std::string& path, const std::string& content);

}  // namespace paritylab
