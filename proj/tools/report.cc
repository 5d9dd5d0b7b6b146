// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "report.h"

#include <array>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

namespace qmeas::cli {

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
        throw std::runtime_error("sha256 digest failed");
    }
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        char buf[3];
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

OrderedJson distribution_json(const OutcomeDistribution &dist) {
    OrderedJson out = OrderedJson::array();
    for (std::size_t i = 0; i < dist.size(); ++i) {
        OrderedJson entry;
        entry["label"] = dist.labels()[i];
        entry["probability"] = dist.probabilities()[i];
        out.push_back(std::move(entry));
    }
    return out;
}

OrderedJson counts_json(const OutcomeCounts &counts) {
    OrderedJson out = OrderedJson::array();
    for (const auto &[label, count] : counts) {
        OrderedJson entry;
        entry["label"] = label;
        entry["count"] = count;
        out.push_back(std::move(entry));
    }
    return out;
}

OrderedJson check_json(std::string_view name, double value, double bound) {
    OrderedJson out;
    out["name"] = name;
    out["value"] = value;
    out["bound"] = bound;
    out["passed"] = value <= bound;
    return out;
}

}  // namespace qmeas::cli
