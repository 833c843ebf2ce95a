/*
   Copyright 2026 the valdef authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "valdef/cache.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "valdef/errors.hpp"

namespace valdef {

using Json = nlohmann::ordered_json;

SessionCache::SessionCache(std::string dir, std::string input_hash) : dir_(std::move(dir)) {
    path_ = dir_ + "/" + input_hash + ".jsonl";
}

bool SessionCache::exists() const { return std::filesystem::exists(path_); }

void SessionCache::load() {
    members_.clear();
    summaries_.clear();
    if (!exists()) return;
    std::ifstream in(path_);
    if (!in) throw cache_error("cannot open cache file: " + path_);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const std::exception& e) {
            throw cache_error("malformed cache line " + std::to_string(lineno) + ": " + e.what());
        }
        std::string kind = j.value("kind", "");
        if (kind == "member") {
            CacheMemberRecord r;
            r.stage = j.at("stage").get<int>();
            r.rho = j.at("rho").get<int>();
            r.q_text = j.at("Q").get<std::string>();
            r.gamma = j.at("gamma").get<std::string>();
            if (j.contains("J")) r.J = j.at("J").get<std::set<int>>();
            members_.push_back(std::move(r));
        } else if (kind == "summary") {
            CacheSummaryRecord r;
            r.stage = j.at("stage").get<int>();
            r.B = j.at("B").get<std::string>();
            r.Bbar = j.at("Bbar").get<std::string>();
            r.D = j.at("D").get<int>();
            r.d = j.at("d").get<int>();
            r.stabilization_index = j.at("stabilization_index").get<int>();
            summaries_.push_back(std::move(r));
        } else {
            throw cache_error("unknown cache record kind on line " + std::to_string(lineno));
        }
    }
}

std::optional<CacheMemberRecord> SessionCache::find_member(int stage, int rho) const {
    for (const auto& m : members_)
        if (m.stage == stage && m.rho == rho) return m;
    return std::nullopt;
}

std::optional<CacheSummaryRecord> SessionCache::find_summary(int stage) const {
    for (const auto& s : summaries_)
        if (s.stage == stage) return s;
    return std::nullopt;
}

void SessionCache::verify_and_store(const std::vector<CacheMemberRecord>& members,
                                    const std::vector<CacheSummaryRecord>& summaries) {
    // replay check: every previously cached record must be reproduced exactly
    for (const auto& old : members_) {
        bool found = false;
        for (const auto& now : members) {
            if (now.stage != old.stage || now.rho != old.rho) continue;
            found = true;
            if (now.q_text != old.q_text || now.gamma != old.gamma)
                throw cache_error("cache verification failed at stage " +
                                  std::to_string(old.stage) + ", rho " + std::to_string(old.rho) +
                                  ": cached gamma " + old.gamma + " vs recomputed " + now.gamma);
            if (old.J && now.J && *old.J != *now.J)
                throw cache_error("cache verification failed: J set mismatch at rho " +
                                  std::to_string(old.rho));
        }
        if (!found)
            throw cache_error("cache contains a record the resumed run did not reproduce (rho " +
                              std::to_string(old.rho) + ")");
    }
    std::filesystem::create_directories(dir_);
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw cache_error("cannot write cache file: " + path_);
    for (const auto& m : members) {
        Json j;
        j["kind"] = "member";
        j["stage"] = m.stage;
        j["rho"] = m.rho;
        j["Q"] = m.q_text;
        j["gamma"] = m.gamma;
        if (m.J) j["J"] = *m.J;
        out << j.dump() << "\n";
    }
    for (const auto& s : summaries) {
        Json j;
        j["kind"] = "summary";
        j["stage"] = s.stage;
        j["B"] = s.B;
        j["Bbar"] = s.Bbar;
        j["D"] = s.D;
        j["d"] = s.d;
        j["stabilization_index"] = s.stabilization_index;
        out << j.dump() << "\n";
    }
    members_ = members;
    summaries_ = summaries;
}

}  // namespace valdef
