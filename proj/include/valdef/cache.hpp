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

#ifndef VALDEF_CACHE_HPP
#define VALDEF_CACHE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace valdef {

// Append-only session records for deep refinement runs.  A resumed run
// regenerates its members deterministically and verifies every overlapping
// cached record before extending the file.
struct CacheMemberRecord {
    int stage = 0;
    int rho = 0;
    std::string q_text;
    std::string gamma;
    std::optional<std::set<int>> J;
};

struct CacheSummaryRecord {
    int stage = 0;
    std::string B, Bbar;
    int D = 0, d = 0;
    int stabilization_index = 0;
};

class SessionCache {
  public:
    SessionCache(std::string dir, std::string input_hash);

    const std::string& path() const { return path_; }
    bool exists() const;
    void load();  // no-op when the file does not exist

    const std::vector<CacheMemberRecord>& members() const { return members_; }
    const std::vector<CacheSummaryRecord>& summaries() const { return summaries_; }

    std::optional<CacheMemberRecord> find_member(int stage, int rho) const;
    std::optional<CacheSummaryRecord> find_summary(int stage) const;

    // Verifies that every cached member matches the freshly computed records
    // (same stage/rho keys), then rewrites the file with the new contents.
    void verify_and_store(const std::vector<CacheMemberRecord>& members,
                          const std::vector<CacheSummaryRecord>& summaries);

  private:
    std::string dir_;
    std::string path_;
    std::vector<CacheMemberRecord> members_;
    std::vector<CacheSummaryRecord> summaries_;
};

}  // namespace valdef

#endif
