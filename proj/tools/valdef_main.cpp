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

#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "valdef/runner.hpp"

namespace {

struct CommonOpts {
    std::vector<std::string> configs;
    std::string out_override;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.configs, "run configuration file(s)")->required();
    cmd->add_option("--out", opts.out_override, "override the output directory");
    cmd->add_option("--jobs", opts.jobs, "run independent configs in parallel")
        ->check(CLI::PositiveNumber);
}

valdef::RunConfig load(const std::string& path, const std::string& out_override) {
    valdef::RunConfig cfg = valdef::RunConfig::parse_file(path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    return cfg;
}

// Runs one guarded action per config, independent runs in parallel when
// requested; the process exit code is the maximum per-run code.
int run_batch(const CommonOpts& opts,
              const std::function<int(const valdef::RunConfig&, std::ostream&)>& action) {
    std::vector<int> codes(opts.configs.size(), 0);
    std::vector<std::string> logs(opts.configs.size());
    auto work = [&](std::size_t idx) {
        std::ostringstream diag;
        codes[idx] = valdef::guarded(
            [&]() {
                valdef::RunConfig cfg = load(opts.configs[idx], opts.out_override);
                return action(cfg, diag);
            },
            diag);
        logs[idx] = diag.str();
    };
    if (opts.jobs <= 1 || opts.configs.size() <= 1) {
        for (std::size_t i = 0; i < opts.configs.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        std::mutex mu;
        for (int j = 0; j < opts.jobs; ++j)
            pool.emplace_back([&]() {
                while (true) {
                    std::size_t idx;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        if (next >= opts.configs.size()) return;
                        idx = next++;
                    }
                    work(idx);
                }
            });
        for (auto& t : pool) t.join();
    }
    int worst = 0;
    for (std::size_t i = 0; i < opts.configs.size(); ++i) {
        std::cerr << logs[i];
        worst = std::max(worst, codes[i]);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"key-polynomial defect decomposition of rank-one valued field extensions"};
    app.require_subcommand(1);

    CommonOpts classify_opts, analyze_opts, polygon_opts, expand_opts;
    int rho = -1;
    int stage = 1;
    std::string f_text, q_text;

    CLI::App* c_classify =
        app.add_subcommand("classify", "dependent/independent verdict for a degree-p extension");
    add_common(c_classify, classify_opts);

    CLI::App* c_analyze = app.add_subcommand("analyze", "full plateau/defect decomposition");
    add_common(c_analyze, analyze_opts);

    CLI::App* c_polygon = app.add_subcommand("polygon", "render a Newton polygon from a cached run");
    add_common(c_polygon, polygon_opts);
    c_polygon->add_option("--rho", rho, "family index (default: stabilization index)");
    c_polygon->add_option("--stage", stage, "stage number (default 1)");

    CLI::App* c_expand = app.add_subcommand("expand", "Q-expansion and truncation report");
    add_common(c_expand, expand_opts);
    c_expand->add_option("--f", f_text, "polynomial to expand")->required();
    c_expand->add_option("--q", q_text, "monic expansion base Q")->required();

    CLI11_PARSE(app, argc, argv);

    if (c_classify->parsed())
        return run_batch(classify_opts,
                         [](const valdef::RunConfig& cfg, std::ostream& diag) {
                             return valdef::cmd_classify(cfg, diag);
                         });
    if (c_analyze->parsed())
        return run_batch(analyze_opts, [](const valdef::RunConfig& cfg, std::ostream& diag) {
            return valdef::cmd_analyze(cfg, diag);
        });
    if (c_polygon->parsed())
        return run_batch(polygon_opts, [&](const valdef::RunConfig& cfg, std::ostream& diag) {
            std::optional<int> r;
            if (rho >= 1) r = rho;
            return valdef::cmd_polygon(cfg, r, stage, diag);
        });
    if (c_expand->parsed())
        return run_batch(expand_opts, [&](const valdef::RunConfig& cfg, std::ostream& diag) {
            return valdef::cmd_expand(cfg, f_text, q_text, std::cout, diag);
        });
    return 1;
}
