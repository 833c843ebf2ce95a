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

#include "valdef/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace valdef {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

int parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        int out = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return out;
    } catch (const std::exception&) {
        throw config_error("bad integer for '" + key + "': " + v);
    }
}

}  // namespace

RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig cfg;
    std::map<int, StageCfg> stages;
    std::string section = "run";
    int stage_no = 0;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("malformed section header on line " + std::to_string(lineno));
            std::string name = lower(trim(line.substr(1, line.size() - 2)));
            if (name.rfind("stage", 0) == 0) {
                std::string num = trim(name.substr(5));
                stage_no = num.empty() ? static_cast<int>(stages.size()) + 1
                                       : parse_int(num, "stage number");
                section = "stage";
                stages[stage_no];  // create
            } else {
                section = name;
                stage_no = 0;
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("expected key = value on line " + std::to_string(lineno));
        std::string key = lower(trim(line.substr(0, eq)));
        std::string val = trim(line.substr(eq + 1));
        if (section == "run") {
            if (key == "label") cfg.label = val;
            else if (key == "prime") cfg.prime = static_cast<unsigned long>(parse_int(val, key));
            else if (key == "backend") {
                std::string v = lower(val);
                if (v == "equal-char") cfg.kind = FieldKind::equal_char;
                else if (v == "mixed-char") cfg.kind = FieldKind::mixed_char;
                else throw config_error("backend must be equal-char or mixed-char, got " + val);
            } else if (key == "case") {
                std::string v = lower(val);
                if (v == "as") cfg.kase = ExtCase::artin_schreier;
                else if (v == "kummer") cfg.kase = ExtCase::kummer;
                else if (v == "none") cfg.kase.reset();
                else throw config_error("case must be AS, Kummer or none, got " + val);
            } else if (key == "g") cfg.g_text = val;
            else if (key == "eta") cfg.eta_text = val;
            else throw config_error("unknown [run] key '" + key + "'");
        } else if (section == "stage") {
            StageCfg& st = stages[stage_no];
            if (key == "degree") st.degree = parse_int(val, key);
            else if (key == "generator") st.generator = lower(val);
            else if (key == "a") st.a_text = val;
            else if (key == "lift") st.lift_text = val;
            else if (key == "b0") st.b0_text = val;
            else if (key == "steps") st.steps = parse_int(val, key);
            else if (key == "gamma_hint") {
                if (lower(val) != "none") st.gamma_hint = Rational::parse(val);
            } else if (key == "limit_index") {
                if (lower(val) != "auto") st.limit_index = parse_int(val, key);
            } else if (key == "sup") {
                if (lower(val) != "none") st.explicit_sup = Rational::parse(val);
            } else if (key.rfind("gamma", 0) == 0 && key.size() > 5 &&
                       std::isdigit(static_cast<unsigned char>(key[5]))) {
                std::size_t idx = static_cast<std::size_t>(parse_int(key.substr(5), key));
                if (st.explicit_members.size() < idx) st.explicit_members.resize(idx);
                st.explicit_members[idx - 1].second = Rational::parse(val);
            } else if (key.rfind("q", 0) == 0 && key.size() > 1 &&
                       std::isdigit(static_cast<unsigned char>(key[1]))) {
                std::size_t idx = static_cast<std::size_t>(parse_int(key.substr(1), key));
                if (st.explicit_members.size() < idx) st.explicit_members.resize(idx);
                st.explicit_members[idx - 1].first = val;
            } else throw config_error("unknown [stage] key '" + key + "'");
        } else if (section == "output") {
            if (key == "dir") cfg.out_dir = val;
            else if (key == "svg_ppu") cfg.svg_ppu = parse_int(val, key);
            else throw config_error("unknown [output] key '" + key + "'");
        } else if (section == "precision") {
            if (key == "budget") cfg.budget = parse_int(val, key);
            else if (key == "window") cfg.window = parse_int(val, key);
            else throw config_error("unknown [precision] key '" + key + "'");
        } else if (section == "cache") {
            if (key == "dir") cfg.cache_dir = val;
            else throw config_error("unknown [cache] key '" + key + "'");
        } else {
            throw config_error("unknown section [" + section + "]");
        }
    }
    for (auto& [no, st] : stages) cfg.stages.push_back(st);
    if (cfg.g_text.empty()) throw config_error("missing g = <polynomial> in [run]");
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

std::string RunConfig::canonical() const {
    std::ostringstream s;
    s << "prime=" << prime << ";backend=" << (kind == FieldKind::equal_char ? "e" : "m")
      << ";case=" << (kase ? ext_case_name(*kase) : "none") << ";g=" << g_text
      << ";eta=" << (eta_text ? *eta_text : "") << ";budget=" << budget << ";window=" << window;
    for (const auto& st : stages) {
        s << ";stage{deg=" << st.degree << ",gen=" << st.generator << ",a=" << st.a_text
          << ",lift=" << st.lift_text << ",b0=" << st.b0_text << ",steps=" << st.steps
          << ",hint=" << (st.gamma_hint ? st.gamma_hint->str() : "none")
          << ",limit=" << (st.limit_index ? std::to_string(*st.limit_index) : "auto");
        for (const auto& m : st.explicit_members)
            s << ",q:" << m.first << "@" << m.second.str();
        if (st.explicit_sup) s << ",sup=" << st.explicit_sup->str();
        s << "}";
    }
    return s.str();
}

std::string RunConfig::input_hash() const {
    std::string c = canonical();
    unsigned long long h = 1469598103934665603ull;
    for (char ch : c) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    std::ostringstream s;
    s << std::hex << h;
    return s.str();
}

}  // namespace valdef
