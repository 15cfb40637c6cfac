// SPDX-License-Identifier: Apache-2.0
//
// fasuav - finite-blocklength reliability and energy-efficiency toolkit
// for fluid-antenna UAV relay links.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fasuav/config.hpp"

#include "fasuav/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace fasuav {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
    double out = 0.0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
        throw ConfigError(key, "expected a number, got '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value)
{
    const double v = parse_double(key, value);
    if (v != std::floor(v) || std::fabs(v) > 2e9) {
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    }
    return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value)
{
    std::uint64_t out = 0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
    }
    return out;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Setter = std::function<void(SystemConfig&, const std::string& key, const std::string& value)>;

template <typename F>
Setter real_at(F field)
{
    return [field](SystemConfig& c, const std::string& k, const std::string& v) {
        field(c) = parse_double(k, v);
    };
}

template <typename F>
Setter int_at(F field)
{
    return [field](SystemConfig& c, const std::string& k, const std::string& v) {
        field(c) = parse_int(k, v);
    };
}

template <typename F>
Setter dbm_at(F field)
{
    return [field](SystemConfig& c, const std::string& k, const std::string& v) {
        field(c) = dbm_to_watts(parse_double(k, v));
    };
}

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        t["scenario"] = [](SystemConfig& c, const std::string& k, const std::string& v) {
            if (v == "rural") {
                c.scenario = Scenario::rural;
            } else if (v == "urban") {
                c.scenario = Scenario::urban;
            } else {
                throw ConfigError(k, "expected rural or urban, got '" + v + "'");
            }
        };
        const char* axes[] = {"x", "y", "z"};
        for (int i = 0; i < 3; ++i) {
            t[std::string("bs.") + axes[i]] = real_at([i](SystemConfig& c) -> double& { return c.placement.bs[i]; });
            t[std::string("ue.") + axes[i]] = real_at([i](SystemConfig& c) -> double& { return c.placement.ue[i]; });
        }
        t["uav.radius"] = real_at([](SystemConfig& c) -> double& { return c.placement.radius; });
        t["uav.altitude"] = real_at([](SystemConfig& c) -> double& { return c.placement.altitude; });

        auto power = [&t](const std::string& stem, auto field) {
            t[stem + "_dbm"] = dbm_at(field);
            t[stem + "_w"] = real_at(field);
        };
        t["radio.carrier_freq_hz"] = real_at([](SystemConfig& c) -> double& { return c.radio.carrier_freq; });
        power("radio.noise_power", [](SystemConfig& c) -> double& { return c.radio.noise_power; });
        power("radio.p1", [](SystemConfig& c) -> double& { return c.radio.p1; });
        power("radio.p2", [](SystemConfig& c) -> double& { return c.radio.p2; });

        t["fas.ports"] = int_at([](SystemConfig& c) -> int& { return c.fas.ports; });
        t["fas.aperture"] = real_at([](SystemConfig& c) -> double& { return c.fas.aperture; });
        t["fas.rank_tol"] = real_at([](SystemConfig& c) -> double& { return c.rank_tol; });

        t["fbl.payload_bits"] = int_at([](SystemConfig& c) -> int& { return c.payload_bits; });
        t["fbl.blocklength"] = int_at([](SystemConfig& c) -> int& { return c.blocklength; });
        t["nakagami.m1"] = int_at([](SystemConfig& c) -> int& { return c.m1; });
        t["nakagami.m2"] = int_at([](SystemConfig& c) -> int& { return c.m2; });

        t["urban.eta_los_db"] = real_at([](SystemConfig& c) -> double& { return c.urban.eta_los; });
        t["urban.eta_nlos_db"] = real_at([](SystemConfig& c) -> double& { return c.urban.eta_nlos; });
        t["urban.a"] = real_at([](SystemConfig& c) -> double& { return c.urban.a; });
        t["urban.b"] = real_at([](SystemConfig& c) -> double& { return c.urban.b; });
        t["urban.m_los"] = int_at([](SystemConfig& c) -> int& { return c.urban.m_los; });
        t["urban.m_nlos"] = int_at([](SystemConfig& c) -> int& { return c.urban.m_nlos; });

        power("ee.circuit_power", [](SystemConfig& c) -> double& { return c.ee.p_c; });
        power("ee.switch_power", [](SystemConfig& c) -> double& { return c.ee.p_sw; });
        t["ee.port_time_s"] = real_at([](SystemConfig& c) -> double& { return c.ee.tau_p; });
        t["ee.bandwidth_hz"] = real_at([](SystemConfig& c) -> double& { return c.ee.w_band; });

        power("search.p_max", [](SystemConfig& c) -> double& { return c.search.p_max; });
        power("search.p_min", [](SystemConfig& c) -> double& { return c.search.p_min; });
        t["search.z_min"] = real_at([](SystemConfig& c) -> double& { return c.search.z_min; });
        t["search.z_max"] = real_at([](SystemConfig& c) -> double& { return c.search.z_max; });
        t["search.z_step"] = real_at([](SystemConfig& c) -> double& { return c.search.z_step; });
        t["search.l_min"] = int_at([](SystemConfig& c) -> int& { return c.search.l_min; });
        t["search.l_max"] = int_at([](SystemConfig& c) -> int& { return c.search.l_max; });
        t["search.l_step"] = int_at([](SystemConfig& c) -> int& { return c.search.l_step; });
        t["search.n_min"] = int_at([](SystemConfig& c) -> int& { return c.search.n_min; });
        t["search.n_max"] = int_at([](SystemConfig& c) -> int& { return c.search.n_max; });
        t["search.eps_th"] = real_at([](SystemConfig& c) -> double& { return c.search.eps_th; });
        t["search.delta_db"] = real_at([](SystemConfig& c) -> double& { return c.search.delta_db; });
        t["search.spot_checks"] = int_at([](SystemConfig& c) -> int& { return c.search.spot_checks; });

        t["quadrature.order"] = int_at([](SystemConfig& c) -> int& { return c.quadrature_order; });
        t["quadrature.rule"] = [](SystemConfig& c, const std::string& k, const std::string& v) {
            if (v == "fejer") {
                c.quadrature_rule = GcqRule::fejer;
            } else if (v == "sqrt_deweighted") {
                c.quadrature_rule = GcqRule::sqrt_deweighted;
            } else if (v == "paper_literal") {
                c.quadrature_rule = GcqRule::paper_literal;
            } else {
                throw ConfigError(k, "expected fejer, sqrt_deweighted or paper_literal");
            }
        };

        t["mc.trials"] = [](SystemConfig& c, const std::string& k, const std::string& v) {
            c.mc.trials = parse_u64(k, v);
        };
        t["mc.seed"] = [](SystemConfig& c, const std::string& k, const std::string& v) {
            c.mc.seed = parse_u64(k, v);
        };
        t["mc.threads"] = [](SystemConfig& c, const std::string& k, const std::string& v) {
            c.mc.threads = static_cast<unsigned>(parse_u64(k, v));
        };
        t["mc.mode"] = [](SystemConfig& c, const std::string& k, const std::string& v) {
            if (v == "analytical_model") {
                c.mc.mode = McMode::analytical_model;
            } else if (v == "physical_ports") {
                c.mc.mode = McMode::physical_ports;
            } else {
                throw ConfigError(k, "expected analytical_model or physical_ports");
            }
        };
        t["mc.headings"] = [](SystemConfig& c, const std::string& k, const std::string& v) {
            if (v == "uniform") {
                c.mc.headings = McHeadings::uniform;
            } else if (v == "fixed") {
                c.mc.headings = McHeadings::fixed;
            } else {
                throw ConfigError(k, "expected uniform or fixed");
            }
        };
        t["mc.theta"] = real_at([](SystemConfig& c) -> double& { return c.mc.theta; });
        t["mc.error_model"] = [](SystemConfig& c, const std::string& k, const std::string& v) {
            if (v == "exact_q") {
                c.mc.error_model = McErrorModel::exact_q;
            } else if (v == "piecewise") {
                c.mc.error_model = McErrorModel::piecewise;
            } else {
                throw ConfigError(k, "expected exact_q or piecewise");
            }
        };
        return t;
    }();
    return table;
}

// Alternative spellings that set the same field.
std::string canonical(const std::string& key)
{
    for (const char* suffix : {"_dbm", "_w"}) {
        const std::string s(suffix);
        if (key.size() > s.size() && key.compare(key.size() - s.size(), s.size(), s) == 0) {
            return key.substr(0, key.size() - s.size());
        }
    }
    return key;
}

void require(bool ok, const char* key, const std::string& what)
{
    if (!ok) {
        throw ConfigError(key, what);
    }
}

}  // namespace

int SystemConfig::hop1_shape(LinkType type) const
{
    if (scenario == Scenario::rural) {
        return m1;
    }
    return type == LinkType::los ? urban.m_los : urban.m_nlos;
}

int SystemConfig::hop2_shape(LinkType type) const
{
    if (scenario == Scenario::rural) {
        return m2;
    }
    return type == LinkType::los ? urban.m_los : urban.m_nlos;
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts) + 30.0;
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

void validate(const SystemConfig& c)
{
    for (int i = 0; i < 3; ++i) {
        require(std::isfinite(c.placement.bs[i]), "bs", "coordinates must be finite");
        require(std::isfinite(c.placement.ue[i]), "ue", "coordinates must be finite");
    }
    require(c.placement.radius > 0.0, "uav.radius", "must be positive");
    require(c.placement.altitude >= 0.0, "uav.altitude", "must be non-negative");
    require(c.radio.carrier_freq > 0.0, "radio.carrier_freq_hz", "must be positive");
    require(c.radio.noise_power > 0.0, "radio.noise_power", "must be positive");
    require(c.radio.p1 > 0.0, "radio.p1", "must be positive");
    require(c.radio.p2 > 0.0, "radio.p2", "must be positive");
    require(c.fas.ports >= 1, "fas.ports", "must be at least 1");
    require(c.fas.aperture > 0.0, "fas.aperture", "must be positive");
    require(c.rank_tol > 0.0 && c.rank_tol < 1.0, "fas.rank_tol", "must lie in (0, 1)");
    require(c.payload_bits >= 1, "fbl.payload_bits", "must be at least 1");
    require(c.blocklength >= 1, "fbl.blocklength", "must be at least 1");
    require(c.m1 >= 1, "nakagami.m1", "must be a positive integer");
    require(c.m2 >= 1, "nakagami.m2", "must be a positive integer");
    require(c.urban.eta_los >= 0.0, "urban.eta_los_db", "must be non-negative");
    require(c.urban.eta_nlos >= c.urban.eta_los, "urban.eta_nlos_db", "must be at least urban.eta_los_db");
    require(c.urban.a > 0.0, "urban.a", "must be positive");
    require(c.urban.b > 0.0, "urban.b", "must be positive");
    require(c.urban.m_los >= 1, "urban.m_los", "must be a positive integer");
    require(c.urban.m_nlos >= 1, "urban.m_nlos", "must be a positive integer");
    require(c.ee.p_c > 0.0, "ee.circuit_power", "must be positive");
    require(c.ee.p_sw > 0.0, "ee.switch_power", "must be positive");
    require(c.ee.tau_p > 0.0, "ee.port_time_s", "must be positive");
    require(c.ee.w_band > 0.0, "ee.bandwidth_hz", "must be positive");
    const SearchSpace& s = c.search;
    require(s.p_min > 0.0, "search.p_min", "must be positive");
    require(s.p_max > s.p_min, "search.p_max", "must exceed search.p_min");
    require(s.z_min >= 0.0, "search.z_min", "must be non-negative");
    require(s.z_max >= s.z_min, "search.z_max", "must be at least search.z_min");
    require(s.z_step > 0.0, "search.z_step", "must be positive");
    require(s.l_min >= 1, "search.l_min", "must be at least 1");
    require(s.l_max >= s.l_min, "search.l_max", "must be at least search.l_min");
    require(s.l_step >= 1, "search.l_step", "must be at least 1");
    require(s.n_min >= 1, "search.n_min", "must be at least 1");
    require(s.n_max >= s.n_min, "search.n_max", "must be at least search.n_min");
    require(s.eps_th > 0.0 && s.eps_th <= 1.0, "search.eps_th", "must lie in (0, 1]");
    require(s.delta_db > 0.0, "search.delta_db", "must be positive");
    require(s.spot_checks >= 0, "search.spot_checks", "must be non-negative");
    require(c.quadrature_order >= 1, "quadrature.order", "must be at least 1");
    require(c.mc.trials >= 1, "mc.trials", "must be at least 1");
}

SystemConfig parse_config(const std::string& text)
{
    SystemConfig config;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError(key, "unknown key");
        }
        if (!seen.insert(canonical(key)).second) {
            throw ConfigError(key, "given more than once");
        }
        it->second(config, key, value);
    }
    for (const char* key : {"scenario", "uav.altitude"}) {
        if (!seen.contains(key)) {
            throw ConfigError(key, "missing required key");
        }
    }
    validate(config);
    return config;
}

SystemConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string(), "cannot open config file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string emit_config(const SystemConfig& c)
{
    std::ostringstream out;
    auto put = [&out](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
    auto num = [&put](const char* key, double v) { put(key, fmt(v)); };
    auto integer = [&put](const char* key, long long v) { put(key, std::to_string(v)); };

    put("scenario", to_string(c.scenario));
    num("bs.x", c.placement.bs[0]);
    num("bs.y", c.placement.bs[1]);
    num("bs.z", c.placement.bs[2]);
    num("ue.x", c.placement.ue[0]);
    num("ue.y", c.placement.ue[1]);
    num("ue.z", c.placement.ue[2]);
    num("uav.radius", c.placement.radius);
    num("uav.altitude", c.placement.altitude);
    num("radio.carrier_freq_hz", c.radio.carrier_freq);
    num("radio.noise_power_w", c.radio.noise_power);
    num("radio.p1_w", c.radio.p1);
    num("radio.p2_w", c.radio.p2);
    integer("fas.ports", c.fas.ports);
    num("fas.aperture", c.fas.aperture);
    num("fas.rank_tol", c.rank_tol);
    integer("fbl.payload_bits", c.payload_bits);
    integer("fbl.blocklength", c.blocklength);
    integer("nakagami.m1", c.m1);
    integer("nakagami.m2", c.m2);
    num("urban.eta_los_db", c.urban.eta_los);
    num("urban.eta_nlos_db", c.urban.eta_nlos);
    num("urban.a", c.urban.a);
    num("urban.b", c.urban.b);
    integer("urban.m_los", c.urban.m_los);
    integer("urban.m_nlos", c.urban.m_nlos);
    num("ee.circuit_power_w", c.ee.p_c);
    num("ee.switch_power_w", c.ee.p_sw);
    num("ee.port_time_s", c.ee.tau_p);
    num("ee.bandwidth_hz", c.ee.w_band);
    num("search.p_max_w", c.search.p_max);
    num("search.p_min_w", c.search.p_min);
    num("search.z_min", c.search.z_min);
    num("search.z_max", c.search.z_max);
    num("search.z_step", c.search.z_step);
    integer("search.l_min", c.search.l_min);
    integer("search.l_max", c.search.l_max);
    integer("search.l_step", c.search.l_step);
    integer("search.n_min", c.search.n_min);
    integer("search.n_max", c.search.n_max);
    num("search.eps_th", c.search.eps_th);
    num("search.delta_db", c.search.delta_db);
    integer("search.spot_checks", c.search.spot_checks);
    integer("quadrature.order", c.quadrature_order);
    put("quadrature.rule", to_string(c.quadrature_rule));
    put("mc.trials", std::to_string(c.mc.trials));
    put("mc.seed", std::to_string(c.mc.seed));
    put("mc.threads", std::to_string(c.mc.threads));
    put("mc.mode", to_string(c.mc.mode));
    put("mc.headings", c.mc.headings == McHeadings::uniform ? "uniform" : "fixed");
    num("mc.theta", c.mc.theta);
    put("mc.error_model", c.mc.error_model == McErrorModel::exact_q ? "exact_q" : "piecewise");
    return out.str();
}

SystemConfig preset(Scenario scenario)
{
    SystemConfig c;
    c.scenario = scenario;
    c.placement.altitude = 100.0;
    c.radio.noise_power = dbm_to_watts(-100.0);
    c.radio.p2 = dbm_to_watts(10.0);
    c.ee.p_c = dbm_to_watts(5.0);
    c.ee.p_sw = dbm_to_watts(0.0);
    c.search.p_max = dbm_to_watts(30.0);
    c.search.p_min = dbm_to_watts(-30.0);
    if (scenario == Scenario::rural) {
        c.placement.bs = {1000.0, 0.0, 40.0};
        c.placement.ue = {-1000.0, 1000.0, 0.0};
        c.radio.p1 = dbm_to_watts(15.0);
    } else {
        c.placement.bs = {100.0, 0.0, 40.0};
        c.placement.ue = {-100.0, 100.0, 0.0};
        c.radio.p1 = dbm_to_watts(46.0);
    }
    return c;
}

const char* to_string(Scenario scenario)
{
    return scenario == Scenario::rural ? "rural" : "urban";
}

const char* to_string(GcqRule rule)
{
    switch (rule) {
    case GcqRule::fejer:
        return "fejer";
    case GcqRule::sqrt_deweighted:
        return "sqrt_deweighted";
    case GcqRule::paper_literal:
        return "paper_literal";
    }
    return "fejer";
}

const char* to_string(McMode mode)
{
    return mode == McMode::analytical_model ? "analytical_model" : "physical_ports";
}

std::string config_hash(const SystemConfig& config)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : emit_config(config)) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fasuav
