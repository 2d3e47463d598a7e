#include "tregsim/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tregsim/errors.hpp"

namespace tregsim {

namespace {

std::string strip(const std::string& text) {
    const std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const std::size_t end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

double to_double(const std::string& value, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
        throw ConfigError(where + ": expected a number, got '" + value + "'");
    }
    return v;
}

long long to_int(const std::string& value, const std::string& where) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || end != value.c_str() + value.size()) {
        throw ConfigError(where + ": expected an integer, got '" + value + "'");
    }
    return v;
}

bool to_bool(const std::string& value, const std::string& where) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no" || value == "off") {
        return false;
    }
    throw ConfigError(where + ": expected a boolean, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    for (char ch : value) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!item.empty()) {
                items.push_back(item);
                item.clear();
            }
        } else {
            item += ch;
        }
    }
    if (!item.empty()) {
        items.push_back(item);
    }
    return items;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig config;
    bool saw_intervention = false;
    bool saw_sweep = false;
    InterventionSpec intervention;
    SweepSpec sweep_spec;

    std::istringstream in(text);
    std::string line;
    std::string section;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = strip(line);
        if (row.empty() || row[0] == '#') {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(line_no);
        if (row.front() == '[') {
            if (row.back() != ']') {
                throw ConfigError(where + ": malformed section header '" + row + "'");
            }
            section = row.substr(1, row.size() - 2);
            if (section != "model" && section != "engine" && section != "run" &&
                section != "intervention" && section != "sweep") {
                throw ConfigError(where + ": unknown section [" + section + "]");
            }
            if (section == "intervention") {
                saw_intervention = true;
            }
            if (section == "sweep") {
                saw_sweep = true;
            }
            continue;
        }
        const std::size_t eq = row.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value', got '" + row + "'");
        }
        const std::string key = strip(row.substr(0, eq));
        const std::string value = strip(row.substr(eq + 1));
        if (section.empty()) {
            throw ConfigError(where + ": key '" + key + "' appears outside any [section]");
        }

        ScenarioParameters& p = config.params;
        if (section == "model") {
            if (key == "b") p.b = to_double(value, where);
            else if (key == "f") p.f = to_double(value, where);
            else if (key == "c") p.c = to_double(value, where);
            else if (key == "dR") p.dR = to_double(value, where);
            else if (key == "dQ") p.dQ = to_double(value, where);
            else if (key == "m") p.m = to_double(value, where);
            else if (key == "piN") p.piN = to_double(value, where);
            else if (key == "q0") p.q0 = to_double(value, where);
            else if (key == "lambda_q") p.lambda_q = to_double(value, where);
            else if (key == "sigma0") p.sigma0 = to_double(value, where);
            else if (key == "nu") p.nu = to_double(value, where);
            else if (key == "inter_response_interval") p.inter_response_interval = to_double(value, where);
            else if (key == "expansion_duration") p.expansion_duration = to_double(value, where);
            else if (key == "P0") p.P0 = to_double(value, where);
            else if (key == "R0") p.R0 = to_double(value, where);
            else if (key == "Q0") p.Q0 = to_double(value, where);
            else if (key == "n_clones") p.n_clones = static_cast<int>(to_int(value, where));
            else if (key == "clone_selection") p.clone_selection = clone_selection_from_string(value);
            else if (key == "global_quiescent_decay") p.global_quiescent_decay = to_bool(value, where);
            else throw ConfigError(where + ": unknown key '" + key + "' in [model]");
        } else if (section == "engine") {
            if (key == "horizon_years") p.horizon_years = to_double(value, where);
            else if (key == "days_per_year") p.days_per_year = to_double(value, where);
            else if (key == "step_days") p.step_days = to_double(value, where);
            else if (key == "output_interval_days") p.output_interval_days = to_double(value, where);
            else throw ConfigError(where + ": unknown key '" + key + "' in [engine]");
        } else if (section == "run") {
            if (key == "seeds") {
                config.seeds.clear();
                for (const auto& item : split_list(value)) {
                    const long long seed = to_int(item, where);
                    if (seed < 0) {
                        throw ConfigError(where + ": seeds must be >= 0");
                    }
                    config.seeds.push_back(static_cast<std::uint64_t>(seed));
                }
                if (config.seeds.empty()) {
                    throw ConfigError(where + ": seeds list is empty");
                }
            } else if (key == "out_dir") {
                config.out_dir = value;
            } else if (key == "lab_path") {
                config.lab_path = value;
            } else if (key == "format") {
                if (value == "text") config.format = TableStyle::Text;
                else if (value == "csv") config.format = TableStyle::Csv;
                else throw ConfigError(where + ": format must be text or csv");
            } else if (key == "pool_replications") {
                config.pool_replications = to_bool(value, where);
            } else {
                throw ConfigError(where + ": unknown key '" + key + "' in [run]");
            }
        } else if (section == "intervention") {
            if (key == "time_days") intervention.time_days = to_double(value, where);
            else if (key == "fraction") {
                const double f = to_double(value, where);
                intervention.fraction_p = f;
                intervention.fraction_r = f;
                intervention.fraction_q = f;
            }
            else if (key == "fraction_p") intervention.fraction_p = to_double(value, where);
            else if (key == "fraction_r") intervention.fraction_r = to_double(value, where);
            else if (key == "fraction_q") intervention.fraction_q = to_double(value, where);
            else throw ConfigError(where + ": unknown key '" + key + "' in [intervention]");
        } else {  // sweep
            if (key == "parameter") sweep_spec.parameter = value;
            else if (key == "values") {
                sweep_spec.values.clear();
                for (const auto& item : split_list(value)) {
                    sweep_spec.values.push_back(to_double(item, where));
                }
            }
            else throw ConfigError(where + ": unknown key '" + key + "' in [sweep]");
        }
    }

    if (saw_intervention) {
        config.intervention = intervention;
    }
    if (saw_sweep) {
        if (sweep_spec.parameter.empty()) {
            throw ConfigError(origin + ": [sweep] section needs a 'parameter' key");
        }
        if (sweep_spec.values.empty()) {
            throw ConfigError(origin + ": [sweep] section needs a non-empty 'values' list");
        }
        config.sweep = sweep_spec;
    }
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

std::string config_key_reference() {
    return
        "[model]   b f c dR dQ m piN q0 lambda_q sigma0 nu inter_response_interval\n"
        "          expansion_duration P0 R0 Q0 n_clones clone_selection global_quiescent_decay\n"
        "[engine]  horizon_years days_per_year step_days output_interval_days\n"
        "[run]     seeds out_dir lab_path format pool_replications\n"
        "[intervention] time_days fraction fraction_p fraction_r fraction_q\n"
        "[sweep]   parameter values\n";
}

}  // namespace tregsim
