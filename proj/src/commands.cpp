#include "tregsim/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tregsim/cohort.hpp"
#include "tregsim/errors.hpp"
#include "tregsim/format.hpp"
#include "tregsim/stats.hpp"
#include "tregsim/version.hpp"

namespace tregsim {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write file: " + path.string());
    }
    out << content;
    out.close();
    if (!out) {
        throw DataError("failed while writing file: " + path.string());
    }
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out =
        "time_days,time_years,P_total,R_total,Q_total,"
        "precursor_prop,active_prop,quiescent_prop,phase\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += fmt17(traj.time_days[i]);
        out += ',' + fmt17(traj.time_years[i]);
        out += ',' + fmt17(traj.p_total[i]);
        out += ',' + fmt17(traj.r_total[i]);
        out += ',' + fmt17(traj.q_total[i]);
        out += ',' + fmt17(traj.precursor_prop[i]);
        out += ',' + fmt17(traj.active_prop[i]);
        out += ',' + fmt17(traj.quiescent_prop[i]);
        out += ',';
        out += traj.phase[i];
        out += '\n';
    }
    return out;
}

ordered_json params_to_json(const ScenarioParameters& p) {
    ordered_json model;
    model["b"] = p.b;
    model["f"] = p.f;
    model["c"] = p.c;
    model["dR"] = p.dR;
    model["dQ"] = p.dQ;
    model["m"] = p.m;
    model["piN"] = p.piN;
    model["q0"] = p.q0;
    model["lambda_q"] = p.lambda_q;
    model["sigma0"] = p.sigma0;
    model["nu"] = p.nu;
    model["inter_response_interval"] = p.inter_response_interval;
    model["expansion_duration"] = p.expansion_duration;
    model["P0"] = p.P0;
    model["R0"] = p.R0;
    model["Q0"] = p.Q0;
    model["n_clones"] = p.n_clones;
    model["clone_selection"] = to_string(p.clone_selection);
    model["global_quiescent_decay"] = p.global_quiescent_decay;

    ordered_json engine;
    engine["horizon_years"] = p.horizon_years;
    engine["days_per_year"] = p.days_per_year;
    engine["step_days"] = p.step_days;
    engine["output_interval_days"] = p.output_interval_days;

    ordered_json out;
    out["model"] = model;
    out["engine"] = engine;
    return out;
}

struct CommandContext {
    fs::path out_dir;
    ordered_json manifest;

    void add_output(const std::string& name) {
        manifest["outputs"].push_back(name);
    }

    void write_file(const std::string& name, const std::string& content) {
        write_text_file(out_dir / name, content);
        add_output(name);
        std::cout << "wrote " << (out_dir / name).string() << "\n";
    }

    void write_manifest() {
        write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    }
};

void run_command(const char* name, const RunConfig& config,
                 const std::function<void(CommandContext&)>& body) {
    const fs::path out_dir = config.out_dir;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw DataError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }

    CommandContext ctx;
    ctx.out_dir = out_dir;
    ctx.manifest["command"] = name;
    ctx.manifest["code_version"] = kVersion;
    ctx.manifest["parameter_fingerprint"] = config.params.fingerprint();
    ctx.manifest["config"] = params_to_json(config.params);
    {
        ordered_json run;
        run["out_dir"] = config.out_dir;
        run["lab_path"] = config.lab_path ? ordered_json(*config.lab_path) : ordered_json(nullptr);
        run["format"] = config.format == TableStyle::Text ? "text" : "csv";
        run["pool_replications"] = config.pool_replications;
        ctx.manifest["config"]["run"] = run;
        if (config.intervention) {
            ordered_json iv;
            iv["time_days"] = config.intervention->time_days;
            iv["fraction_p"] = config.intervention->fraction_p;
            iv["fraction_r"] = config.intervention->fraction_r;
            iv["fraction_q"] = config.intervention->fraction_q;
            ctx.manifest["config"]["intervention"] = iv;
        } else {
            ctx.manifest["config"]["intervention"] = nullptr;
        }
        if (config.sweep) {
            ordered_json sw;
            sw["parameter"] = config.sweep->parameter;
            sw["values"] = config.sweep->values;
            ctx.manifest["config"]["sweep"] = sw;
        } else {
            ctx.manifest["config"]["sweep"] = nullptr;
        }
    }
    ctx.manifest["seeds"] = config.seeds;
    ctx.manifest["outputs"] = ordered_json::array();
    ctx.manifest["clamp_warnings"] = ordered_json::object();
    ctx.manifest["status"] = "ok";
    ctx.manifest["error"] = nullptr;

    try {
        body(ctx);
    } catch (const std::exception& e) {
        ctx.manifest["status"] = "error";
        ctx.manifest["error"] = e.what();
        try {
            ctx.write_manifest();
        } catch (...) {
            // The failure being reported wins over a manifest write failure.
        }
        throw;
    }
    ctx.write_manifest();
    std::cout << "wrote " << (ctx.out_dir / "manifest.json").string() << "\n";
}

void note_clamps(CommandContext& ctx, const Trajectory& traj) {
    ctx.manifest["clamp_warnings"][std::to_string(traj.seed)] = traj.clamp_warnings;
}

}  // namespace

void cmd_simulate(const RunConfig& config) {
    run_command("simulate", config, [&](CommandContext& ctx) {
        config.params.validate();
        if (config.seeds.empty()) {
            throw ConfigError("simulate needs at least one seed");
        }
        for (std::uint64_t seed : config.seeds) {
            const Trajectory traj = run_simulation(config.params, seed);
            ctx.write_file("trajectory_seed" + std::to_string(seed) + ".csv",
                           trajectory_csv(traj));
            note_clamps(ctx, traj);
        }
    });
}

void cmd_ensemble(const RunConfig& config) {
    run_command("ensemble", config, [&](CommandContext& ctx) {
        config.params.validate();
        const EnsembleResult result = run_ensemble(config.params, config.seeds);
        for (const Trajectory& traj : result.runs) {
            ctx.write_file("trajectory_seed" + std::to_string(traj.seed) + ".csv",
                           trajectory_csv(traj));
            note_clamps(ctx, traj);
        }

        const Trajectory& first = result.runs.front();
        std::string sd_csv = "time_days,time_years,sd_P_total,sd_R_total,sd_Q_total\n";
        for (std::size_t i = 0; i < first.size(); ++i) {
            sd_csv += fmt17(first.time_days[i]);
            sd_csv += ',' + fmt17(first.time_years[i]);
            sd_csv += ',' + fmt17(result.sd_p_total[i]);
            sd_csv += ',' + fmt17(result.sd_r_total[i]);
            sd_csv += ',' + fmt17(result.sd_q_total[i]);
            sd_csv += '\n';
        }
        ctx.write_file("ensemble_sd.csv", sd_csv);

        const auto mean_of = [&](const std::vector<double> Trajectory::* member) {
            double sum = 0.0;
            std::size_t count = 0;
            for (const Trajectory& traj : result.runs) {
                for (double v : traj.*member) {
                    sum += v;
                    ++count;
                }
            }
            return count > 0 ? sum / static_cast<double>(count) : 0.0;
        };
        std::string summary = "stock,max_sd,mean_total\n";
        summary += "P_total," + fmt17(result.max_sd_p_total) + ',' +
                   fmt17(mean_of(&Trajectory::p_total)) + '\n';
        summary += "R_total," + fmt17(result.max_sd_r_total) + ',' +
                   fmt17(mean_of(&Trajectory::r_total)) + '\n';
        summary += "Q_total," + fmt17(result.max_sd_q_total) + ',' +
                   fmt17(mean_of(&Trajectory::q_total)) + '\n';
        ctx.write_file("ensemble_summary.csv", summary);

        std::cout << "max SD: P_total=" << fmt17(result.max_sd_p_total)
                  << " R_total=" << fmt17(result.max_sd_r_total)
                  << " Q_total=" << fmt17(result.max_sd_q_total) << "\n";
    });
}

void cmd_validate(const RunConfig& config) {
    run_command("validate", config, [&](CommandContext& ctx) {
        config.params.validate();
        if (!config.lab_path) {
            throw ConfigError("validate needs a lab dataset (config lab_path or --lab)");
        }
        const IngestResult lab = ingest_cohort(*config.lab_path);
        for (const auto& warning : lab.warnings) {
            std::cerr << "warning: " << warning << "\n";
        }
        if (lab.samples.empty()) {
            throw DataError(*config.lab_path + ": no usable rows");
        }

        std::vector<double> ages;
        ages.reserve(lab.samples.size());
        for (const auto& s : lab.samples) {
            ages.push_back(s.age);
        }

        // Matched design: one simulated pseudo-donor per lab donor age, from
        // the first seed; pool_replications adds every listed seed instead.
        std::vector<std::uint64_t> seeds_used;
        if (config.pool_replications) {
            seeds_used = config.seeds;
        } else {
            seeds_used = {config.seeds.front()};
        }
        std::vector<CohortSample> sim;
        for (std::uint64_t seed : seeds_used) {
            const Trajectory traj = run_simulation(config.params, seed);
            note_clamps(ctx, traj);
            const auto section = sample_cross_section(traj, ages, config.params.days_per_year);
            sim.insert(sim.end(), section.begin(), section.end());
        }
        ctx.manifest["validation_seeds"] = seeds_used;

        std::string cross = "age,precursor_prop,quiescent_prop\n";
        for (const auto& s : sim) {
            cross += fmt17(s.age);
            cross += ',' + fmt17(s.precursor_prop);
            cross += ',' + fmt17(s.quiescent_prop);
            cross += '\n';
        }
        ctx.write_file("cross_section.csv", cross);

        const ComparisonTable table = compare_cohorts(lab.samples, sim);
        ctx.write_file("comparison.txt", render_table(table, TableStyle::Text));
        ctx.write_file("comparison.csv", render_table(table, TableStyle::Csv));
        std::cout << render_table(table, config.format);
    });
}

void cmd_intervene(const RunConfig& config) {
    run_command("intervene", config, [&](CommandContext& ctx) {
        config.params.validate();
        if (!config.intervention) {
            throw ConfigError("intervene needs an [intervention] section in the config");
        }
        if (config.seeds.empty()) {
            throw ConfigError("intervene needs at least one seed");
        }
        const std::uint64_t seed = config.seeds.front();
        const Trajectory baseline = run_simulation(config.params, seed);
        const Trajectory intervened =
            run_simulation(config.params, seed, {*config.intervention});
        note_clamps(ctx, intervened);

        const std::string tag = std::to_string(seed);
        ctx.write_file("trajectory_baseline_seed" + tag + ".csv", trajectory_csv(baseline));
        ctx.write_file("trajectory_intervened_seed" + tag + ".csv", trajectory_csv(intervened));

        std::string diff = "time_days,time_years,delta_P_total,delta_R_total,delta_Q_total\n";
        for (std::size_t i = 0; i < baseline.size(); ++i) {
            diff += fmt17(baseline.time_days[i]);
            diff += ',' + fmt17(baseline.time_years[i]);
            diff += ',' + fmt17(intervened.p_total[i] - baseline.p_total[i]);
            diff += ',' + fmt17(intervened.r_total[i] - baseline.r_total[i]);
            diff += ',' + fmt17(intervened.q_total[i] - baseline.q_total[i]);
            diff += '\n';
        }
        ctx.write_file("difference_seed" + tag + ".csv", diff);
    });
}

void cmd_sweep(const RunConfig& config) {
    run_command("sweep", config, [&](CommandContext& ctx) {
        config.params.validate();
        if (!config.sweep) {
            throw ConfigError("sweep needs a [sweep] section in the config");
        }
        if (config.seeds.empty()) {
            throw ConfigError("sweep needs at least one seed");
        }
        const auto rows = sweep(config.params, config.sweep->parameter,
                                config.sweep->values, config.seeds.front());

        std::string csv =
            "value,inversion_time_years,crossings,final_precursor_prop,"
            "final_active_prop,final_quiescent_prop,max_P_total,max_R_total,"
            "max_Q_total,p_total_non_increasing,clamp_warnings\n";
        for (const auto& row : rows) {
            csv += fmt17(row.value);
            csv += ',' + fmt17(row.inversion_time_years);
            csv += ',' + std::to_string(row.crossings);
            csv += ',' + fmt17(row.final_precursor_prop);
            csv += ',' + fmt17(row.final_active_prop);
            csv += ',' + fmt17(row.final_quiescent_prop);
            csv += ',' + fmt17(row.max_p_total);
            csv += ',' + fmt17(row.max_r_total);
            csv += ',' + fmt17(row.max_q_total);
            csv += ',';
            csv += row.p_total_non_increasing ? '1' : '0';
            csv += ',' + std::to_string(row.clamp_warnings);
            csv += '\n';
        }
        ctx.write_file("sweep_summary.csv", csv);
        std::cout << "sweep of " << config.sweep->parameter << ": "
                  << rows.size() << " rows\n";
    });
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Lifetime-scale regulatory T-cell subset simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::uint64_t> seed_flags;
    std::string out_flag;
    std::string lab_flag;
    std::string format_flag;

    app.add_option("--config", config_path, "Configuration file (key = value sections)");
    app.add_option("--seed", seed_flags, "Seed (repeatable; overrides the config seeds list)");
    app.add_option("--out", out_flag, "Output directory");
    app.add_option("--lab", lab_flag, "Lab cohort CSV (age,precursor_prop,quiescent_prop)");
    app.add_option("--format", format_flag, "Table style on stdout")
        ->check(CLI::IsMember({"text", "csv"}));

    auto* sub_simulate = app.add_subcommand("simulate", "Single-seed trajectories");
    auto* sub_ensemble = app.add_subcommand("ensemble", "Replications plus cross-run SD");
    auto* sub_validate = app.add_subcommand("validate", "Decade-binned lab comparison");
    auto* sub_intervene = app.add_subcommand("intervene", "Paired depletion experiment");
    auto* sub_sweep = app.add_subcommand("sweep", "Parameter grid summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig config = config_path.empty() ? RunConfig{} : load_config_file(config_path);
        if (!seed_flags.empty()) {
            config.seeds = seed_flags;
        }
        if (!out_flag.empty()) {
            config.out_dir = out_flag;
        }
        if (!lab_flag.empty()) {
            config.lab_path = lab_flag;
        }
        if (!format_flag.empty()) {
            config.format = format_flag == "csv" ? TableStyle::Csv : TableStyle::Text;
        }

        if (sub_simulate->parsed()) {
            cmd_simulate(config);
        } else if (sub_ensemble->parsed()) {
            cmd_ensemble(config);
        } else if (sub_validate->parsed()) {
            cmd_validate(config);
        } else if (sub_intervene->parsed()) {
            cmd_intervene(config);
        } else if (sub_sweep->parsed()) {
            cmd_sweep(config);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace tregsim
