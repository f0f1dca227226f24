// Command-line front end: built-in scenarios, user configs, force projection.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phonoline/coupling.hpp"
#include "phonoline/csv.hpp"
#include "phonoline/runner.hpp"
#include "phonoline/scenarios.hpp"

namespace {

// Registry names win over files so `phonoline run fig2` works from anywhere;
// an unknown name that is not a file falls through to the registry error,
// which names the nearest scenario.
phonoline::ScenarioConfig resolve_config(const std::string& name) {
    if (phonoline::has_scenario(name)) return phonoline::load_scenario(name);
    if (std::filesystem::exists(name)) return phonoline::load_config_file(name);
    return phonoline::load_scenario(name);
}

int extract_coupling(const std::string& forces_path, const std::string& modes_path,
                     double lattice, const std::string& select_label,
                     const std::string& out_path) {
    const phonoline::ForceField forces = phonoline::read_forces(forces_path);
    const phonoline::ModeBasis basis = phonoline::read_modes(modes_path);
    const std::vector<double> g = phonoline::project_forces(forces, basis);

    std::ofstream out(out_path);
    if (!out) throw phonoline::IoError("cannot open output file: " + out_path);
    out << "mode,label,frequency,g,g_abs,g_energy\n";
    std::size_t written = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!select_label.empty() && basis.labels[k] != select_label) continue;
        out << k << ',' << basis.labels[k] << ','
            << phonoline::csv_field(basis.frequencies[k]) << ','
            << phonoline::csv_field(g[k]) << ','
            << phonoline::csv_field(std::abs(g[k])) << ','
            << phonoline::csv_field(phonoline::scale_to_energy(std::abs(g[k]), lattice))
            << '\n';
        ++written;
    }
    if (!select_label.empty() && written == 0)
        throw phonoline::ConfigError("no mode labelled '" + select_label + "' in " +
                                     modes_path);
    out.flush();
    if (!out) throw phonoline::IoError("write failed: " + out_path);
    std::cout << "wrote " << out_path << " (" << written << " modes)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phonoline: driven spin-boson dynamics on a protected phonon line"};
    app.require_subcommand(1);

    std::string name;
    phonoline::RunOptions opt;
    long long samples = -1, truncation = -1, points = -1;

    CLI::App* run = app.add_subcommand("run", "Run a scenario or a YAML config file");
    run->add_option("scenario", name, "Built-in scenario name or config path")->required();
    run->add_option("--out", opt.out_dir, "Output directory");
    run->add_option("--samples", samples, "Override the number of sample times");
    run->add_option("--truncation", truncation, "Override the phonon dimension");
    run->add_option("--threads", opt.threads, "Worker threads for sweep cells");

    CLI::App* sweep = app.add_subcommand("sweep", "Run a two-axis parameter sweep");
    sweep->add_option("scenario", name, "Built-in sweep name or config path")->required();
    sweep->add_option("--out", opt.out_dir, "Output directory");
    sweep->add_option("--points", points, "Override the points per sweep axis");
    sweep->add_option("--threads", opt.threads, "Worker threads for sweep cells");

    app.add_subcommand("list", "List the built-in scenarios");

    CLI::App* extract = app.add_subcommand(
        "extract-coupling", "Project force files onto phonon modes");
    std::string forces_path, modes_path, select_label;
    std::string coupling_out = "coupling.csv";
    double lattice = 2.5;
    extract->add_option("--forces", forces_path, "Force components, one per line")
        ->required();
    extract->add_option("--modes", modes_path, "Phonon eigenmode file")->required();
    extract->add_option("--lattice", lattice, "Lattice parameter in Angstrom");
    extract->add_option("--select-label", select_label, "Keep only modes with this label");
    extract->add_option("--out", coupling_out, "Output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("list")) {
            std::cout << phonoline::scenario_listing();
            return 0;
        }
        if (app.got_subcommand(extract))
            return extract_coupling(forces_path, modes_path, lattice, select_label,
                                    coupling_out);

        if (samples >= 0) opt.samples_override = phonoline::Index(samples);
        if (truncation > 0) opt.truncation_override = phonoline::Index(truncation);
        if (points > 0) opt.sweep_points_override = phonoline::Index(points);

        const phonoline::ScenarioConfig cfg = resolve_config(name);
        const std::vector<std::string> paths =
            app.got_subcommand(sweep) ? phonoline::run_sweep(cfg, opt)
                                      : phonoline::run_scenario(cfg, opt);
        for (const std::string& p : paths) std::cout << "wrote " << p << "\n";
        return 0;
    } catch (const phonoline::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const phonoline::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const phonoline::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
