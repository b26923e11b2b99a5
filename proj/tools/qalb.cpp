#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qalb/cli.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"qalb: lattice Boltzmann / quantum embedding laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::vector<std::string> sets;
    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--config", config_path, "flat key = value settings file");
        sc->add_option("--set", sets, "override a setting, key=value")->take_all();
        sc->add_option("--out", out_path, "CSV output path (stdout when omitted)");
    };

    using Cmd = int (*)(const qalb::Config&, std::ostream&);
    const std::vector<std::pair<std::string, Cmd>> cmds = {
        {"classical", qalb::cli::cmd_classical},   {"quantum", qalb::cli::cmd_quantum},
        {"carleman", qalb::cli::cmd_carleman},     {"streaming-demo", qalb::cli::cmd_streaming_demo},
        {"complexity", qalb::cli::cmd_complexity}, {"bounds", qalb::cli::cmd_bounds},
    };
    std::vector<CLI::App*> subs;
    for (auto& [name, fn] : cmds) subs.push_back(app.add_subcommand(name));
    for (auto* s : subs) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : qalb::cli::config_error;
    }

    size_t which = 0;
    for (size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) which = i;
    const std::string name = cmds[which].first;

    qalb::Config cfg;
    try {
        if (!config_path.empty()) cfg.load(config_path);
        for (auto& s : sets) cfg.parse_assignment(s, "--set");
    } catch (const qalb::error& e) {
        std::cerr << "qalb: " << e.what() << "\n";
        return qalb::cli::config_error;
    }

    std::ostringstream buf;
    int rc = 0;
    try {
        rc = cmds[which].second(cfg, buf);
    } catch (const qalb::error& e) {
        std::cerr << "qalb: " << e.what() << "\n";
        return e.code() == qalb::errc::config ? qalb::cli::config_error : qalb::cli::numeric_guard;
    }

    if (out_path.empty()) {
        std::cout << buf.str();
        cfg.write_metadata(std::cerr, name);
    } else {
        std::ofstream f(out_path, std::ios::binary);
        std::ofstream m(out_path + ".meta", std::ios::binary);
        if (!f || !m) {
            std::cerr << "qalb: cannot write " << out_path << "\n";
            return qalb::cli::config_error;
        }
        f << buf.str();
        cfg.write_metadata(m, name);
    }
    if (rc == qalb::cli::divergence) std::cerr << "qalb: divergence detected; data written\n";
    return rc;
}
